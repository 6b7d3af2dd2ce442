#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace xprod::cli {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// whitespace-separated, except that a parenthesized tuple is one token
std::vector<std::string> tokenize(const std::string& line, int lineno) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : line) {
        if (ch == '(') ++depth;
        if (ch == ')' && --depth < 0) throw ConfigError(lineno, "unbalanced ')'");
        if (depth == 0 && std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (depth != 0) throw ConfigError(lineno, "unbalanced '('");
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

Q rational_at(const std::string& token, int lineno) {
    try {
        return parse_rational(token);
    } catch (const std::exception& e) {
        throw ConfigError(lineno, "bad rational literal '" + token + "'");
    }
}

long long integer_at(const std::string& token, int lineno) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || token.empty()) throw ConfigError(lineno, "bad integer '" + token + "'");
    return v;
}

int small_at(const std::string& token, int lineno) {
    auto v = integer_at(token, lineno);
    if (v < -1000000 || v > 1000000) throw ConfigError(lineno, "integer out of range '" + token + "'");
    return static_cast<int>(v);
}

QVec tuple_at(const std::string& token, int lineno) {
    if (token.size() < 2 || token.front() != '(' || token.back() != ')')
        throw ConfigError(lineno, "expected a coefficient tuple, got '" + token + "'");
    QVec out;
    std::stringstream body(token.substr(1, token.size() - 2));
    std::string part;
    while (std::getline(body, part, ',')) {
        part = strip(part);
        if (part.empty()) throw ConfigError(lineno, "empty tuple entry in '" + token + "'");
        out.push_back(rational_at(part, lineno));
    }
    if (out.empty()) throw ConfigError(lineno, "empty tuple");
    return out;
}

FieldElement element_at(const TowerPtr& tower, const std::string& token, int lineno) {
    if (token.empty()) throw ConfigError(lineno, "empty field element");
    if (token.front() == '(') {
        auto v = tuple_at(token, lineno);
        if (v.size() > tower->degree())
            throw ConfigError(lineno, "tuple '" + token + "' longer than the field degree " +
                                     std::to_string(tower->degree()));
        v.resize(tower->degree());
        return FieldElement(tower, v);
    }
    if (std::isdigit(static_cast<unsigned char>(token.front())) || token.front() == '-' || token.front() == '+') {
        bool negated_name = token.size() > 1 && token.front() == '-' &&
                            std::isalpha(static_cast<unsigned char>(token[1]));
        if (negated_name) return -element_at(tower, token.substr(1), lineno);
        return FieldElement::rational(tower, rational_at(token, lineno));
    }
    for (std::size_t s = 0; s < tower->level_count(); ++s)
        if (tower->step(s).name == token) return FieldElement::generator(tower, s);
    throw ConfigError(lineno, "unknown generator '" + token + "'");
}

class Parser {
public:
    explicit Parser(std::uint64_t seed) : rng_(seed) {}

    Config run(const std::string& text) {
        std::stringstream in(text);
        std::string raw;
        int lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            auto hash = raw.find('#');
            auto line = strip(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') throw ConfigError(lineno, "malformed section header");
                enter(strip(line.substr(1, line.size() - 2)), lineno);
                continue;
            }
            if (section_.empty()) throw ConfigError(lineno, "entry outside of any section");
            dispatch(tokenize(line, lineno), lineno);
        }
        leave(lineno);
        return std::move(cfg_);
    }

private:
    void enter(const std::string& name, int lineno) {
        static const std::vector<std::string> known{"tower",  "automorphisms", "crossed-product", "involution",
                                                    "module", "multiply",      "pipeline",        "bounds"};
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw ConfigError(lineno, "unknown section [" + name + "]");
        if (std::find(seen_.begin(), seen_.end(), name) != seen_.end())
            throw ConfigError(lineno, "section [" + name + "] given twice");
        leave(lineno);
        seen_.push_back(name);
        section_ = name;
        section_line_ = lineno;
    }

    void leave(int lineno) {
        if (section_ == "tower") finish_tower(section_line_);
        if (section_ == "crossed-product") finish_data(lineno);
        if (section_ == "module") finish_module(section_line_);
    }

    void dispatch(const std::vector<std::string>& t, int lineno) {
        if (section_ == "tower") return tower_line(t, lineno);
        if (section_ == "automorphisms") return auto_line(t, lineno);
        if (section_ == "crossed-product") return data_line(t, lineno);
        if (section_ == "involution") return involution_line(t, lineno);
        if (section_ == "module") return module_line(t, lineno);
        if (section_ == "multiply") return multiply_line(t, lineno);
        if (section_ == "pipeline") return pipeline_line(t, lineno);
        if (section_ == "bounds") return bounds_line(t, lineno);
    }

    static void arity(const std::vector<std::string>& t, std::size_t lo, std::size_t hi, int lineno) {
        if (t.size() < lo || t.size() > hi)
            throw ConfigError(lineno, "wrong number of fields for '" + t.front() + "'");
    }

    const TowerPtr& tower(int lineno) const {
        if (!cfg_.tower) throw ConfigError(lineno, "no [tower] section before this line");
        return cfg_.tower;
    }

    FieldElement element(const std::string& token, int lineno) const {
        return element_at(tower(lineno), token, lineno);
    }

    const FieldAutomorphism& automorphism(const std::string& name, int lineno) const {
        auto it = cfg_.automorphisms.find(name);
        if (it == cfg_.automorphisms.end()) throw ConfigError(lineno, "unknown automorphism '" + name + "'");
        return it->second;
    }

    // --------------------------------------------------------------- tower

    void tower_line(const std::vector<std::string>& t, int lineno) {
        const auto& key = t.front();
        if (key == "example") {
            arity(t, 2, 3, lineno);
            if (!steps_.empty() || cfg_.example) throw ConfigError(lineno, "example must be the only tower entry");
            int n = t.size() == 3 ? small_at(t[2], lineno) : 2;
            try {
                cfg_.example = example_by_name(t[1], n);
            } catch (const PreconditionError& e) {
                throw ConfigError(lineno, e.what());
            }
            return;
        }
        if (cfg_.example) throw ConfigError(lineno, "example must be the only tower entry");
        if (key == "quadratic") {
            arity(t, 3, 3, lineno);
            steps_.push_back(quadratic_step(t[1], rational_at(t[2], lineno)));
        } else if (key == "pure") {
            arity(t, 4, 4, lineno);
            int degree = small_at(t[2], lineno);
            if (degree < 2 || degree > 4) throw ConfigError(lineno, "pure step degree must be 2, 3 or 4");
            steps_.push_back(pure_step(t[1], degree, tuple_at(t[3], lineno)));
        } else {
            throw ConfigError(lineno, "unknown tower entry '" + key + "'");
        }
    }

    void finish_tower(int lineno) {
        if (cfg_.example) {
            const auto& ex = *cfg_.example;
            cfg_.tower = ex.data.field;
            for (std::size_t l = 0; l < ex.data.k(); ++l)
                cfg_.automorphisms.emplace("sigma" + std::to_string(l + 1), ex.data.sigma[l]);
            if (ex.theta) cfg_.automorphisms.emplace("theta", *ex.theta);
            return;
        }
        if (steps_.empty()) throw ConfigError(lineno, "[tower] has no steps");
        try {
            cfg_.tower = FieldTower::make(steps_);
        } catch (const std::exception& e) {
            throw ConfigError(lineno, std::string("tower: ") + e.what());
        }
    }

    // -------------------------------------------------------- automorphisms

    void auto_line(const std::vector<std::string>& t, int lineno) {
        arity(t, 2, 64, lineno);
        const auto& tw = tower(lineno);
        const auto& name = t[0];
        if (cfg_.automorphisms.count(name)) throw ConfigError(lineno, "automorphism '" + name + "' defined twice");
        const auto& kind = t[1];
        std::size_t gens = tw->level_count();
        if (t.size() - 2 != gens)
            throw ConfigError(lineno, "expected " + std::to_string(gens) + " entries, one per generator");
        try {
            if (kind == "signs") {
                std::vector<int> s;
                for (std::size_t j = 2; j < t.size(); ++j) s.push_back(small_at(t[j], lineno));
                cfg_.automorphisms.emplace(name, sign_automorphism(tw, s));
            } else if (kind == "scale" || kind == "images") {
                std::vector<FieldElement> v;
                for (std::size_t j = 2; j < t.size(); ++j) v.push_back(element(t[j], lineno));
                cfg_.automorphisms.emplace(name, kind == "scale" ? scaling_automorphism(tw, v)
                                                                 : FieldAutomorphism(tw, v));
            } else {
                throw ConfigError(lineno, "unknown automorphism kind '" + kind + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(lineno, "automorphism '" + name + "': " + e.what());
        }
    }

    // ------------------------------------------------------ crossed product

    struct PendingU {
        std::size_t i, j;
        FieldElement value;
    };
    struct PendingB {
        std::size_t l;
        FieldElement coeff;
        Exponent exponent;
        int line;
    };

    std::size_t index_at(const std::string& token, std::size_t k, int lineno) const {
        auto v = integer_at(token, lineno);
        if (v < 1 || static_cast<std::size_t>(v) > k)
            throw ConfigError(lineno, "index " + token + " outside 1.." + std::to_string(k));
        return static_cast<std::size_t>(v - 1);
    }

    void data_line(const std::vector<std::string>& t, int lineno) {
        const auto& key = t.front();
        tower(lineno);
        if (key == "example") {
            arity(t, 1, 1, lineno);
            if (!cfg_.example) throw ConfigError(lineno, "'example' needs [tower] example <name>");
            from_example_ = true;
            return;
        }
        if (key == "generators") {
            arity(t, 2, 9, lineno);
            gen_names_.assign(t.begin() + 1, t.end());
            for (const auto& n : gen_names_) automorphism(n, lineno);
        } else if (key == "orders") {
            arity(t, 2, 9, lineno);
            orders_.clear();
            for (std::size_t j = 1; j < t.size(); ++j) orders_.push_back(small_at(t[j], lineno));
        } else if (key == "grade-rank") {
            arity(t, 2, 2, lineno);
            auto r = small_at(t[1], lineno);
            if (r < 0 || r > 4) throw ConfigError(lineno, "grade-rank must be in 0..4");
            rank_ = static_cast<std::size_t>(r);
        } else if (key == "u") {
            arity(t, 4, 4, lineno);
            need_generators(lineno);
            auto k = gen_names_.size();
            us_.push_back({index_at(t[1], k, lineno), index_at(t[2], k, lineno), element(t[3], lineno)});
            if (us_.back().value.is_zero()) throw ConfigError(lineno, "u entries must be nonzero");
        } else if (key == "b") {
            arity(t, 3, 64, lineno);
            need_generators(lineno);
            PendingB b{index_at(t[1], gen_names_.size(), lineno), element(t[2], lineno), {}, lineno};
            if (b.coeff.is_zero()) throw ConfigError(lineno, "b entries must be nonzero");
            if (t.size() > 3) {
                if (t[3] != "@") throw ConfigError(lineno, "expected '@' before the exponent");
                for (std::size_t j = 4; j < t.size(); ++j) b.exponent.push_back(small_at(t[j], lineno));
            }
            bs_.push_back(std::move(b));
        } else {
            throw ConfigError(lineno, "unknown crossed-product entry '" + key + "'");
        }
        explicit_data_ = true;
    }

    void need_generators(int lineno) const {
        if (gen_names_.empty()) throw ConfigError(lineno, "'generators' must come first");
    }

    void finish_data(int lineno) {
        if (from_example_) {
            if (explicit_data_) throw ConfigError(lineno, "'example' cannot be mixed with explicit data");
            cfg_.data = cfg_.example->data;
            return;
        }
        if (!explicit_data_) return;
        if (gen_names_.empty()) throw ConfigError(lineno, "[crossed-product] needs 'generators'");
        if (orders_.size() != gen_names_.size())
            throw ConfigError(lineno, "'orders' must list one order per generator");
        GaloisSetup s{"config", cfg_.tower, {}, orders_};
        for (const auto& n : gen_names_) s.sigma.push_back(cfg_.automorphisms.at(n));
        auto data = trivial_presentation(s, rank_);
        for (const auto& u : us_) {
            if (u.i == u.j) {
                data.u[u.i][u.j] = u.value;
                continue;
            }
            data.u[u.i][u.j] = u.value;
            data.u[u.j][u.i] = u.value.inverse();
        }
        // explicit reverse entries win over the implied inverse
        for (std::size_t a = 0; a < us_.size(); ++a)
            for (std::size_t c = a + 1; c < us_.size(); ++c)
                if (us_[c].i == us_[a].j && us_[c].j == us_[a].i) data.u[us_[c].i][us_[c].j] = us_[c].value;
        for (const auto& b : bs_) {
            auto e = b.exponent;
            if (e.empty()) e.assign(rank_, 0);
            if (e.size() != rank_)
                throw ConfigError(b.line, "b " + std::to_string(b.l + 1) + ": exponent length differs from grade-rank");
            data.b[b.l] = Monomial(b.coeff, e);
        }
        cfg_.data = std::move(data);
    }

    // ----------------------------------------------------------- involution

    void involution_line(const std::vector<std::string>& t, int lineno) {
        if (t.front() != "theta") throw ConfigError(lineno, "unknown involution entry '" + t.front() + "'");
        arity(t, 2, 2, lineno);
        cfg_.theta = automorphism(t[1], lineno);
    }

    // --------------------------------------------------------------- module

    void module_line(const std::vector<std::string>& t, int lineno) {
        const auto& key = t.front();
        auto ints = [&](std::size_t from) {
            std::vector<long long> v;
            for (std::size_t j = from; j < t.size(); ++j) v.push_back(integer_at(t[j], lineno));
            return v;
        };
        if (key == "group") {
            arity(t, 3, 8, lineno);
            std::vector<int> orders;
            for (auto v : ints(2)) {
                if (v < 1 || v > 64) throw ConfigError(lineno, "group orders must be in 1..64");
                orders.push_back(static_cast<int>(v));
            }
            try {
                if (t[1] == "abelian")
                    group_ = FiniteGroup::abelian(orders);
                else if (t[1] == "dihedral")
                    group_ = FiniteGroup::generalized_dihedral(orders);
                else
                    throw ConfigError(lineno, "group kind must be abelian or dihedral");
            } catch (const PreconditionError& e) {
                throw ConfigError(lineno, e.what());
            }
            return;
        }
        if (key == "image") {
            arity(t, 2, 4096, lineno);
            cfg_.images.push_back(ints(1));
            image_lines_.push_back(lineno);
            return;
        }
        if (key == "twist") {
            arity(t, 1, 1, lineno);
            twist_ = true;
            return;
        }
        if (!group_) throw ConfigError(lineno, "'group' must come first");
        if (key == "action") {
            arity(t, 3, 4096, lineno);
            auto g = integer_at(t[1], lineno);
            if (g < 1 || static_cast<std::size_t>(g) > group_->generators().size())
                throw ConfigError(lineno, "action: generator index out of range");
            IntMatrix m(1);
            for (std::size_t j = 2; j < t.size(); ++j) {
                if (t[j] == ";")
                    m.emplace_back();
                else
                    m.back().push_back(integer_at(t[j], lineno));
            }
            actions_[static_cast<std::size_t>(g - 1)] = {std::move(m), lineno};
            return;
        }
        if (build_) throw ConfigError(lineno, "the module is already specified");
        auto args = ints(1);
        if (key == "regular" || key == "trivial" || key == "permutation" || key == "random" || key == "moduli") {
            if (args.empty()) throw ConfigError(lineno, "'" + key + "' needs arguments");
            if (args[0] < 1) throw ConfigError(lineno, "'" + key + "' needs a positive first argument");
            for (auto v : args)
                if (v < 0) throw ConfigError(lineno, "arguments must be nonnegative");
        } else {
            throw ConfigError(lineno, "unknown module entry '" + key + "'");
        }
        auto g = *group_;
        if (key == "regular") {
            arity(t, 2, 2, lineno);
            build_ = [g, q = args[0]] { return FiniteGModule::regular(g, q); };
        } else if (key == "trivial") {
            build_ = [g, args] { return FiniteGModule::trivial(g, CoordinateGroup(args)); };
        } else if (key == "permutation") {
            arity(t, 2, 64, lineno);
            std::vector<int> stab;
            for (std::size_t j = 1; j < args.size(); ++j) {
                if (args[j] >= static_cast<long long>(g.order())) throw ConfigError(lineno, "no such group element");
                stab.push_back(static_cast<int>(args[j]));
            }
            build_ = [g, q = args[0], stab] { return FiniteGModule::permutation(g, stab, q); };
        } else if (key == "random") {
            arity(t, 2, 2, lineno);
            build_ = [this, g, max = static_cast<std::uint64_t>(args[0])] { return random_module(g, rng_, max); };
        } else {
            moduli_ = args;
            build_ = [this, g] {
                std::vector<IntMatrix> acts;
                for (std::size_t j = 0; j < g.generators().size(); ++j) {
                    auto it = actions_.find(j);
                    if (it == actions_.end())
                        throw ConfigError(section_line_, "missing action for generator " + std::to_string(j + 1));
                    acts.push_back(it->second.first);
                }
                return FiniteGModule(g, CoordinateGroup(moduli_), acts);
            };
        }
    }

    void finish_module(int lineno) {
        if (!group_) throw ConfigError(lineno, "[module] needs 'group'");
        if (!build_) throw ConfigError(lineno, "[module] needs a module entry");
        if (!actions_.empty() && moduli_.empty())
            throw ConfigError(actions_.begin()->second.second, "'action' needs 'moduli'");
        try {
            auto m = build_();
            cfg_.module = twist_ ? twist(m) : m;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            int at = actions_.empty() ? lineno : actions_.begin()->second.second;
            throw ConfigError(at, std::string("module: ") + e.what());
        }
        auto dim = cfg_.module->module().dim();
        for (std::size_t j = 0; j < cfg_.images.size(); ++j)
            if (cfg_.images[j].size() != dim)
                throw ConfigError(image_lines_[j], "image has " + std::to_string(cfg_.images[j].size()) +
                                                       " coordinates, module has " + std::to_string(dim));
    }

    // ------------------------------------------------------------- multiply

    void multiply_line(const std::vector<std::string>& t, int lineno) {
        const auto& key = t.front();
        if (key != "a" && key != "b") throw ConfigError(lineno, "multiply entries are 'a' or 'b'");
        arity(t, 2, 64, lineno);
        Term term{element(t[1], lineno), {}, {}};
        std::size_t j = 2;
        if (j < t.size() && t[j] == "@")
            for (++j; j < t.size() && t[j] != "z"; ++j) term.exponent.push_back(small_at(t[j], lineno));
        if (j < t.size()) {
            if (t[j] != "z") throw ConfigError(lineno, "expected '@' or 'z', got '" + t[j] + "'");
            for (++j; j < t.size(); ++j) term.index.push_back(small_at(t[j], lineno));
        }
        (key == "a" ? cfg_.a : cfg_.b).push_back(std::move(term));
    }

    // ------------------------------------------------------ pipeline, bounds

    void pipeline_line(const std::vector<std::string>& t, int lineno) {
        static const std::vector<std::string> stages{"validate", "multiply", "decompose", "cohomology",
                                                     "sk1",      "verify-g", "diagram"};
        arity(t, 1, 1, lineno);
        if (std::find(stages.begin(), stages.end(), t[0]) == stages.end())
            throw ConfigError(lineno, "unknown pipeline stage '" + t[0] + "'");
        cfg_.pipeline.push_back(t[0]);
    }

    void bounds_line(const std::vector<std::string>& t, int lineno) {
        arity(t, 2, 2, lineno);
        if (t[0] != "degree") throw ConfigError(lineno, "unknown bound '" + t[0] + "'");
        auto v = small_at(t[1], lineno);
        if (v < 1 || v > 16) throw ConfigError(lineno, "degree bound must be in 1..16");
        cfg_.degree_bound = v;
    }

    std::mt19937_64 rng_;
    Config cfg_;
    std::string section_;
    int section_line_ = 0;
    std::vector<std::string> seen_;
    std::vector<TowerStep> steps_;

    bool from_example_ = false;
    bool explicit_data_ = false;
    std::vector<std::string> gen_names_;
    std::vector<int> orders_;
    std::size_t rank_ = 0;
    std::vector<PendingU> us_;
    std::vector<PendingB> bs_;

    std::optional<FiniteGroup> group_;
    std::function<FiniteGModule()> build_;
    std::map<std::size_t, std::pair<IntMatrix, int>> actions_;
    std::vector<long long> moduli_;
    bool twist_ = false;
    std::vector<int> image_lines_;
};

}  // namespace

FieldElement parse_element(const TowerPtr& tower, const std::string& token) {
    try {
        return element_at(tower, token, 0);
    } catch (const ConfigError& e) {
        throw PreconditionError(e.detail);
    }
}

Config parse_config(const std::string& text, std::uint64_t seed) { return Parser(seed).run(text); }

Config load_config(const std::string& path, std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), seed);
}

}  // namespace xprod::cli
