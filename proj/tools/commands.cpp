#include "commands.hpp"

#include "xprod/involution.hpp"
#include "xprod/sk1.hpp"

#include <random>
#include <sstream>

namespace xprod::cli {

using nlohmann::ordered_json;

void Report::check(std::string id, bool ok, std::string detail) {
    checks.push_back({std::move(id), ok, std::move(detail)});
}

bool Report::ok() const { return failures() == 0; }

std::size_t Report::failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.ok ? 0 : 1;
    return n;
}

ordered_json Report::json() const {
    ordered_json j;
    j["command"] = command;
    j["seed"] = seed;
    j["ok"] = ok();
    j["checks"] = ordered_json::array();
    for (const auto& c : checks) j["checks"].push_back({{"id", c.id}, {"ok", c.ok}, {"detail", c.detail}});
    j["values"] = values;
    return j;
}

namespace {

std::string one_line(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch != '\n')
            out += ch;
        else if (!out.empty() && out.back() != ' ')
            out += "; ";
    }
    while (!out.empty() && (out.back() == ' ' || out.back() == ';')) out.pop_back();
    return out;
}

void dump_values(std::ostringstream& out, const ordered_json& v, const std::string& prefix) {
    for (const auto& [key, val] : v.items()) {
        auto name = prefix.empty() ? key : prefix + "." + key;
        if (val.is_object())
            dump_values(out, val, name);
        else
            out << "  " << name << " = " << one_line(val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
    }
}

}  // namespace

std::string Report::text() const {
    std::ostringstream out;
    out << command << ": " << (ok() ? "PASS" : "FAIL") << " (" << checks.size() << " checks, " << failures()
        << " failed)\n";
    for (const auto& c : checks) {
        out << (c.ok ? "  ok    " : "  FAIL  ") << c.id;
        if (!c.detail.empty()) out << "  " << one_line(c.detail);
        out << "\n";
    }
    dump_values(out, values, "");
    return out.str();
}

namespace {

const CrossedProductData& need_data(const Config& cfg) {
    if (!cfg.data) throw UsageError("the config has no [crossed-product] data");
    return *cfg.data;
}

const FiniteGModule& need_module(const Config& cfg) {
    if (!cfg.module) throw UsageError("the config has no [module]");
    return *cfg.module;
}

bool within_bound(const CrossedProductData& d, const Options& opt, Report& r) {
    bool ok = d.group_order() <= opt.degree_bound;
    if (!ok)
        r.check("degree-bound", false,
                "degree " + std::to_string(d.group_order()) + " exceeds " + std::to_string(opt.degree_bound));
    return ok;
}

// false (after itemizing the violations) unless the data is a valid presentation
bool record_validation(const CrossedProductData& d, Report& r, const std::string& prefix = {}) {
    auto v = validate(d);
    for (const auto& x : v.violations) r.check(prefix + x.relation, false, x.detail);
    if (v.ok()) r.check(prefix + "crossed-product", true);
    return v.ok();
}

bool record_unitary(const CrossedProductData& d, const FieldAutomorphism& theta, Report& r,
                    const std::string& prefix = {}) {
    auto v = validate_unitary_conditions(d, theta);
    for (const auto& x : v.violations) r.check(prefix + x.relation, false, x.detail);
    if (v.ok()) r.check(prefix + "unitary-conditions", true);
    return v.ok();
}

void record_involution(const AlgebraPtr& alg, const FieldAutomorphism& theta, Report& r,
                       const std::string& prefix = {}) {
    auto tau = Involution::build(alg, theta);
    auto bad = tau.basis_violations();
    r.check(prefix + "involution-basis", bad.empty(), bad.empty() ? "" : bad.front());
}

// (xy)z == x(yz) for x, y, z among z^i and g z^i, g a tower generator
void record_associativity(const AlgebraPtr& alg, Report& r, const std::string& prefix = {}) {
    const auto& t = alg->field();
    std::vector<FieldElement> coeffs{FieldElement::rational(t, 1)};
    for (std::size_t s = 0; s < t->level_count(); ++s) coeffs.push_back(FieldElement::generator(t, s));
    std::vector<AlgebraElement> basis;
    for (std::size_t i = 0; i < alg->dimension(); ++i)
        for (const auto& c : coeffs) basis.push_back(AlgebraElement::monomial(alg, Monomial::constant(c, alg->rank()), i));
    std::size_t triples = 0, bad = 0;
    std::string first;
    for (const auto& x : basis)
        for (const auto& y : basis) {
            auto xy = x * y;
            for (const auto& z : basis) {
                ++triples;
                if (xy * z == x * (y * z)) continue;
                if (bad++ == 0) first = x.str() + " * " + y.str() + " * " + z.str();
            }
        }
    r.check(prefix + "associativity", bad == 0,
            std::to_string(triples) + " triples" + (bad ? ", first failure " + first : ""));
}

AlgebraElement element_of(const AlgebraPtr& alg, const std::vector<Term>& terms) {
    const auto& d = alg->data();
    AlgebraElement out(alg);
    for (const auto& t : terms) {
        auto e = t.exponent.empty() ? Exponent(d.grade_rank, 0) : t.exponent;
        if (e.size() != d.grade_rank) throw UsageError("multiply: exponent length differs from grade-rank");
        auto idx = t.index.empty() ? std::vector<int>(d.k(), 0) : t.index;
        if (idx.size() != d.k()) throw UsageError("multiply: z-index length differs from the generator count");
        for (std::size_t l = 0; l < idx.size(); ++l) idx[l] = ((idx[l] % d.orders[l]) + d.orders[l]) % d.orders[l];
        out += AlgebraElement::monomial(alg, Monomial(t.coeff, e), alg->flat(idx));
    }
    return out;
}

ordered_json grades_json(const std::vector<GradeVector>& gs) {
    auto out = ordered_json::array();
    for (const auto& g : gs) {
        std::string s = "(";
        for (std::size_t i = 0; i < g.coords.size(); ++i) s += (i ? "," : "") + to_string(g.coords[i]);
        out.push_back(s + ")");
    }
    return out;
}

void record_decomposition(const CrossedProductData& d, const std::optional<FieldAutomorphism>& theta, Report& r,
                          const std::string& prefix = {}) {
    auto sr = semiramified_check(d);
    r.check(prefix + "semiramified", sr.semiramified, "Gamma_E/Gamma_T = " + sr.quotient.str());
    if (!sr.semiramified) return;
    auto dec = i_n_decompose(d);
    r.check(prefix + "inertial-valid", validate(dec.inertial).ok());
    r.check(prefix + "dsr-valid", validate(dec.dsr).ok());
    bool trivial_u = true;
    for (const auto& row : dec.dsr.u)
        for (const auto& u : row) trivial_u = trivial_u && u.is_one();
    r.check(prefix + "dsr-u-trivial", trivial_u);
    bool monomial_b = true;
    for (const auto& b : dec.dsr.b) monomial_b = monomial_b && b.coeff.is_one();
    // b_l = x^gamma_l lies in R since the involution fixes every x^lambda
    r.check(prefix + "dsr-b-in-R", monomial_b);
    r.check(prefix + "i-n-product", cocycle_product(extend_to_graded(dec.inertial, d.grade_rank), dec.dsr) == d);
    if (theta) record_unitary(dec.inertial, *theta, r, prefix + "inertial:");
    r.values["inertial"] = dec.inertial.str();
    r.values["dsr"] = dec.dsr.str();
}

std::string invariants(const TateGroup& t) { return t.value.str(); }

FieldElement random_fixed(const TowerPtr& t, const FieldAutomorphism& a, std::mt19937_64& rng) {
    for (;;) {
        auto x = random_element(t, rng, 2);
        auto y = x + a(x);
        if (!y.is_zero()) return y;
    }
}

}  // namespace

// ------------------------------------------------------------------ validate

void validate_command(const Config& cfg, const Options& opt, Report& r) {
    const auto& d = need_data(cfg);
    r.values["data"] = d.str();
    bool valid = record_validation(d, r);
    bool unitary = cfg.theta ? record_unitary(d, *cfg.theta, r) : false;
    if (d.grade_rank > 0 && valid) r.values["semiramified"] = semiramified_check(d).semiramified;
    if (valid && unitary && within_bound(d, opt, r)) record_involution(CrossedProduct::build(d), *cfg.theta, r);
}

// ------------------------------------------------------------------ multiply

void multiply_command(const Config& cfg, const Options& opt, Report& r) {
    const auto& d = need_data(cfg);
    if (!record_validation(d, r) || !within_bound(d, opt, r)) return;
    auto alg = CrossedProduct::build(d);
    record_associativity(alg, r);
    if (cfg.a.empty() && cfg.b.empty()) return;
    auto a = element_of(alg, cfg.a), b = element_of(alg, cfg.b);
    auto ab = a * b;
    r.values["a"] = a.str();
    r.values["b"] = b.str();
    r.values["product"] = ab.str();
    auto bound = static_cast<std::size_t>(opt.degree_bound);
    auto na = reduced_norm(a, bound), nb = reduced_norm(b, bound), nab = reduced_norm(ab, bound);
    r.values["reduced-norm"] = nab.str();
    r.check("reduced-norm-multiplicative", nab == na * nb);
}

// ----------------------------------------------------------------- decompose

void decompose_command(const Config& cfg, const Options& opt, Report& r) {
    const auto& d = need_data(cfg);
    if (d.grade_rank == 0) throw UsageError("decompose needs graded data (grade-rank > 0)");
    if (!record_validation(d, r) || !within_bound(d, opt, r)) return;
    record_decomposition(d, cfg.theta, r);
}

// ---------------------------------------------------------------- cohomology

void cohomology_command(const Config& cfg, const Options&, Report& r) {
    const auto& m = need_module(cfg);
    const auto& g = m.group();
    r.values["group"] = g.str();
    r.values["module"] = m.module().str();
    std::optional<TateGroup> t0, tm1;
    for (int deg = -1; deg <= 2; ++deg) {
        auto key = "tate(" + std::to_string(deg) + ")";
        try {
            auto t = tate(m, deg);
            r.values[key] = invariants(t);
            if (deg == 0) t0 = t;
            if (deg == -1) tm1 = t;
        } catch (const PreconditionError& e) {
            r.values[key] = std::string("skipped: ") + e.what();
        }
    }
    if (g.is_cyclic() && t0 && tm1)
        r.check("herbrand", t0->order() == tm1->order(),
                "|H^0| = " + std::to_string(t0->order()) + ", |H^-1| = " + std::to_string(tm1->order()));

    std::vector<int> h;
    try {
        h = index_two_subgroup(g);
    } catch (const PreconditionError&) {
        r.values["index-two-subgroup"] = "none";
        return;
    }
    r.check("twist-involutive", twist(twist(m, h), h) == m);

    std::vector<int> emb;
    auto sub = g.subgroup(h, emb);
    try {
        auto rep = shapiro_check(restrict_to(m, sub, emb), g, emb, {-1, 0});
        r.check("shapiro", rep.ok, rep.str());
    } catch (const PreconditionError& e) {
        r.values["shapiro"] = std::string("skipped: ") + e.what();
    }
    try {
        auto les = les_check(m, h);
        r.check("les-exact", les.exact, les.failures.empty() ? "" : les.failures.front());
        r.values["les"] = les.str();
    } catch (const PreconditionError& e) {
        r.values["les"] = std::string("skipped: ") + e.what();
    }
    if (g.kind() == FiniteGroup::Kind::generalized_dihedral) {
        auto hyp = dihedral_hypotheses(m);
        r.values["h1-h-trivial"] = hyp.h1_h_trivial;
        r.values["h1-theta-trivial"] = hyp.h1_theta_trivial;
        if (hyp.hold() && g.h_generators().size() == 1) {
            auto theta = g.theta();
            auto th = g.mul(g.h_generators().front(), theta);
            auto sum = m.fixed({theta}).plus(m.fixed({th}));
            r.check("dihedral-splitting", sum == twisted_norm_kernel(m));
        }
    }
}

// ----------------------------------------------------------------------- sk1

void sk1_command(const Config& cfg, const Options&, Report& r) {
    const auto& m = need_module(cfg);
    bool dihedral = m.group().kind() == FiniteGroup::Kind::generalized_dihedral;
    SK1Report rep;
    try {
        rep = dihedral ? usk1_finite(m, cfg.images) : sk1_finite(m, cfg.images);
    } catch (const PreconditionError& e) {
        r.check(dihedral ? "g-images-in-ker-twisted-norm" : "u-images-in-ker-norm", false, e.what());
        return;
    }
    for (const auto& [id, ok] : rep.checks) r.check(id, ok);
    r.values["formula"] = rep.formula;
    r.values["value"] = rep.value.str();
    r.values["undivided"] = rep.undivided.str();
    r.values["witnesses"] = rep.witness_log.size();
}

// ------------------------------------------------------------------ examples

void examples_command(const Options& opt, Report& r) {
    auto names = opt.name.empty() ? example_names() : std::vector<std::string>{opt.name};
    for (const auto& name : names) {
        ExampleAlgebra ex;
        try {
            ex = example_by_name(name, opt.n);
        } catch (const PreconditionError& e) {
            throw UsageError(e.what());
        }
        auto p = ex.name + ":";
        ordered_json v;
        const auto& d = ex.data;
        r.values[ex.name] = ordered_json::object();
        if (!record_validation(d, r, p) || !within_bound(d, opt, r)) continue;
        auto sr = semiramified_check(d);
        r.check(p + "semiramified", sr.semiramified);
        auto dims = graded_dimensions(d);
        r.check(p + "fundamental-equality", fundamental_equality_check(dims),
                "[E:T] = " + std::to_string(dims.total_degree) + ", [E0:T0] = " + std::to_string(dims.residue_degree) +
                    ", Gamma_E/Gamma_T = " + sr.quotient.str());
        v["residue-degree"] = dims.residue_degree;
        v["grade-quotient"] = sr.quotient.str();
        v["deg-z"] = grades_json(sr.deltas);
        if (ex.inertial && ex.dsr) {
            auto rank = d.grade_rank;
            r.check(p + "i-n-product", cocycle_product(extend_to_graded(*ex.inertial, rank), *ex.dsr) == d);
            auto dec = i_n_decompose(d);
            r.check(p + "i-n-decompose", dec.inertial == *ex.inertial && dec.dsr == *ex.dsr);
            v["I"] = ex.inertial->str();
            v["N"] = ex.dsr->str();
        }
        auto alg = CrossedProduct::build(d);
        record_associativity(alg, r, p);
        if (ex.theta && record_unitary(d, *ex.theta, r, p)) record_involution(alg, *ex.theta, r, p);
        r.values[ex.name] = v;
    }
}

// ------------------------------------------------------------------ verify-g

void verify_g_command(const std::optional<Config>& cfg, const Options& opt, Report& r) {
    std::vector<std::pair<std::string, Involution>> taus;
    auto add = [&](const std::string& name, const CrossedProductData& d, const FieldAutomorphism& theta) {
        if (d.grade_rank == 0) throw UsageError("verify-g needs graded data");
        if (!record_validation(d, r, name + ":") || !record_unitary(d, theta, r, name + ":") ||
            !within_bound(d, opt, r))
            return;
        taus.emplace_back(name, Involution::build(CrossedProduct::build(d), theta));
    };
    if (cfg && cfg->data && cfg->theta && opt.name.empty()) {
        add("config", *cfg->data, *cfg->theta);
    } else {
        auto names = opt.name.empty() ? std::vector<std::string>{"biquaternion", "unitary-symbol"}
                                      : std::vector<std::string>{opt.name};
        for (const auto& n : names) {
            auto ex = example_by_name(n, opt.n);
            if (!ex.theta) throw UsageError("example '" + n + "' has no involution");
            add(ex.name, ex.data, *ex.theta);
        }
    }
    for (const auto& [name, tau] : taus) {
        auto rep = verify_g_identities(tau, opt.g_bound);
        ordered_json v;
        for (const auto& item : rep.items) {
            r.check(name + ":g-identity(" + item.id + ")", item.failures.empty(),
                    item.failures.empty() ? "" : item.failures.front());
            v[item.id] = {{"cases", item.cases}, {"witnesses", item.witnesses}};
        }
        r.values[name] = v;
    }
}

// ------------------------------------------------------------------- diagram

void diagram_command(const std::optional<Config>& cfg, const Options& opt, Report& r) {
    bool from_config = cfg && cfg->example && cfg->example->name == "biquaternion" && cfg->data &&
                       cfg->data->grade_rank == 0;
    auto e = from_config ? *cfg->example : biquaternion_example();
    const auto& theta = *e.theta;
    GaloisSetup s{"M/K", e.data.field, e.data.sigma, e.data.orders};
    std::vector<CrossedProductData> inputs;
    std::mt19937_64 rng(opt.seed);
    if (from_config) {
        inputs.push_back(*cfg->data);
    } else {
        for (int k = 0; k < opt.count; ++k) inputs.push_back(random_unitary_bicyclic(s, theta, rng));
    }
    auto grid = ordered_json::array();
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        auto tag = "[" + std::to_string(k) + "]";
        const auto& d = inputs[k];
        if (!record_validation(d, r, "input" + tag + ":") || !record_unitary(d, theta, r, "input" + tag + ":"))
            continue;
        auto rep = noninjex_diagram(e, d);
        r.check("diagram" + tag, rep.ok(), rep.ok() ? "" : rep.str());
        auto ch = unitary_change(d, theta, random_fixed(s.field, theta, rng),
                                 random_fixed(s.field, s.sigma[0] * theta, rng),
                                 random_fixed(s.field, s.sigma[1] * theta, rng));
        auto inv = psi_invariance(d, theta, ch);
        r.check("psi-invariance" + tag, inv.ok(), inv.ok() ? "" : inv.failures.front());
        grid.push_back({{"u12", d.u[0][1].tuple()}, {"q", rep.q.representative.tuple()}});
    }
    r.values["instances"] = grid;
}

// ----------------------------------------------------------------------- run

void run_command(const Config& cfg, const Options& opt, Report& r) {
    r.values["pipeline"] = cfg.pipeline;
    for (const auto& stage : cfg.pipeline) {
        Report sub;
        if (stage == "validate") validate_command(cfg, opt, sub);
        if (stage == "multiply") multiply_command(cfg, opt, sub);
        if (stage == "decompose") decompose_command(cfg, opt, sub);
        if (stage == "cohomology") cohomology_command(cfg, opt, sub);
        if (stage == "sk1") sk1_command(cfg, opt, sub);
        if (stage == "verify-g") verify_g_command(cfg, opt, sub);
        if (stage == "diagram") diagram_command(cfg, opt, sub);
        for (auto& c : sub.checks) r.check(stage + "/" + c.id, c.ok, c.detail);
        r.values[stage] = sub.values;
    }
}

}  // namespace xprod::cli
