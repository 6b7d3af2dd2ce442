#include "xprod/tate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace xprod {

namespace {

constexpr std::size_t kMaxGroupOrder = 16;
constexpr std::uint64_t kMaxModuleOrder = 1ULL << 16;
constexpr std::size_t kMaxMatrixEntries = 25'000'000;

long long md(long long x, long long q) {
    x %= q;
    return x < 0 ? x + q : x;
}

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix reduce_rows(IntMatrix m, const CoordinateGroup& a) {
    for (std::size_t r = 0; r < m.size(); ++r)
        for (auto& x : m[r]) x = md(x, a.moduli()[r]);
    return m;
}

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y, const CoordinateGroup& a) {
    const std::size_t n = a.dim();
    IntMatrix z(n, std::vector<long long>(n, 0));
    for (std::size_t r = 0; r < n; ++r) {
        const long long d = a.moduli()[r];
        for (std::size_t k = 0; k < n; ++k) {
            if (x[r][k] == 0) continue;
            for (std::size_t c = 0; c < n; ++c) z[r][c] = md(z[r][c] + md(x[r][k], d) * md(y[k][c], d), d);
        }
    }
    return z;
}

std::string tuple_name(const std::vector<int>& a) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
}

std::vector<int> mixed_radix(int index, const std::vector<int>& orders) {
    std::vector<int> a(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
        a[i] = index % orders[i];
        index /= orders[i];
    }
    return a;
}

int from_radix(const std::vector<int>& a, const std::vector<int>& orders) {
    int index = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) index = index * orders[i] + ((a[i] % orders[i]) + orders[i]) % orders[i];
    return index;
}

void check_sizes(const FiniteGModule& m) {
    if (m.group().order() > kMaxGroupOrder) throw PreconditionError("tate: group order above 16");
    if (m.module().order() > static_cast<unsigned long>(kMaxModuleOrder))
        throw PreconditionError("tate: module order above 2^16");
}

}  // namespace

// ---------------------------------------------------------------- groups

FiniteGroup FiniteGroup::abelian(const std::vector<int>& orders) {
    FiniteGroup g;
    int n = 1;
    for (int o : orders) {
        if (o < 1) throw PreconditionError("FiniteGroup: orders must be positive");
        n *= o;
    }
    g.table_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    g.inv_.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        auto va = mixed_radix(a, orders);
        std::vector<int> neg(va.size());
        for (std::size_t i = 0; i < va.size(); ++i) neg[i] = -va[i];
        g.inv_[idx(a)] = from_radix(neg, orders);
        g.names_.push_back(a == 0 ? "e" : tuple_name(va));
        for (int b = 0; b < n; ++b) {
            auto vb = mixed_radix(b, orders);
            for (std::size_t i = 0; i < vb.size(); ++i) vb[i] += va[i];
            g.table_[idx(a)][idx(b)] = from_radix(vb, orders);
        }
    }
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == 1) continue;
        std::vector<int> unit(orders.size(), 0);
        unit[i] = 1;
        g.gens_.push_back(from_radix(unit, orders));
    }
    g.label_ = "Z/" + tuple_name(orders);
    g.kind_ = Kind::abelian;
    return g;
}

FiniteGroup FiniteGroup::generalized_dihedral(const std::vector<int>& h_orders) {
    FiniteGroup h = abelian(h_orders);
    const int nh = static_cast<int>(h.order());
    FiniteGroup g;
    const int n = 2 * nh;
    g.table_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    g.inv_.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        const int ha = a % nh, ea = a / nh;
        g.inv_[idx(a)] = ea ? a : h.inv(ha);
        g.names_.push_back(ea ? (ha ? h.name(ha) + "t" : "t") : h.name(ha));
        for (int b = 0; b < n; ++b) {
            const int hb = b % nh, eb = b / nh;
            const int hh = h.mul(ha, ea ? h.inv(hb) : hb);
            g.table_[idx(a)][idx(b)] = hh + nh * (ea ^ eb);
        }
    }
    for (int x = 0; x < nh; ++x) g.h_.push_back(x);
    g.h_gens_ = h.gens_;
    g.theta_ = nh;
    g.gens_ = h.gens_;
    g.gens_.push_back(nh);
    g.label_ = "Dih" + tuple_name(h_orders);
    g.kind_ = Kind::generalized_dihedral;
    return g;
}

int FiniteGroup::power(int a, long long n) const {
    if (n < 0) return power(inv(a), -n);
    int r = identity();
    for (long long i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

int FiniteGroup::element_order(int a) const {
    int r = a, k = 1;
    while (r != identity()) {
        r = mul(r, a);
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
        for (std::size_t b = 0; b < order(); ++b)
            if (table_[a][b] != table_[b][a]) return false;
    return true;
}

bool FiniteGroup::is_cyclic() const {
    for (std::size_t a = 0; a < order(); ++a)
        if (static_cast<std::size_t>(element_order(static_cast<int>(a))) == order()) return true;
    return false;
}

bool FiniteGroup::in_h(int g) const { return std::find(h_.begin(), h_.end(), g) != h_.end(); }

std::vector<int> FiniteGroup::closure(const std::vector<int>& gens) const {
    std::set<int> seen{identity()};
    std::vector<int> frontier{identity()};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int s : gens) {
                int y = mul(x, s);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

bool FiniteGroup::is_index_two(const std::vector<int>& elements) const {
    std::set<int> s(elements.begin(), elements.end());
    if (2 * s.size() != order() || !s.count(identity())) return false;
    for (int a : s)
        for (int b : s)
            if (!s.count(mul(a, b))) return false;
    return true;
}

FiniteGroup FiniteGroup::subgroup(const std::vector<int>& gens, std::vector<int>& embedding) const {
    embedding = closure(gens);
    std::map<int, int> pos;
    for (std::size_t i = 0; i < embedding.size(); ++i) pos[embedding[i]] = static_cast<int>(i);
    FiniteGroup s;
    const std::size_t n = embedding.size();
    s.table_.assign(n, std::vector<int>(n));
    s.inv_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        s.inv_[a] = pos.at(inv(embedding[a]));
        s.names_.push_back(name(embedding[a]));
        for (std::size_t b = 0; b < n; ++b) s.table_[a][b] = pos.at(mul(embedding[a], embedding[b]));
    }
    auto greedy = [&s](const std::vector<int>& pool) {
        std::vector<int> g;
        for (int x : pool) {
            auto c = s.closure(g);
            if (!std::binary_search(c.begin(), c.end(), x)) g.push_back(x);
        }
        return g;
    };
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    s.label_ = "subgroup of " + label_;
    if (s.is_abelian()) {
        s.kind_ = Kind::abelian;
        s.gens_ = greedy(all);
        return s;
    }
    if (kind_ != Kind::generalized_dihedral) throw InternalError("subgroup: non-abelian subgroup of an abelian group");
    for (std::size_t a = 0; a < n; ++a)
        if (in_h(embedding[a])) s.h_.push_back(static_cast<int>(a));
        else if (s.theta_ < 0) s.theta_ = static_cast<int>(a);
    s.kind_ = Kind::generalized_dihedral;
    s.h_gens_ = greedy(s.h_);
    s.gens_ = s.h_gens_;
    s.gens_.push_back(s.theta_);
    return s;
}

std::vector<int> FiniteGroup::transversal(const std::vector<int>& sub_elements) const {
    std::set<int> covered;
    std::vector<int> reps;
    for (int g = 0; g < static_cast<int>(order()); ++g) {
        if (covered.count(g)) continue;
        reps.push_back(g);
        for (int h : sub_elements) covered.insert(mul(g, h));
    }
    return reps;
}

std::vector<int> index_two_subgroup(const FiniteGroup& g) {
    if (g.kind() == FiniteGroup::Kind::generalized_dihedral) return g.h_elements();
    const auto& gens = g.generators();
    for (std::size_t i = gens.size(); i-- > 0;) {
        if (g.element_order(gens[i]) % 2 != 0) continue;
        std::vector<int> others;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i) others.push_back(gens[j]);
        others.push_back(g.mul(gens[i], gens[i]));
        auto h = g.closure(others);
        if (g.is_index_two(h)) return h;
    }
    throw PreconditionError("index_two_subgroup: group has no even-order generator");
}

// ---------------------------------------------------------------- modules

FiniteGModule::FiniteGModule(FiniteGroup g, CoordinateGroup a, const std::vector<IntMatrix>& generator_actions)
    : group_(std::move(g)), module_(std::move(a)) {
    const auto& gens = group_.generators();
    if (generator_actions.size() != gens.size())
        throw PreconditionError("FiniteGModule: need one matrix per group generator");
    std::vector<IntMatrix> gm;
    for (const auto& m : generator_actions) {
        IntHom h{module_, module_, m};
        if (!h.well_defined()) throw PreconditionError("FiniteGModule: action matrix is not a homomorphism of A");
        gm.push_back(reduce_rows(m, module_));
    }
    actions_.assign(group_.order(), {});
    std::vector<bool> have(group_.order(), false);
    actions_[0] = reduce_rows(identity_matrix(module_.dim()), module_);
    have[0] = true;
    std::vector<int> frontier{0};
    // M_{x s} = M_x M_s along every edge of the Cayley graph
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (std::size_t i = 0; i < gens.size(); ++i) {
                const int y = group_.mul(x, gens[i]);
                IntMatrix my = multiply(actions_[static_cast<std::size_t>(x)], gm[i], module_);
                const auto uy = static_cast<std::size_t>(y);
                if (have[uy]) {
                    if (actions_[uy] != my)
                        throw PreconditionError("FiniteGModule: group relations fail for the action matrices");
                    continue;
                }
                actions_[uy] = std::move(my);
                have[uy] = true;
                next.push_back(y);
            }
        frontier = std::move(next);
    }
    if (std::find(have.begin(), have.end(), false) != have.end())
        throw PreconditionError("FiniteGModule: generators do not generate the group");
}

FiniteGModule FiniteGModule::trivial(FiniteGroup g, CoordinateGroup a) {
    std::vector<IntMatrix> acts(g.generators().size(), identity_matrix(a.dim()));
    return {std::move(g), std::move(a), acts};
}

FiniteGModule FiniteGModule::permutation(FiniteGroup g, const std::vector<int>& stabilizer_gens, long long q) {
    const auto k = g.closure(stabilizer_gens);
    const auto reps = g.transversal(k);
    auto coset_of = [&](int x) {
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (int h : k)
                if (g.mul(reps[i], h) == x) return i;
        throw InternalError("permutation: element outside every coset");
    };
    std::vector<IntMatrix> acts;
    for (int s : g.generators()) {
        IntMatrix m(reps.size(), std::vector<long long>(reps.size(), 0));
        for (std::size_t i = 0; i < reps.size(); ++i) m[coset_of(g.mul(s, reps[i]))][i] = 1;
        acts.push_back(std::move(m));
    }
    CoordinateGroup a(std::vector<long long>(reps.size(), q));
    return {std::move(g), std::move(a), acts};
}

IntHom FiniteGModule::norm(const std::vector<int>& elements) const {
    IntHom n{module_, module_, IntMatrix(module_.dim(), std::vector<long long>(module_.dim(), 0))};
    for (int g : elements)
        for (std::size_t r = 0; r < module_.dim(); ++r)
            for (std::size_t c = 0; c < module_.dim(); ++c)
                n.m[r][c] = md(n.m[r][c] + matrix(g)[r][c], module_.moduli()[r]);
    return n;
}

IntHom FiniteGModule::norm() const {
    std::vector<int> all(group_.order());
    std::iota(all.begin(), all.end(), 0);
    return norm(all);
}

namespace {

// A -> A^k, a |-> ((g_i - 1) a)_i
IntHom stacked_differences(const FiniteGModule& m, const std::vector<int>& elements) {
    const auto& a = m.module();
    const std::size_t n = a.dim();
    IntHom h{a, CoordinateGroup::power(a, elements.size()), IntMatrix(n * elements.size(), std::vector<long long>(n, 0))};
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                h.m[i * n + r][c] = md(m.matrix(elements[i])[r][c] - (r == c ? 1 : 0), a.moduli()[r]);
    return h;
}

}  // namespace

AbelianSubgroup FiniteGModule::fixed(const std::vector<int>& elements) const {
    if (elements.empty()) return AbelianSubgroup::whole(module_);
    return kernel(stacked_differences(*this, elements));
}

AbelianSubgroup FiniteGModule::augmentation(const std::vector<int>& elements) const {
    std::vector<Coords> gens;
    for (int g : elements) {
        IntHom d = hom(g);
        for (std::size_t r = 0; r < module_.dim(); ++r) d.m[r][r] -= 1;
        for (const auto& x : image(d).generators()) gens.push_back(x);
    }
    return {module_, gens};
}

FiniteGModule FiniteGModule::direct_sum(const FiniteGModule& o) const {
    if (o.group_.order() != group_.order()) throw PreconditionError("direct_sum: different groups");
    std::vector<long long> moduli = module_.moduli();
    moduli.insert(moduli.end(), o.module_.moduli().begin(), o.module_.moduli().end());
    const std::size_t n1 = module_.dim(), n = moduli.size();
    std::vector<IntMatrix> acts;
    for (int s : group_.generators()) {
        IntMatrix m(n, std::vector<long long>(n, 0));
        for (std::size_t r = 0; r < n1; ++r)
            for (std::size_t c = 0; c < n1; ++c) m[r][c] = matrix(s)[r][c];
        for (std::size_t r = n1; r < n; ++r)
            for (std::size_t c = n1; c < n; ++c) m[r][c] = o.matrix(s)[r - n1][c - n1];
        acts.push_back(std::move(m));
    }
    return {group_, CoordinateGroup(moduli), acts};
}

FiniteGModule FiniteGModule::transport(const IntMatrix& p, const IntMatrix& p_inv) const {
    if (!IntHom{module_, module_, p}.well_defined() || !IntHom{module_, module_, p_inv}.well_defined())
        throw PreconditionError("transport: not an endomorphism of A");
    if (multiply(p, p_inv, module_) != reduce_rows(identity_matrix(module_.dim()), module_))
        throw PreconditionError("transport: matrices are not inverse");
    std::vector<IntMatrix> acts;
    for (int s : group_.generators()) acts.push_back(multiply(multiply(p, matrix(s), module_), p_inv, module_));
    return {group_, module_, acts};
}

bool FiniteGModule::operator==(const FiniteGModule& o) const {
    return group_.order() == o.group_.order() && module_ == o.module_ && actions_ == o.actions_;
}

std::string FiniteGModule::str() const {
    std::ostringstream os;
    os << "module " << module_.str() << " over " << group_.str();
    return os.str();
}

FiniteGModule twist(const FiniteGModule& m, const std::vector<int>& h) {
    const auto& g = m.group();
    if (!g.is_index_two(h)) throw PreconditionError("twist: H is not a subgroup of index 2");
    std::vector<IntMatrix> acts;
    for (int s : g.generators()) {
        IntMatrix x = m.matrix(s);
        if (std::find(h.begin(), h.end(), s) == h.end())
            for (std::size_t r = 0; r < x.size(); ++r)
                for (auto& v : x[r]) v = md(-v, m.module().moduli()[r]);
        acts.push_back(std::move(x));
    }
    return {g, m.module(), acts};
}

FiniteGModule twist(const FiniteGModule& m) { return twist(m, index_two_subgroup(m.group())); }

FiniteGModule restrict_to(const FiniteGModule& m, const FiniteGroup& sub, const std::vector<int>& embedding) {
    if (embedding.size() != sub.order()) throw PreconditionError("restrict_to: embedding has the wrong size");
    for (std::size_t a = 0; a < sub.order(); ++a)
        for (std::size_t b = 0; b < sub.order(); ++b)
            if (embedding[static_cast<std::size_t>(sub.mul(static_cast<int>(a), static_cast<int>(b)))] !=
                m.group().mul(embedding[a], embedding[b]))
                throw PreconditionError("restrict_to: embedding is not a homomorphism");
    std::vector<IntMatrix> acts;
    for (int s : sub.generators()) acts.push_back(m.matrix(embedding[static_cast<std::size_t>(s)]));
    return {sub, m.module(), acts};
}

FiniteGModule induce(const FiniteGModule& m, const FiniteGroup& big, const std::vector<int>& embedding) {
    const auto& sub = m.group();
    if (embedding.size() != sub.order()) throw PreconditionError("induce: embedding has the wrong size");
    const auto reps = big.transversal(embedding);
    std::map<int, std::pair<std::size_t, int>> split;  // big element -> (coset, sub element)
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t h = 0; h < sub.order(); ++h) split[big.mul(reps[i], embedding[h])] = {i, static_cast<int>(h)};
    if (split.size() != big.order()) throw PreconditionError("induce: embedding is not injective");
    const std::size_t n = m.module().dim();
    auto moduli = CoordinateGroup::power(m.module(), reps.size());
    std::vector<IntMatrix> acts;
    for (int s : big.generators()) {
        IntMatrix x(n * reps.size(), std::vector<long long>(n * reps.size(), 0));
        for (std::size_t i = 0; i < reps.size(); ++i) {
            auto [j, h] = split.at(big.mul(s, reps[i]));
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) x[j * n + r][i * n + c] = m.matrix(h)[r][c];
        }
        acts.push_back(std::move(x));
    }
    return {big, moduli, acts};
}

FiniteGModule random_module(const FiniteGroup& g, std::mt19937_64& rng, std::uint64_t max_order) {
    static const std::vector<long long> moduli{2, 3, 4, 8, 2, 4, 9, 5};
    auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    std::optional<FiniteGModule> out;
    std::uint64_t size = 1;
    std::vector<int> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        const long long q = moduli[pick(moduli.size())];
        std::vector<int> stab;
        const std::size_t kind = pick(3);
        if (kind == 0) stab = g.generators();  // trivial piece
        else if (kind == 1)
            for (std::size_t i = 0, n = pick(3); i < n; ++i) stab.push_back(all[pick(all.size())]);
        FiniteGModule piece = FiniteGModule::permutation(g, stab, q);
        if (pick(2) == 0) {
            const auto gens = g.generators();
            std::vector<int> h;
            try {
                h = index_two_subgroup(g);
            } catch (const PreconditionError&) {
            }
            if (!h.empty()) piece = twist(piece, h);
        }
        std::uint64_t ps = 1;
        for (long long d : piece.module().moduli()) ps *= static_cast<std::uint64_t>(d);
        if (size * ps > max_order) continue;
        size *= ps;
        out = out ? out->direct_sum(piece) : piece;
        if (pick(3) == 0) break;
    }
    if (!out) out = FiniteGModule::trivial(g, CoordinateGroup({2}));
    // random coordinates: x_i += c x_j whenever that is well defined on A
    const auto& a = out->module();
    const std::size_t n = a.dim();
    IntMatrix p = identity_matrix(n), p_inv = identity_matrix(n);
    for (std::size_t step = 0; step < 2 * n; ++step) {
        const std::size_t i = pick(n), j = pick(n);
        if (i == j) continue;
        const long long di = a.moduli()[i], dj = a.moduli()[j];
        const long long unit = di / std::gcd(di, dj);
        const long long c = unit * static_cast<long long>(1 + pick(static_cast<std::size_t>(di)));
        // p <- E p, p_inv <- p_inv E^-1 with E = I + c e_ij
        for (std::size_t k = 0; k < n; ++k) p[i][k] = md(p[i][k] + c * p[j][k], di);
        for (std::size_t k = 0; k < n; ++k) p_inv[k][j] = md(p_inv[k][j] - c * p_inv[k][i], a.moduli()[k]);
    }
    return out->transport(p, p_inv);
}

// ---------------------------------------------------------------- cochains

std::size_t cochain_block(const FiniteGroup& g, const std::vector<int>& tuple) {
    const std::size_t base = g.order() - 1;
    std::size_t index = 0;
    for (int x : tuple) {
        if (x == g.identity()) throw PreconditionError("cochain_block: normalized cochains vanish on the identity");
        index = index * base + static_cast<std::size_t>(x - 1);
    }
    return index;
}

CoordinateGroup cochain_space(const FiniteGModule& m, int n) {
    std::size_t blocks = 1;
    for (int i = 0; i < n; ++i) blocks *= m.group().order() - 1;
    return CoordinateGroup::power(m.module(), blocks);
}

IntHom coboundary(const FiniteGModule& m, int n) {
    if (n < 0 || n > 2) throw PreconditionError("coboundary: degree must be 0, 1 or 2");
    const auto& g = m.group();
    const auto& a = m.module();
    const std::size_t dim = a.dim();
    CoordinateGroup src = cochain_space(m, n), dst = cochain_space(m, n + 1);
    if (src.dim() * dst.dim() > kMaxMatrixEntries) throw PreconditionError("coboundary: cochain matrix above the size bound");
    IntHom d{src, dst, IntMatrix(dst.dim(), std::vector<long long>(src.dim(), 0))};
    auto add_block = [&](std::size_t row_block, std::size_t col_block, const IntMatrix* act, long long sign) {
        for (std::size_t r = 0; r < dim; ++r) {
            const long long q = a.moduli()[r];
            auto& row = d.m[row_block * dim + r];
            if (act)
                for (std::size_t c = 0; c < dim; ++c) row[col_block * dim + c] = md(row[col_block * dim + c] + sign * (*act)[r][c], q);
            else
                row[col_block * dim + r] = md(row[col_block * dim + r] + sign, q);
        }
    };
    std::vector<int> non_identity;
    for (int x = 1; x < static_cast<int>(g.order()); ++x) non_identity.push_back(x);
    const int e = g.identity();
    if (n == 0) {
        for (int x : non_identity) {
            add_block(cochain_block(g, {x}), 0, &m.matrix(x), 1);
            add_block(cochain_block(g, {x}), 0, nullptr, -1);
        }
    } else if (n == 1) {
        for (int x : non_identity)
            for (int y : non_identity) {
                const std::size_t row = cochain_block(g, {x, y});
                add_block(row, cochain_block(g, {y}), &m.matrix(x), 1);
                if (g.mul(x, y) != e) add_block(row, cochain_block(g, {g.mul(x, y)}), nullptr, -1);
                add_block(row, cochain_block(g, {x}), nullptr, 1);
            }
    } else {
        for (int x : non_identity)
            for (int y : non_identity)
                for (int z : non_identity) {
                    const std::size_t row = cochain_block(g, {x, y, z});
                    add_block(row, cochain_block(g, {y, z}), &m.matrix(x), 1);
                    if (g.mul(x, y) != e) add_block(row, cochain_block(g, {g.mul(x, y), z}), nullptr, -1);
                    if (g.mul(y, z) != e) add_block(row, cochain_block(g, {x, g.mul(y, z)}), nullptr, 1);
                    add_block(row, cochain_block(g, {x, y}), nullptr, -1);
                }
    }
    return d;
}

TateGroup tate(const FiniteGModule& m, int degree) {
    check_sizes(m);
    const auto& a = m.module();
    const auto& gens = m.group().generators();
    switch (degree) {
        case -1: {
            auto z = kernel(m.norm());
            auto b = m.augmentation(gens);
            auto v = quotient_structure(z, b);
            return {degree, a, std::move(z), std::move(b), std::move(v)};
        }
        case 0: {
            auto z = m.fixed();
            auto b = image(m.norm());
            auto v = quotient_structure(z, b);
            return {degree, a, std::move(z), std::move(b), std::move(v)};
        }
        case 1:
        case 2: {
            auto z = kernel(coboundary(m, degree));
            auto b = image(coboundary(m, degree - 1));
            auto v = quotient_structure(z, b);
            return {degree, cochain_space(m, degree), std::move(z), std::move(b), std::move(v)};
        }
        default:
            throw PreconditionError("tate: degree must be -1, 0, 1 or 2");
    }
}

Coords TateGroup::canonical_representative(const Coords& cocycle) const {
    if (!cocycles.contains(cocycle)) throw PreconditionError("canonical_representative: not a cocycle");
    Coords best = cochains.reduce(cocycle);
    for (const auto& b : coboundaries.elements()) best = std::min(best, cochains.add(cocycle, b));
    return best;
}

std::vector<Coords> TateGroup::representatives(std::uint64_t limit) const {
    std::set<Coords> covered;
    std::vector<Coords> reps;
    const auto bs = coboundaries.elements(limit);
    for (const auto& z : cocycles.elements(limit)) {
        if (covered.count(z)) continue;
        reps.push_back(z);
        for (const auto& b : bs) covered.insert(cochains.add(z, b));
    }
    return reps;
}

// ---------------------------------------------------------------- Shapiro

std::string ShapiroReport::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        os << "H^" << degrees[i] << ": " << over_big[i].str() << " vs " << over_sub[i].str()
           << (over_big[i] == over_sub[i] ? "" : " MISMATCH") << "\n";
    return os.str();
}

ShapiroReport shapiro_check(const FiniteGModule& m, const FiniteGroup& big, const std::vector<int>& embedding,
                            const std::vector<int>& degrees) {
    FiniteGModule ind = induce(m, big, embedding);
    ShapiroReport rep;
    for (int i : degrees) {
        rep.degrees.push_back(i);
        rep.over_big.push_back(tate(ind, i).value);
        rep.over_sub.push_back(tate(m, i).value);
        if (!(rep.over_big.back() == rep.over_sub.back())) rep.ok = false;
    }
    return rep;
}

// ---------------------------------------------------------------- long exact sequence

namespace {

// a map of coefficient modules applied blockwise to n-cochains
IntHom on_cochains(const IntHom& f, std::size_t blocks) {
    IntHom out{CoordinateGroup::power(f.src, blocks), CoordinateGroup::power(f.dst, blocks),
               IntMatrix(f.dst.dim() * blocks, std::vector<long long>(f.src.dim() * blocks, 0))};
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t r = 0; r < f.dst.dim(); ++r)
            for (std::size_t c = 0; c < f.src.dim(); ++c) out.m[b * f.dst.dim() + r][b * f.src.dim() + c] = f.m[r][c];
    return out;
}

}  // namespace

std::string LesReport::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < labels.size(); ++i) os << labels[i] << " = " << terms[i].str() << "\n";
    for (const auto& f : failures) os << "not exact at " << f << "\n";
    return os.str();
}

LesReport les_check(const FiniteGModule& m, const std::vector<int>& h) {
    check_sizes(m);
    const auto& g = m.group();
    if (!g.is_index_two(h)) throw PreconditionError("les_check: H is not a subgroup of index 2");
    const auto& a = m.module();
    const std::size_t n = a.dim();
    const std::set<int> hs(h.begin(), h.end());

    // B = A + A; H diagonal, g outside H sends (x, y) to (g y, g x)
    CoordinateGroup b2 = CoordinateGroup::power(a, 2);
    std::vector<IntMatrix> acts;
    for (int s : g.generators()) {
        IntMatrix x(2 * n, std::vector<long long>(2 * n, 0));
        const bool inside = hs.count(s) > 0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                const long long v = m.matrix(s)[r][c];
                if (inside) {
                    x[r][c] = v;
                    x[n + r][n + c] = v;
                } else {
                    x[r][n + c] = v;
                    x[n + r][c] = v;
                }
            }
        acts.push_back(std::move(x));
    }
    const FiniteGModule tw = twist(m, h);
    const FiniteGModule bm(g, b2, acts);

    IntHom iota{a, b2, IntMatrix(2 * n, std::vector<long long>(n, 0))};
    IntHom pi{b2, a, IntMatrix(n, std::vector<long long>(2 * n, 0))};
    IntHom lift{a, b2, IntMatrix(2 * n, std::vector<long long>(n, 0))};
    IntHom first{b2, a, IntMatrix(n, std::vector<long long>(2 * n, 0))};
    for (std::size_t r = 0; r < n; ++r) {
        iota.m[r][r] = 1;
        iota.m[n + r][r] = -1;
        pi.m[r][r] = 1;
        pi.m[r][n + r] = 1;
        lift.m[r][r] = 1;
        first.m[r][r] = 1;
    }
    const std::size_t blocks1 = g.order() - 1, blocks2 = blocks1 * blocks1;
    auto blocks_of = [&](int deg) { return deg == 1 ? blocks1 : deg == 2 ? blocks2 : std::size_t{1}; };

    // the twelve terms
    std::vector<TateGroup> t;
    LesReport rep;
    for (int deg = -1; deg <= 2; ++deg) {
        t.push_back(tate(tw, deg));
        t.push_back(tate(bm, deg));
        t.push_back(tate(m, deg));
        for (const char* name : {"(G,A~)", "(G,Ind A)", "(G,A)"}) rep.labels.push_back("H^" + std::to_string(deg) + name);
    }
    for (const auto& x : t) rep.terms.push_back(x.value);

    // maps out of term k into term k+1
    std::vector<IntHom> maps;
    for (int deg = -1; deg <= 2; ++deg) {
        const std::size_t bl = blocks_of(deg);
        maps.push_back(on_cochains(iota, bl));
        maps.push_back(on_cochains(pi, bl));
        if (deg == 2) break;
        // connecting map: lift, apply the next differential, read off the A~ part
        IntHom step = deg == -1 ? bm.norm() : coboundary(bm, deg);
        IntHom conn = compose(on_cochains(first, blocks_of(deg + 1)), compose(step, on_cochains(lift, bl)));
        maps.push_back(std::move(conn));
    }
    for (std::size_t k = 1; k + 1 < t.size(); ++k) {
        const IntHom& in = maps[k - 1];
        const IntHom& out = maps[k];
        AbelianSubgroup img = image(in, t[k - 1].cocycles).plus(t[k].coboundaries);
        AbelianSubgroup ker = preimage(out, t[k + 1].coboundaries, t[k].cocycles);
        if (!t[k].cocycles.contains(img)) rep.failures.push_back(rep.labels[k] + " (image leaves the cocycles)");
        else if (!(img == ker)) rep.failures.push_back(rep.labels[k]);
    }
    rep.exact = rep.failures.empty();
    return rep;
}

// ---------------------------------------------------------------- dihedral statements

namespace {

void require_dihedral(const FiniteGModule& m) {
    if (m.group().kind() != FiniteGroup::Kind::generalized_dihedral)
        throw PreconditionError("expected a module over a generalized-dihedral group");
}

IntHom one_minus(const FiniteGModule& m, int g) {
    IntHom d = m.hom(g);
    for (std::size_t r = 0; r < d.m.size(); ++r)
        for (std::size_t c = 0; c < d.m.size(); ++c) d.m[r][c] = md((r == c ? 1 : 0) - d.m[r][c], m.module().moduli()[r]);
    return d;
}

IntHom plus_one(const FiniteGModule& m, int g) {
    IntHom d = m.hom(g);
    for (std::size_t r = 0; r < d.m.size(); ++r) d.m[r][r] = md(d.m[r][r] + 1, m.module().moduli()[r]);
    return d;
}

}  // namespace

DihedralHypotheses dihedral_hypotheses(const FiniteGModule& m) {
    require_dihedral(m);
    const auto& g = m.group();
    DihedralHypotheses hy;
    std::vector<int> emb;
    FiniteGroup hg = g.subgroup(g.h_generators(), emb);
    hy.h1_h_trivial = tate(restrict_to(m, hg, emb), 1).value.is_trivial();
    // theta has order 2, so |H^1(<theta>, A^H)| = |H^-1(<theta>, A^H)|, which
    // is ker(1 + theta) / (1 - theta) on A^H
    const AbelianSubgroup ah = m.fixed(g.h_generators());
    const int th = g.theta();
    AbelianSubgroup ker = preimage(plus_one(m, th), AbelianSubgroup::zero(m.module()), ah);
    AbelianSubgroup img = image(one_minus(m, th), ah);
    hy.h1_theta_trivial = ker == img;
    return hy;
}

AbelianSubgroup twisted_norm_kernel(const FiniteGModule& m) {
    require_dihedral(m);
    const auto& g = m.group();
    IntHom nh = m.norm(g.h_elements());
    IntHom tw = compose(one_minus(m, g.theta()), nh);
    return kernel(tw);
}

DihedralSplit dihedral_decompose(const FiniteGModule& m, const Coords& a_in) {
    require_dihedral(m);
    const auto& g = m.group();
    if (g.h_generators().size() != 1) throw PreconditionError("dihedral_decompose: H must be cyclic");
    const auto hyp = dihedral_hypotheses(m);
    if (!hyp.h1_h_trivial) throw PreconditionError("dihedral_decompose: H^1(H, A) is not trivial");
    if (!hyp.h1_theta_trivial) throw PreconditionError("dihedral_decompose: H^1(<theta>, A^H) is not trivial");
    const auto& a = m.module();
    const Coords x = a.reduce(a_in);
    const int h = g.h_generators()[0];
    const int th = g.theta();
    const int thh = g.mul(th, h);
    if (!m.fixed({th}).contains(m.norm(g.h_elements())(x)))
        throw PreconditionError("dihedral_decompose: N_H(a) is not fixed by theta");

    const Coords b = a.sub(x, m.act(th, x));
    // N_H(b) = 0 and Ĥ^-1(H, A) = 0 give c with (1 - h)c = b
    auto c = solve(one_minus(m, h), b);
    if (!c) throw InternalError("dihedral_decompose: no witness for (1 - h)c = a - theta a");
    const Coords w = a.sub(*c, m.act(thh, *c));
    const AbelianSubgroup ah = m.fixed({h});
    if (!ah.contains(w)) throw InternalError("dihedral_decompose: c - theta h c is not H-invariant");
    // solve (1 - theta h)d = w with d in A^H
    const auto ah_gens = ah.generators();
    std::vector<Coords> images;
    const IntHom om = one_minus(m, thh);
    for (const auto& v : ah_gens) images.push_back(om(v));
    auto coeffs = combination(a, images, w);
    if (!coeffs) throw InternalError("dihedral_decompose: no d in A^H with (1 - theta h)d = w");
    Coords d = a.zero();
    for (std::size_t j = 0; j < ah_gens.size(); ++j) d = a.add(d, a.scale((*coeffs)[j], ah_gens[j]));
    const Coords e = a.sub(*c, d);
    DihedralSplit out{a.add(x, m.act(th, e)), a.neg(m.act(th, e)), *c, d};
    if (m.act(th, out.a1) != out.a1) throw InternalError("dihedral_decompose: a1 is not fixed by theta");
    if (m.act(g.mul(h, th), out.a2) != out.a2) throw InternalError("dihedral_decompose: a2 is not fixed by h theta");
    if (a.add(out.a1, out.a2) != x) throw InternalError("dihedral_decompose: a1 + a2 differs from a");
    return out;
}

PiSubgroup pi_subgroup(const FiniteGModule& m) {
    require_dihedral(m);
    const auto& g = m.group();
    const int th = g.theta();
    AbelianSubgroup full = AbelianSubgroup::zero(m.module());
    for (int h : g.h_elements()) full = full.plus(m.fixed({g.mul(h, th)}));
    const auto& hg = g.h_generators();
    AbelianSubgroup reduced = AbelianSubgroup::zero(m.module());
    std::vector<int> used;
    for (std::size_t mask = 0; mask < (std::size_t{1} << hg.size()); ++mask) {
        int x = g.identity();
        for (std::size_t i = 0; i < hg.size(); ++i)
            if (mask & (std::size_t{1} << i)) x = g.mul(x, hg[i]);
        used.push_back(g.mul(x, th));
        reduced = reduced.plus(m.fixed({used.back()}));
    }
    const bool holds = full == reduced;
    return {std::move(full), std::move(reduced), std::move(used), holds};
}

}  // namespace xprod
