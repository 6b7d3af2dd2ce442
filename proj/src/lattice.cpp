#include "xprod/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

namespace xprod {

// -------------------------------------------------------------- GradeVector

bool GradeVector::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Q& x) { return sgn(x) == 0; });
}

GradeVector& GradeVector::operator+=(const GradeVector& o) {
    if (o.rank() != rank()) throw PreconditionError("grade vectors of different rank");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
}

GradeVector& GradeVector::operator-=(const GradeVector& o) {
    if (o.rank() != rank()) throw PreconditionError("grade vectors of different rank");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
}

GradeVector GradeVector::operator-() const {
    GradeVector r = *this;
    for (auto& x : r.coords) x = -x;
    return r;
}

std::string GradeVector::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ",";
        out += coords[i].get_str();
    }
    return out + ")";
}

// ------------------------------------------------------- integer normal forms

namespace {

void swap_rows(ZMatrix& m, std::size_t a, std::size_t b) {
    if (a != b) std::swap(m[a], m[b]);
}

void swap_cols(ZMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : m) std::swap(row[a], row[b]);
}

// row_t += f * row_s
void add_row(ZMatrix& m, std::size_t t, std::size_t s, const Z& f) {
    for (std::size_t c = 0; c < m[t].size(); ++c) m[t][c] += f * m[s][c];
}

void add_col(ZMatrix& m, std::size_t t, std::size_t s, const Z& f) {
    for (auto& row : m) row[t] += f * row[s];
}

ZMatrix identity(std::size_t n) {
    ZMatrix m(n, std::vector<Z>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

}  // namespace

ZMatrix hermite_rows(ZMatrix a, std::size_t cols) {
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        for (;;) {
            std::size_t best = a.size();
            for (std::size_t r = row; r < a.size(); ++r)
                if (a[r][c] != 0 && (best == a.size() || abs(a[r][c]) < abs(a[best][c]))) best = r;
            if (best == a.size()) break;
            swap_rows(a, row, best);
            bool clean = true;
            for (std::size_t r = row + 1; r < a.size(); ++r) {
                if (a[r][c] == 0) continue;
                Z q = a[r][c] / a[row][c];
                add_row(a, r, row, -q);
                if (a[r][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (row < a.size() && a[row][c] != 0) {
            if (a[row][c] < 0)
                for (auto& x : a[row]) x = -x;
            for (std::size_t r = 0; r < row; ++r) {
                Z q;
                mpz_fdiv_q(q.get_mpz_t(), a[r][c].get_mpz_t(), a[row][c].get_mpz_t());
                if (q != 0) add_row(a, r, row, -q);
            }
            ++row;
        }
    }
    a.resize(row);
    return a;
}

SmithForm smith_normal_form(const ZMatrix& input, std::size_t cols) {
    ZMatrix a = input;
    const std::size_t rows = a.size();
    SmithForm out{{}, identity(rows), identity(cols)};
    const std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pr = rows, pc = cols;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c)
                    if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) {
                        pr = r;
                        pc = c;
                    }
            if (pr == rows) break;
            swap_rows(a, t, pr);
            swap_rows(out.left, t, pr);
            swap_cols(a, t, pc);
            swap_cols(out.right, t, pc);
            bool clean = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (a[r][t] == 0) continue;
                Z q = a[r][t] / a[t][t];
                add_row(a, r, t, -q);
                add_row(out.left, r, t, -q);
                if (a[r][t] != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (a[t][c] == 0) continue;
                Z q = a[t][c] / a[t][t];
                add_col(a, c, t, -q);
                add_col(out.right, c, t, -q);
                if (a[t][c] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility of the remaining block by the pivot
            std::size_t bad = rows;
            for (std::size_t r = t + 1; r < rows && bad == rows; ++r)
                for (std::size_t c = t + 1; c < cols; ++c)
                    if (a[r][c] % a[t][t] != 0) {
                        bad = r;
                        break;
                    }
            if (bad == rows) break;
            add_row(a, t, bad, 1);
            add_row(out.left, t, bad, 1);
        }
        if (a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
            for (auto& x : out.left[t]) x = -x;
        }
        out.diagonal.push_back(a[t][t]);
    }
    return out;
}

// --------------------------------------------------------- FiniteAbelianGroup

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(const std::vector<long long>& orders) {
    ZMatrix m(orders.size(), std::vector<Z>(orders.size()));
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 1) throw PreconditionError("cyclic order must be positive");
        m[i][i] = static_cast<long>(orders[i]);
    }
    auto snf = smith_normal_form(m, orders.size());
    FiniteAbelianGroup g;
    for (const auto& d : snf.diagonal)
        if (d != 1) g.invariants_.push_back(d.get_si());
    return g;
}

long long FiniteAbelianGroup::order() const {
    return std::accumulate(invariants_.begin(), invariants_.end(), 1LL, std::multiplies<>());
}

std::string FiniteAbelianGroup::str() const {
    if (invariants_.empty()) return "trivial";
    std::string out = "(";
    for (std::size_t i = 0; i < invariants_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(invariants_[i]);
    }
    return out + ")";
}

// -------------------------------------------------------------- GradeSubgroup

GradeSubgroup::GradeSubgroup(std::size_t ambient_rank, const std::vector<GradeVector>& generators,
                             long denominator_bound)
    : k_(ambient_rank), bound_(denominator_bound), den_(1) {
    for (const auto& g : generators) {
        if (g.rank() != k_) throw PreconditionError("generator of wrong rank");
        for (const auto& x : g.coords) mpz_lcm(den_.get_mpz_t(), den_.get_mpz_t(), x.get_den_mpz_t());
    }
    if (den_ > bound_)
        throw PreconditionError("common denominator " + den_.get_str() + " exceeds bound " +
                                std::to_string(bound_));
    ZMatrix rows;
    for (const auto& g : generators) {
        std::vector<Z> r;
        for (const auto& x : g.coords) {
            Q s = x * den_;
            r.push_back(s.get_num());
        }
        rows.push_back(std::move(r));
    }
    hnf_ = hermite_rows(std::move(rows), k_);
    // reduce the denominator if every entry shares a factor with it
    Z g = den_;
    for (const auto& r : hnf_)
        for (const auto& x : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1) {
        den_ /= g;
        for (auto& r : hnf_)
            for (auto& x : r) x /= g;
    }
}

GradeSubgroup GradeSubgroup::integer_lattice(std::size_t k) { return scaled_lattice(k, 1); }

GradeSubgroup GradeSubgroup::scaled_lattice(std::size_t k, long n) {
    std::vector<GradeVector> gens;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Q> c(k);
        c[i] = Q(1, n);
        gens.emplace_back(std::move(c));
    }
    return GradeSubgroup(k, gens, std::max(n, kDefaultDenominatorBound));
}

std::vector<GradeVector> GradeSubgroup::generators() const {
    std::vector<GradeVector> out;
    for (const auto& r : hnf_) {
        std::vector<Q> c;
        for (const auto& x : r) c.emplace_back(x, den_);
        out.emplace_back(std::move(c));
    }
    return out;
}

namespace {
// integer coordinates of the integer row v in the echelon basis h, if any
std::optional<std::vector<Z>> coordinates(const ZMatrix& h, const std::vector<Z>& v) {
    std::vector<Z> x(h.size());
    std::vector<Z> rest = v;
    for (std::size_t i = 0; i < h.size(); ++i) {
        std::size_t p = 0;
        while (h[i][p] == 0) ++p;
        if (rest[p] % h[i][p] != 0) return std::nullopt;
        x[i] = rest[p] / h[i][p];
        for (std::size_t c = 0; c < rest.size(); ++c) rest[c] -= x[i] * h[i][c];
    }
    for (const auto& r : rest)
        if (r != 0) return std::nullopt;
    return x;
}

std::optional<std::vector<Z>> scaled_integer(const GradeVector& v, const Z& den) {
    std::vector<Z> out;
    for (const auto& x : v.coords) {
        Q s = x * den;
        if (s.get_den() != 1) return std::nullopt;
        out.push_back(s.get_num());
    }
    return out;
}
}  // namespace

bool GradeSubgroup::contains(const GradeVector& v) const {
    if (v.rank() != k_) throw PreconditionError("grade vector of wrong rank");
    auto iv = scaled_integer(v, den_);
    return iv && coordinates(hnf_, *iv).has_value();
}

bool GradeSubgroup::contains(const GradeSubgroup& other) const {
    for (const auto& g : other.generators())
        if (!contains(g)) return false;
    return true;
}

GradeSubgroup GradeSubgroup::plus(const GradeSubgroup& other) const {
    return plus(other.generators());
}

GradeSubgroup GradeSubgroup::plus(const std::vector<GradeVector>& more) const {
    auto gens = generators();
    gens.insert(gens.end(), more.begin(), more.end());
    return GradeSubgroup(k_, gens, bound_);
}

bool GradeSubgroup::operator==(const GradeSubgroup& o) const {
    return k_ == o.k_ && den_ == o.den_ && hnf_ == o.hnf_;
}

// ------------------------------------------------------------------ quotient

Quotient quotient(const GradeSubgroup& big, const GradeSubgroup& small) {
    if (big.ambient_rank() != small.ambient_rank())
        throw PreconditionError("quotient of subgroups in different ambient lattices");
    if (!big.contains(small)) throw PreconditionError("quotient: small is not a subgroup of big");
    if (small.rank() != big.rank()) throw PreconditionError("quotient is infinite");
    // express generators in the common scale of big
    auto big_gens = big.generators();
    ZMatrix basis;
    for (const auto& g : big_gens) basis.push_back(*scaled_integer(g, big.denominator()));
    ZMatrix rel;
    for (const auto& g : small.generators())
        rel.push_back(*coordinates(basis, *scaled_integer(g, big.denominator())));
    const std::size_t r = basis.size();
    auto snf = smith_normal_form(rel, r);
    std::vector<long long> inv;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i) {
        if (snf.diagonal[i] == 0) throw PreconditionError("quotient is infinite");
        if (snf.diagonal[i] != 1) {
            keep.push_back(i);
            inv.push_back(snf.diagonal[i].get_si());
        }
    }
    Quotient q;
    q.group = FiniteAbelianGroup::from_cyclic_orders(inv);
    const Z den = big.denominator();
    auto right = snf.right;
    q.project = [basis, right, keep, inv, den](const GradeVector& v) {
        auto iv = scaled_integer(v, den);
        std::optional<std::vector<Z>> x;
        if (iv) x = coordinates(basis, *iv);
        if (!x) throw PreconditionError("projection of an element outside the big group");
        std::vector<long long> out;
        for (std::size_t t = 0; t < keep.size(); ++t) {
            Z y = 0;
            for (std::size_t i = 0; i < x->size(); ++i) y += (*x)[i] * right[i][keep[t]];
            Z m = static_cast<long>(inv[t]);
            Z red;
            mpz_fdiv_r(red.get_mpz_t(), y.get_mpz_t(), m.get_mpz_t());
            out.push_back(red.get_si());
        }
        return out;
    };
    return q;
}

long coset_order(const GradeVector& v, const GradeSubgroup& small) {
    for (long m = 1; m <= small.denominator_bound(); ++m)
        if (small.contains(Q(m) * v)) return m;
    throw PreconditionError("no multiple of " + v.str() + " lies in the subgroup within the bound");
}

bool independence_check(const std::vector<GradeVector>& vs, const std::vector<long>& orders,
                        const GradeSubgroup& small) {
    if (vs.size() != orders.size()) return false;
    long long expected = 1;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        long m;
        try {
            m = coset_order(vs[i], small);
        } catch (const PreconditionError&) {
            return false;
        }
        if (m != orders[i]) return false;
        expected *= orders[i];
    }
    try {
        auto q = quotient(small.plus(vs), small);
        return q.group.order() == expected;
    } catch (const PreconditionError&) {
        return false;
    }
}

Z index_by_determinant(const GradeSubgroup& big, const GradeSubgroup& small) {
    const std::size_t k = big.ambient_rank();
    if (big.rank() != k || small.rank() != k)
        throw PreconditionError("index_by_determinant needs full-rank subgroups");
    auto det_q = [k](const GradeSubgroup& g) -> Q {
        Q d = 1;
        auto gens = g.generators();  // upper triangular
        for (std::size_t i = 0; i < k; ++i) d *= gens[i].coords[i];
        return abs(d);
    };
    Q ratio = det_q(small) / det_q(big);
    if (ratio.get_den() != 1) throw PreconditionError("small is not contained in big");
    return ratio.get_num();
}

}  // namespace xprod
