#include "xprod/finite_abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace xprod {

namespace {

using i128 = __int128;
using Mat = std::vector<std::vector<long long>>;
using Local = AbelianSubgroup::Local;

long long md(long long x, long long q) {
    x %= q;
    return x < 0 ? x + q : x;
}

long long mulm(long long a, long long b, long long q) {
    return static_cast<long long>(static_cast<i128>(a) * b % q);
}

long long ipow(long long p, int k) {
    long long r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

long long inv_mod(long long a, long long q) {
    long long g = q, x = 0, x1 = 1, a1 = md(a, q);
    while (a1 != 0) {
        long long t = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - t * a1);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    if (g != 1) throw InternalError("inv_mod: not a unit");
    return md(x, q);
}

struct Ring {
    long long p;
    int e;
    long long q;
    Ring(long long p_, int e_) : p(p_), e(e_), q(ipow(p_, e_)) {}
    int val(long long x) const {
        x = md(x, q);
        if (x == 0) return e;
        int v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    }
};

std::vector<std::pair<long long, int>> factor(long long n) {
    std::vector<std::pair<long long, int>> out;
    for (long long p = 2; p * p <= n; ++p) {
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        if (k) out.emplace_back(p, k);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int exponent_of(long long p, long long n) {
    int k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

// Smith form of a (rows x n) over Z/p^e. vals holds the pivot valuations
// (all < e); vt is the column transform stored transposed, w its inverse.
struct LocalSnf {
    std::vector<int> vals;
    Mat vt;
    Mat w;
};

LocalSnf local_snf(Mat b, std::size_t n, const Ring& r, bool want_v, bool want_w) {
    const long long q = r.q;
    // products of residues fit in 64 bits below 2^31
    const bool narrow = q < (1LL << 31);
    auto mul = [q, narrow](long long x, long long y) { return narrow ? x * y % q : mulm(x, y, q); };
    LocalSnf out;
    if (want_v || want_w) {
        Mat id(n, std::vector<long long>(n, 0));
        for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
        if (want_v) out.vt = id;
        if (want_w) out.w = std::move(id);
    }
    for (auto& row : b)
        for (auto& x : row) x = md(x, q);
    const std::size_t rows = b.size();
    std::vector<std::size_t> nz;
    std::size_t t = 0;
    while (t < rows && t < n) {
        int best = r.e;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = t; i < rows && best > 0; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (b[i][j] == 0) continue;
                int v = r.val(b[i][j]);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        if (best == r.e) break;
        std::swap(b[t], b[bi]);
        if (bj != t) {
            for (auto& row : b) std::swap(row[t], row[bj]);
            if (want_v) std::swap(out.vt[t], out.vt[bj]);
            if (want_w) std::swap(out.w[t], out.w[bj]);
        }
        const long long pv = ipow(r.p, best);
        const long long unit = b[t][t] / pv;
        const long long uinv = inv_mod(unit, q);
        for (std::size_t i = t; i < rows; ++i)
            if (b[i][t]) b[i][t] = mul(b[i][t], uinv);
        if (want_v)
            for (auto& x : out.vt[t]) x = mul(x, uinv);
        if (want_w)
            for (auto& x : out.w[t]) x = mul(x, unit);
        nz.clear();
        for (std::size_t j = t; j < n; ++j)
            if (b[t][j]) nz.push_back(j);
        // clear column t below the pivot
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (b[i][t] == 0) continue;
            const long long f = b[i][t] / pv;
            auto& row = b[i];
            for (std::size_t j : nz) {
                row[j] -= mul(f, b[t][j]);
                if (row[j] < 0) row[j] += q;
            }
        }
        // clear row t to the right
        std::vector<std::size_t> vnz;
        if (want_v)
            for (std::size_t k = 0; k < n; ++k)
                if (out.vt[t][k]) vnz.push_back(k);
        for (std::size_t j : nz) {
            if (j == t) continue;
            const long long f = b[t][j] / pv;
            b[t][j] = 0;
            if (want_v)
                for (std::size_t k : vnz) {
                    auto& x = out.vt[j][k];
                    x -= mul(f, out.vt[t][k]);
                    if (x < 0) x += q;
                }
            if (want_w)
                for (std::size_t c = 0; c < n; ++c)
                    if (out.w[j][c]) out.w[t][c] = (out.w[t][c] + mul(f, out.w[j][c])) % q;
        }
        out.vals.push_back(best);
        ++t;
    }
    return out;
}

// Generators of {x in (Z/p^e)^n : c x = 0}.
Mat local_kernel(const Mat& c, std::size_t n, const Ring& r) {
    LocalSnf s = local_snf(c, n, r, true, false);
    Mat out;
    for (std::size_t i = 0; i < n; ++i) {
        long long scale = 1;
        if (i < s.vals.size()) {
            if (s.vals[i] == 0) continue;
            scale = ipow(r.p, r.e - s.vals[i]);
        }
        std::vector<long long> col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = mulm(s.vt[i][k], scale, r.q);
        out.push_back(std::move(col));
    }
    return out;
}

void normalize(Local& loc) {
    const Ring r(loc.p, loc.e);
    const std::size_t n = loc.coords.size();
    LocalSnf s = local_snf(loc.basis, n, r, false, true);
    loc.basis.clear();
    loc.log_size = 0;
    for (std::size_t i = 0; i < s.vals.size(); ++i) {
        const long long pv = ipow(r.p, s.vals[i]);
        std::vector<long long> row(n);
        for (std::size_t k = 0; k < n; ++k) row[k] = mulm(s.w[i][k], pv, r.q);
        loc.basis.push_back(std::move(row));
        loc.log_size += r.e - s.vals[i];
    }
}

std::vector<Local> frames(const CoordinateGroup& g) {
    std::set<long long> primes;
    for (long long d : g.moduli())
        for (auto [p, k] : factor(d)) primes.insert(p);
    std::vector<Local> out;
    for (long long p : primes) {
        Local loc;
        loc.p = p;
        for (std::size_t s = 0; s < g.dim(); ++s) {
            int k = exponent_of(p, g.moduli()[s]);
            if (k == 0) continue;
            loc.coords.push_back(s);
            loc.k.push_back(k);
            loc.e = std::max(loc.e, k);
        }
        out.push_back(std::move(loc));
    }
    return out;
}

std::vector<long long> to_scaled(const Local& loc, const Coords& x) {
    std::vector<long long> y(loc.coords.size());
    for (std::size_t t = 0; t < y.size(); ++t)
        y[t] = md(x[loc.coords[t]], ipow(loc.p, loc.k[t])) * ipow(loc.p, loc.e - loc.k[t]);
    return y;
}

// unscaled p-coordinates of a scaled row
std::vector<long long> unscale(const Local& loc, const std::vector<long long>& y) {
    std::vector<long long> u(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) u[t] = y[t] / ipow(loc.p, loc.e - loc.k[t]);
    return u;
}

long long idempotent(long long d, long long p, int k) {
    const long long pk = ipow(p, k);
    if (pk == d) return 1;
    const long long m = d / pk;
    return mulm(m, inv_mod(m % pk, pk), d);
}

// add the p-part with unscaled coordinates u into the global vector x
void add_unscaled(const CoordinateGroup& g, const Local& loc, const std::vector<long long>& u, Coords& x) {
    for (std::size_t t = 0; t < u.size(); ++t) {
        const std::size_t s = loc.coords[t];
        const long long d = g.moduli()[s];
        x[s] = md(x[s] + mulm(md(u[t], d), idempotent(d, loc.p, loc.k[t]), d), d);
    }
}

const Local* find_prime(const std::vector<Local>& parts, long long p) {
    for (const auto& l : parts)
        if (l.p == p) return &l;
    return nullptr;
}

bool is_whole(const Local& loc) {
    int total = 0;
    for (int k : loc.k) total += k;
    return loc.log_size == total;
}

// images under f of the domain basis rows at prime p, as unscaled domain
// rows and scaled target columns over Z/p^E
struct LocalMap {
    std::vector<std::vector<long long>> dom_unscaled;
    Mat images;  // one row per domain generator, over target p-coords scaled to E
};

LocalMap local_map(const IntHom& f, const Local& dom, const Local* tgt, int big_e) {
    LocalMap out;
    if (is_whole(dom)) {
        for (std::size_t t = 0; t < dom.coords.size(); ++t) {
            std::vector<long long> u(dom.coords.size(), 0);
            u[t] = 1;
            out.dom_unscaled.push_back(std::move(u));
        }
    } else {
        for (const auto& row : dom.basis) out.dom_unscaled.push_back(unscale(dom, row));
    }
    if (!tgt) return out;
    const long long qe = ipow(dom.p, big_e);
    std::vector<std::size_t> nz;
    for (const auto& u : out.dom_unscaled) {
        nz.clear();
        for (std::size_t t = 0; t < u.size(); ++t)
            if (u[t]) nz.push_back(t);
        std::vector<long long> img(tgt->coords.size());
        for (std::size_t r = 0; r < tgt->coords.size(); ++r) {
            const long long pk = ipow(dom.p, tgt->k[r]);
            const auto& mrow = f.m[tgt->coords[r]];
            long long acc = 0;
            for (std::size_t t : nz) acc = md(acc + mulm(md(mrow[dom.coords[t]], pk), u[t], pk), pk);
            img[r] = mulm(acc, ipow(dom.p, big_e - tgt->k[r]), qe);
        }
        out.images.push_back(std::move(img));
    }
    return out;
}

}  // namespace

CoordinateGroup::CoordinateGroup(std::vector<long long> moduli) : moduli_(std::move(moduli)) {
    for (long long d : moduli_)
        if (d < 1) throw PreconditionError("CoordinateGroup: moduli must be positive");
}

CoordinateGroup CoordinateGroup::power(const CoordinateGroup& base, std::size_t copies) {
    std::vector<long long> m;
    for (std::size_t i = 0; i < copies; ++i) m.insert(m.end(), base.moduli_.begin(), base.moduli_.end());
    return CoordinateGroup(std::move(m));
}

Coords CoordinateGroup::reduce(Coords x) const {
    if (x.size() != dim()) throw PreconditionError("CoordinateGroup: wrong vector length");
    for (std::size_t i = 0; i < dim(); ++i) x[i] = md(x[i], moduli_[i]);
    return x;
}

Coords CoordinateGroup::add(const Coords& a, const Coords& b) const {
    Coords r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = md(a[i] + b[i], moduli_[i]);
    return r;
}

Coords CoordinateGroup::sub(const Coords& a, const Coords& b) const {
    Coords r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = md(a[i] - b[i], moduli_[i]);
    return r;
}

Coords CoordinateGroup::neg(const Coords& a) const { return scale(-1, a); }

Coords CoordinateGroup::scale(long long k, const Coords& a) const {
    Coords r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = mulm(md(k, moduli_[i]), md(a[i], moduli_[i]), moduli_[i]);
    return r;
}

bool CoordinateGroup::is_zero(const Coords& a) const {
    for (std::size_t i = 0; i < dim(); ++i)
        if (md(a[i], moduli_[i]) != 0) return false;
    return true;
}

Z CoordinateGroup::order() const {
    Z r = 1;
    for (long long d : moduli_) r *= static_cast<long>(d);
    return r;
}

std::uint64_t CoordinateGroup::small_order(std::uint64_t limit) const {
    std::uint64_t r = 1;
    for (long long d : moduli_) {
        r *= static_cast<std::uint64_t>(d);
        if (r > limit) throw PreconditionError("CoordinateGroup: too large to enumerate");
    }
    return r;
}

std::uint64_t CoordinateGroup::index(const Coords& a) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < dim(); ++i)
        r = r * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(md(a[i], moduli_[i]));
    return r;
}

Coords CoordinateGroup::element(std::uint64_t index) const {
    Coords r(dim());
    for (std::size_t i = dim(); i-- > 0;) {
        const auto d = static_cast<std::uint64_t>(moduli_[i]);
        r[i] = static_cast<long long>(index % d);
        index /= d;
    }
    return r;
}

std::vector<long long> CoordinateGroup::primes() const {
    std::set<long long> ps;
    for (long long d : moduli_)
        for (auto [p, k] : factor(d)) ps.insert(p);
    return {ps.begin(), ps.end()};
}

FiniteAbelianGroup CoordinateGroup::structure() const { return FiniteAbelianGroup::from_cyclic_orders(moduli_); }

std::string CoordinateGroup::str() const {
    std::ostringstream os;
    os << "Z^" << dim() << " mod (";
    for (std::size_t i = 0; i < dim(); ++i) os << (i ? "," : "") << moduli_[i];
    os << ")";
    return os.str();
}

AbelianSubgroup::AbelianSubgroup(CoordinateGroup ambient, const std::vector<Coords>& generators)
    : ambient_(std::move(ambient)), parts_(frames(ambient_)) {
    for (const auto& g : generators)
        if (g.size() != ambient_.dim()) throw PreconditionError("AbelianSubgroup: generator of wrong length");
    for (auto& loc : parts_) {
        for (const auto& g : generators) loc.basis.push_back(to_scaled(loc, g));
        normalize(loc);
    }
}

AbelianSubgroup AbelianSubgroup::whole(const CoordinateGroup& ambient) {
    std::vector<Coords> gens;
    for (std::size_t i = 0; i < ambient.dim(); ++i) {
        Coords e = ambient.zero();
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    return {ambient, gens};
}

AbelianSubgroup AbelianSubgroup::from_parts(CoordinateGroup ambient, std::vector<Local> parts) {
    AbelianSubgroup s;
    s.ambient_ = std::move(ambient);
    auto expect = frames(s.ambient_);
    if (expect.size() != parts.size()) throw InternalError("AbelianSubgroup: prime frames do not match");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].p != expect[i].p || parts[i].coords != expect[i].coords)
            throw InternalError("AbelianSubgroup: prime frames do not match");
        normalize(parts[i]);
    }
    s.parts_ = std::move(parts);
    return s;
}

std::vector<Coords> AbelianSubgroup::generators() const {
    std::vector<Coords> out;
    for (const auto& loc : parts_)
        for (const auto& row : loc.basis) {
            Coords x = ambient_.zero();
            add_unscaled(ambient_, loc, unscale(loc, row), x);
            out.push_back(std::move(x));
        }
    return out;
}

Z AbelianSubgroup::order() const {
    Z r = 1;
    for (const auto& loc : parts_) {
        Z pp;
        mpz_ui_pow_ui(pp.get_mpz_t(), static_cast<unsigned long>(loc.p), static_cast<unsigned long>(loc.log_size));
        r *= pp;
    }
    return r;
}

bool AbelianSubgroup::contains(const Coords& x) const {
    if (x.size() != ambient_.dim()) throw PreconditionError("AbelianSubgroup: vector of wrong length");
    for (const auto& loc : parts_) {
        auto y = to_scaled(loc, x);
        if (std::all_of(y.begin(), y.end(), [](long long v) { return v == 0; })) continue;
        Local tmp = loc;
        tmp.basis.push_back(std::move(y));
        normalize(tmp);
        if (tmp.log_size != loc.log_size) return false;
    }
    return true;
}

bool AbelianSubgroup::contains(const AbelianSubgroup& o) const {
    if (!(o.ambient_ == ambient_)) throw PreconditionError("AbelianSubgroup: different ambient groups");
    return plus(o).order() == order();
}

AbelianSubgroup AbelianSubgroup::plus(const AbelianSubgroup& o) const {
    if (!(o.ambient_ == ambient_)) throw PreconditionError("AbelianSubgroup: different ambient groups");
    auto parts = parts_;
    for (std::size_t i = 0; i < parts.size(); ++i)
        parts[i].basis.insert(parts[i].basis.end(), o.parts_[i].basis.begin(), o.parts_[i].basis.end());
    return from_parts(ambient_, std::move(parts));
}

AbelianSubgroup AbelianSubgroup::plus(const std::vector<Coords>& more) const {
    return plus(AbelianSubgroup(ambient_, more));
}

std::vector<Coords> AbelianSubgroup::elements(std::uint64_t limit) const {
    if (order() > static_cast<unsigned long>(limit)) throw PreconditionError("AbelianSubgroup: too large to enumerate");
    std::set<Coords> seen{ambient_.zero()};
    std::vector<Coords> frontier{ambient_.zero()};
    const auto gens = generators();
    while (!frontier.empty()) {
        std::vector<Coords> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                Coords y = ambient_.add(x, g);
                if (seen.insert(y).second) next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

FiniteAbelianGroup quotient_structure(const AbelianSubgroup& big, const AbelianSubgroup& small) {
    if (!big.contains(small)) throw PreconditionError("quotient_structure: not a subgroup");
    std::vector<long long> orders;
    for (std::size_t i = 0; i < big.parts().size(); ++i) {
        const Local& s = big.parts()[i];
        const Local& t = small.parts()[i];
        const Ring r(s.p, s.e);
        std::vector<int> c(static_cast<std::size_t>(s.e) + 2, 0);
        for (int j = 0; j <= s.e; ++j) {
            Local tmp = t;
            const long long pj = ipow(s.p, j);
            for (const auto& row : s.basis) {
                std::vector<long long> scaled(row.size());
                for (std::size_t k = 0; k < row.size(); ++k) scaled[k] = mulm(row[k], pj, r.q);
                tmp.basis.push_back(std::move(scaled));
            }
            normalize(tmp);
            c[static_cast<std::size_t>(j)] = tmp.log_size - t.log_size;
        }
        for (int j = 0; j < s.e; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            const int more_than_j = c[uj] - c[uj + 1];
            const int more_than_j1 = c[uj + 1] - c[uj + 2];
            for (int n = 0; n < more_than_j - more_than_j1; ++n) orders.push_back(ipow(s.p, j + 1));
        }
    }
    return FiniteAbelianGroup::from_cyclic_orders(orders);
}

long long order_modulo(const Coords& x, const AbelianSubgroup& sub) {
    long long l = 1;
    for (long long d : sub.ambient().moduli()) l = std::lcm(l, d);
    for (long long n = 1; n <= l; ++n)
        if (l % n == 0 && sub.contains(sub.ambient().scale(n, x))) return n;
    throw InternalError("order_modulo: exponent does not kill the element");
}

Coords IntHom::operator()(const Coords& x) const {
    if (x.size() != src.dim()) throw PreconditionError("IntHom: argument of wrong length");
    Coords y(dst.dim(), 0);
    for (std::size_t r = 0; r < dst.dim(); ++r) {
        const long long d = dst.moduli()[r];
        long long acc = 0;
        for (std::size_t s = 0; s < src.dim(); ++s)
            if (m[r][s] && x[s]) acc = md(acc + mulm(md(m[r][s], d), md(x[s], d), d), d);
        y[r] = acc;
    }
    return y;
}

bool IntHom::well_defined() const {
    if (m.size() != dst.dim()) return false;
    for (std::size_t r = 0; r < dst.dim(); ++r) {
        if (m[r].size() != src.dim()) return false;
        for (std::size_t s = 0; s < src.dim(); ++s)
            if (mulm(md(m[r][s], dst.moduli()[r]), md(src.moduli()[s], dst.moduli()[r]), dst.moduli()[r]) != 0)
                return false;
    }
    return true;
}

IntHom compose(const IntHom& outer, const IntHom& inner) {
    if (!(outer.src == inner.dst)) throw PreconditionError("compose: groups do not match");
    IntHom h{inner.src, outer.dst, IntMatrix(outer.dst.dim(), std::vector<long long>(inner.src.dim(), 0))};
    for (std::size_t r = 0; r < outer.dst.dim(); ++r) {
        const long long d = outer.dst.moduli()[r];
        for (std::size_t k = 0; k < inner.dst.dim(); ++k) {
            if (outer.m[r][k] == 0) continue;
            for (std::size_t s = 0; s < inner.src.dim(); ++s)
                if (inner.m[k][s]) h.m[r][s] = md(h.m[r][s] + mulm(md(outer.m[r][k], d), md(inner.m[k][s], d), d), d);
        }
    }
    return h;
}

AbelianSubgroup image(const IntHom& f, const AbelianSubgroup& domain) {
    if (!(domain.ambient() == f.src)) throw PreconditionError("image: domain is not in the source");
    auto parts = frames(f.dst);
    for (auto& loc : parts) {
        const Local* dom = find_prime(domain.parts(), loc.p);
        if (!dom) continue;
        LocalMap lm = local_map(f, *dom, &loc, loc.e);
        loc.basis = std::move(lm.images);
    }
    return AbelianSubgroup::from_parts(f.dst, std::move(parts));
}

AbelianSubgroup image(const IntHom& f) { return image(f, AbelianSubgroup::whole(f.src)); }

AbelianSubgroup preimage(const IntHom& f, const AbelianSubgroup& target, const AbelianSubgroup& domain) {
    if (!(domain.ambient() == f.src) || !(target.ambient() == f.dst))
        throw PreconditionError("preimage: groups do not match");
    std::vector<Local> parts = domain.parts();
    for (auto& loc : parts) {
        const Local* tgt = find_prime(target.parts(), loc.p);
        if (!tgt) continue;  // f kills the p-part
        const int big_e = std::max(loc.e, tgt->e);
        const Ring r(loc.p, big_e);
        LocalMap lm = local_map(f, loc, tgt, big_e);
        const std::size_t nj = lm.dom_unscaled.size();
        const std::size_t nl = tgt->basis.size();
        const std::size_t rows = tgt->coords.size();
        Mat sys(rows, std::vector<long long>(nj + nl, 0));
        const long long lift = ipow(loc.p, big_e - tgt->e);
        for (std::size_t j = 0; j < nj; ++j)
            for (std::size_t k = 0; k < rows; ++k) sys[k][j] = lm.images[j][k];
        for (std::size_t l = 0; l < nl; ++l)
            for (std::size_t k = 0; k < rows; ++k) sys[k][nj + l] = md(-mulm(tgt->basis[l][k], lift, r.q), r.q);
        Mat ker = local_kernel(sys, nj + nl, r);
        const long long qd = ipow(loc.p, loc.e);
        Mat rows_out;
        for (const auto& kv : ker) {
            std::vector<long long> x(loc.coords.size(), 0);
            for (std::size_t j = 0; j < nj; ++j) {
                if (kv[j] == 0) continue;
                for (std::size_t t = 0; t < x.size(); ++t) {
                    const long long sc = ipow(loc.p, loc.e - loc.k[t]);
                    x[t] = md(x[t] + mulm(kv[j] % qd, mulm(lm.dom_unscaled[j][t], sc, qd), qd), qd);
                }
            }
            rows_out.push_back(std::move(x));
        }
        loc.basis = std::move(rows_out);
    }
    return AbelianSubgroup::from_parts(f.src, std::move(parts));
}

AbelianSubgroup kernel(const IntHom& f) {
    return preimage(f, AbelianSubgroup::zero(f.dst), AbelianSubgroup::whole(f.src));
}

std::optional<Coords> solve(const IntHom& f, const Coords& y) {
    if (y.size() != f.dst.dim()) throw PreconditionError("solve: target of wrong length");
    const auto src_parts = frames(f.src);
    Coords x = f.src.zero();
    for (const auto& tgt : frames(f.dst)) {
        auto ys = to_scaled(tgt, y);
        if (std::all_of(ys.begin(), ys.end(), [](long long v) { return v == 0; })) continue;
        const Local* dom = find_prime(src_parts, tgt.p);
        if (!dom) return std::nullopt;
        Local whole = *dom;
        whole.log_size = 0;
        for (int k : whole.k) whole.log_size += k;
        const int big_e = std::max(dom->e, tgt.e);
        const Ring r(tgt.p, big_e);
        LocalMap lm = local_map(f, whole, &tgt, big_e);
        const std::size_t nj = lm.dom_unscaled.size();
        const long long lift = ipow(tgt.p, big_e - tgt.e);
        Mat sys(tgt.coords.size(), std::vector<long long>(nj + 1, 0));
        for (std::size_t k = 0; k < tgt.coords.size(); ++k) {
            for (std::size_t j = 0; j < nj; ++j) sys[k][j] = lm.images[j][k];
            sys[k][nj] = md(-mulm(ys[k], lift, r.q), r.q);
        }
        bool found = false;
        for (const auto& kv : local_kernel(sys, nj + 1, r)) {
            if (r.val(kv[nj]) != 0) continue;
            const long long linv = inv_mod(kv[nj], r.q);
            std::vector<long long> u(nj);
            for (std::size_t j = 0; j < nj; ++j) u[j] = mulm(kv[j], linv, r.q) % ipow(tgt.p, dom->k[j]);
            add_unscaled(f.src, *dom, u, x);
            found = true;
            break;
        }
        if (!found) return std::nullopt;
    }
    if (f(x) != f.dst.reduce(y)) throw InternalError("solve: solution does not check");
    return x;
}

std::optional<std::vector<long long>> combination(const CoordinateGroup& g, const std::vector<Coords>& gens,
                                                  const Coords& x) {
    long long l = 1;
    for (long long d : g.moduli()) l = std::lcm(l, d);
    IntHom h{CoordinateGroup(std::vector<long long>(gens.size(), l)), g,
             IntMatrix(g.dim(), std::vector<long long>(gens.size(), 0))};
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t r = 0; r < g.dim(); ++r) h.m[r][j] = gens[j][r];
    return solve(h, x);
}

}  // namespace xprod
