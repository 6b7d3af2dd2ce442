#include "xprod/field.hpp"

#include <algorithm>
#include <sstream>

namespace xprod {

namespace {

QVec padded(QVec v, std::size_t n) {
    if (v.size() > n) {
        for (std::size_t i = n; i < v.size(); ++i)
            if (sgn(v[i]) != 0) throw PreconditionError("coefficient does not lie in the level below");
    }
    v.resize(n);
    return v;
}

QVec slice(const QVec& v, std::size_t start, std::size_t len) {
    return QVec(v.begin() + static_cast<long>(start), v.begin() + static_cast<long>(start + len));
}

void add_into(QVec& acc, const QVec& v, std::size_t offset = 0) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) acc[offset + i] += v[i];
}

void sub_into(QVec& acc, const QVec& v, std::size_t offset = 0) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) acc[offset + i] -= v[i];
}

QVec scaled(QVec v, const Q& q) {
    for (auto& x : v) x *= q;
    return v;
}

QVec unit(std::size_t n, std::size_t k) {
    QVec v(n);
    v[k] = 1;
    return v;
}

Q eval_rational(const std::vector<Q>& monic, const Q& x) {
    Q acc = 0;
    for (auto it = monic.rbegin(); it != monic.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// all rational roots of a monic polynomial; nullopt if the divisor lists are too large
std::optional<std::vector<Q>> rational_root_list(const std::vector<Q>& monic) {
    std::vector<Q> roots;
    std::vector<Q> poly = monic;
    while (sgn(poly[0]) == 0 && poly.size() > 1) {
        roots.push_back(0);
        poly.erase(poly.begin());
    }
    if (poly.size() == 1) return roots;
    Z l = lcm_of_denominators(poly);
    std::vector<Z> ints;
    for (const auto& c : poly) {
        Q scaled_c = c * l;
        ints.push_back(scaled_c.get_num());
    }
    auto ps = positive_divisors(ints.front());
    auto qs = positive_divisors(ints.back());
    if (ps.empty() || qs.empty()) return std::nullopt;
    for (const auto& p : ps)
        for (const auto& q : qs)
            for (int s : {1, -1}) {
                Q cand(s * p, q);
                cand.canonicalize();
                if (sgn(eval_rational(poly, cand)) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    return roots;
}

RootSearch rational_roots(const std::vector<Q>& monic) {
    auto r = rational_root_list(monic);
    if (!r) return RootSearch::Unknown;
    return r->empty() ? RootSearch::NoRoot : RootSearch::HasRoot;
}

}  // namespace

// ---------------------------------------------------------------- FieldTower

TowerPtr FieldTower::make(std::vector<TowerStep> steps) {
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->dims_.push_back(1);
    for (std::size_t j = 0; j < steps.size(); ++j) {
        auto& st = steps[j];
        if (st.degree < 1) throw PreconditionError("step '" + st.name + "' has degree < 1");
        if (st.name.empty()) throw PreconditionError("tower step without a name");
        for (std::size_t i = 0; i < j; ++i)
            if (steps[i].name == st.name)
                throw PreconditionError("duplicate generator name '" + st.name + "'");
        if (st.coefficients.size() != static_cast<std::size_t>(st.degree) + 1)
            throw PreconditionError("step '" + st.name + "' needs " +
                                    std::to_string(st.degree + 1) + " coefficients");
        const std::size_t below = t->dims_.back();
        for (auto& c : st.coefficients) c = padded(std::move(c), below);
        if (st.coefficients.back() != unit(below, 0))
            throw PreconditionError("minimal polynomial of '" + st.name + "' is not monic");
        t->steps_.push_back(st);
        t->dims_.push_back(below * static_cast<std::size_t>(st.degree));
        // the levels below are complete, so the root search can use them
        StepStatus status = StepStatus::Provisional;
        if (st.degree == 1) {
            status = StepStatus::Irreducible;
        } else if (st.degree <= 4) {
            RootSearch r = t->root_search(j, st.coefficients);
            if (r == RootSearch::HasRoot)
                throw PreconditionError("minimal polynomial of '" + st.name +
                                        "' has a root in the tower below");
            auto irreducible = decide_irreducible(*t, j, st.coefficients);
            if (irreducible && !*irreducible)
                throw PreconditionError("minimal polynomial of '" + st.name +
                                        "' factors over the tower below");
            if (irreducible) status = StepStatus::Irreducible;
            else if (r == RootSearch::NoRoot && st.degree == 4) status = StepStatus::RootFree;
        }
        t->status_.push_back(status);
    }
    const std::size_t d = t->degree();
    if (d <= 64) {
        t->table_.resize(d * d);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a; b < d; ++b) {
                QVec p = t->mul_rec(t->level_count(), unit(d, a), unit(d, b));
                std::vector<Term> terms;
                for (std::size_t k = 0; k < d; ++k)
                    if (sgn(p[k]) != 0) terms.push_back({static_cast<std::uint32_t>(k), p[k]});
                t->table_[a * d + b] = terms;
                t->table_[b * d + a] = std::move(terms);
            }
    }
    return t;
}

bool FieldTower::provisional() const {
    return std::any_of(status_.begin(), status_.end(),
                       [](StepStatus s) { return s == StepStatus::Provisional; });
}

std::size_t FieldTower::generator_index(std::string_view name) const {
    for (std::size_t i = 0; i < steps_.size(); ++i)
        if (steps_[i].name == name) return i;
    throw PreconditionError("unknown generator '" + std::string(name) + "'");
}

std::vector<int> FieldTower::basis_exponents(std::size_t k) const {
    std::vector<int> e(steps_.size());
    for (std::size_t j = 0; j < steps_.size(); ++j) {
        e[j] = static_cast<int>(k % static_cast<std::size_t>(steps_[j].degree));
        k /= static_cast<std::size_t>(steps_[j].degree);
    }
    return e;
}

std::string FieldTower::basis_label(std::size_t k) const {
    auto e = basis_exponents(k);
    std::string out;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        if (!out.empty()) out += "*";
        out += steps_[j].name;
        if (e[j] > 1) out += "^" + std::to_string(e[j]);
    }
    return out.empty() ? "1" : out;
}

QVec FieldTower::mul_rec(std::size_t level, const QVec& a, const QVec& b) const {
    if (level == 0) return {a[0] * b[0]};
    const auto& st = steps_[level - 1];
    const std::size_t d = static_cast<std::size_t>(st.degree);
    const std::size_t below = dims_[level - 1];
    std::vector<QVec> prod(2 * d - 1, QVec(below));
    std::vector<QVec> ac, bc;
    for (std::size_t e = 0; e < d; ++e) {
        ac.push_back(slice(a, e * below, below));
        bc.push_back(slice(b, e * below, below));
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (xprod::is_zero(ac[i])) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (xprod::is_zero(bc[j])) continue;
            add_into(prod[i + j], mul_rec(level - 1, ac[i], bc[j]));
        }
    }
    for (std::size_t e = 2 * d - 2; e >= d; --e) {
        if (xprod::is_zero(prod[e])) continue;
        for (std::size_t t = 0; t < d; ++t) {
            if (xprod::is_zero(st.coefficients[t])) continue;
            sub_into(prod[e - d + t], mul_rec(level - 1, prod[e], st.coefficients[t]));
        }
    }
    QVec out(dims_[level]);
    for (std::size_t e = 0; e < d; ++e) add_into(out, prod[e], e * below);
    return out;
}

QVec FieldTower::mul(std::size_t level, const QVec& a, const QVec& b) const {
    if (level == level_count() && !table_.empty()) return mul_top(a, b);
    return mul_rec(level, a, b);
}

QVec FieldTower::mul_top(const QVec& a, const QVec& b) const {
    const std::size_t d = degree();
    if (table_.empty()) return mul_rec(level_count(), a, b);
    QVec out(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (sgn(b[j]) == 0) continue;
            Q ab = a[i] * b[j];
            for (const auto& t : table_[i * d + j]) out[t.index] += ab * t.value;
        }
    }
    return out;
}

QMatrix FieldTower::multiplication_matrix(std::size_t level, const QVec& a) const {
    const std::size_t n = dims_.at(level);
    QMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        QVec col = mul(level, a, unit(n, k));
        for (std::size_t r = 0; r < n; ++r) m.at(r, k) = col[r];
    }
    return m;
}

std::optional<QVec> FieldTower::inverse(std::size_t level, const QVec& a) const {
    const std::size_t n = dims_.at(level);
    if (level == 0) {
        if (sgn(a[0]) == 0) return std::nullopt;
        return QVec{1 / a[0]};
    }
    auto x = solve(multiplication_matrix(level, a), unit(n, 0));
    return x;
}

Q FieldTower::absolute_norm(std::size_t level, const QVec& a) const {
    return determinant(multiplication_matrix(level, a));
}

SqrtOutcome FieldTower::square_root(std::size_t level, const QVec& a) const {
    if (level == 0) {
        auto r = rational_root(a[0], 2);
        if (!r) return {RootSearch::NoRoot, {}};
        return {RootSearch::HasRoot, {*r}};
    }
    if (xprod::is_zero(a)) return {RootSearch::HasRoot, QVec(dims_[level])};
    const auto& st = steps_[level - 1];
    const std::size_t below = dims_[level - 1];
    if (st.degree == 1) {
        // L_level = L_{level-1}; the coordinate vector is the same
        auto r = square_root(level - 1, a);
        return r;
    }
    if (st.degree != 2) return {RootSearch::Unknown, {}};
    // g = (-m1 + s)/2 with s^2 = disc; write a = A + B s.
    const QVec& m0 = st.coefficients[0];
    const QVec& m1 = st.coefficients[1];
    const std::size_t lo = level - 1;
    QVec disc = mul(lo, m1, m1);
    sub_into(disc, scaled(m0, 4));
    QVec a0 = slice(a, 0, below), a1 = slice(a, below, below);
    QVec big_a = a0;
    sub_into(big_a, scaled(mul(lo, a1, m1), Q(1, 2)));
    QVec big_b = scaled(a1, Q(1, 2));
    auto assemble = [&](const QVec& x, const QVec& y) {
        QVec c0 = x;
        add_into(c0, mul(lo, y, m1));
        QVec out(dims_[level]);
        add_into(out, c0, 0);
        add_into(out, scaled(y, 2), below);
        return SqrtOutcome{RootSearch::HasRoot, out};
    };
    bool unknown = false;
    if (xprod::is_zero(big_b)) {
        auto r = square_root(lo, big_a);
        if (r.kind == RootSearch::HasRoot) return assemble(r.root, QVec(below));
        unknown |= r.kind == RootSearch::Unknown;
        auto dinv = inverse(lo, disc);
        if (!dinv) throw ArithmeticError("reducible tower: zero discriminant at '" + st.name + "'");
        auto r2 = square_root(lo, mul(lo, big_a, *dinv));
        if (r2.kind == RootSearch::HasRoot) return assemble(QVec(below), r2.root);
        unknown |= r2.kind == RootSearch::Unknown;
        return {unknown ? RootSearch::Unknown : RootSearch::NoRoot, {}};
    }
    QVec n2 = mul(lo, big_a, big_a);
    sub_into(n2, mul(lo, disc, mul(lo, big_b, big_b)));
    auto n = square_root(lo, n2);
    if (n.kind != RootSearch::HasRoot) return {n.kind, {}};
    for (int sign : {1, -1}) {
        QVec h = big_a;
        if (sign > 0) add_into(h, n.root); else sub_into(h, n.root);
        h = scaled(h, Q(1, 2));
        if (xprod::is_zero(h)) continue;
        auto x = square_root(lo, h);
        if (x.kind == RootSearch::Unknown) unknown = true;
        if (x.kind != RootSearch::HasRoot) continue;
        auto xinv = inverse(lo, x.root);
        if (!xinv) continue;
        QVec y = scaled(mul(lo, big_b, *xinv), Q(1, 2));
        auto cand = assemble(x.root, y);
        if (mul(level, cand.root, cand.root) == a) return cand;
    }
    return {unknown ? RootSearch::Unknown : RootSearch::NoRoot, {}};
}

RootSearch FieldTower::root_search(std::size_t level, const std::vector<QVec>& monic) const {
    const std::size_t d = monic.size() - 1;
    const std::size_t n = dims_.at(level);
    if (d == 1) return RootSearch::HasRoot;
    if (xprod::is_zero(monic[0])) return RootSearch::HasRoot;
    if (d == 2) {
        // roots exist iff c1^2/4 - c0 is a square
        QVec disc = scaled(mul(level, monic[1], monic[1]), Q(1, 4));
        sub_into(disc, monic[0]);
        return square_root(level, disc).kind;
    }
    if (level == 0) {
        std::vector<Q> c;
        for (const auto& v : monic) c.push_back(v[0]);
        return rational_roots(c);
    }
    bool pure = true;
    for (std::size_t i = 1; i < d; ++i) pure = pure && xprod::is_zero(monic[i]);
    if (d == 4 && xprod::is_zero(monic[1]) && xprod::is_zero(monic[3])) {
        // x^4 + p x^2 + q: a root x gives y = x^2 with y^2 + p y + q = 0
        QVec disc = scaled(mul(level, monic[2], monic[2]), Q(1, 4));
        sub_into(disc, monic[0]);
        auto r = square_root(level, disc);
        if (r.kind != RootSearch::HasRoot) return r.kind;
        bool unknown = false;
        for (int sign : {1, -1}) {
            QVec y = scaled(monic[2], Q(-1, 2));
            if (sign > 0) add_into(y, r.root); else sub_into(y, r.root);
            auto s = square_root(level, y);
            if (s.kind == RootSearch::HasRoot) return RootSearch::HasRoot;
            unknown |= s.kind == RootSearch::Unknown;
        }
        return unknown ? RootSearch::Unknown : RootSearch::NoRoot;
    }
    if (pure) {
        // x^d = a has a root only if N(a) is a d-th power, since N(a) = N(x)^d
        QVec a = scaled(monic[0], -1);
        Q norm = absolute_norm(level, a);
        (void)n;
        if (!rational_root(norm, static_cast<unsigned>(d))) return RootSearch::NoRoot;
    }
    return RootSearch::Unknown;
}

// -------------------------------------------------------------- FieldElement

FieldElement::FieldElement(TowerPtr tower) : tower_(std::move(tower)), coeffs_(tower_->degree()) {}

FieldElement::FieldElement(TowerPtr tower, QVec coeffs)
    : tower_(std::move(tower)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() > tower_->degree())
        throw PreconditionError("coefficient vector longer than the tower degree");
    coeffs_.resize(tower_->degree());
}

FieldElement FieldElement::rational(TowerPtr tower, const Q& q) {
    FieldElement e(std::move(tower));
    e.coeffs_[0] = q;
    return e;
}

FieldElement FieldElement::generator(TowerPtr tower, std::size_t step) {
    if (step >= tower->level_count()) throw PreconditionError("generator index out of range");
    FieldElement e(tower);
    if (tower->step(step).degree == 1) {
        // a degree-one generator is the root of x + c0
        QVec c = tower->step(step).coefficients[0];
        for (std::size_t i = 0; i < c.size(); ++i) e.coeffs_[i] = -c[i];
        return e;
    }
    e.coeffs_[tower->degree_at(step)] = 1;
    return e;
}

FieldElement FieldElement::generator(TowerPtr tower, std::string_view name) {
    auto idx = tower->generator_index(name);
    return generator(std::move(tower), idx);
}

bool FieldElement::is_one() const {
    if (sgn(coeffs_[0] - 1) != 0) return false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0) return false;
    return true;
}

bool FieldElement::in_level(std::size_t level) const {
    for (std::size_t i = tower_->degree_at(level); i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0) return false;
    return true;
}

void FieldElement::same_tower(const FieldElement& o) const {
    if (tower_ != o.tower_) throw PreconditionError("field elements from different towers");
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    same_tower(o);
    add_into(coeffs_, o.coeffs_);
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    same_tower(o);
    sub_into(coeffs_, o.coeffs_);
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    same_tower(o);
    coeffs_ = tower_->mul_top(coeffs_, o.coeffs_);
    return *this;
}

FieldElement& FieldElement::operator*=(const Q& q) {
    for (auto& c : coeffs_) c *= q;
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    same_tower(o);
    return *this *= o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const {
    return tower_ == o.tower_ && coeffs_ == o.coeffs_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero");
    auto inv = tower_->inverse(tower_->level_count(), coeffs_);
    if (!inv)
        throw ArithmeticError("reducible tower: nonzero element " + str() + " is not invertible");
    return FieldElement(tower_, std::move(*inv));
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement result = rational(tower_, 1), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

std::string FieldElement::str() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Q& c = coeffs_[k];
        if (sgn(c) == 0) continue;
        std::string label = tower_->basis_label(k);
        Q mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out << "-";
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        if (label == "1") out << mag.get_str();
        else if (mag == 1) out << label;
        else out << mag.get_str() << "*" << label;
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

std::string FieldElement::tuple() const {
    std::string out = "(";
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (k) out += ", ";
        out += coeffs_[k].get_str();
    }
    return out + ")";
}

FieldElement random_element(const TowerPtr& tower, std::mt19937_64& rng, int range,
                            bool allow_zero) {
    std::uniform_int_distribution<int> dist(-range, range);
    for (;;) {
        QVec v(tower->degree());
        for (auto& c : v) c = dist(rng);
        FieldElement e(tower, std::move(v));
        if (allow_zero || !e.is_zero()) return e;
    }
}

// --------------------------------------------------------- FieldAutomorphism

namespace {
QMatrix matrix_from_images(const TowerPtr& tower, const std::vector<FieldElement>& images) {
    const std::size_t d = tower->degree();
    QMatrix m(d, d);
    // powers of each image up to degree - 1
    std::vector<std::vector<FieldElement>> powers;
    for (std::size_t j = 0; j < images.size(); ++j) {
        std::vector<FieldElement> p{FieldElement::rational(tower, 1)};
        for (int e = 1; e < tower->step(j).degree; ++e) p.push_back(p.back() * images[j]);
        powers.push_back(std::move(p));
    }
    for (std::size_t k = 0; k < d; ++k) {
        auto e = tower->basis_exponents(k);
        FieldElement img = FieldElement::rational(tower, 1);
        for (std::size_t j = 0; j < e.size(); ++j)
            if (e[j]) img *= powers[j][static_cast<std::size_t>(e[j])];
        for (std::size_t r = 0; r < d; ++r) m.at(r, k) = img.coeffs()[r];
    }
    return m;
}
}  // namespace

FieldAutomorphism::FieldAutomorphism(TowerPtr tower, std::vector<FieldElement> images, QMatrix m,
                                     Unchecked)
    : tower_(std::move(tower)), images_(std::move(images)), matrix_(std::move(m)) {}

FieldAutomorphism::FieldAutomorphism(TowerPtr tower, std::vector<FieldElement> images)
    : tower_(std::move(tower)), images_(std::move(images)) {
    if (images_.size() != tower_->level_count())
        throw PreconditionError("automorphism needs one image per generator");
    for (const auto& im : images_)
        if (im.tower() != tower_) throw PreconditionError("automorphism image from another tower");
    matrix_ = matrix_from_images(tower_, images_);
    const std::size_t d = tower_->degree();
    // sigma(g_j) must be a root of sigma(minpoly_j); coefficients live below
    // level j so the matrix already acts correctly on them.
    for (std::size_t j = 0; j < images_.size(); ++j) {
        const auto& st = tower_->step(j);
        FieldElement acc(tower_);
        FieldElement power = FieldElement::rational(tower_, 1);
        for (int e = 0; e <= st.degree; ++e) {
            FieldElement c(tower_, st.coefficients[static_cast<std::size_t>(e)]);
            acc += FieldElement(tower_, matrix_.apply(c.coeffs())) * power;
            power *= images_[j];
        }
        if (!acc.is_zero())
            throw PreconditionError("image of '" + st.name +
                                    "' is not a root of its conjugated minimal polynomial");
    }
    if (rank(matrix_) != d) throw PreconditionError("automorphism matrix is singular");
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) {
            QVec ea(d), eb(d);
            ea[a] = 1;
            eb[b] = 1;
            QVec lhs = matrix_.apply(tower_->mul_top(ea, eb));
            QVec rhs = tower_->mul_top(matrix_.apply(ea), matrix_.apply(eb));
            if (lhs != rhs) throw PreconditionError("automorphism is not multiplicative");
        }
}

FieldAutomorphism FieldAutomorphism::identity(TowerPtr tower) {
    std::vector<FieldElement> imgs;
    for (std::size_t j = 0; j < tower->level_count(); ++j)
        imgs.push_back(FieldElement::generator(tower, j));
    const std::size_t d = tower->degree();
    return FieldAutomorphism(tower, std::move(imgs), QMatrix::identity(d), Unchecked{});
}

FieldElement FieldAutomorphism::operator()(const FieldElement& a) const {
    if (a.tower() != tower_) throw PreconditionError("automorphism applied to a foreign element");
    return FieldElement(tower_, matrix_.apply(a.coeffs()));
}

FieldAutomorphism FieldAutomorphism::compose(const FieldAutomorphism& inner) const {
    if (inner.tower_ != tower_) throw PreconditionError("composing automorphisms of different towers");
    std::vector<FieldElement> imgs;
    for (const auto& g : inner.images_) imgs.push_back((*this)(g));
    return FieldAutomorphism(tower_, std::move(imgs), matrix_ * inner.matrix_, Unchecked{});
}

FieldAutomorphism FieldAutomorphism::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    FieldAutomorphism r = identity(tower_), base = *this;
    while (n > 0) {
        if (n & 1) r = r.compose(base);
        n >>= 1;
        if (n > 0) base = base.compose(base);
    }
    return r;
}

FieldAutomorphism FieldAutomorphism::inverse() const {
    int n = order();
    return pow(n - 1);
}

int FieldAutomorphism::order(int bound) const {
    FieldAutomorphism p = *this;
    for (int n = 1; n <= bound; ++n) {
        if (p.is_identity()) return n;
        p = p.compose(*this);
    }
    throw PreconditionError("automorphism order exceeds bound " + std::to_string(bound));
}

bool FieldAutomorphism::is_identity() const { return matrix_ == QMatrix::identity(matrix_.rows); }

bool FieldAutomorphism::operator==(const FieldAutomorphism& o) const {
    return tower_ == o.tower_ && matrix_ == o.matrix_;
}

// ------------------------------------------------------------ group helpers

std::vector<FieldAutomorphism> cyclic_group(const FieldAutomorphism& s, int n) {
    std::vector<FieldAutomorphism> out{FieldAutomorphism::identity(s.tower())};
    for (int i = 1; i < n; ++i) out.push_back(s.compose(out.back()));
    if (!s.compose(out.back()).is_identity())
        throw PreconditionError("automorphism does not have the declared order " + std::to_string(n));
    return out;
}

std::vector<FieldAutomorphism> generated_group(std::span<const FieldAutomorphism> gens,
                                               std::size_t bound) {
    if (gens.empty()) throw PreconditionError("generated_group needs at least one generator");
    std::vector<FieldAutomorphism> elems{FieldAutomorphism::identity(gens[0].tower())};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& g : gens) {
            auto c = g.compose(elems[i]);
            if (std::find(elems.begin(), elems.end(), c) == elems.end()) {
                elems.push_back(std::move(c));
                if (elems.size() > bound) throw PreconditionError("generated group exceeds bound");
            }
        }
    }
    return elems;
}

bool is_group(std::span<const FieldAutomorphism> autos) {
    if (autos.empty()) return false;
    auto contains = [&](const FieldAutomorphism& a) {
        return std::find(autos.begin(), autos.end(), a) != autos.end();
    };
    if (!contains(FieldAutomorphism::identity(autos[0].tower()))) return false;
    for (const auto& a : autos)
        for (const auto& b : autos)
            if (!contains(a.compose(b))) return false;
    return true;
}

bool fixed_by_all(const FieldElement& a, std::span<const FieldAutomorphism> autos) {
    return std::all_of(autos.begin(), autos.end(), [&](const auto& s) { return s.fixes(a); });
}

FieldElement relative_norm(const FieldElement& a, std::span<const FieldAutomorphism> group) {
    if (!is_group(group)) throw PreconditionError("relative_norm: automorphisms do not form a group");
    FieldElement n = FieldElement::rational(a.tower(), 1);
    for (const auto& s : group) n *= s(a);
    if (!fixed_by_all(n, group)) throw InternalError("relative norm is not fixed by the group");
    return n;
}

FieldElement hilbert90_witness(const FieldElement& u, const FieldAutomorphism& s, int n,
                               std::span<const FieldElement> candidates) {
    const auto& tower = u.tower();
    auto powers = cyclic_group(s, n);
    FieldElement norm = FieldElement::rational(tower, 1);
    for (const auto& p : powers) norm *= p(u);
    if (!norm.is_one()) throw PreconditionError("hilbert90: norm of u is " + norm.str() + ", not 1");
    // the resolvent would give n for u = 1; the trivial witness is preferred
    if (u.is_one()) return u;
    // partial products prod_{j<i} s^j(u)
    std::vector<FieldElement> partial{FieldElement::rational(tower, 1)};
    for (int i = 1; i < n; ++i) partial.push_back(partial.back() * powers[static_cast<std::size_t>(i - 1)](u));
    auto resolvent = [&](const FieldElement& c) {
        FieldElement b(tower);
        for (int i = 0; i < n; ++i)
            b += partial[static_cast<std::size_t>(i)] * powers[static_cast<std::size_t>(i)](c);
        return b;
    };
    auto accept = [&](const FieldElement& b) -> std::optional<FieldElement> {
        if (b.is_zero()) return std::nullopt;
        if (!(b / s(b) == u)) throw InternalError("hilbert90 post-condition failed");
        return b;
    };
    if (candidates.empty()) {
        for (std::size_t k = 0; k < tower->degree(); ++k) {
            QVec v(tower->degree());
            v[k] = 1;
            if (auto q = accept(resolvent(FieldElement(tower, std::move(v))))) return *q;
        }
    } else {
        for (const auto& c : candidates)
            if (auto q = accept(resolvent(c))) return *q;
    }
    throw InternalError("hilbert90: every resolvent vanished");
}

std::vector<FieldElement> fixed_basis(const TowerPtr& tower,
                                      std::span<const FieldAutomorphism> autos) {
    const std::size_t d = tower->degree();
    QMatrix stacked(d * std::max<std::size_t>(autos.size(), 1), d);
    for (std::size_t a = 0; a < autos.size(); ++a)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                stacked.at(a * d + r, c) = autos[a].matrix().at(r, c) - (r == c ? 1 : 0);
    std::vector<FieldElement> out;
    for (auto& v : kernel(stacked)) out.emplace_back(tower, std::move(v));
    // kernel() lists vectors by free column; put the one containing 1 first
    std::stable_sort(out.begin(), out.end(), [](const FieldElement& x, const FieldElement& y) {
        return sgn(x.coeffs()[0]) != 0 && sgn(y.coeffs()[0]) == 0;
    });
    return out;
}

std::optional<bool> decide_irreducible(const FieldTower& tower, std::size_t level,
                                       const std::vector<QVec>& monic) {
    const std::size_t d = monic.size() - 1;
    if (d == 1) return true;
    RootSearch roots = tower.root_search(level, monic);
    if (roots == RootSearch::HasRoot) return false;
    if (d <= 3) {
        if (roots == RootSearch::NoRoot) return true;
        return std::nullopt;
    }
    if (d != 4) return std::nullopt;
    const std::size_t n = tower.degree_at(level);
    auto mul = [&](const QVec& a, const QVec& b) { return tower.mul(level, a, b); };
    auto lin = [&](std::initializer_list<std::pair<Q, QVec>> terms) {
        QVec out(n);
        for (const auto& [c, v] : terms)
            for (std::size_t i = 0; i < n; ++i) out[i] += c * v[i];
        return out;
    };
    const QVec& a = monic[3];
    const QVec& b = monic[2];
    const QVec& c = monic[1];
    const QVec& e = monic[0];
    QVec a2 = mul(a, a), a3 = mul(a2, a), a4 = mul(a3, a);
    // depressed quartic y^4 + p y^2 + q y + r with x = y - a/4
    QVec p = lin({{1, b}, {Q(-3, 8), a2}});
    QVec q = lin({{1, c}, {Q(-1, 2), mul(a, b)}, {Q(1, 8), a3}});
    QVec r = lin({{1, e}, {Q(-1, 4), mul(a, c)}, {Q(1, 16), mul(a2, b)}, {Q(-3, 256), a4}});
    bool unknown = roots == RootSearch::Unknown;
    if (xprod::is_zero(q)) {
        // (y^2 - y1)(y^2 - y2)
        QVec disc = lin({{Q(1, 4), mul(p, p)}, {-1, r}});
        auto s = tower.square_root(level, disc);
        if (s.kind == RootSearch::HasRoot) return false;
        unknown |= s.kind == RootSearch::Unknown;
        // (y^2 + t y + w)(y^2 - t y + w) with w^2 = r, t^2 = 2w - p
        auto w = tower.square_root(level, r);
        unknown |= w.kind == RootSearch::Unknown;
        if (w.kind == RootSearch::HasRoot) {
            for (int sign : {1, -1}) {
                QVec t2 = lin({{2 * sign, w.root}, {-1, p}});
                auto t = tower.square_root(level, t2);
                if (t.kind == RootSearch::HasRoot) return false;
                unknown |= t.kind == RootSearch::Unknown;
            }
        }
        if (unknown) return std::nullopt;
        return true;
    }
    if (level != 0 || unknown) return std::nullopt;
    // resolvent cubic in A = t^2 for (y^2 + t y + w)(y^2 - t y + w')
    std::vector<Q> resolvent{-(q[0] * q[0]), p[0] * p[0] - 4 * r[0], 2 * p[0], 1};
    auto res_roots = rational_root_list(resolvent);
    if (!res_roots) return std::nullopt;
    for (const auto& big_a : *res_roots)
        if (sgn(big_a) != 0 && rational_root(big_a, 2)) return false;
    return true;
}

TowerStep pure_step(std::string name, int degree, QVec a) {
    TowerStep st{std::move(name), degree, {}};
    for (auto& x : a) x = -x;
    st.coefficients.push_back(std::move(a));
    for (int i = 1; i < degree; ++i) st.coefficients.push_back({});
    st.coefficients.push_back({Q(1)});
    return st;
}

FieldAutomorphism scaling_automorphism(const TowerPtr& tower, const std::vector<FieldElement>& factors) {
    if (factors.size() != tower->level_count()) throw PreconditionError("one factor per generator required");
    std::vector<FieldElement> imgs;
    for (std::size_t j = 0; j < factors.size(); ++j)
        imgs.push_back(factors[j] * FieldElement::generator(tower, j));
    return FieldAutomorphism(tower, std::move(imgs));
}

FieldAutomorphism sign_automorphism(const TowerPtr& tower, const std::vector<int>& signs) {
    std::vector<FieldElement> f;
    for (int s : signs) f.push_back(FieldElement::rational(tower, s));
    return scaling_automorphism(tower, f);
}

}  // namespace xprod
