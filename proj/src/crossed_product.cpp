#include "xprod/crossed_product.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace xprod {

namespace {

std::string idx1(std::size_t i) { return std::to_string(i + 1); }

FieldElement one_of(const TowerPtr& t) { return FieldElement::rational(t, 1); }

// product of s^t(x) for t = 0 .. n-1
FieldElement orbit_product(const FieldElement& x, const FieldAutomorphism& s, int n) {
    FieldElement acc = one_of(x.tower());
    FieldElement cur = x;
    for (int t = 0; t < n; ++t) {
        acc *= cur;
        cur = s(cur);
    }
    return acc;
}

void require_same_setup(const CrossedProductData& a, const CrossedProductData& b) {
    if (a.field != b.field || a.sigma != b.sigma || a.orders != b.orders)
        throw PreconditionError("presentations over different M/K or generators");
    if (a.grade_rank != b.grade_rank) throw PreconditionError("presentations with different grade ranks");
}

}  // namespace

// ------------------------------------------------------------------- data

long long CrossedProductData::group_order() const {
    return std::accumulate(orders.begin(), orders.end(), 1LL, std::multiplies<>());
}

bool CrossedProductData::operator==(const CrossedProductData& o) const {
    return field == o.field && sigma == o.sigma && orders == o.orders && u == o.u && b == o.b &&
           grade_rank == o.grade_rank;
}

std::string CrossedProductData::str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < k(); ++i)
        for (std::size_t j = i + 1; j < k(); ++j)
            out << "u" << idx1(i) << idx1(j) << " = " << u[i][j].str() << "\n";
    for (std::size_t i = 0; i < k(); ++i) out << "b" << idx1(i) << " = " << b[i].str() << "\n";
    return out.str();
}

bool ValidationReport::names(const std::string& relation) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.relation == relation; });
}

std::string ValidationReport::str() const {
    if (ok()) return "all relations hold\n";
    std::string out;
    for (const auto& v : violations) out += v.relation + ": " + v.detail + "\n";
    return out;
}

ValidationReport validate(const CrossedProductData& d) {
    ValidationReport rep;
    auto fail = [&](std::string rel, std::string detail) {
        rep.violations.push_back({std::move(rel), std::move(detail)});
    };
    const std::size_t k = d.k();
    if (d.orders.size() != k || d.u.size() != k || d.b.size() != k) {
        fail("shape", "sigma, orders, u and b must all have k entries");
        return rep;
    }
    for (const auto& row : d.u)
        if (row.size() != k) {
            fail("shape", "u must be k x k");
            return rep;
        }
    for (std::size_t i = 0; i < k; ++i) {
        if (d.b[i].exponent.size() != d.grade_rank) fail("shape", "b" + idx1(i) + " has the wrong grade rank");
        if (d.b[i].coeff.is_zero()) fail("b-nonzero(" + idx1(i) + ")", "b must be a unit");
        for (std::size_t j = 0; j < k; ++j)
            if (d.u[i][j].is_zero()) fail("u-nonzero(" + idx1(i) + "," + idx1(j) + ")", "u must be a unit");
    }
    if (!rep.ok()) return rep;
    for (std::size_t i = 0; i < k; ++i) {
        int ord = 0;
        try {
            ord = d.sigma[i].order();
        } catch (const PreconditionError&) {
        }
        if (ord != d.orders[i])
            fail("sigma-order(" + idx1(i) + ")", "declared order " + std::to_string(d.orders[i]) +
                                                     ", actual " + std::to_string(ord));
        for (std::size_t j = i + 1; j < k; ++j)
            if (!(d.sigma[i] * d.sigma[j] == d.sigma[j] * d.sigma[i]))
                fail("sigma-commute(" + idx1(i) + "," + idx1(j) + ")", "generators do not commute");
    }
    if (rep.ok()) {
        try {
            auto g = generated_group(d.sigma, static_cast<std::size_t>(d.group_order()));
            if (static_cast<long long>(g.size()) != d.group_order())
                fail("group-order", "generated group has order " + std::to_string(g.size()));
        } catch (const PreconditionError&) {
            fail("group-order", "generated group is larger than the product of the orders");
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!d.u[i][i].is_one()) fail("u-diagonal(" + idx1(i) + ")", "u_ii = " + d.u[i][i].str());
        for (std::size_t j = 0; j < k; ++j) {
            if (!(d.u[j][i] * d.u[i][j]).is_one())
                fail("u-antisymmetric(" + idx1(i) + "," + idx1(j) + ")", "u_ji u_ij != 1");
            for (std::size_t l = 0; l < k; ++l) {
                auto lhs = d.sigma[i](d.u[j][l]) * d.sigma[j](d.u[l][i]) * d.sigma[l](d.u[i][j]);
                auto rhs = d.u[j][l] * d.u[l][i] * d.u[i][j];
                if (!(lhs == rhs))
                    fail("u-cocycle(" + idx1(i) + "," + idx1(j) + "," + idx1(l) + ")",
                         "sigma_i(u_jl) sigma_j(u_li) sigma_l(u_ij) != u_jl u_li u_ij");
            }
            // N_<sigma_i>(u_ij) = b_i / sigma_j(b_i); the x-part of b_i cancels
            auto norm = orbit_product(d.u[i][j], d.sigma[i], d.orders[i]);
            auto ratio = d.b[i].coeff / d.sigma[j](d.b[i].coeff);
            if (!(norm == ratio))
                fail("norm-compat(" + idx1(i) + "," + idx1(j) + ")",
                     "N(u_ij) = " + norm.str() + " but b_i/sigma_j(b_i) = " + ratio.str());
        }
    }
    return rep;
}

// ----------------------------------------------------- presentation algebra

CrossedProductData trivial_presentation(const GaloisSetup& s, std::size_t grade_rank) {
    CrossedProductData d{s.field, s.sigma, s.orders, {}, {}, grade_rank};
    const std::size_t k = s.sigma.size();
    d.u.assign(k, std::vector<FieldElement>(k, one_of(s.field)));
    for (std::size_t i = 0; i < k; ++i) d.b.push_back(Monomial::constant(one_of(s.field), grade_rank));
    return d;
}

CrossedProductData cocycle_product(const CrossedProductData& a, const CrossedProductData& b) {
    require_same_setup(a, b);
    CrossedProductData out = a;
    for (std::size_t i = 0; i < a.k(); ++i) {
        for (std::size_t j = 0; j < a.k(); ++j) out.u[i][j] = a.u[i][j] * b.u[i][j];
        out.b[i] = a.b[i] * b.b[i];
    }
    return out;
}

CrossedProductData change_presentation(const CrossedProductData& d, const std::vector<FieldElement>& c) {
    if (c.size() != d.k()) throw PreconditionError("one change factor per generator required");
    for (const auto& x : c)
        if (x.is_zero()) throw PreconditionError("presentation change by zero");
    CrossedProductData out = d;
    for (std::size_t i = 0; i < d.k(); ++i) {
        for (std::size_t j = 0; j < d.k(); ++j)
            out.u[i][j] = c[i] * d.sigma[i](c[j]) / (c[j] * d.sigma[j](c[i])) * d.u[i][j];
        out.b[i] = Monomial(orbit_product(c[i], d.sigma[i], d.orders[i]) * d.b[i].coeff, d.b[i].exponent);
    }
    return out;
}

CrossedProductData bicyclic_change(const CrossedProductData& d, const FieldElement& c1, const FieldElement& c2) {
    if (d.k() != 2) throw PreconditionError("bicyclic_change needs k = 2");
    return change_presentation(d, {c1, c2});
}

CrossedProductData extend_to_graded(const CrossedProductData& d, std::size_t grade_rank) {
    if (d.grade_rank != 0) throw PreconditionError("presentation is already graded");
    CrossedProductData out = d;
    out.grade_rank = grade_rank;
    for (auto& m : out.b) m.exponent.assign(grade_rank, 0);
    return out;
}

CrossedProductData random_presentation(const GaloisSetup& s, std::mt19937_64& rng, std::size_t grade_rank,
                                       int range) {
    CrossedProductData d = trivial_presentation(s, grade_rank);
    const std::size_t k = s.sigma.size();
    auto center = fixed_basis(s.field, s.sigma);
    std::uniform_int_distribution<int> coin(0, 1), small(-range, range), expo(-2, 2);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (s.orders[i] % 2 == 0 && s.orders[j] % 2 == 0 && coin(rng)) {
                d.u[i][j] = FieldElement::rational(s.field, -1);
                d.u[j][i] = FieldElement::rational(s.field, -1);
            }
    for (std::size_t i = 0; i < k; ++i) {
        FieldElement beta(s.field);
        while (beta.is_zero()) {
            beta = FieldElement(s.field);
            for (const auto& e : center) beta += Q(small(rng)) * e;
        }
        Exponent ex(grade_rank);
        for (auto& x : ex) x = expo(rng);
        d.b[i] = Monomial(beta, ex);
    }
    std::vector<FieldElement> c;
    for (std::size_t i = 0; i < k; ++i) c.push_back(random_element(s.field, rng, range));
    return change_presentation(d, c);
}

// ------------------------------------------------------- graded structure

SemiramifiedReport semiramified_check(const CrossedProductData& d) {
    SemiramifiedReport rep;
    if (d.grade_rank == 0) return rep;
    auto base = GradeSubgroup::integer_lattice(d.grade_rank);
    std::vector<long> orders;
    for (std::size_t l = 0; l < d.k(); ++l) {
        rep.deltas.push_back(Q(1, d.orders[l]) * to_grade(d.b[l].exponent));
        orders.push_back(d.orders[l]);
    }
    rep.grades = base.plus(rep.deltas);
    rep.quotient = quotient(rep.grades, base).group;
    rep.semiramified = independence_check(rep.deltas, orders, base);
    if (rep.semiramified) rep.residue_degree = static_cast<std::size_t>(d.group_order());
    return rep;
}

GradedDimensions graded_dimensions(const CrossedProductData& d) {
    if (d.grade_rank == 0) throw PreconditionError("graded_dimensions needs graded data");
    auto base = GradeSubgroup::integer_lattice(d.grade_rank);
    std::vector<GradeVector> deltas;
    for (std::size_t l = 0; l < d.k(); ++l) deltas.push_back(Q(1, d.orders[l]) * to_grade(d.b[l].exponent));
    auto grades = base.plus(deltas);
    // E_0 = sum of M z^i x^lambda over the i whose degree lies in Gamma_T
    long long h = d.group_order();
    long long count = 0;
    std::vector<int> idx(d.k(), 0);
    for (long long n = 0; n < h; ++n) {
        GradeVector g = GradeVector::zero(d.grade_rank);
        for (std::size_t l = 0; l < d.k(); ++l) g += Q(idx[l]) * deltas[l];
        if (base.contains(g)) ++count;
        for (std::size_t l = d.k(); l-- > 0;) {
            if (++idx[l] < d.orders[l]) break;
            idx[l] = 0;
        }
    }
    return GradedDimensions{h * h, h * count, grades, base};
}

InertialDecomposition i_n_decompose(const CrossedProductData& d) {
    auto sr = semiramified_check(d);
    if (!sr.semiramified) throw PreconditionError("i_n_decompose needs semiramified graded data");
    InertialDecomposition out{d, d};
    const std::size_t k = d.k();
    CrossedProductData inertial{d.field, d.sigma, d.orders, d.u, {}, 0};
    CrossedProductData dsr = trivial_presentation({"", d.field, d.sigma, d.orders}, d.grade_rank);
    for (std::size_t l = 0; l < k; ++l) {
        // c_l = x^{deg b_l} is a monomial of the base R, fixed by the involution
        dsr.b[l] = Monomial::constant(one_of(d.field), d.grade_rank);
        dsr.b[l].exponent = d.b[l].exponent;
        inertial.b.push_back(Monomial(d.b[l].coeff, {}));
    }
    if (!validate(dsr).ok() || !validate(inertial).ok())
        throw InternalError("decomposition produced invalid data");
    if (!(cocycle_product(extend_to_graded(inertial, d.grade_rank), dsr) == d))
        throw InternalError("decomposition does not multiply back to the input");
    out.dsr = std::move(dsr);
    out.inertial = std::move(inertial);
    return out;
}

// --------------------------------------------------------- CrossedProduct

AlgebraPtr CrossedProduct::build(CrossedProductData data) {
    auto rep = validate(data);
    if (!rep.ok()) throw PreconditionError("invalid crossed-product data:\n" + rep.str());
    auto a = std::shared_ptr<CrossedProduct>(new CrossedProduct());
    a->data_ = std::move(data);
    const auto& d = a->data_;
    const std::size_t k = d.k();
    const std::size_t n = static_cast<std::size_t>(d.group_order());
    a->strides_.assign(k, 1);
    for (std::size_t l = k; l-- > 1;) a->strides_[l - 1] = a->strides_[l] * static_cast<std::size_t>(d.orders[l]);
    for (std::size_t t = 0; t < n; ++t) {
        std::vector<int> idx(k);
        for (std::size_t l = 0; l < k; ++l)
            idx[l] = static_cast<int>((t / a->strides_[l]) % static_cast<std::size_t>(d.orders[l]));
        a->indices_.push_back(std::move(idx));
    }
    const auto& tower = d.field;
    for (const auto& idx : a->indices_) {
        auto s = FieldAutomorphism::identity(tower);
        for (std::size_t l = 0; l < k; ++l) s = s * d.sigma[l].pow(idx[l]);
        a->sigma_pow_.push_back(std::move(s));
    }
    a->prod_.resize(n * n);
    a->inv_.resize(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::vector<int> s(k);
            for (std::size_t l = 0; l < k; ++l) s[l] = (a->indices_[x][l] + a->indices_[y][l]) % d.orders[l];
            std::size_t p = a->flat(s);
            a->prod_[x * n + y] = p;
            if (p == 0) a->inv_[x] = y;
        }
    // right multiplication of z^a by a single generator z_l
    auto gen_step = [&](const std::vector<int>& idx, std::size_t l) {
        FieldElement lambda = one_of(tower);
        for (std::size_t m = k; m-- > l + 1;) {
            const int am = idx[m];
            // z_m^a z_l = mu z_l z_m^a with mu = prod_{t<a} sigma_m^t(u_ml)
            FieldElement mu = orbit_product(d.u[m][l], d.sigma[m], am);
            lambda = d.sigma[m].pow(am)(lambda) * mu;
        }
        auto sp = FieldAutomorphism::identity(tower);
        for (std::size_t m = 0; m <= l; ++m) sp = sp * d.sigma[m].pow(idx[m]);
        Monomial coeff = Monomial::constant(sp(lambda), d.grade_rank);
        std::vector<int> next = idx;
        if (next[l] + 1 < d.orders[l]) {
            next[l] += 1;
        } else {
            next[l] = 0;
            auto sprefix = FieldAutomorphism::identity(tower);
            for (std::size_t m = 0; m < l; ++m) sprefix = sprefix * d.sigma[m].pow(idx[m]);
            coeff = coeff * apply(sprefix, d.b[l]);
        }
        return std::make_pair(coeff, next);
    };
    std::vector<std::vector<std::pair<Monomial, std::size_t>>> steps(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t l = 0; l < k; ++l) {
            auto [c, next] = gen_step(a->indices_[x], l);
            steps[x].emplace_back(c, a->flat(next));
        }
    a->f_.reserve(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            Monomial coeff = Monomial::constant(one_of(tower), d.grade_rank);
            std::size_t cur = x;
            for (std::size_t l = 0; l < k; ++l)
                for (int t = 0; t < a->indices_[y][l]; ++t) {
                    const auto& [c, nxt] = steps[cur][l];
                    coeff = coeff * c;
                    cur = nxt;
                }
            if (cur != a->prod_[x * n + y]) throw InternalError("index arithmetic mismatch");
            a->f_.push_back(std::move(coeff));
        }
    return a;
}

std::size_t CrossedProduct::flat(const std::vector<int>& index) const {
    std::size_t t = 0;
    for (std::size_t l = 0; l < index.size(); ++l) {
        if (index[l] < 0 || index[l] >= data_.orders[l]) throw InternalError("index overflow");
        t += static_cast<std::size_t>(index[l]) * strides_[l];
    }
    return t;
}

std::size_t CrossedProduct::generator_index(std::size_t l) const {
    std::vector<int> e(data_.k(), 0);
    if (data_.orders.at(l) == 1) return 0;
    e[l] = 1;
    return flat(e);
}

std::vector<FieldElement> CrossedProduct::center_basis() const { return fixed_basis(data_.field, data_.sigma); }

GradeVector CrossedProduct::degree_of_index(std::size_t a) const {
    GradeVector g = GradeVector::zero(data_.grade_rank);
    for (std::size_t l = 0; l < data_.k(); ++l)
        g += Q(indices_[a][l], data_.orders[l]) * to_grade(data_.b[l].exponent);
    return g;
}

std::vector<std::string> CrossedProduct::cocycle_violations() const {
    std::vector<std::string> bad;
    const std::size_t n = dimension();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                // f(a,b) f(ab,c) = sigma^a(f(b,c)) f(a,bc)
                auto lhs = f(a, b) * f(product_index(a, b), c);
                auto rhs = apply(sigma_of(a), f(b, c)) * f(a, product_index(b, c));
                if (!(lhs == rhs))
                    bad.push_back("f-cocycle(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                  std::to_string(c) + ")");
            }
    return bad;
}

// --------------------------------------------------------- AlgebraElement

AlgebraElement::AlgebraElement(AlgebraPtr alg) : alg_(std::move(alg)) {
    comps_.assign(alg_->dimension(), LaurentPoly(alg_->field(), alg_->rank()));
}

AlgebraElement AlgebraElement::scalar(AlgebraPtr alg, const FieldElement& m) {
    return monomial(alg, Monomial::constant(m, alg->rank()), 0);
}

AlgebraElement AlgebraElement::scalar(AlgebraPtr alg, const LaurentPoly& p) {
    AlgebraElement e(std::move(alg));
    e.comps_[0] = p;
    return e;
}

AlgebraElement AlgebraElement::monomial(AlgebraPtr alg, const Monomial& m, std::size_t index) {
    AlgebraElement e(std::move(alg));
    e.comps_.at(index).add_term(m.exponent, m.coeff);
    return e;
}

AlgebraElement AlgebraElement::generator(AlgebraPtr alg, std::size_t l) {
    auto idx = alg->generator_index(l);
    if (alg->data().orders[l] == 1) return scalar(alg, LaurentPoly(alg->data().b[l]));
    return monomial(alg, Monomial::constant(one_of(alg->field()), alg->rank()), idx);
}

AlgebraElement AlgebraElement::one(AlgebraPtr alg) {
    auto t = alg->field();
    return scalar(std::move(alg), one_of(t));
}

bool AlgebraElement::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

bool AlgebraElement::is_monomial() const {
    int terms = 0;
    for (const auto& p : comps_) terms += static_cast<int>(p.terms().size());
    return terms == 1;
}

std::pair<Monomial, std::size_t> AlgebraElement::as_monomial() const {
    if (!is_monomial()) throw PreconditionError("algebra element is not a monomial");
    for (std::size_t i = 0; i < comps_.size(); ++i)
        if (!comps_[i].is_zero()) return {comps_[i].as_monomial(), i};
    throw InternalError("unreachable");
}

bool AlgebraElement::is_homogeneous() const {
    std::optional<GradeVector> deg;
    for (std::size_t i = 0; i < comps_.size(); ++i)
        for (const auto& [e, c] : comps_[i].terms()) {
            GradeVector g = alg_->degree_of_index(i) + to_grade(e);
            if (deg && !(*deg == g)) return false;
            deg = g;
        }
    return deg.has_value();
}

GradeVector AlgebraElement::degree() const {
    if (!is_homogeneous()) throw PreconditionError("degree of a non-homogeneous element");
    for (std::size_t i = 0; i < comps_.size(); ++i)
        for (const auto& [e, c] : comps_[i].terms()) return alg_->degree_of_index(i) + to_grade(e);
    throw InternalError("unreachable");
}

bool AlgebraElement::in_field() const {
    for (std::size_t i = 1; i < comps_.size(); ++i)
        if (!comps_[i].is_zero()) return false;
    return comps_[0].is_constant();
}

FieldElement AlgebraElement::field_part() const {
    if (!in_field()) throw PreconditionError("algebra element does not lie in M: " + str());
    return comps_[0].constant_term();
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    if (o.alg_ != alg_) throw PreconditionError("elements of different algebras");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    if (o.alg_ != alg_) throw PreconditionError("elements of different algebras");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r = *this;
    for (auto& p : r.comps_) p = -p;
    return r;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.alg_ != b.alg_) throw PreconditionError("elements of different algebras");
    const auto& alg = *a.alg_;
    AlgebraElement out(a.alg_);
    const std::size_t n = alg.dimension();
    for (std::size_t i = 0; i < n; ++i) {
        if (a.comps_[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.comps_[j].is_zero()) continue;
            // a_i z^i c_j z^j = a_i sigma^i(c_j) f(i,j) z^{i*j}
            out.comps_[alg.product_index(i, j)] +=
                a.comps_[i] * b.comps_[j].apply(alg.sigma_of(i)) * LaurentPoly(alg.f(i, j));
        }
    }
    return out;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const { return alg_ == o.alg_ && comps_ == o.comps_; }

AlgebraElement AlgebraElement::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    AlgebraElement r = one(alg_);
    for (int t = 0; t < e; ++t) r = r * *this;
    return r;
}

AlgebraElement AlgebraElement::inverse() const {
    if (!is_monomial()) throw ArithmeticError("inverse is only implemented for monomial units");
    auto [m, i] = as_monomial();
    const auto& alg = *alg_;
    std::size_t j = alg.inverse_index(i);
    // (m z^i)^{-1} = z^j f(i,j)^{-1} m^{-1} = sigma^j(f(i,j)^{-1} m^{-1}) z^j
    Monomial c = apply(alg.sigma_of(j), (alg.f(i, j) * m).inverse());
    auto inv = monomial(alg_, c, j);
    if (!((*this) * inv == one(alg_))) throw InternalError("monomial inverse check failed");
    return inv;
}

std::string AlgebraElement::str() const {
    std::string out;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (comps_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string z;
        for (std::size_t l = 0; l < alg_->indices()[i].size(); ++l) {
            int e = alg_->indices()[i][l];
            if (e == 0) continue;
            z += "*z" + std::to_string(l + 1);
            if (e > 1) z += "^" + std::to_string(e);
        }
        out += "[" + comps_[i].str() + "]" + z;
    }
    return out.empty() ? "0" : out;
}

AlgebraElement random_algebra_element(const AlgebraPtr& alg, std::mt19937_64& rng, int range) {
    AlgebraElement e(alg);
    std::uniform_int_distribution<int> coin(0, 2), ex(-1, 1);
    for (std::size_t i = 0; i < alg->dimension(); ++i) {
        if (coin(rng) == 0) continue;
        Exponent x(alg->rank());
        for (auto& v : x) v = ex(rng);
        e += AlgebraElement::monomial(alg, Monomial(random_element(alg->field(), rng, range), x), i);
    }
    if (e.is_zero()) e = AlgebraElement::one(alg);
    return e;
}

// ------------------------------------------------------------ reduced norm

namespace {
// Division-free characteristic polynomial (Samuelson-Berkowitz); returns det.
LaurentPoly berkowitz_det(const std::vector<std::vector<LaurentPoly>>& a) {
    const std::size_t n = a.size();
    const auto& zero = a[0][0];
    LaurentPoly one = LaurentPoly::constant(one_of(zero.tower()), zero.rank());
    LaurentPoly z(zero.tower(), zero.rank());
    std::vector<LaurentPoly> v{one, -a[0][0]};
    for (std::size_t r = 1; r < n; ++r) {
        // leading block M = a[0..r)[0..r), row R = a[r][0..r), column C = a[0..r)[r]
        std::vector<LaurentPoly> t{one, -a[r][r]};
        std::vector<LaurentPoly> col(r, z);
        for (std::size_t i = 0; i < r; ++i) col[i] = a[i][r];
        for (std::size_t p = 0; p < r; ++p) {
            LaurentPoly s = z;
            for (std::size_t i = 0; i < r; ++i) s += a[r][i] * col[i];
            t.push_back(-s);
            std::vector<LaurentPoly> next(r, z);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    if (!a[i][j].is_zero() && !col[j].is_zero()) next[i] += a[i][j] * col[j];
            col = std::move(next);
        }
        std::vector<LaurentPoly> nv(r + 2, z);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= i && j < v.size(); ++j)
                if (!t[i - j].is_zero() && !v[j].is_zero()) nv[i] += t[i - j] * v[j];
        v = std::move(nv);
    }
    return n % 2 == 0 ? v[n] : -v[n];
}
}  // namespace

LaurentPoly reduced_norm(const AlgebraElement& a, std::size_t degree_bound) {
    const auto& alg = *a.algebra();
    const std::size_t n = alg.dimension();
    if (n > degree_bound)
        throw PreconditionError("reduced_norm: degree " + std::to_string(n) + " exceeds the bound " +
                                std::to_string(degree_bound));
    LaurentPoly z(alg.field(), alg.rank());
    std::vector<std::vector<LaurentPoly>> m(n, std::vector<LaurentPoly>(n, z));
    // a z^j = sum_i a_i f(i,j) z^{i*j} = sum_i z^{i*j} sigma^{-(i*j)}(a_i f(i,j))
    for (std::size_t i = 0; i < n; ++i) {
        if (a.component(i).is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t p = alg.product_index(i, j);
            m[p][j] += (a.component(i) * LaurentPoly(alg.f(i, j))).apply(alg.sigma_inverse_of(p));
        }
    }
    LaurentPoly det = berkowitz_det(m);
    for (const auto& [e, c] : det.terms())
        if (!fixed_by_all(c, alg.data().sigma))
            throw InternalError("reduced norm has a coefficient outside the center: " + c.str());
    return det;
}

// ---------------------------------------------------------------- theta

FieldAutomorphism theta_map(const AlgebraPtr& alg, const GradeVector& gamma) {
    const auto& d = alg->data();
    if (!semiramified_check(d).semiramified)
        throw PreconditionError("theta_map is implemented for semiramified graded algebras");
    std::optional<std::size_t> idx;
    Exponent lambda;
    for (std::size_t i = 0; i < alg->dimension() && !idx; ++i) {
        GradeVector rest = gamma - alg->degree_of_index(i);
        bool integral = std::all_of(rest.coords.begin(), rest.coords.end(),
                                    [](const Q& q) { return q.get_den() == 1; });
        if (!integral) continue;
        idx = i;
        for (const auto& q : rest.coords) lambda.push_back(static_cast<int>(q.get_num().get_si()));
    }
    if (!idx) throw PreconditionError("no homogeneous unit of degree " + gamma.str() + " in the presentation");
    const auto& tower = alg->field();
    auto conjugation = [&](const AlgebraElement& y) {
        auto [ym, yi] = y.as_monomial();
        std::vector<FieldElement> images;
        for (std::size_t g = 0; g < tower->level_count(); ++g) {
            auto prod = y * AlgebraElement::scalar(alg, FieldElement::generator(tower, g));
            auto coeff = prod.component(yi).coefficient(ym.exponent);
            images.push_back(coeff / ym.coeff);
        }
        return FieldAutomorphism(tower, images);
    };
    auto y = AlgebraElement::monomial(alg, Monomial(one_of(tower), lambda), *idx);
    auto first = conjugation(y);
    FieldElement other = FieldElement::rational(tower, 2);
    if (tower->level_count() > 0) other += FieldElement::generator(tower, tower->level_count() - 1);
    auto second = conjugation(AlgebraElement::scalar(alg, other) * y);
    if (!(first == second)) throw InternalError("theta depends on the chosen unit");
    return first;
}

}  // namespace xprod
