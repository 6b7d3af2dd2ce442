#include "xprod/involution.hpp"

#include <algorithm>

namespace xprod {

namespace {
std::string idx1(std::size_t i) { return std::to_string(i + 1); }

bool contains(const std::vector<FieldAutomorphism>& group, const FieldAutomorphism& g) {
    return std::find(group.begin(), group.end(), g) != group.end();
}
}  // namespace

bool is_generalized_dihedral(std::span<const FieldAutomorphism> g_gens,
                             std::span<const FieldAutomorphism> h_gens) {
    auto g = generated_group(g_gens);
    auto h = h_gens.empty() ? std::vector<FieldAutomorphism>{FieldAutomorphism::identity(g.front().tower())}
                            : generated_group(h_gens);
    for (const auto& x : h)
        if (!contains(g, x)) throw PreconditionError("H is not contained in G");
    if (g.size() != 2 * h.size())
        throw PreconditionError("H has index " + std::to_string(g.size()) + "/" + std::to_string(h.size()) +
                                " in G, expected 2");
    return std::all_of(g.begin(), g.end(), [&](const FieldAutomorphism& x) {
        return contains(h, x) || (x * x).is_identity();
    });
}

ValidationReport validate_unitary_conditions(const CrossedProductData& d, const FieldAutomorphism& theta) {
    ValidationReport rep;
    auto fail = [&](std::string rel, std::string detail) {
        rep.violations.push_back({std::move(rel), std::move(detail)});
    };
    if (theta.tower() != d.field) {
        fail("theta-tower", "theta acts on a different tower");
        return rep;
    }
    if (!(theta * theta).is_identity()) fail("theta-involutive", "theta^2 != id");
    auto center = fixed_basis(d.field, d.sigma);
    if (std::all_of(center.begin(), center.end(), [&](const FieldElement& c) { return theta.fixes(c); }))
        fail("theta-nontrivial-on-center", "theta is the identity on K");
    for (std::size_t i = 0; i < d.k(); ++i) {
        if (!(theta * d.sigma[i] * theta == d.sigma[i].inverse()))
            fail("theta-inverts(" + idx1(i) + ")", "theta sigma_i theta != sigma_i^{-1}");
        if (!theta.fixes(d.b[i].coeff))
            fail("unitary-power(" + idx1(i) + ")", "theta(b_i) != b_i for b_i = " + d.b[i].str());
        for (std::size_t j = 0; j < d.k(); ++j) {
            auto lhs = d.u[i][j] * (d.sigma[i] * d.sigma[j] * theta)(d.u[i][j]);
            if (!lhs.is_one())
                fail("unitary-commutator(" + idx1(i) + "," + idx1(j) + ")",
                     "u_ij sigma_i sigma_j theta(u_ij) = " + lhs.str());
        }
    }
    return rep;
}

Involution::Involution(AlgebraPtr alg, FieldAutomorphism theta) : alg_(std::move(alg)), theta_(std::move(theta)) {
    const auto& d = alg_->data();
    for (const auto& idx : alg_->indices()) {
        auto r = AlgebraElement::one(alg_);
        for (std::size_t l = d.k(); l-- > 0;) r = r * AlgebraElement::generator(alg_, l).pow(idx[l]);
        reversed_.push_back(std::move(r));
    }
}

Involution Involution::build(AlgebraPtr alg, FieldAutomorphism theta) {
    auto rep = validate_unitary_conditions(alg->data(), theta);
    if (!rep.ok()) throw PreconditionError("unitary conditions fail:\n" + rep.str());
    Involution tau(std::move(alg), std::move(theta));
    auto bad = tau.basis_violations();
    if (!bad.empty()) throw InternalError("constructed involution fails " + bad.front());
    return tau;
}

AlgebraElement Involution::operator()(const AlgebraElement& a) const {
    if (a.algebra() != alg_) throw PreconditionError("element of a different algebra");
    AlgebraElement out(alg_);
    // tau(c z^i) = tau(z^i) theta(c), with x^lambda fixed
    for (std::size_t i = 0; i < alg_->dimension(); ++i) {
        if (a.component(i).is_zero()) continue;
        out += reversed_[i] * AlgebraElement::scalar(alg_, a.component(i).apply(theta_));
    }
    return out;
}

std::vector<std::string> Involution::basis_violations() const {
    std::vector<std::string> bad;
    std::vector<AlgebraElement> basis;
    const auto& tower = alg_->field();
    for (std::size_t i = 0; i < alg_->dimension(); ++i)
        for (std::size_t s = 0; s < tower->degree(); ++s) {
            QVec e(tower->degree());
            e[s] = 1;
            basis.push_back(AlgebraElement::monomial(
                alg_, Monomial::constant(FieldElement(tower, e), alg_->rank()), i));
        }
    std::vector<AlgebraElement> images;
    for (std::size_t p = 0; p < basis.size(); ++p) {
        images.push_back((*this)(basis[p]));
        if (!((*this)(images.back()) == basis[p])) bad.push_back("involution-square(" + std::to_string(p) + ")");
    }
    for (std::size_t p = 0; p < basis.size(); ++p)
        for (std::size_t q = 0; q < basis.size(); ++q)
            if (!((*this)(basis[p] * basis[q]) == images[q] * images[p]))
                bad.push_back("anti-multiplicative(" + std::to_string(p) + "," + std::to_string(q) + ")");
    return bad;
}

Symmetrized symmetrize(const AlgebraElement& y, const Involution& tau) {
    if (!y.is_monomial()) throw PreconditionError("symmetrize needs a monomial unit m x^lambda z^i");
    const auto& alg = tau.algebra();
    auto ty_yinv = tau(y) * y.inverse();
    if (!ty_yinv.in_field()) throw PreconditionError("tau(y) y^{-1} does not lie in M");
    FieldElement a = ty_yinv.field_part();
    auto [m, idx] = y.as_monomial();
    FieldAutomorphism s_theta = alg->sigma_of(idx) * tau.theta();
    if (!(a * s_theta(a)).is_one())
        throw PreconditionError("symmetrize: a int(y)theta(a) != 1 for a = " + a.str());
    FieldElement t = hilbert90_witness(a, s_theta, 2);
    auto x = AlgebraElement::scalar(alg, t) * y;
    if (!(tau(x) == x)) throw InternalError("symmetrized element is not fixed by tau");
    return {x, t, a, s_theta};
}

}  // namespace xprod
