#pragma once
// Unitary involutions on abelian crossed products.
//
// For M/F generalized dihedral over K (G = Gal(M/F) with H = Gal(M/K) of
// index 2 and every element outside H of order 2) and theta in G \ H, data
// with u_ij sigma_i sigma_j theta(u_ij) = 1 and theta(b_i) = b_i carries the
// involution tau with tau|_M = theta and tau(z_i) = z_i. On the Laurent base
// the involution fixes every x^lambda.

#include "xprod/crossed_product.hpp"

#include <span>

namespace xprod {

// True iff every element of <g_gens> outside <h_gens> has order 2. Throws
// unless <h_gens> is a subgroup of index 2.
bool is_generalized_dihedral(std::span<const FieldAutomorphism> g_gens,
                             std::span<const FieldAutomorphism> h_gens);

// theta-involutive, theta-nontrivial-on-center, theta-inverts(i),
// unitary-commutator(i,j), unitary-power(i)
ValidationReport validate_unitary_conditions(const CrossedProductData& data, const FieldAutomorphism& theta);

class Involution {
public:
    // Checks the unitary conditions and then tau^2 = id and anti-multiplicativity
    // on all pairs from the basis {e_s z^i} of E_0-span over the center.
    static Involution build(AlgebraPtr alg, FieldAutomorphism theta);

    const AlgebraPtr& algebra() const { return alg_; }
    const FieldAutomorphism& theta() const { return theta_; }
    AlgebraElement operator()(const AlgebraElement& a) const;
    // tau(z^i) = z_k^{i_k} ... z_1^{i_1}
    const AlgebraElement& reversed(std::size_t index) const { return reversed_.at(index); }
    // itemized failures of tau^2 = id and tau(ab) = tau(b) tau(a) on basis pairs
    std::vector<std::string> basis_violations() const;

private:
    Involution(AlgebraPtr alg, FieldAutomorphism theta);
    AlgebraPtr alg_;
    FieldAutomorphism theta_;
    std::vector<AlgebraElement> reversed_;
};

struct Symmetrized {
    AlgebraElement x;   // t y with tau(x) = x
    FieldElement t;
    FieldElement a;     // tau(y) = a y
    FieldAutomorphism s_theta;  // int(y)|_M composed with theta, of order 2
};

// y must be a monomial unit m x^lambda z^i. Finds t in M with tau(t y) = t y
// through Hilbert 90 for int(y) theta; throws if a int(y)theta(a) != 1.
Symmetrized symmetrize(const AlgebraElement& y, const Involution& tau);

}  // namespace xprod
