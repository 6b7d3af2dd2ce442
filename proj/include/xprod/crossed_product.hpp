#pragma once
// Abelian crossed products A(M/K, sigma, u, b).
//
// M/K is abelian Galois with group H = <sigma_1> x ... x <sigma_k>, sigma_i of
// order r_i. The algebra is the left M-space on z^i = z_1^{i_1} ... z_k^{i_k}
// (i in the index set I = prod {0..r_l - 1}) with
//   z_l m z_l^{-1} = sigma_l(m),  z_i z_j = u_ij z_j z_i,  z_l^{r_l} = b_l.
// In the graded case the coefficients are Laurent polynomials over M in
// central variables x_1..x_n, b_l = m_l x^{gamma_l}, and deg z_l = gamma_l / r_l.

#include "xprod/field.hpp"
#include "xprod/graded_field.hpp"
#include "xprod/laurent.hpp"
#include "xprod/lattice.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace xprod {

struct GaloisSetup {
    std::string name;
    TowerPtr field;
    std::vector<FieldAutomorphism> sigma;
    std::vector<int> orders;
};

struct CrossedProductData {
    TowerPtr field;
    std::vector<FieldAutomorphism> sigma;
    std::vector<int> orders;
    std::vector<std::vector<FieldElement>> u;  // k x k
    std::vector<Monomial> b;
    std::size_t grade_rank = 0;                // 0 for ungraded data

    std::size_t k() const { return sigma.size(); }
    long long group_order() const;
    bool operator==(const CrossedProductData& o) const;
    std::string str() const;
};

struct Violation {
    std::string relation;  // stable identifier such as "norm-compat(1,2)"
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool names(const std::string& relation) const;
    std::string str() const;
};

// Checks u-diagonal, u-antisymmetric, u-cocycle, norm-compat, sigma-commute,
// sigma-order and the group order. Indices in identifiers are 1-based.
ValidationReport validate(const CrossedProductData& data);

CrossedProductData trivial_presentation(const GaloisSetup& setup, std::size_t grade_rank = 0);
// u = w . v, b = d . c
CrossedProductData cocycle_product(const CrossedProductData& a, const CrossedProductData& b);
// z_i -> c_i z_i
CrossedProductData change_presentation(const CrossedProductData& data, const std::vector<FieldElement>& c);
CrossedProductData bicyclic_change(const CrossedProductData& data, const FieldElement& c1, const FieldElement& c2);
// the same presentation read over the Laurent base of the given rank
CrossedProductData extend_to_graded(const CrossedProductData& data, std::size_t grade_rank);

// Random valid presentation: constant +-1 commutators and b_l in K (times a
// random monomial in the graded case), followed by random changes z_l -> c_l z_l.
CrossedProductData random_presentation(const GaloisSetup& setup, std::mt19937_64& rng,
                                       std::size_t grade_rank = 0, int coefficient_range = 2);

struct SemiramifiedReport {
    bool semiramified = false;
    std::vector<GradeVector> deltas;  // deg z_l
    GradeSubgroup grades{0, {}};      // Gamma_E
    FiniteAbelianGroup quotient;      // Gamma_E / Gamma_T
    std::size_t residue_degree = 0;   // [E_0 : T_0] when semiramified
};

SemiramifiedReport semiramified_check(const CrossedProductData& data);

struct InertialDecomposition {
    CrossedProductData dsr;       // (sigma, 1, c) with c_l = x^{gamma_l}
    CrossedProductData inertial;  // ungraded (sigma, u, e) with e_l = b_l / c_l
};

InertialDecomposition i_n_decompose(const CrossedProductData& data);

class CrossedProduct;
using AlgebraPtr = std::shared_ptr<const CrossedProduct>;

class CrossedProduct {
public:
    // Validates the data and precomputes the index arithmetic and f.
    static AlgebraPtr build(CrossedProductData data);

    const CrossedProductData& data() const { return data_; }
    const TowerPtr& field() const { return data_.field; }
    std::size_t rank() const { return data_.grade_rank; }
    std::size_t dimension() const { return indices_.size(); }  // |H| = deg over M
    const std::vector<std::vector<int>>& indices() const { return indices_; }
    std::size_t flat(const std::vector<int>& index) const;
    std::size_t generator_index(std::size_t l) const;
    std::size_t product_index(std::size_t a, std::size_t b) const { return prod_[a * dimension() + b]; }
    std::size_t inverse_index(std::size_t a) const { return inv_[a]; }
    const FieldAutomorphism& sigma_of(std::size_t a) const { return sigma_pow_[a]; }
    const FieldAutomorphism& sigma_inverse_of(std::size_t a) const { return sigma_pow_[inv_[a]]; }
    // z^a z^b = f(a,b) z^{a*b}
    const Monomial& f(std::size_t a, std::size_t b) const { return f_[a * dimension() + b]; }
    std::vector<FieldAutomorphism> galois_group() const { return sigma_pow_; }
    std::vector<FieldElement> center_basis() const;
    GradeVector degree_of_index(std::size_t a) const;
    std::vector<std::string> cocycle_violations() const;

private:
    CrossedProduct() = default;
    CrossedProductData data_;
    std::vector<std::vector<int>> indices_;
    std::vector<std::size_t> strides_;
    std::vector<std::size_t> prod_;
    std::vector<std::size_t> inv_;
    std::vector<FieldAutomorphism> sigma_pow_;
    std::vector<Monomial> f_;
};

class AlgebraElement {
public:
    explicit AlgebraElement(AlgebraPtr alg);
    static AlgebraElement scalar(AlgebraPtr alg, const FieldElement& m);
    static AlgebraElement scalar(AlgebraPtr alg, const LaurentPoly& p);
    static AlgebraElement monomial(AlgebraPtr alg, const Monomial& m, std::size_t index);
    static AlgebraElement generator(AlgebraPtr alg, std::size_t l);
    static AlgebraElement one(AlgebraPtr alg);

    const AlgebraPtr& algebra() const { return alg_; }
    const LaurentPoly& component(std::size_t index) const { return comps_.at(index); }
    const std::vector<LaurentPoly>& components() const { return comps_; }
    bool is_zero() const;
    // a single term m x^lambda z^i
    bool is_monomial() const;
    std::pair<Monomial, std::size_t> as_monomial() const;
    bool is_homogeneous() const;
    GradeVector degree() const;
    // degree-zero field part when the element lies in M (index 0, constant)
    bool in_field() const;
    FieldElement field_part() const;

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement operator-() const;
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    bool operator==(const AlgebraElement& o) const;
    AlgebraElement pow(int e) const;
    // inverse of a monomial unit m x^lambda z^i
    AlgebraElement inverse() const;
    std::string str() const;

private:
    AlgebraPtr alg_;
    std::vector<LaurentPoly> comps_;
};

// Determinant of left multiplication on A as a right M-space. The result has
// coefficients in K (checked). Throws if deg A exceeds the bound.
LaurentPoly reduced_norm(const AlgebraElement& a, std::size_t degree_bound = 8);

// Conjugation action on Z(E_0) = M of a homogeneous unit of degree gamma in a
// semiramified graded crossed product, read off from products in the algebra
// and checked against a second unit of the same degree.
FieldAutomorphism theta_map(const AlgebraPtr& algebra, const GradeVector& gamma);

// [E:T], [E_0:T_0], Gamma_E and Gamma_T of a graded crossed product.
GradedDimensions graded_dimensions(const CrossedProductData& data);

AlgebraElement random_algebra_element(const AlgebraPtr& alg, std::mt19937_64& rng, int range = 2);

}  // namespace xprod
