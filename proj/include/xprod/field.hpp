#pragma once
// Towers of number fields over the rationals.
//
// A tower Q = L_0 ⊂ L_1 ⊂ ... ⊂ L_s is given by one monic minimal polynomial
// per step, with coefficients in the previous level. Elements of the top
// field are stored in the flattened product power basis: basis index
//   k = k_lower + dim(L_{j-1}) * e_j
// so the first generator is the least significant digit and every element of
// L_j is a prefix of its coordinate vector.

#include "xprod/linalg.hpp"
#include "xprod/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xprod {

struct TowerStep {
    std::string name;
    int degree = 0;
    // c_0 .. c_degree, each a coefficient vector over the previous level.
    // Short vectors are zero-padded; c_degree must be 1.
    std::vector<QVec> coefficients;
};

enum class StepStatus {
    Irreducible,  // degree <= 3 and no root below
    RootFree,     // degree 4: no root below, quadratic factors undecided
    Provisional,  // not decided
};

enum class RootSearch { HasRoot, NoRoot, Unknown };

struct SqrtOutcome {
    RootSearch kind = RootSearch::Unknown;
    QVec root;  // valid when kind == HasRoot
};

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

class FieldTower {
public:
    static TowerPtr make(std::vector<TowerStep> steps);

    std::size_t degree() const { return dims_.back(); }
    std::size_t level_count() const { return steps_.size(); }
    // dimension of L_level over Q; level 0 is Q itself
    std::size_t degree_at(std::size_t level) const { return dims_.at(level); }
    const TowerStep& step(std::size_t i) const { return steps_.at(i); }
    StepStatus step_status(std::size_t i) const { return status_.at(i); }
    bool provisional() const;
    std::size_t generator_index(std::string_view name) const;
    std::string basis_label(std::size_t k) const;
    // exponent of each generator in basis index k
    std::vector<int> basis_exponents(std::size_t k) const;

    // Raw arithmetic on coordinate vectors of L_level.
    QVec mul(std::size_t level, const QVec& a, const QVec& b) const;
    std::optional<QVec> inverse(std::size_t level, const QVec& a) const;
    QMatrix multiplication_matrix(std::size_t level, const QVec& a) const;
    Q absolute_norm(std::size_t level, const QVec& a) const;
    SqrtOutcome square_root(std::size_t level, const QVec& a) const;
    // Does the monic polynomial sum c_i x^i (coefficients in L_level) have a root there?
    RootSearch root_search(std::size_t level, const std::vector<QVec>& monic) const;

    // Fast product in the top field using the precomputed structure constants.
    QVec mul_top(const QVec& a, const QVec& b) const;

private:
    FieldTower() = default;
    QVec mul_rec(std::size_t level, const QVec& a, const QVec& b) const;

    std::vector<TowerStep> steps_;
    std::vector<std::size_t> dims_;
    std::vector<StepStatus> status_;
    struct Term {
        std::uint32_t index;
        Q value;
    };
    std::vector<std::vector<Term>> table_;  // basis products, empty if too large
};

class FieldElement {
public:
    explicit FieldElement(TowerPtr tower);  // zero
    FieldElement(TowerPtr tower, QVec coeffs);

    static FieldElement rational(TowerPtr tower, const Q& q);
    static FieldElement generator(TowerPtr tower, std::size_t step);
    static FieldElement generator(TowerPtr tower, std::string_view name);

    const TowerPtr& tower() const { return tower_; }
    const QVec& coeffs() const { return coeffs_; }
    bool is_zero() const { return xprod::is_zero(coeffs_); }
    bool is_one() const;
    bool is_rational() const { return in_level(0); }
    bool in_level(std::size_t level) const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    FieldElement& operator*=(const Q& q);
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend FieldElement operator*(FieldElement a, const Q& q) { return a *= q; }
    friend FieldElement operator*(const Q& q, FieldElement a) { return a *= q; }
    bool operator==(const FieldElement& o) const;

    FieldElement inverse() const;
    FieldElement pow(long e) const;

    std::string str() const;    // e.g. "1/2 + i*s2"
    std::string tuple() const;  // e.g. "(1/2, 0, 1, 0)"

private:
    void same_tower(const FieldElement& o) const;
    TowerPtr tower_;
    QVec coeffs_;
};

// Element with small random integer coordinates, never zero unless allowed.
FieldElement random_element(const TowerPtr& tower, std::mt19937_64& rng, int range = 3,
                            bool allow_zero = false);

class FieldAutomorphism {
public:
    // Validates that each image is a root of the conjugated minimal polynomial
    // and that the induced linear map is invertible and multiplicative.
    FieldAutomorphism(TowerPtr tower, std::vector<FieldElement> images);

    static FieldAutomorphism identity(TowerPtr tower);

    const TowerPtr& tower() const { return tower_; }
    const std::vector<FieldElement>& images() const { return images_; }
    const QMatrix& matrix() const { return matrix_; }

    FieldElement operator()(const FieldElement& a) const;
    QVec apply(const QVec& v) const { return matrix_.apply(v); }

    // (this ∘ inner)(x) = this(inner(x))
    FieldAutomorphism compose(const FieldAutomorphism& inner) const;
    friend FieldAutomorphism operator*(const FieldAutomorphism& a, const FieldAutomorphism& b) {
        return a.compose(b);
    }
    FieldAutomorphism pow(long n) const;
    FieldAutomorphism inverse() const;
    int order(int bound = 64) const;
    bool is_identity() const;
    bool fixes(const FieldElement& a) const { return (*this)(a) == a; }
    bool operator==(const FieldAutomorphism& o) const;

private:
    struct Unchecked {};
    FieldAutomorphism(TowerPtr tower, std::vector<FieldElement> images, QMatrix m, Unchecked);
    TowerPtr tower_;
    std::vector<FieldElement> images_;
    QMatrix matrix_;  // column k = image of basis element k
};

// {s^0, ..., s^(n-1)}
std::vector<FieldAutomorphism> cyclic_group(const FieldAutomorphism& s, int n);
// closure of the generators under composition; throws if larger than bound
std::vector<FieldAutomorphism> generated_group(std::span<const FieldAutomorphism> gens,
                                               std::size_t bound = 64);
bool is_group(std::span<const FieldAutomorphism> autos);

// Product of all conjugates of a under the listed automorphisms, which must
// form a group. The result is checked to be fixed by every member.
FieldElement relative_norm(const FieldElement& a, std::span<const FieldAutomorphism> group);

// Returns q with u = q / s(q), given s of order n and N_<s>(u) = 1. Candidates
// for the resolvent are tried in order; the default is the tower basis.
FieldElement hilbert90_witness(const FieldElement& u, const FieldAutomorphism& s, int n,
                               std::span<const FieldElement> candidates = {});

// Basis (echelon form) of the subfield fixed by all listed automorphisms.
std::vector<FieldElement> fixed_basis(const TowerPtr& tower,
                                      std::span<const FieldAutomorphism> autos);
bool fixed_by_all(const FieldElement& a, std::span<const FieldAutomorphism> autos);

// Irreducibility of a monic polynomial over L_level: decided for degree <= 3
// whenever the root search is conclusive, and for quartics via their
// quadratic factorizations (even quartics over quadratic towers, all quartics
// over Q). nullopt when undecided.
std::optional<bool> decide_irreducible(const FieldTower& tower, std::size_t level,
                                       const std::vector<QVec>& monic);

// x^degree - a, with a given over the level below
TowerStep pure_step(std::string name, int degree, QVec a);
inline TowerStep quadratic_step(std::string name, const Q& d) { return pure_step(std::move(name), 2, {d}); }

// Automorphism sending generator j to factors[j] * g_j (the natural shape for
// pure steps); validated like any other automorphism.
FieldAutomorphism scaling_automorphism(const TowerPtr& tower, const std::vector<FieldElement>& factors);
// Scaling by rational signs, one per generator.
FieldAutomorphism sign_automorphism(const TowerPtr& tower, const std::vector<int>& signs);

}  // namespace xprod
