#pragma once
// Graded fields built from a Laurent base T = T0[x_1^±, ..., x_n^±] (grade
// group Z^n) by inertial steps (growth of the residue field) and totally
// ramified steps z^r = b (growth of the grade group).
//
// Every degree gamma carries a fixed section element t_gamma. For gamma in
// Z^n it is the Laurent monomial x^gamma; otherwise t_gamma = t_rho * x^(gamma-rho)
// where rho is the canonical coset representative of gamma modulo Z^n (the
// fractional parts, i.e. least nonnegative coordinates). The factor set
//   t_a * t_b = phi(a, b) * t_(a+b)
// therefore only depends on the representatives of a and b.

#include "xprod/field.hpp"
#include "xprod/lattice.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace xprod {

struct RamifiedStep {
    int r = 1;
    FieldElement beta;  // z^r = beta * t_mu
    GradeVector mu;
    GradeVector delta;  // mu / r, the degree of z
};

class GradedField;
using GradedFieldPtr = std::shared_ptr<const GradedField>;

class GradedField {
public:
    static GradedFieldPtr laurent(TowerPtr residue, std::size_t rank);

    const TowerPtr& residue() const { return residue_; }
    std::size_t rank() const { return rank_; }
    const GradeSubgroup& grades() const { return grades_; }
    GradeSubgroup base_grades() const { return GradeSubgroup::integer_lattice(rank_); }
    // dimension of the residue field of the Laurent base over Q
    std::size_t base_residue_degree() const { return base_residue_degree_; }
    const std::vector<RamifiedStep>& ramified_steps() const { return ramified_; }

    const std::vector<GradeVector>& representatives() const { return reps_; }
    GradeVector representative(const GradeVector& g) const;
    // phi(a, b) for arbitrary a, b in the grade group
    FieldElement factor(const GradeVector& a, const GradeVector& b) const;
    // itemized violations of symmetry, normalization and the cocycle identity
    std::vector<std::string> check_factor_set() const;

private:
    friend GradedFieldPtr extend_inertial(const GradedField& base, const TowerStep& step);
    friend GradedFieldPtr extend_totally_ramified(const GradedField& base, int r,
                                                  const FieldElement& beta, const GradeVector& mu);
    GradedField(TowerPtr residue, std::size_t rank, GradeSubgroup grades)
        : residue_(std::move(residue)), rank_(rank), grades_(std::move(grades)) {}

    TowerPtr residue_;
    std::size_t rank_;
    GradeSubgroup grades_;
    std::size_t base_residue_degree_ = 1;
    std::vector<RamifiedStep> ramified_;
    std::vector<GradeVector> reps_;
    std::map<std::pair<GradeVector, GradeVector>, FieldElement> phi_;
};

GradedFieldPtr extend_inertial(const GradedField& base, const TowerStep& step);
GradedFieldPtr extend_totally_ramified(const GradedField& base, int r, const FieldElement& beta,
                                       const GradeVector& mu);

// Finite sum of homogeneous components c_gamma * t_gamma.
class GradedElement {
public:
    explicit GradedElement(GradedFieldPtr field) : field_(std::move(field)) {}
    static GradedElement homogeneous(GradedFieldPtr field, const FieldElement& c, const GradeVector& deg);

    const GradedFieldPtr& field() const { return field_; }
    const std::map<GradeVector, FieldElement>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }
    bool is_homogeneous() const { return comps_.size() == 1; }
    const GradeVector& degree() const;  // homogeneous only
    FieldElement component(const GradeVector& deg) const;

    GradedElement& operator+=(const GradedElement& o);
    GradedElement operator-() const;
    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a += -b; }
    friend GradedElement operator*(const GradedElement& a, const GradedElement& b);
    bool operator==(const GradedElement& o) const;
    GradedElement inverse() const;  // homogeneous units only
    std::string str() const;

private:
    void add_term(const GradeVector& deg, const FieldElement& c);
    GradedFieldPtr field_;
    std::map<GradeVector, FieldElement> comps_;
};

// [E:T], [E0:T0] and the grade groups of a graded division algebra E over T.
struct GradedDimensions {
    long long total_degree = 1;
    long long residue_degree = 1;
    GradeSubgroup grades;
    GradeSubgroup base_grades;
};

// [E:T] == [E0:T0] * |Gamma_E : Gamma_T|
bool fundamental_equality_check(const GradedDimensions& dims);

// [S:T] for a graded field S obtained from T by extensions, counted as
// residue dimension times the number of grade cosets.
long long relative_degree(const GradedField& ext, const GradedField& base);

// Decides whether the commutative residue algebra base[g_1,...]/(p_1,...)
// (one monic polynomial per step, each over the previous stage) is a field.
// Throws PreconditionError for steps above degree 4 or undecided quartics.
bool graded_division_check(const TowerPtr& base, const std::vector<TowerStep>& steps);

}  // namespace xprod
