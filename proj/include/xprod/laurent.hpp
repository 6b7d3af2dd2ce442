#pragma once
// Laurent polynomials M[x_1^±, ..., x_n^±] with coefficients in a number-field
// tower. These are the coefficients of graded crossed products over the
// Laurent base T = K[x^±]; n = 0 gives plain field coefficients.

#include "xprod/field.hpp"
#include "xprod/lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace xprod {

using Exponent = std::vector<int>;

struct Monomial {
    FieldElement coeff;
    Exponent exponent;

    Monomial(FieldElement c, Exponent e) : coeff(std::move(c)), exponent(std::move(e)) {}
    static Monomial constant(FieldElement c, std::size_t rank) {
        return Monomial(std::move(c), Exponent(rank, 0));
    }
    Monomial operator*(const Monomial& o) const;
    Monomial inverse() const;
    bool operator==(const Monomial& o) const = default;
    std::string str() const;
};

Exponent operator+(const Exponent& a, const Exponent& b);
Exponent operator-(const Exponent& a);
GradeVector to_grade(const Exponent& e);

class LaurentPoly {
public:
    LaurentPoly(TowerPtr tower, std::size_t rank) : tower_(std::move(tower)), rank_(rank) {}
    LaurentPoly(const Monomial& m);  // NOLINT(google-explicit-constructor)
    static LaurentPoly constant(const FieldElement& c, std::size_t rank);

    const TowerPtr& tower() const { return tower_; }
    std::size_t rank() const { return rank_; }
    const std::map<Exponent, FieldElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    Monomial as_monomial() const;
    // coefficient of x^0 when the polynomial is constant
    bool is_constant() const;
    FieldElement constant_term() const;
    FieldElement coefficient(const Exponent& e) const;

    void add_term(const Exponent& e, const FieldElement& c);
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly operator-() const;
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    bool operator==(const LaurentPoly& o) const;

    LaurentPoly apply(const FieldAutomorphism& s) const;
    std::string str() const;

private:
    TowerPtr tower_;
    std::size_t rank_;
    std::map<Exponent, FieldElement> terms_;
};

Monomial apply(const FieldAutomorphism& s, const Monomial& m);

}  // namespace xprod
