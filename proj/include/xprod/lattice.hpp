#pragma once
// Grade groups: finitely generated subgroups of Q^k (in practice lattices
// such as Z^k and (1/n)Z^k), their finite quotients, and finite abelian groups
// in invariant-factor form.

#include "xprod/rational.hpp"

#include <functional>
#include <string>
#include <vector>

namespace xprod {

inline constexpr long kDefaultDenominatorBound = 64;

struct GradeVector {
    std::vector<Q> coords;

    GradeVector() = default;
    explicit GradeVector(std::vector<Q> c) : coords(std::move(c)) {
        for (auto& x : coords) x.canonicalize();
    }
    static GradeVector zero(std::size_t k) { return GradeVector(std::vector<Q>(k)); }

    std::size_t rank() const { return coords.size(); }
    bool is_zero() const;
    GradeVector& operator+=(const GradeVector& o);
    GradeVector& operator-=(const GradeVector& o);
    friend GradeVector operator+(GradeVector a, const GradeVector& b) { return a += b; }
    friend GradeVector operator-(GradeVector a, const GradeVector& b) { return a -= b; }
    GradeVector operator-() const;
    friend GradeVector operator*(const Q& s, GradeVector v) {
        for (auto& x : v.coords) x *= s;
        return v;
    }
    bool operator==(const GradeVector& o) const { return coords == o.coords; }
    bool operator<(const GradeVector& o) const { return coords < o.coords; }
    std::string str() const;
};

using ZMatrix = std::vector<std::vector<Z>>;

struct SmithForm {
    std::vector<Z> diagonal;  // length min(rows, cols), d_i | d_{i+1}, nonnegative
    ZMatrix left;             // U, unimodular rows x rows
    ZMatrix right;            // V, unimodular cols x cols, with U A V = diag
};

SmithForm smith_normal_form(const ZMatrix& a, std::size_t cols);
// Row Hermite normal form with zero rows removed.
ZMatrix hermite_rows(ZMatrix a, std::size_t cols);

class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    // Any list of cyclic orders; normalized to invariant factors (1s dropped).
    static FiniteAbelianGroup from_cyclic_orders(const std::vector<long long>& orders);

    const std::vector<long long>& invariants() const { return invariants_; }
    long long order() const;
    bool is_trivial() const { return invariants_.empty(); }
    bool operator==(const FiniteAbelianGroup& o) const = default;
    std::string str() const;  // "(2,2)" or "trivial"

private:
    std::vector<long long> invariants_;
};

class GradeSubgroup {
public:
    GradeSubgroup(std::size_t ambient_rank, const std::vector<GradeVector>& generators,
                  long denominator_bound = kDefaultDenominatorBound);

    static GradeSubgroup integer_lattice(std::size_t k);
    static GradeSubgroup scaled_lattice(std::size_t k, long n);  // (1/n) Z^k

    std::size_t ambient_rank() const { return k_; }
    std::size_t rank() const { return hnf_.size(); }
    long denominator_bound() const { return bound_; }
    const Z& denominator() const { return den_; }
    std::vector<GradeVector> generators() const;  // Hermite-reduced rows
    bool contains(const GradeVector& v) const;
    bool contains(const GradeSubgroup& other) const;
    GradeSubgroup plus(const GradeSubgroup& other) const;
    GradeSubgroup plus(const std::vector<GradeVector>& more) const;
    bool operator==(const GradeSubgroup& o) const;

private:
    std::size_t k_;
    long bound_;
    Z den_;        // lattice = (1/den) * rowspace(hnf_)
    ZMatrix hnf_;
};

struct Quotient {
    FiniteAbelianGroup group;
    // coset coordinates of an element of big, reduced modulo the invariants
    std::function<std::vector<long long>(const GradeVector&)> project;
};

Quotient quotient(const GradeSubgroup& big, const GradeSubgroup& small);

// least m >= 1 with m v in small, searching up to the denominator bound of small
long coset_order(const GradeVector& v, const GradeSubgroup& small);

bool independence_check(const std::vector<GradeVector>& vs, const std::vector<long>& orders,
                        const GradeSubgroup& small);

// |big : small| via Hermite determinants (both must have full rank)
Z index_by_determinant(const GradeSubgroup& big, const GradeSubgroup& small);

}  // namespace xprod
