#pragma once
// Finite abelian groups in coordinates Z/d_1 x ... x Z/d_m, their subgroups
// and homomorphisms given by integer matrices.
//
// All subgroup arithmetic is done one prime at a time: the p-part of the
// ambient group is embedded in (Z/p^e)^m by scaling coordinate r by p^(e-k_r),
// and sizes, containment and kernels come from Smith forms over Z/p^e.

#include "xprod/lattice.hpp"
#include "xprod/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xprod {

using Coords = std::vector<long long>;
using IntMatrix = std::vector<std::vector<long long>>;  // rows = target coordinates

class CoordinateGroup {
public:
    CoordinateGroup() = default;
    explicit CoordinateGroup(std::vector<long long> moduli);
    // base^copies, blocks in order
    static CoordinateGroup power(const CoordinateGroup& base, std::size_t copies);

    std::size_t dim() const { return moduli_.size(); }
    const std::vector<long long>& moduli() const { return moduli_; }
    Coords zero() const { return Coords(dim(), 0); }
    Coords reduce(Coords x) const;
    Coords add(const Coords& a, const Coords& b) const;
    Coords sub(const Coords& a, const Coords& b) const;
    Coords neg(const Coords& a) const;
    Coords scale(long long k, const Coords& a) const;
    bool is_zero(const Coords& a) const;
    // exact order as a big integer, and enumeration when it fits
    Z order() const;
    std::uint64_t small_order(std::uint64_t limit = 1ULL << 20) const;
    std::uint64_t index(const Coords& a) const;
    Coords element(std::uint64_t index) const;
    std::vector<long long> primes() const;
    FiniteAbelianGroup structure() const;
    bool operator==(const CoordinateGroup& o) const = default;
    std::string str() const;

private:
    std::vector<long long> moduli_;
};

class AbelianSubgroup {
public:
    AbelianSubgroup(CoordinateGroup ambient, const std::vector<Coords>& generators);
    static AbelianSubgroup zero(const CoordinateGroup& ambient) { return {ambient, {}}; }
    static AbelianSubgroup whole(const CoordinateGroup& ambient);

    const CoordinateGroup& ambient() const { return ambient_; }
    // a generating set read off the per-prime diagonal bases
    std::vector<Coords> generators() const;
    Z order() const;
    bool contains(const Coords& x) const;
    bool contains(const AbelianSubgroup& o) const;
    AbelianSubgroup plus(const AbelianSubgroup& o) const;
    AbelianSubgroup plus(const std::vector<Coords>& more) const;
    bool operator==(const AbelianSubgroup& o) const { return contains(o) && o.contains(*this); }
    // all elements, in sorted order; throws above the limit
    std::vector<Coords> elements(std::uint64_t limit = 1ULL << 16) const;

    struct Local {
        long long p = 0;
        int e = 0;
        std::vector<std::size_t> coords;  // ambient coordinates with nontrivial p-part
        std::vector<int> k;               // exponent of p in each of those moduli
        std::vector<std::vector<long long>> basis;  // scaled rows over Z/p^e
        int log_size = 0;
    };
    const std::vector<Local>& parts() const { return parts_; }

    // parts must cover exactly the primes of the ambient group, in order
    static AbelianSubgroup from_parts(CoordinateGroup ambient, std::vector<Local> parts);

private:
    AbelianSubgroup() = default;
    CoordinateGroup ambient_;
    std::vector<Local> parts_;
};

// big / small; throws unless small is contained in big
FiniteAbelianGroup quotient_structure(const AbelianSubgroup& big, const AbelianSubgroup& small);
// order of x modulo the subgroup
long long order_modulo(const Coords& x, const AbelianSubgroup& sub);

struct IntHom {
    CoordinateGroup src;
    CoordinateGroup dst;
    IntMatrix m;

    Coords operator()(const Coords& x) const;
    // every column maps the relation d_s e_s to zero
    bool well_defined() const;
};

IntHom compose(const IntHom& outer, const IntHom& inner);
AbelianSubgroup kernel(const IntHom& f);
AbelianSubgroup image(const IntHom& f);
AbelianSubgroup image(const IntHom& f, const AbelianSubgroup& domain);
// {x in domain | f(x) in target}
AbelianSubgroup preimage(const IntHom& f, const AbelianSubgroup& target, const AbelianSubgroup& domain);
// some x with f(x) = y, if any
std::optional<Coords> solve(const IntHom& f, const Coords& y);
// x in span(gens) as an explicit combination sum c_j gens_j, if any
std::optional<std::vector<long long>> combination(const CoordinateGroup& g, const std::vector<Coords>& gens,
                                                  const Coords& x);

}  // namespace xprod
