#pragma once
// Finite G-modules over abelian and generalized-dihedral groups, their Tate
// cohomology in degrees -1..2, the twisting functor, induction, and the
// decomposition statements for dihedral groups.
//
// Degrees 1 and 2 use normalized bar cochains: C^n is a copy of A for every
// n-tuple of non-identity elements.

#include "xprod/finite_abelian.hpp"

#include <random>
#include <string>
#include <vector>

namespace xprod {

class FiniteGroup {
public:
    enum class Kind { abelian, generalized_dihedral };

    // Z/n_1 x ... x Z/n_k, generators the unit vectors
    static FiniteGroup abelian(const std::vector<int>& orders);
    // H x| <theta> with H = Z/n_1 x ... x Z/n_k and theta h theta = h^-1;
    // generators are those of H followed by theta
    static FiniteGroup generalized_dihedral(const std::vector<int>& h_orders);

    std::size_t order() const { return table_.size(); }
    int identity() const { return 0; }
    int mul(int a, int b) const { return table_[idx(a)][idx(b)]; }
    int inv(int a) const { return inv_[idx(a)]; }
    int power(int a, long long n) const;
    int element_order(int a) const;
    const std::vector<int>& generators() const { return gens_; }
    Kind kind() const { return kind_; }
    bool is_abelian() const;
    bool is_cyclic() const;
    std::string name(int g) const { return names_[idx(g)]; }
    std::string str() const { return label_; }

    // designated index-2 subgroup and reflection (generalized dihedral only)
    const std::vector<int>& h_elements() const { return h_; }
    const std::vector<int>& h_generators() const { return h_gens_; }
    int theta() const { return theta_; }
    bool in_h(int g) const;

    std::vector<int> closure(const std::vector<int>& gens) const;
    bool is_index_two(const std::vector<int>& elements) const;
    // the subgroup generated by gens, with embedding[i] its i-th element here
    FiniteGroup subgroup(const std::vector<int>& gens, std::vector<int>& embedding) const;
    // left coset representatives of a subgroup (smallest element of each coset)
    std::vector<int> transversal(const std::vector<int>& sub_elements) const;

private:
    static std::size_t idx(int g) { return static_cast<std::size_t>(g); }
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
    std::vector<int> gens_;
    std::vector<std::string> names_;
    std::string label_;
    Kind kind_ = Kind::abelian;
    std::vector<int> h_;
    std::vector<int> h_gens_;
    int theta_ = -1;
};

// The designated H for generalized-dihedral groups; for abelian groups the
// kernel of the sign character of the last even-order generator.
std::vector<int> index_two_subgroup(const FiniteGroup& g);

class FiniteGModule {
public:
    // one action matrix per group generator; the relations of the group are
    // checked through the multiplication table
    FiniteGModule(FiniteGroup g, CoordinateGroup a, const std::vector<IntMatrix>& generator_actions);
    static FiniteGModule trivial(FiniteGroup g, CoordinateGroup a);
    // Z/q[G/K] with K generated by stabilizer_gens
    static FiniteGModule permutation(FiniteGroup g, const std::vector<int>& stabilizer_gens, long long q);
    static FiniteGModule regular(FiniteGroup g, long long q) { return permutation(std::move(g), {}, q); }

    const FiniteGroup& group() const { return group_; }
    const CoordinateGroup& module() const { return module_; }
    const IntMatrix& matrix(int g) const { return actions_[static_cast<std::size_t>(g)]; }
    IntHom hom(int g) const { return {module_, module_, matrix(g)}; }
    Coords act(int g, const Coords& x) const { return hom(g)(x); }
    IntHom norm(const std::vector<int>& elements) const;
    IntHom norm() const;
    // A^S for the subgroup generated by the given elements
    AbelianSubgroup fixed(const std::vector<int>& elements) const;
    AbelianSubgroup fixed() const { return fixed(group_.generators()); }
    // sum of (g - 1)A over the given elements
    AbelianSubgroup augmentation(const std::vector<int>& elements) const;

    FiniteGModule direct_sum(const FiniteGModule& o) const;
    // same module transported along an automorphism p of A (p_inv its inverse)
    FiniteGModule transport(const IntMatrix& p, const IntMatrix& p_inv) const;
    bool operator==(const FiniteGModule& o) const;
    std::string str() const;

private:
    FiniteGroup group_;
    CoordinateGroup module_;
    std::vector<IntMatrix> actions_;  // indexed by group element
};

// g*a = g.a for g in H and -g.a otherwise; throws unless H has index 2
FiniteGModule twist(const FiniteGModule& m, const std::vector<int>& h);
FiniteGModule twist(const FiniteGModule& m);
FiniteGModule restrict_to(const FiniteGModule& m, const FiniteGroup& sub, const std::vector<int>& embedding);
// Ind from sub to big of a module over sub; the blocks follow big.transversal
FiniteGModule induce(const FiniteGModule& m, const FiniteGroup& big, const std::vector<int>& embedding);
// direct sums of (twisted) permutation modules in random coordinates
FiniteGModule random_module(const FiniteGroup& g, std::mt19937_64& rng, std::uint64_t max_order);

struct TateGroup {
    int degree = 0;
    CoordinateGroup cochains;
    AbelianSubgroup cocycles;
    AbelianSubgroup coboundaries;
    FiniteAbelianGroup value;

    long long order() const { return value.order(); }
    bool is_trivial_class(const Coords& cocycle) const { return coboundaries.contains(cocycle); }
    // lexicographically least element of cocycle + coboundaries
    Coords canonical_representative(const Coords& cocycle) const;
    // canonical representatives of all classes, in increasing order
    std::vector<Coords> representatives(std::uint64_t limit = 1ULL << 16) const;
};

CoordinateGroup cochain_space(const FiniteGModule& m, int n);
// d_n : C^n -> C^(n+1) for n = 0, 1, 2
IntHom coboundary(const FiniteGModule& m, int n);
// position of the block of a tuple of non-identity elements inside C^n
std::size_t cochain_block(const FiniteGroup& g, const std::vector<int>& tuple);

// degree in {-1, 0, 1, 2}; throws PreconditionError beyond the size bounds
TateGroup tate(const FiniteGModule& m, int degree);

struct ShapiroReport {
    bool ok = true;
    std::vector<int> degrees;
    std::vector<FiniteAbelianGroup> over_big;
    std::vector<FiniteAbelianGroup> over_sub;
    std::string str() const;
};
ShapiroReport shapiro_check(const FiniteGModule& m, const FiniteGroup& big, const std::vector<int>& embedding,
                            const std::vector<int>& degrees = {-1, 0, 1, 2});

// The long exact sequence of 0 -> twisted A -> Ind(Res A) -> A -> 0 from
// degree -1 to degree 2, checked for exactness at each inner term.
struct LesReport {
    bool exact = true;
    std::vector<std::string> labels;
    std::vector<FiniteAbelianGroup> terms;
    std::vector<std::string> failures;
    std::string str() const;
};
LesReport les_check(const FiniteGModule& m, const std::vector<int>& h);

struct DihedralHypotheses {
    bool h1_h_trivial = false;      // H^1(H, A) = 0
    bool h1_theta_trivial = false;  // H^1(<theta>, A^H) = 0
    bool hold() const { return h1_h_trivial && h1_theta_trivial; }
};
DihedralHypotheses dihedral_hypotheses(const FiniteGModule& m);

// {a | N_H(a) in A^theta}, the kernel of the norm of the twisted module
AbelianSubgroup twisted_norm_kernel(const FiniteGModule& m);

struct DihedralSplit {
    Coords a1;  // in A^theta
    Coords a2;  // in A^(h theta)
    Coords c;   // c - h c = a - theta a
    Coords d;   // in A^H
};
// H cyclic; throws PreconditionError if the hypotheses fail or N_H(a) is not
// fixed by theta
DihedralSplit dihedral_decompose(const FiniteGModule& m, const Coords& a);

struct PiSubgroup {
    AbelianSubgroup full;     // sum over h in H of A^(h theta)
    AbelianSubgroup reduced;  // sum over products of distinct H-generators
    std::vector<int> reduced_elements;
    bool reduction_holds = false;
};
PiSubgroup pi_subgroup(const FiniteGModule& m);

}  // namespace xprod
