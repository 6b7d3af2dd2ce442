#include "doctest.h"
#include "xprod/lattice.hpp"

#include <algorithm>
#include <random>

using namespace xprod;

namespace {
GradeVector gv(std::initializer_list<Q> c) { return GradeVector(std::vector<Q>(c)); }

// Counts cosets of small in big by brute force: walks coefficient boxes over
// big's basis and keeps one representative per class (membership only, no SNF).
long long brute_index(const GradeSubgroup& big, const GradeSubgroup& small, long box) {
    auto basis = big.generators();
    const std::size_t k = basis.size();
    std::vector<GradeVector> reps;
    std::vector<long> coef(k, 0);
    for (;;) {
        GradeVector v = GradeVector::zero(big.ambient_rank());
        for (std::size_t i = 0; i < k; ++i) v += Q(coef[i]) * basis[i];
        bool seen = std::any_of(reps.begin(), reps.end(),
                                [&](const GradeVector& r) { return small.contains(v - r); });
        if (!seen) reps.push_back(v);
        std::size_t i = 0;
        while (i < k && ++coef[i] == box) coef[i++] = 0;
        if (i == k) break;
    }
    return static_cast<long long>(reps.size());
}
}  // namespace

TEST_CASE("half lattice over the integer lattice") {
    auto q = quotient(GradeSubgroup::scaled_lattice(2, 2), GradeSubgroup::integer_lattice(2));
    CHECK(q.group.invariants() == std::vector<long long>{2, 2});
}

TEST_CASE("quotient of a group by itself is trivial") {
    auto z2 = GradeSubgroup::integer_lattice(2);
    CHECK(quotient(z2, z2).group.is_trivial());
    CHECK(quotient(z2, z2).group.str() == "trivial");
}

TEST_CASE("sixths over integers") {
    auto big = GradeSubgroup::scaled_lattice(1, 6);
    auto small = GradeSubgroup::integer_lattice(1);
    auto q = quotient(big, small);
    CHECK(q.group.invariants() == std::vector<long long>{6});
    CHECK(brute_index(big, small, 6) == 6);
}

TEST_CASE("quotient preconditions") {
    auto z = GradeSubgroup::integer_lattice(2);
    auto half = GradeSubgroup::scaled_lattice(2, 2);
    CHECK_THROWS_AS(quotient(z, half), PreconditionError);
    GradeSubgroup line(2, {gv({1, 0})});
    CHECK_THROWS_AS(quotient(z, line), PreconditionError);
    CHECK_THROWS_AS(GradeSubgroup(1, {gv({Q(1, 128)})}), PreconditionError);
}

TEST_CASE("coset orders") {
    auto z2 = GradeSubgroup::integer_lattice(2);
    CHECK(coset_order(gv({Q(1, 2), 0}), z2) == 2);
    CHECK(coset_order(gv({3, -1}), z2) == 1);
    CHECK(coset_order(gv({Q(1, 3), Q(1, 3)}), z2) == 3);
    GradeSubgroup line(2, {gv({1, 0})});
    CHECK_THROWS_AS(coset_order(gv({0, 1}), line), PreconditionError);
}

TEST_CASE("independence checks") {
    auto z2 = GradeSubgroup::integer_lattice(2);
    CHECK(independence_check({gv({Q(1, 2), 0}), gv({0, Q(1, 2)})}, {2, 2}, z2));
    CHECK_FALSE(independence_check({gv({Q(1, 2), 0}), gv({Q(1, 2), 0})}, {2, 2}, z2));
    CHECK_FALSE(independence_check({gv({Q(1, 2), 0}), gv({Q(1, 2), 1})}, {2, 2}, z2));
    CHECK_FALSE(independence_check({gv({Q(1, 2), 0})}, {4}, z2));
}

TEST_CASE("invariants ignore generator order and match brute force and determinants") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> d(-4, 4);
    auto z2 = GradeSubgroup::integer_lattice(2);
    int tested = 0;
    while (tested < 40) {
        std::vector<GradeVector> gens;
        for (int g = 0; g < 3; ++g) gens.push_back(gv({d(rng), d(rng)}));
        GradeSubgroup small(2, gens);
        if (small.rank() != 2) continue;
        auto q = quotient(z2, small);
        auto shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(quotient(z2, GradeSubgroup(2, shuffled)).group == q.group);
        CHECK(Z(static_cast<long>(q.group.order())) == index_by_determinant(z2, small));
        if (q.group.order() <= 64) CHECK(brute_index(z2, small, q.group.order()) == q.group.order());
        for (std::size_t i = 1; i < q.group.invariants().size(); ++i)
            CHECK(q.group.invariants()[i] % q.group.invariants()[i - 1] == 0);
        ++tested;
    }
}

TEST_CASE("projection is a homomorphism that kills the subgroup") {
    auto big = GradeSubgroup::scaled_lattice(2, 6);
    GradeSubgroup small(2, {gv({1, 1}), gv({0, 2})});
    auto q = quotient(big, small);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-12, 12);
    auto add = [&](std::vector<long long> a, const std::vector<long long>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] = (a[i] + b[i]) % q.group.invariants()[i];
        return a;
    };
    for (int t = 0; t < 50; ++t) {
        auto a = gv({Q(d(rng), 6), Q(d(rng), 6)});
        auto b = gv({Q(d(rng), 6), Q(d(rng), 6)});
        CHECK(q.project(a + b) == add(q.project(a), q.project(b)));
        CHECK(q.project(Q(d(rng)) * gv({1, 1}) + Q(d(rng)) * gv({0, 2})) ==
              std::vector<long long>(q.group.invariants().size(), 0));
    }
}

TEST_CASE("finite abelian group normal form") {
    CHECK(FiniteAbelianGroup::from_cyclic_orders({2, 3}).invariants() == std::vector<long long>{6});
    CHECK(FiniteAbelianGroup::from_cyclic_orders({4, 2, 1}).invariants() ==
          std::vector<long long>{2, 4});
    CHECK(FiniteAbelianGroup::from_cyclic_orders({1, 1}).is_trivial());
}
