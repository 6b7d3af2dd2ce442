#include "doctest.h"
#include "oracles/mutations.hpp"
#include "xprod/examples.hpp"
#include "xprod/involution.hpp"

#include <algorithm>
#include <random>

using namespace xprod;

namespace {

// the definition read literally: some theta outside H with theta^2 = 1 and
// theta h theta^{-1} = h^{-1} for all h in H
bool dihedral_by_definition(const std::vector<FieldAutomorphism>& g, const std::vector<FieldAutomorphism>& h) {
    auto in_h = [&](const FieldAutomorphism& x) { return std::find(h.begin(), h.end(), x) != h.end(); };
    for (const auto& t : g) {
        if (in_h(t) || !(t * t).is_identity()) continue;
        if (std::all_of(h.begin(), h.end(),
                        [&](const FieldAutomorphism& x) { return t * x * t.inverse() == x.inverse(); }))
            return true;
    }
    return false;
}

std::vector<ExampleAlgebra> unitary_examples() {
    return {unitary_symbol_example(), biquaternion_example(), cyclic_dsr_example()};
}

}  // namespace

TEST_CASE("generalized dihedral recognition") {
    auto m = FieldTower::make({quadratic_step("i", -1), quadratic_step("s2", 2), quadratic_step("s3", 3)});
    std::vector<FieldAutomorphism> h{sign_automorphism(m, {1, -1, 1}), sign_automorphism(m, {1, 1, -1})};
    std::vector<FieldAutomorphism> g = h;
    g.push_back(sign_automorphism(m, {-1, 1, 1}));
    CHECK(is_generalized_dihedral(g, h));
    CHECK(dihedral_by_definition(generated_group(g), generated_group(h)));
    CHECK_THROWS_AS(is_generalized_dihedral(g, g), PreconditionError);
    CHECK_THROWS_AS(is_generalized_dihedral(h, std::vector<FieldAutomorphism>{}), PreconditionError);

    // Q(zeta_5)/Q is cyclic of order 4: the elements outside the index-2
    // subgroup have order 4
    auto c = FieldTower::make({TowerStep{"z", 4, {{1}, {1}, {1}, {1}, {1}}}});
    auto z = FieldElement::generator(c, "z");
    FieldAutomorphism s(c, {z * z});
    std::vector<FieldAutomorphism> cg{s}, ch{s * s};
    CHECK_FALSE(is_generalized_dihedral(cg, ch));
    CHECK_FALSE(dihedral_by_definition(generated_group(cg), generated_group(ch)));

    // Q(i, 2^{1/4})/Q is dihedral of order 8 over Q(i)
    auto d = cyclic_dsr_example();
    std::vector<FieldAutomorphism> dg{d.data.sigma[0], *d.theta};
    CHECK(is_generalized_dihedral(dg, d.data.sigma));
    CHECK(dihedral_by_definition(generated_group(dg), generated_group(d.data.sigma)));
    // over Q(2^{1/4}, i) with H = <sigma^2>: the quotient is not index 2
    std::vector<FieldAutomorphism> sq{d.data.sigma[0].pow(2)};
    CHECK_THROWS_AS(is_generalized_dihedral(dg, sq), PreconditionError);
}

TEST_CASE("unitary conditions on the example data") {
    for (const auto& ex : unitary_examples()) {
        auto rep = validate_unitary_conditions(ex.data, *ex.theta);
        CHECK_MESSAGE(rep.ok(), ex.name << ": " << rep.str());
    }
    auto ex = unitary_symbol_example();
    auto i = FieldElement::generator(ex.data.field, "i");
    // u_12 = i: i * sigma_1 sigma_2 theta(i) = i * (-i) = 1
    CHECK((i * (ex.data.sigma[0] * ex.data.sigma[1] * *ex.theta)(i)).is_one());

    // Dec presentation over F
    auto dec = ex.data;
    for (auto& row : dec.u)
        for (auto& u : row) u = FieldElement::rational(dec.field, 1);
    dec.b[0] = Monomial(FieldElement::rational(dec.field, 7), {1, 0});
    dec.b[1] = Monomial(FieldElement::rational(dec.field, -2), {0, 1});
    CHECK(validate(dec).ok());
    CHECK(validate_unitary_conditions(dec, *ex.theta).ok());

    // theta fixing i is the wrong extension of psi_0
    auto wrong = sign_automorphism(ex.data.field, {1, -1, -1});
    auto bad = validate_unitary_conditions(ex.data, wrong);
    CHECK(bad.names("unitary-commutator(1,2)"));
    CHECK(bad.names("theta-nontrivial-on-center"));

    // theta sigma_1 also restricts to psi_0 on K but moves b_2 = sqrt2
    auto other = validate_unitary_conditions(ex.data, *ex.theta * ex.data.sigma[0]);
    CHECK(other.names("unitary-power(2)"));
    CHECK_FALSE(other.names("unitary-commutator(1,2)"));
}

TEST_CASE("seeded mutations are rejected") {
    std::mt19937_64 rng(41);
    for (const auto& ex : unitary_examples()) {
        for (int t = 0; t < 20; ++t) {
            auto m = oracle::mutate(ex.data, *ex.theta, rng);
            bool accepted = validate(m).ok() && validate_unitary_conditions(m, *ex.theta).ok();
            CHECK_FALSE(accepted);
        }
    }
}

TEST_CASE("the involution fixing the generators") {
    std::mt19937_64 rng(42);
    for (const auto& ex : unitary_examples()) {
        auto alg = CrossedProduct::build(ex.data);
        auto tau = Involution::build(alg, *ex.theta);
        CHECK(tau.basis_violations().empty());
        const auto& d = ex.data;
        for (std::size_t l = 0; l < d.k(); ++l) {
            auto z = AlgebraElement::generator(alg, l);
            CHECK(tau(z) == z);
        }
        for (int t = 0; t < 10; ++t) {
            auto m = random_element(d.field, rng);
            CHECK(tau(AlgebraElement::scalar(alg, m)) == AlgebraElement::scalar(alg, (*ex.theta)(m)));
        }
        if (d.k() == 2) {
            auto z1 = AlgebraElement::generator(alg, 0), z2 = AlgebraElement::generator(alg, 1);
            // tau(z_1 z_2) = z_2 z_1 = u_21 z_1 z_2
            CHECK(tau(z1 * z2) == z2 * z1);
            CHECK(tau(z1 * z2) == AlgebraElement::scalar(alg, d.u[1][0]) * z1 * z2);
        }
        for (int t = 0; t < 100; ++t) {
            auto a = random_algebra_element(alg, rng), b = random_algebra_element(alg, rng);
            CHECK(tau(a * b) == tau(b) * tau(a));
            CHECK(tau(tau(a)) == a);
        }
        // degree preserving
        for (std::size_t idx = 0; idx < alg->dimension(); ++idx) {
            auto y = AlgebraElement::monomial(alg, Monomial(random_element(d.field, rng), Exponent(d.grade_rank, 1)),
                                              idx);
            CHECK(tau(y).is_homogeneous());
            CHECK(tau(y).degree() == y.degree());
        }
    }
    auto ex = unitary_symbol_example();
    auto alg = CrossedProduct::build(ex.data);
    CHECK_THROWS_AS(Involution::build(alg, sign_automorphism(ex.data.field, {1, -1, -1})), PreconditionError);
}

TEST_CASE("symmetrize") {
    auto ex = biquaternion_example();
    auto alg = CrossedProduct::build(ex.data);
    auto tau = Involution::build(alg, *ex.theta);
    auto i = FieldElement::generator(ex.data.field, "i");

    auto z1 = AlgebraElement::generator(alg, 0);
    auto same = symmetrize(z1, tau);
    CHECK(same.t.is_one());
    CHECK(same.x == z1);

    // j = -sqrt(-1) z_1 has tau(j) = -j
    auto j = AlgebraElement::scalar(alg, -i) * z1;
    CHECK(tau(j) == -j);
    auto sj = symmetrize(j, tau);
    CHECK(sj.a == FieldElement::rational(ex.data.field, -1));
    CHECK(tau(sj.x) == sj.x);
    CHECK(sj.t / sj.s_theta(sj.t) == sj.a);

    // equivariance under central symmetric factors
    auto x = AlgebraElement::scalar(alg, LaurentPoly(Monomial(FieldElement::rational(ex.data.field, 5), {1, -1})));
    auto sr = symmetrize(j * x, tau);
    CHECK(sr.t == sj.t);
    CHECK(sr.x == sj.x * x);

    std::mt19937_64 rng(43);
    for (const auto& e : unitary_examples()) {
        auto a = CrossedProduct::build(e.data);
        auto t = Involution::build(a, *e.theta);
        for (std::size_t idx = 0; idx < a->dimension(); ++idx)
            for (int r = 0; r < 5; ++r) {
                auto y = AlgebraElement::monomial(a, Monomial::constant(random_element(e.data.field, rng), e.data.grade_rank),
                                                  idx);
                auto s = symmetrize(y, t);
                CHECK(t(s.x) == s.x);
                CHECK(s.x == AlgebraElement::scalar(a, s.t) * y);
            }
    }
    CHECK_THROWS_AS(symmetrize(z1 + AlgebraElement::one(alg), tau), PreconditionError);
}
