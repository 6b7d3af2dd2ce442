#include "doctest.h"
#include "xprod/field.hpp"

#include <random>

using namespace xprod;

namespace {
TowerPtr gaussian() { return FieldTower::make({quadratic_step("i", -1)}); }
TowerPtr sqrt2() { return FieldTower::make({quadratic_step("s2", 2)}); }
TowerPtr sqrt2_sqrt3() {
    return FieldTower::make({quadratic_step("s2", 2), quadratic_step("s3", 3)});
}
FieldElement q(const TowerPtr& t, long n, long d = 1) { return FieldElement::rational(t, Q(n, d)); }
}  // namespace

TEST_CASE("defining relation: i*i = -1") {
    auto t = gaussian();
    auto i = FieldElement::generator(t, "i");
    CHECK(i * i == q(t, -1));
}

TEST_CASE("inverse of 1+sqrt2") {
    auto t = sqrt2();
    auto s = FieldElement::generator(t, "s2");
    auto a = q(t, 1) + s;
    auto expected = q(t, -1) + s;
    // independent check of the claimed inverse by direct multiplication
    CHECK((a * expected).is_one());
    CHECK(q(t, 1) / a == expected);
}

TEST_CASE("multiplicative identity on random elements") {
    auto t = sqrt2_sqrt3();
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
        auto a = random_element(t, rng, 5, true);
        CHECK(a * q(t, 1) == a);
    }
}

TEST_CASE("division by zero and tower mismatch") {
    auto t = gaussian();
    CHECK_THROWS_AS(q(t, 1) / FieldElement(t), ArithmeticError);
    auto u = sqrt2();
    CHECK_THROWS_AS(q(t, 1) + q(u, 1), PreconditionError);
}

TEST_CASE("field axioms on random triples") {
    std::vector<TowerPtr> towers{
        gaussian(), sqrt2_sqrt3(),
        FieldTower::make({quadratic_step("i", -1), quadratic_step("s2", 2), quadratic_step("s3", 3)}),
        FieldTower::make({TowerStep{"w", 2, {{1}, {1}, {1}}}, pure_step("c", 3, {2})}),
        FieldTower::make({quadratic_step("i", -1), pure_step("r", 4, {2})}),
    };
    std::mt19937_64 rng(7);
    for (const auto& t : towers) {
        for (int k = 0; k < 100; ++k) {
            auto a = random_element(t, rng), b = random_element(t, rng), c = random_element(t, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a / b) * b == a);
        }
    }
}

TEST_CASE("irreducibility checks at construction") {
    CHECK_THROWS_AS(FieldTower::make({quadratic_step("r", 4)}), PreconditionError);
    CHECK_THROWS_AS(FieldTower::make({quadratic_step("a", 2), quadratic_step("b", 8)}),
                    PreconditionError);
    // sqrt(6) = sqrt2*sqrt3 already lives in Q(sqrt2, sqrt3)
    CHECK_THROWS_AS(FieldTower::make({quadratic_step("a", 2), quadratic_step("b", 3),
                                      quadratic_step("c", 6)}),
                    PreconditionError);
    // 3 + 2 sqrt2 = (1 + sqrt2)^2
    CHECK_THROWS_AS(FieldTower::make({quadratic_step("a", 2), pure_step("b", 2, {3, 2})}),
                    PreconditionError);
    CHECK_THROWS_AS(FieldTower::make({pure_step("c", 3, {8})}), PreconditionError);

    auto cubic = FieldTower::make({TowerStep{"w", 2, {{1}, {1}, {1}}}, pure_step("c", 3, {2})});
    CHECK(cubic->step_status(1) == StepStatus::Irreducible);
    auto quartic = FieldTower::make({quadratic_step("i", -1), pure_step("r", 4, {2})});
    CHECK(quartic->step_status(1) == StepStatus::Irreducible);
    // (x^2 - 2)(x^2 - 3) and (x^2 + x + 2)(x^2 - x + 3) over Q
    CHECK_THROWS_AS(FieldTower::make({TowerStep{"x", 4, {{6}, {}, {-5}, {}, {1}}}}),
                    PreconditionError);
    CHECK_THROWS_AS(FieldTower::make({TowerStep{"x", 4, {{6}, {1}, {4}, {}, {1}}}}),
                    PreconditionError);
    // x^4 + 1 is irreducible over Q but splits into quadratics over Q(sqrt2)
    CHECK(FieldTower::make({TowerStep{"z", 4, {{1}, {}, {}, {}, {1}}}})->step_status(0) ==
          StepStatus::Irreducible);
    CHECK_THROWS_AS(FieldTower::make({quadratic_step("s2", 2), TowerStep{"z", 4, {{1}, {}, {}, {}, {1}}}}),
                    PreconditionError);
    CHECK_FALSE(quartic->provisional());
    auto quintic = FieldTower::make({pure_step("f", 5, {2})});
    CHECK(quintic->step_status(0) == StepStatus::Provisional);
    CHECK(quintic->provisional());
}

TEST_CASE("an undecided reducible quartic is caught on division") {
    // (x^2 + x + 2)(x^2 - x + 3) over Q(i): neither roots nor factors are decided there
    auto t = FieldTower::make({quadratic_step("i", -1), TowerStep{"x", 4, {{6}, {1}, {4}, {}, {1}}}});
    CHECK(t->step_status(1) == StepStatus::Provisional);
    auto x = FieldElement::generator(t, "x");
    auto zero_divisor = x * x + x + q(t, 2);
    CHECK_FALSE(zero_divisor.is_zero());
    CHECK_THROWS_WITH_AS(zero_divisor.inverse(), doctest::Contains("reducible tower"), ArithmeticError);
}

TEST_CASE("automorphism validation") {
    auto t = sqrt2_sqrt3();
    auto s3 = FieldElement::generator(t, "s3");
    auto s2 = FieldElement::generator(t, "s2");
    CHECK_THROWS_AS(FieldAutomorphism(t, {s3, s2}), PreconditionError);
    auto sigma = sign_automorphism(t, {1, -1});
    CHECK(sigma.order() == 2);
    CHECK(sigma(s2 * s3) == -(s2 * s3));
    CHECK(sigma.compose(sigma).is_identity());

    auto w = FieldTower::make({TowerStep{"w", 2, {{1}, {1}, {1}}}, pure_step("c", 3, {2})});
    auto om = FieldElement::generator(w, "w");
    // c -> w c has order 3 and fixes w
    FieldAutomorphism rot(w, {om, om * FieldElement::generator(w, "c")});
    CHECK(rot.order() == 3);
    CHECK(rot.pow(3).is_identity());
    CHECK(rot.inverse().compose(rot).is_identity());
}

TEST_CASE("relative norm") {
    auto t = gaussian();
    auto i = FieldElement::generator(t, "i");
    auto conj = sign_automorphism(t, {-1});
    auto g = cyclic_group(conj, 2);
    CHECK(relative_norm(q(t, 1) + i, g) == q(t, 2));
    CHECK(relative_norm(q(t, 1), g).is_one());

    auto m = sqrt2_sqrt3();
    auto s = sign_automorphism(m, {1, -1});
    auto h = cyclic_group(s, 2);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 30; ++k) {
        auto a = random_element(m, rng), b = random_element(m, rng);
        CHECK(relative_norm(s(a), h) == relative_norm(a, h));
        CHECK(relative_norm(a * b, h) == relative_norm(a, h) * relative_norm(b, h));
    }
    std::vector<FieldAutomorphism> not_group{s};
    CHECK_THROWS_AS(relative_norm(q(m, 2), not_group), PreconditionError);
}

TEST_CASE("hilbert 90 witnesses") {
    auto t = gaussian();
    auto i = FieldElement::generator(t, "i");
    auto conj = sign_automorphism(t, {-1});
    CHECK(hilbert90_witness(q(t, 1), conj, 2).is_one());
    auto w = hilbert90_witness(i, conj, 2);
    CHECK(w == q(t, 1) + i);
    CHECK((q(t, 1) + i) / (q(t, 1) - i) == i);
    CHECK_THROWS_AS(hilbert90_witness(q(t, 2), conj, 2), PreconditionError);

    auto m = sqrt2_sqrt3();
    auto s = sign_automorphism(m, {1, -1});
    std::mt19937_64 rng(90);
    for (int k = 0; k < 100; ++k) {
        auto c = random_element(m, rng);
        auto u = c / s(c);
        auto qv = hilbert90_witness(u, s, 2);
        CHECK(qv / s(qv) == u);
    }
}

TEST_CASE("hilbert 90 for a cyclic cubic step") {
    auto w = FieldTower::make({TowerStep{"w", 2, {{1}, {1}, {1}}}, pure_step("c", 3, {2})});
    auto om = FieldElement::generator(w, "w");
    FieldAutomorphism rot(w, {om, om * FieldElement::generator(w, "c")});
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        auto c = random_element(w, rng);
        auto u = c / rot(c);
        auto qv = hilbert90_witness(u, rot, 3);
        CHECK(qv / rot(qv) == u);
    }
}

TEST_CASE("fixed subfield basis") {
    auto m = sqrt2_sqrt3();
    std::vector<FieldAutomorphism> s{sign_automorphism(m, {1, -1})};
    auto basis = fixed_basis(m, s);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0].is_one());
    for (const auto& b : basis) CHECK(s[0].fixes(b));
}

TEST_CASE("square roots through quadratic levels") {
    auto m = FieldTower::make({quadratic_step("i", -1), quadratic_step("s2", 2)});
    auto i = FieldElement::generator(m, "i");
    auto s2 = FieldElement::generator(m, "s2");
    std::mt19937_64 rng(17);
    for (int k = 0; k < 40; ++k) {
        auto a = random_element(m, rng);
        auto sq = a * a;
        auto r = m->square_root(2, sq.coeffs());
        REQUIRE(r.kind == RootSearch::HasRoot);
        FieldElement root(m, r.root);
        CHECK(root * root == sq);
    }
    // i is a square in Q(i, sqrt2): ((1+i)/sqrt2)^2 = i
    CHECK(m->square_root(2, i.coeffs()).kind == RootSearch::HasRoot);
    CHECK(m->square_root(2, (q(m, 1) + s2).coeffs()).kind == RootSearch::NoRoot);
}
