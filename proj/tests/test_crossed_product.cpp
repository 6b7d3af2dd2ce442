#include "doctest.h"
#include "oracles/word_rewriting.hpp"
#include "xprod/crossed_product.hpp"

#include <random>

using namespace xprod;

namespace {

GradeVector gv(std::initializer_list<Q> c) { return GradeVector(std::vector<Q>(c)); }

// M = Q(i, sqrt2, sqrt3), K = Q(i); sigma_1 moves sqrt2, sigma_2 moves sqrt3
// towers are compared by identity, so every fixture shares one
const TowerPtr& triquadratic() {
    static const TowerPtr m =
        FieldTower::make({quadratic_step("i", -1), quadratic_step("s2", 2), quadratic_step("s3", 3)});
    return m;
}

GaloisSetup biquadratic_over_gaussian() {
    const auto& m = triquadratic();
    return {"Q(i,s2,s3)/Q(i)", m, {sign_automorphism(m, {1, -1, 1}), sign_automorphism(m, {1, 1, -1})}, {2, 2}};
}

GaloisSetup triquadratic_over_rationals() {
    const auto& m = triquadratic();
    return {"Q(i,s2,s3)/Q",
            m,
            {sign_automorphism(m, {-1, 1, 1}), sign_automorphism(m, {1, -1, 1}), sign_automorphism(m, {1, 1, -1})},
            {2, 2, 2}};
}

// Q(zeta_5)/Q, cyclic of order 4 generated by zeta -> zeta^2
GaloisSetup cyclotomic_five() {
    auto m = FieldTower::make({TowerStep{"z", 4, {{1}, {1}, {1}, {1}, {1}}}});
    auto z = FieldElement::generator(m, "z");
    return {"Q(zeta5)/Q", m, {FieldAutomorphism(m, {z * z})}, {4}};
}

// Q(omega, cbrt2)/Q(omega), cyclic of order 3
GaloisSetup kummer_cubic() {
    auto m = FieldTower::make({TowerStep{"w", 2, {{1}, {1}, {1}}}, pure_step("c", 3, {2, 0})});
    auto w = FieldElement::generator(m, "w");
    return {"Q(w,cbrt2)/Q(w)", m, {scaling_automorphism(m, {FieldElement::rational(m, 1), w})}, {3}};
}

// the graded symbol algebra (2x^2, 3y^2, T)_i with y_1 = j^{-1}, y_2 = i
CrossedProductData symbol_example() {
    auto s = biquadratic_over_gaussian();
    auto d = trivial_presentation(s, 2);
    auto i = FieldElement::generator(s.field, "i");
    d.u[0][1] = i;
    d.u[1][0] = i.inverse();
    d.b[0] = Monomial(FieldElement::generator(s.field, "s3").inverse(), {0, -1});
    d.b[1] = Monomial(FieldElement::generator(s.field, "s2"), {1, 0});
    return d;
}

// quaternion algebra (3, x) over Q[x^{+-1}]
CrossedProductData quaternion_3x() {
    auto m = FieldTower::make({quadratic_step("s3", 3)});
    auto d = trivial_presentation({"Q(s3)/Q", m, {sign_automorphism(m, {-1})}, {2}}, 1);
    d.b[0] = Monomial(FieldElement::rational(m, 1), {1});
    return d;
}

std::vector<CrossedProductData> sample_presentations(std::mt19937_64& rng) {
    std::vector<CrossedProductData> out{symbol_example(), quaternion_3x()};
    out.push_back(random_presentation(biquadratic_over_gaussian(), rng, 0));
    out.push_back(random_presentation(biquadratic_over_gaussian(), rng, 2));
    out.push_back(random_presentation(triquadratic_over_rationals(), rng, 0));
    out.push_back(random_presentation(cyclotomic_five(), rng, 1));
    out.push_back(random_presentation(kummer_cubic(), rng, 1));
    return out;
}

AlgebraElement basis(const AlgebraPtr& a, std::size_t idx, const FieldElement& c) {
    return AlgebraElement::monomial(a, Monomial::constant(c, a->rank()), idx);
}

}  // namespace

TEST_CASE("validate accepts the symbol example and Dec presentations") {
    auto rep = validate(symbol_example());
    CHECK_MESSAGE(rep.ok(), rep.str());
    auto s = biquadratic_over_gaussian();
    auto dec = trivial_presentation(s);
    dec.b[0] = Monomial::constant(FieldElement::rational(s.field, 5), 0);
    dec.b[1] = Monomial::constant(FieldElement::generator(s.field, "i") + FieldElement::rational(s.field, 2), 0);
    CHECK(validate(dec).ok());
}

TEST_CASE("validate names the violated relation instances") {
    auto d = symbol_example();
    d.u[0][1] = FieldElement::rational(d.field, 1);
    auto rep = validate(d);
    CHECK_FALSE(rep.ok());
    CHECK(rep.names("norm-compat(1,2)"));
    CHECK(rep.names("u-antisymmetric(1,2)"));

    auto e = symbol_example();
    e.u[0][0] = FieldElement::rational(e.field, -1);
    CHECK(validate(e).names("u-diagonal(1)"));

    // sigma_1 moves sqrt2, so sqrt2 * b_1 is no longer fixed by sigma_1
    auto g = symbol_example();
    g.b[0] = Monomial(g.b[0].coeff * FieldElement::generator(g.field, "s2"), g.b[0].exponent);
    CHECK(validate(g).names("norm-compat(1,1)"));
    CHECK_FALSE(validate(g).names("norm-compat(1,2)"));

    auto h = symbol_example();
    h.orders[0] = 4;
    CHECK(validate(h).names("sigma-order(1)"));
    CHECK_THROWS_AS(CrossedProduct::build(h), PreconditionError);
}

TEST_CASE("u-cocycle catches a non-cocycle on three generators") {
    auto s = triquadratic_over_rationals();
    auto d = trivial_presentation(s);
    // u_12 = sqrt3 has N_<sigma_1>(sqrt3) = 3 != 1 = b_1/sigma_2(b_1)
    auto s3 = FieldElement::generator(s.field, "s3");
    d.u[0][1] = s3;
    d.u[1][0] = s3.inverse();
    auto rep = validate(d);
    CHECK(rep.names("norm-compat(1,2)"));
    CHECK(rep.names("u-cocycle(1,2,3)"));
}

TEST_CASE("multiplication agrees with word rewriting on all basis pairs") {
    std::mt19937_64 rng(11);
    for (const auto& d : sample_presentations(rng)) {
        REQUIRE_MESSAGE(validate(d).ok(), validate(d).str());
        auto alg = CrossedProduct::build(d);
        oracle::WordAlgebra words(d);
        for (std::size_t a = 0; a < alg->dimension(); ++a)
            for (std::size_t b = 0; b < alg->dimension(); ++b) {
                auto m = random_element(d.field, rng);
                auto c = random_element(d.field, rng);
                auto got = basis(alg, a, m) * basis(alg, b, c);
                auto [coeff, idx] = words.multiply(Monomial::constant(m, d.grade_rank), alg->indices()[a],
                                                   Monomial::constant(c, d.grade_rank), alg->indices()[b]);
                CHECK(got == AlgebraElement::monomial(alg, coeff, alg->flat(idx)));
            }
    }
}

TEST_CASE("f satisfies the cocycle identity and the grading law") {
    std::mt19937_64 rng(12);
    for (const auto& d : sample_presentations(rng)) {
        auto alg = CrossedProduct::build(d);
        CHECK(alg->cocycle_violations().empty());
        for (std::size_t a = 0; a < alg->dimension(); ++a)
            for (std::size_t b = 0; b < alg->dimension(); ++b)
                CHECK(to_grade(alg->f(a, b).exponent) + alg->degree_of_index(alg->product_index(a, b)) ==
                      alg->degree_of_index(a) + alg->degree_of_index(b));
    }
}

TEST_CASE("normalization of f on a single generator") {
    std::mt19937_64 rng(13);
    auto d = random_presentation(cyclotomic_five(), rng, 0);
    auto alg = CrossedProduct::build(d);
    auto z = alg->generator_index(0);
    std::size_t cur = 0;
    for (int l = 0; l < 4; ++l) {
        auto expected = l <= 2 ? Monomial::constant(FieldElement::rational(d.field, 1), 0) : d.b[0];
        CHECK(alg->f(cur, z) == expected);
        cur = alg->product_index(cur, z);
    }
    auto s = symbol_example();
    auto sym = CrossedProduct::build(s);
    auto z1 = sym->generator_index(0), z2 = sym->generator_index(1);
    CHECK(sym->f(z1, z2).coeff.is_one());
    CHECK(sym->f(z2, z1).coeff == s.u[1][0]);
}

TEST_CASE("associativity on basis triples") {
    std::mt19937_64 rng(14);
    for (const auto& d : sample_presentations(rng)) {
        auto alg = CrossedProduct::build(d);
        const auto n = alg->dimension();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    auto x = basis(alg, a, random_element(d.field, rng));
                    auto y = basis(alg, b, random_element(d.field, rng));
                    auto w = basis(alg, c, random_element(d.field, rng));
                    CHECK((x * y) * w == x * (y * w));
                }
        for (int t = 0; t < 5; ++t) {
            auto x = random_algebra_element(alg, rng), y = random_algebra_element(alg, rng),
                 w = random_algebra_element(alg, rng);
            CHECK((x * y) * w == x * (y * w));
            CHECK(x * (y + w) == x * y + x * w);
            CHECK(AlgebraElement::one(alg) * x == x);
        }
    }
}

TEST_CASE("commutators of generators, powers and conjugation") {
    std::mt19937_64 rng(15);
    for (const auto& d : sample_presentations(rng)) {
        auto alg = CrossedProduct::build(d);
        for (std::size_t i = 0; i < d.k(); ++i) {
            auto zi = AlgebraElement::generator(alg, i);
            CHECK(zi.pow(d.orders[i]) == AlgebraElement::scalar(alg, LaurentPoly(d.b[i])));
            auto m = random_element(d.field, rng);
            CHECK(zi * AlgebraElement::scalar(alg, m) * zi.inverse() == AlgebraElement::scalar(alg, d.sigma[i](m)));
            for (std::size_t j = 0; j < d.k(); ++j) {
                auto zj = AlgebraElement::generator(alg, j);
                // z_i z_j z_i^{-1} z_j^{-1} = u_ij
                CHECK(zi * zj * zi.inverse() * zj.inverse() == AlgebraElement::scalar(alg, d.u[i][j]));
            }
        }
    }
}

TEST_CASE("cocycle product of the symbol example's factors") {
    auto s = biquadratic_over_gaussian();
    auto i = FieldElement::generator(s.field, "i");
    auto s2 = FieldElement::generator(s.field, "s2");
    auto s3 = FieldElement::generator(s.field, "s3");
    auto inertial = trivial_presentation(s, 2);
    inertial.u[0][1] = i;
    inertial.u[1][0] = i.inverse();
    inertial.b[0] = Monomial(s3.inverse(), {0, 0});
    inertial.b[1] = Monomial(s2, {0, 0});
    auto symbols = trivial_presentation(s, 2);
    symbols.b[0] = Monomial(FieldElement::rational(s.field, 1), {0, -1});
    symbols.b[1] = Monomial(FieldElement::rational(s.field, 1), {1, 0});
    REQUIRE(validate(inertial).ok());
    REQUIRE(validate(symbols).ok());
    CHECK(cocycle_product(inertial, symbols) == symbol_example());
    CHECK(cocycle_product(symbol_example(), trivial_presentation(s, 2)) == symbol_example());

    std::mt19937_64 rng(16);
    for (int t = 0; t < 10; ++t) {
        auto a = random_presentation(s, rng, 1), b = random_presentation(s, rng, 1);
        CHECK(validate(cocycle_product(a, b)).ok());
    }
    CHECK_THROWS_AS(cocycle_product(symbol_example(), quaternion_3x()), PreconditionError);
}

TEST_CASE("bicyclic change of presentation") {
    auto d = symbol_example();
    auto one = FieldElement::rational(d.field, 1);
    CHECK(bicyclic_change(d, one, one) == d);

    // c_1 in K: u unchanged, b_1 scaled by c_1^2
    auto c1 = FieldElement::generator(d.field, "i") + FieldElement::rational(d.field, 3);
    auto e = bicyclic_change(d, c1, one);
    CHECK(validate(e).ok());
    CHECK(e.u == d.u);
    CHECK(e.b[0].coeff == c1 * c1 * d.b[0].coeff);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        auto x = random_element(d.field, rng), y = random_element(d.field, rng);
        auto f = bicyclic_change(d, x, y);
        CHECK(validate(f).ok());
        // u' = (c1/sigma2(c1)) (sigma1(c2)/c2) u
        CHECK(f.u[0][1] == x / d.sigma[1](x) * d.sigma[0](y) / y * d.u[0][1]);
        CHECK(f.b[1].coeff == y * d.sigma[1](y) * d.b[1].coeff);
        CHECK(bicyclic_change(f, x.inverse(), y.inverse()) == d);
    }
    CHECK_THROWS_AS(bicyclic_change(d, FieldElement(d.field), one), PreconditionError);
    CHECK_THROWS_AS(bicyclic_change(quaternion_3x(), one, one), PreconditionError);
}

TEST_CASE("changed presentations give isomorphic algebras") {
    // z'_l = c_l z_l inside the original algebra satisfies the new relations
    std::mt19937_64 rng(18);
    auto d = random_presentation(triquadratic_over_rationals(), rng, 0);
    auto alg = CrossedProduct::build(d);
    std::vector<FieldElement> c;
    for (int l = 0; l < 3; ++l) c.push_back(random_element(d.field, rng));
    auto e = change_presentation(d, c);
    REQUIRE(validate(e).ok());
    std::vector<AlgebraElement> zp;
    for (std::size_t l = 0; l < 3; ++l)
        zp.push_back(AlgebraElement::scalar(alg, c[l]) * AlgebraElement::generator(alg, l));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(zp[i].pow(2) == AlgebraElement::scalar(alg, e.b[i].coeff));
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(zp[i] * zp[j] == AlgebraElement::scalar(alg, e.u[i][j]) * zp[j] * zp[i]);
    }
}

TEST_CASE("semiramified criterion") {
    auto rep = semiramified_check(symbol_example());
    CHECK(rep.semiramified);
    CHECK(rep.grades == GradeSubgroup::scaled_lattice(2, 2));
    CHECK(rep.quotient.invariants() == std::vector<long long>{2, 2});
    CHECK(rep.residue_degree == 4);

    auto s = biquadratic_over_gaussian();
    CHECK_FALSE(semiramified_check(trivial_presentation(s, 2)).semiramified);
    auto mixed = trivial_presentation(s, 2);
    mixed.b[0] = Monomial(FieldElement::rational(s.field, 1), {1, 0});
    CHECK_FALSE(semiramified_check(mixed).semiramified);
    auto same = trivial_presentation(s, 2);
    same.b[0] = Monomial(FieldElement::rational(s.field, 1), {1, 0});
    same.b[1] = Monomial(FieldElement::rational(s.field, 1), {1, 2});
    CHECK_FALSE(semiramified_check(same).semiramified);

    auto dims = graded_dimensions(symbol_example());
    CHECK(dims.total_degree == 16);
    CHECK(dims.residue_degree == 4);
    CHECK(fundamental_equality_check(dims));
}

TEST_CASE("reduced norm") {
    auto q = quaternion_3x();
    auto alg = CrossedProduct::build(q);
    auto s3 = FieldElement::generator(q.field, "s3");
    CHECK(reduced_norm(AlgebraElement::one(alg)) == LaurentPoly::constant(FieldElement::rational(q.field, 1), 1));
    CHECK(reduced_norm(AlgebraElement::scalar(alg, s3)) ==
          LaurentPoly::constant(FieldElement::rational(q.field, -3), 1));
    CHECK(reduced_norm(AlgebraElement::generator(alg, 0)) ==
          LaurentPoly(Monomial(FieldElement::rational(q.field, -1), {1})));

    std::mt19937_64 rng(19);
    for (const auto& d : sample_presentations(rng)) {
        auto a = CrossedProduct::build(d);
        auto group = a->galois_group();
        for (int t = 0; t < 3; ++t) {
            auto x = random_algebra_element(a, rng), y = random_algebra_element(a, rng);
            CHECK(reduced_norm(x * y) == reduced_norm(x) * reduced_norm(y));
            auto m = random_element(d.field, rng);
            CHECK(reduced_norm(AlgebraElement::scalar(a, m)) ==
                  LaurentPoly::constant(relative_norm(m, group), d.grade_rank));
        }
        // Nrd of a homogeneous unit of degree gamma has degree deg(A) gamma
        for (std::size_t idx = 0; idx < a->dimension(); ++idx) {
            auto x = basis(a, idx, random_element(d.field, rng));
            auto n = reduced_norm(x);
            REQUIRE(n.is_monomial());
            CHECK(to_grade(n.as_monomial().exponent) == Q(static_cast<long>(a->dimension())) * x.degree());
        }
    }
    auto big = CrossedProduct::build(random_presentation(triquadratic_over_rationals(), rng, 0));
    CHECK_THROWS_AS(reduced_norm(AlgebraElement::one(big), 4), PreconditionError);
}

TEST_CASE("inertial times norm decomposition") {
    auto d = symbol_example();
    auto dec = i_n_decompose(d);
    CHECK(dec.inertial.grade_rank == 0);
    CHECK(dec.inertial.u == d.u);
    CHECK(dec.inertial.b[0].coeff == d.b[0].coeff);
    CHECK(validate(dec.inertial).ok());
    for (const auto& u_row : dec.dsr.u)
        for (const auto& u : u_row) CHECK(u.is_one());
    CHECK(cocycle_product(extend_to_graded(dec.inertial, 2), dec.dsr) == d);

    // already DSR input: the inertial part has u = 1 and b in K
    auto s = biquadratic_over_gaussian();
    auto dsr = trivial_presentation(s, 2);
    dsr.b[0] = Monomial(FieldElement::rational(s.field, 2), {1, 0});
    dsr.b[1] = Monomial(FieldElement::generator(s.field, "i"), {0, 1});
    auto split = i_n_decompose(dsr);
    for (const auto& u_row : split.inertial.u)
        for (const auto& u : u_row) CHECK(u.is_one());
    CHECK(split.inertial.b[1].coeff == FieldElement::generator(s.field, "i"));

    std::mt19937_64 rng(20);
    int decomposed = 0;
    for (int t = 0; t < 20; ++t) {
        auto r = random_presentation(s, rng, 2);
        if (!semiramified_check(r).semiramified) {
            CHECK_THROWS_AS(i_n_decompose(r), PreconditionError);
            continue;
        }
        auto p = i_n_decompose(r);
        CHECK(cocycle_product(extend_to_graded(p.inertial, 2), p.dsr) == r);
        ++decomposed;
    }
    CHECK(decomposed > 0);
}

TEST_CASE("theta map on the symbol example") {
    auto d = symbol_example();
    auto alg = CrossedProduct::build(d);
    // deg(j^{-1}) = deg(y_1)
    CHECK(theta_map(alg, gv({0, Q(-1, 2)})) == d.sigma[0]);
    CHECK(theta_map(alg, gv({Q(1, 2), 0})) == d.sigma[1]);
    CHECK(theta_map(alg, gv({3, -1})).is_identity());
    std::vector<GradeVector> cosets{gv({0, 0}), gv({Q(1, 2), 0}), gv({0, Q(1, 2)}), gv({Q(1, 2), Q(1, 2)}),
                                    gv({Q(3, 2), -2})};
    for (const auto& g : cosets)
        for (const auto& h : cosets) CHECK(theta_map(alg, g + h) == theta_map(alg, g) * theta_map(alg, h));
    CHECK(theta_map(alg, gv({Q(5, 2), 0})) == theta_map(alg, gv({Q(1, 2), 0})));
    CHECK_THROWS_AS(theta_map(alg, gv({Q(1, 3), 0})), PreconditionError);
}
