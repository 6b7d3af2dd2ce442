#include "xprod/examples.hpp"

namespace xprod {

namespace {

TowerPtr triquadratic() {
    return FieldTower::make({quadratic_step("i", -1), quadratic_step("s2", 2), quadratic_step("s3", 3)});
}

FieldElement one(const TowerPtr& t) { return FieldElement::rational(t, 1); }

void require_n(int n) {
    if (n != 2)
        throw PreconditionError("symbol examples are available for n = 2 only; n = " + std::to_string(n) +
                                " needs a cyclotomic step of degree > 4");
}

}  // namespace

ExampleAlgebra symbol_example(int n) {
    require_n(n);
    auto m = triquadratic();
    GaloisSetup s{"Q(i,s2,s3)/Q(i)", m, {sign_automorphism(m, {1, -1, 1}), sign_automorphism(m, {1, 1, -1})}, {2, 2}};
    auto i = FieldElement::generator(m, "i");
    auto s2 = FieldElement::generator(m, "s2");
    auto s3 = FieldElement::generator(m, "s3");

    // I_0 = (a, b, K)_omega with b_1 = 1/sqrt(b), b_2 = sqrt(a)
    auto inertial = trivial_presentation(s, 0);
    inertial.u[0][1] = i;
    inertial.u[1][0] = i.inverse();
    inertial.b[0] = Monomial(s3.inverse(), {});
    inertial.b[1] = Monomial(s2, {});
    // N: c_1 = 1/y, c_2 = x
    auto dsr = trivial_presentation(s, 2);
    dsr.b[0] = Monomial(one(m), {0, -1});
    dsr.b[1] = Monomial(one(m), {1, 0});

    auto e = trivial_presentation(s, 2);
    e.u = inertial.u;
    e.b[0] = Monomial(s3.inverse(), {0, -1});
    e.b[1] = Monomial(s2, {1, 0});
    return {"symbol", e, std::nullopt, inertial, dsr};
}

ExampleAlgebra unitary_symbol_example(int n) {
    auto ex = symbol_example(n);
    ex.name = "unitary-symbol";
    ex.theta = sign_automorphism(ex.data.field, {-1, 1, 1});
    return ex;
}

ExampleAlgebra biquaternion_example() {
    auto m = triquadratic();
    GaloisSetup s{"Q(i,s2,s3)/Q(i)", m, {sign_automorphism(m, {1, -1, 1}), sign_automorphism(m, {1, 1, -1})}, {2, 2}};
    // z_1 = sqrt(-1) j: (sqrt(-1) j)^2 = -x, and likewise z_2^2 = -y
    auto e = trivial_presentation(s, 2);
    e.b[0] = Monomial(-one(m), {1, 0});
    e.b[1] = Monomial(-one(m), {0, 1});
    auto inertial = trivial_presentation(s, 0);
    inertial.b[0] = Monomial(-one(m), {});
    inertial.b[1] = Monomial(-one(m), {});
    auto dsr = trivial_presentation(s, 2);
    dsr.b[0] = Monomial(one(m), {1, 0});
    dsr.b[1] = Monomial(one(m), {0, 1});
    return {"biquaternion", e, sign_automorphism(m, {-1, -1, -1}), inertial, dsr};
}

ExampleAlgebra cyclic_dsr_example() {
    auto m = FieldTower::make({quadratic_step("i", -1), pure_step("r", 4, {2, 0})});
    auto i = FieldElement::generator(m, "i");
    GaloisSetup s{"Q(i,2^(1/4))/Q(i)", m, {scaling_automorphism(m, {one(m), i})}, {4}};
    auto e = trivial_presentation(s, 1);
    e.b[0] = Monomial(one(m), {1});
    auto inertial = trivial_presentation(s, 0);
    return {"cyclic-dsr", e, sign_automorphism(m, {-1, 1}), inertial, e};
}

std::vector<std::string> example_names() { return {"symbol", "unitary-symbol", "biquaternion", "cyclic-dsr"}; }

ExampleAlgebra example_by_name(const std::string& name, int n) {
    if (name == "symbol" || name == "cyclicex") return symbol_example(n);
    if (name == "unitary-symbol") return unitary_symbol_example(n);
    if (name == "biquaternion" || name == "noninjex") return biquaternion_example();
    if (name == "cyclic-dsr") return cyclic_dsr_example();
    throw PreconditionError("unknown example '" + name + "'");
}

}  // namespace xprod
