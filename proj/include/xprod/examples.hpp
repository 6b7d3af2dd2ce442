#pragma once
// Built-in example algebras, generated programmatically.
//
//   symbol          (2x^2, 3y^2, T)_i over T = Q(i)[x^±, y^±], degree 4,
//                   with y_1 = j^{-1} and y_2 = i as crossed-product generators
//   unitary-symbol  the same algebra with theta: i -> -i over F = Q
//   biquaternion    (2, x)_T (x) (3, y)_T over T = Q(i)[x^±, y^±] with the
//                   tensor product of the canonical involutions; generators
//                   sqrt(-1) j and sqrt(-1) j' are symmetric
//   cyclic-dsr      (Q(i, 2^{1/4}) T / T, sigma, x), cyclic of degree 4 over
//                   T = Q(i)[x^±], dihedral over Q

#include "xprod/crossed_product.hpp"

#include <optional>
#include <string>
#include <vector>

namespace xprod {

struct ExampleAlgebra {
    std::string name;
    CrossedProductData data;
    std::optional<FieldAutomorphism> theta;  // unitary examples only
    // the inertial and DSR factors as printed with the example, when it has them
    std::optional<CrossedProductData> inertial;
    std::optional<CrossedProductData> dsr;
};

// n is the symbol degree parameter; only n = 2 is available (n = 3 needs a
// degree-6 cyclotomic step beyond the verified tower range).
ExampleAlgebra symbol_example(int n = 2);
ExampleAlgebra unitary_symbol_example(int n = 2);
ExampleAlgebra biquaternion_example();
ExampleAlgebra cyclic_dsr_example();

std::vector<std::string> example_names();
// accepts the names above plus the aliases "cyclicex" and "noninjex"
ExampleAlgebra example_by_name(const std::string& name, int n = 2);

}  // namespace xprod
