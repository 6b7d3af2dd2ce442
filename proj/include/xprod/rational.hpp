#pragma once
// Exact rational scalars and the small amount of number theory the field
// code needs (perfect powers, divisor lists).

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xprod {

using Q = mpq_class;
using Z = mpz_class;

// Thrown for division by zero and similar arithmetic impossibilities.
struct ArithmeticError : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when an operation's precondition is not satisfied by the input.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when something that the mathematics guarantees fails to happen.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

Q parse_rational(std::string_view text);
std::string to_string(const Q& q);
std::string to_string(const Z& z);

// Exact k-th root of a rational if it exists (k >= 1).
std::optional<Q> rational_root(const Q& q, unsigned k);

// Positive divisors of |n|; empty when n = 0 or |n| exceeds `limit`.
std::vector<Z> positive_divisors(const Z& n, const Z& limit = Z("1000000000000"));

Z lcm_of_denominators(const std::vector<Q>& values);

}  // namespace xprod
