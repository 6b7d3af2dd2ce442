#pragma once
// Dense linear algebra over the rationals. Matrices are small (dimension at
// most a few dozen), so plain Gaussian elimination is used throughout.

#include "xprod/rational.hpp"

#include <optional>
#include <vector>

namespace xprod {

using QVec = std::vector<Q>;

struct QMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Q> data;  // row-major

    QMatrix() = default;
    QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    static QMatrix identity(std::size_t n);

    Q& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const Q& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    QVec apply(const QVec& v) const;
    QMatrix operator*(const QMatrix& other) const;
    bool operator==(const QMatrix& other) const = default;
};

bool is_zero(const QVec& v);

// Solve A x = b; nullopt if inconsistent. Picks the solution with free
// variables set to zero.
std::optional<QVec> solve(const QMatrix& a, const QVec& b);

// Basis of the null space of A, in reduced echelon order.
std::vector<QVec> kernel(const QMatrix& a);

std::size_t rank(QMatrix a);

Q determinant(QMatrix a);

}  // namespace xprod
