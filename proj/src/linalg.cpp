#include "xprod/linalg.hpp"

#include <utility>

namespace xprod {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QVec QMatrix::apply(const QVec& v) const {
    QVec out(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        if (sgn(v[c]) == 0) continue;
        for (std::size_t r = 0; r < rows; ++r)
            if (sgn(at(r, c)) != 0) out[r] += at(r, c) * v[c];
    }
    return out;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
    QMatrix out(rows, other.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            if (sgn(at(i, k)) == 0) continue;
            for (std::size_t j = 0; j < other.cols; ++j)
                if (sgn(other.at(k, j)) != 0) out.at(i, j) += at(i, k) * other.at(k, j);
        }
    return out;
}

bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

namespace {
// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t p = row;
        while (p < m.rows && sgn(m.at(p, col)) == 0) ++p;
        if (p == m.rows) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(p, c), m.at(row, c));
        Q inv = 1 / m.at(row, col);
        for (std::size_t c = col; c < m.cols; ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || sgn(m.at(r, col)) == 0) continue;
            Q f = m.at(r, col);
            for (std::size_t c = col; c < m.cols; ++c)
                if (sgn(m.at(row, c)) != 0) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}
}  // namespace

std::optional<QVec> solve(const QMatrix& a, const QVec& b) {
    QMatrix aug(a.rows, a.cols + 1);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols) = b[r];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;
    QVec x(a.cols);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, a.cols);
    return x;
}

std::vector<QVec> kernel(const QMatrix& a) {
    QMatrix m = a;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(a.cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < a.cols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(a.cols);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m.at(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(QMatrix a) { return rref(a).size(); }

Q determinant(QMatrix m) {
    if (m.rows != m.cols) throw PreconditionError("determinant of a non-square matrix");
    Q det = 1;
    const std::size_t n = m.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && sgn(m.at(p, col)) == 0) ++p;
        if (p == n) return 0;
        if (p != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m.at(p, c), m.at(col, c));
            det = -det;
        }
        det *= m.at(col, col);
        Q inv = 1 / m.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(m.at(r, col)) == 0) continue;
            Q f = m.at(r, col) * inv;
            for (std::size_t c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
        }
    }
    return det;
}

}  // namespace xprod
