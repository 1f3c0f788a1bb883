#include "dagger/linalg.hpp"

#include "dagger/error.hpp"

#include <cstddef>
#include <utility>

namespace dagger {

namespace {

// Reduces m to row echelon form in place; returns pivot columns in row order.
std::vector<std::size_t> echelon(Matrix& m, std::size_t ncols, Rational* det_sign = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
        if (sel == m.size()) continue;
        if (sel != row) {
            std::swap(m[sel], m[row]);
            if (det_sign) *det_sign = -*det_sign;
        }
        for (std::size_t r = row + 1; r < m.size(); ++r) {
            if (sgn(m[r][col]) == 0) continue;
            Rational factor = m[r][col] / m[row][col];
            for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= factor * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

long rank(Matrix m) {
    if (m.empty()) return 0;
    std::size_t ncols = m.front().size();
    return static_cast<long>(echelon(m, ncols).size());
}

Rational determinant(Matrix m) {
    std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) fail(ErrorKind::invalid_argument, "determinant of a non-square matrix");
    if (n == 0) return Rational(1);
    Rational sign(1);
    auto pivots = echelon(m, n, &sign);
    if (pivots.size() < n) return Rational(0);
    Rational det = sign;
    for (std::size_t i = 0; i < n; ++i) det *= m[i][i];
    return det;
}

std::optional<std::vector<Rational>> solve(Matrix m, std::vector<Rational> b) {
    if (m.size() != b.size()) fail(ErrorKind::invalid_argument, "solve: dimension mismatch");
    std::size_t ncols = m.empty() ? 0 : m.front().size();
    for (std::size_t r = 0; r < m.size(); ++r) m[r].push_back(b[r]);
    auto pivots = echelon(m, ncols);
    for (std::size_t r = pivots.size(); r < m.size(); ++r)
        if (sgn(m[r][ncols]) != 0) return std::nullopt;
    std::vector<Rational> x(ncols, Rational(0));
    for (std::size_t i = pivots.size(); i-- > 0;) {
        std::size_t col = pivots[i];
        Rational acc = m[i][ncols];
        for (std::size_t c = col + 1; c < ncols; ++c) acc -= m[i][c] * x[c];
        x[col] = acc / m[i][col];
    }
    return x;
}

}  // namespace dagger
