#pragma once

// Internal dense helpers shared by the markov and sde modules; not installed.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace mkt::detail {

// Gaussian elimination with partial pivoting. Returns nullopt when the
// system is singular (pivot below tol).
inline std::optional<std::vector<double>> solve_linear(
    std::vector<std::vector<double>> a, std::vector<double> b, double tol = 1e-12) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < tol) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri][c] * x[c];
        x[ri] = s / a[ri][ri];
    }
    return x;
}

// Lower-triangular Cholesky factor; nullopt when the matrix is not positive
// definite at the given tolerance.
inline std::optional<std::vector<std::vector<double>>> cholesky(
    const std::vector<std::vector<double>>& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0) return std::nullopt;
                l[i][j] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return l;
}

}  // namespace mkt::detail
