#pragma once

// Small exact linear algebra over Q plus an interval determinant. Sizes here
// are tiny (a few hundred rows at most), so plain Gaussian elimination is
// the right tool.

#include "uniteq/bigint.hpp"
#include "uniteq/errors.hpp"
#include "uniteq/interval.hpp"

#include <vector>

namespace uniteq {

// Solve A x = b for each column b of B, exactly over Q. A is n x m with
// n >= m and rank m; overdetermined rows must be consistent.
// Returns an m x k matrix of solutions (k = number of right-hand sides).
inline std::vector<std::vector<Rat>> solve_rational_system(std::vector<std::vector<Rat>> A,
                                                           std::vector<std::vector<Rat>> B) {
    const std::size_t n = A.size();
    const std::size_t m = n ? A[0].size() : 0;
    const std::size_t k = B.empty() ? 0 : B[0].size();
    if (B.size() != n) throw std::invalid_argument("solve_rational_system: shape mismatch");
    std::size_t row = 0;
    std::vector<std::size_t> pivot_row(m);
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t p = row;
        while (p < n && A[p][col] == 0) ++p;
        if (p == n) throw RankDeficient("solve_rational_system: rank-deficient matrix");
        std::swap(A[p], A[row]);
        std::swap(B[p], B[row]);
        Rat inv = 1 / A[row][col];
        for (std::size_t j = col; j < m; ++j) A[row][j] *= inv;
        for (std::size_t j = 0; j < k; ++j) B[row][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || A[i][col] == 0) continue;
            Rat f = A[i][col];
            for (std::size_t j = col; j < m; ++j) A[i][j] -= f * A[row][j];
            for (std::size_t j = 0; j < k; ++j) B[i][j] -= f * B[row][j];
        }
        pivot_row[col] = row;
        ++row;
    }
    // consistency of the remaining rows
    for (std::size_t i = row; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (B[i][j] != 0)
                throw RankDeficient("solve_rational_system: inconsistent overdetermined system");
    std::vector<std::vector<Rat>> X(m, std::vector<Rat>(k));
    for (std::size_t col = 0; col < m; ++col)
        for (std::size_t j = 0; j < k; ++j) X[col][j] = B[pivot_row[col]][j];
    return X;
}

// Interval Gaussian elimination with partial pivoting. Row operations with
// interval multipliers preserve containment, so the pivot product encloses
// the determinant of every real matrix inside the interval matrix. Throws
// PrecisionExhausted when no pivot can be certified nonzero.
inline Interval interval_det(std::vector<std::vector<Interval>> M) {
    const std::size_t n = M.size();
    if (n == 0) return Interval::exact(1l, 64);
    mpfr_prec_t prec = M[0][0].prec();
    Interval det = Interval::exact(1l, prec);
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = n;
        double best_mag = 0;
        for (std::size_t i = col; i < n; ++i) {
            if (M[i][col].contains_zero()) continue;
            double mag = std::abs(M[i][col].mid_d());
            if (best == n || mag > best_mag) {
                best = i;
                best_mag = mag;
            }
        }
        if (best == n)
            throw PrecisionExhausted("interval_det: no pivot certified nonzero");
        if (best != col) {
            std::swap(M[best], M[col]);
            sign = -sign;
        }
        det = det * M[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (M[i][col].contains_zero() && mpfr_zero_p(M[i][col].lo()) &&
                mpfr_zero_p(M[i][col].hi()))
                continue;
            Interval f = M[i][col] / M[col][col];
            for (std::size_t j = col; j < n; ++j) M[i][j] = M[i][j] - f * M[col][j];
        }
    }
    return sign > 0 ? det : -det;
}

// solve M x = y over intervals; same pivoting/certification rules
inline std::vector<Interval> interval_solve(std::vector<std::vector<Interval>> M,
                                            std::vector<Interval> y) {
    const std::size_t n = M.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = n;
        double best_mag = 0;
        for (std::size_t i = col; i < n; ++i) {
            if (M[i][col].contains_zero()) continue;
            double mag = std::abs(M[i][col].mid_d());
            if (best == n || mag > best_mag) {
                best = i;
                best_mag = mag;
            }
        }
        if (best == n)
            throw PrecisionExhausted("interval_solve: no pivot certified nonzero");
        if (best != col) {
            std::swap(M[best], M[col]);
            std::swap(y[best], y[col]);
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            Interval f = M[i][col] / M[col][col];
            for (std::size_t j = col; j < n; ++j) M[i][j] = M[i][j] - f * M[col][j];
            y[i] = y[i] - f * y[col];
        }
    }
    std::vector<Interval> x(n, Interval::exact(0l, n ? M[0][0].prec() : 64));
    for (std::size_t i = n; i-- > 0;) {
        Interval s = y[i];
        for (std::size_t j = i + 1; j < n; ++j) s = s - M[i][j] * x[j];
        x[i] = s / M[i][i];
    }
    return x;
}

} // namespace uniteq
