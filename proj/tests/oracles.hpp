#pragma once

// Test-only independent oracles. These deliberately take the dumb route:
// Sylvester determinants by fraction-free Bareiss elimination, sieves,
// brute-force scans. They must never share code paths with the library
// implementations they check.

#include "uniteq/bigint.hpp"
#include "uniteq/polyring.hpp"

#include <vector>

namespace oracles {

using uniteq::Int;
using uniteq::IntPoly;

// Determinant of an integer matrix by fraction-free Bareiss elimination.
inline Int bareiss_det(std::vector<std::vector<Int>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign < 0 ? Int(-m[n - 1][n - 1]) : m[n - 1][n - 1];
}

// Res(f, g) as the determinant of the Sylvester matrix.
inline Int sylvester_resultant(const IntPoly& f, const IntPoly& g) {
    const int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) throw std::invalid_argument("sylvester_resultant: zero polynomial");
    if (m == 0) return uniteq::pow_ui(f.c[0], static_cast<unsigned long>(n));
    if (n == 0) return uniteq::pow_ui(g.c[0], static_cast<unsigned long>(m));
    const std::size_t N = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Int>> s(N, std::vector<Int>(N, Int(0)));
    // n rows of f coefficients (highest degree first), then m rows of g
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) s[r][r + j] = f.c[m - j];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) s[n + r][r + j] = g.c[n - j];
    return bareiss_det(std::move(s));
}

// Primes up to limit by the sieve of Eratosthenes.
inline std::vector<std::uint64_t> prime_sieve(std::uint64_t limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            primes.push_back(i);
            for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return primes;
}

} // namespace oracles
