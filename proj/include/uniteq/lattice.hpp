#pragma once

// Exact LLL over Z with rational Gram-Schmidt (Cohen, Alg. 2.6.3 shape).
// Dimensions in this project never exceed a dozen, so exactness is cheap
// and the reduction-step soundness certificate stays unconditional.

#include "uniteq/bigint.hpp"
#include "uniteq/errors.hpp"

#include <utility>
#include <vector>

namespace uniteq {

struct IntLattice {
    std::vector<std::vector<Int>> basis; // rows are basis vectors

    std::size_t dim() const { return basis.size(); }
};

struct LLLResult {
    IntLattice reduced;
    std::vector<std::vector<Int>> transform; // reduced = transform * input
};

namespace detail {

inline Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Gram-Schmidt data for rows 0..k of b: mu (lower triangular) and the
// squared star norms B. Throws RankDeficient on a dependent row.
inline void gso_row(const std::vector<std::vector<Int>>& b, std::size_t k,
                    std::vector<std::vector<Rat>>& mu, std::vector<Rat>& B) {
    std::vector<Rat> d(k); // d[j] = b_k . b_j*
    for (std::size_t j = 0; j < k; ++j) {
        Rat t(dot(b[k], b[j]));
        for (std::size_t i = 0; i < j; ++i) t -= mu[j][i] * d[i];
        d[j] = t;
        if (B[j] == 0) throw RankDeficient("lll_reduce: dependent basis row");
        mu[k][j] = d[j] / B[j];
    }
    Rat nk(dot(b[k], b[k]));
    for (std::size_t j = 0; j < k; ++j) nk -= mu[k][j] * d[j];
    if (nk <= 0) throw RankDeficient("lll_reduce: dependent basis row");
    B[k] = nk;
}

} // namespace detail

inline LLLResult lll_reduce(const IntLattice& L, const Rat& delta = Rat(99, 100)) {
    if (delta <= Rat(1, 4) || delta >= 1)
        throw std::invalid_argument("lll_reduce: delta must lie in (1/4, 1)");
    const std::size_t n = L.dim();
    LLLResult out;
    out.reduced = L;
    out.transform.assign(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) out.transform[i][i] = 1;
    if (n <= 1) {
        if (n == 1 && detail::dot(L.basis[0], L.basis[0]) == 0)
            throw RankDeficient("lll_reduce: zero vector");
        return out;
    }
    auto& b = out.reduced.basis;
    auto& H = out.transform;

    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n, Rat(0));
    std::size_t kmax = 0;
    detail::gso_row(b, 0, mu, B);

    auto red = [&](std::size_t k, std::size_t l) {
        Rat m = mu[k][l];
        // q = nearest integer to mu[k][l]
        Int q;
        {
            Rat t = m + Rat(1, 2);
            mpz_fdiv_q(q.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
        }
        if (q == 0) return;
        for (std::size_t i = 0; i < b[k].size(); ++i) b[k][i] -= q * b[l][i];
        for (std::size_t i = 0; i < n; ++i) H[k][i] -= q * H[l][i];
        mu[k][l] -= Rat(q);
        for (std::size_t i = 0; i < l; ++i) mu[k][i] -= Rat(q) * mu[l][i];
    };

    std::size_t k = 1;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            detail::gso_row(b, k, mu, B);
        }
        red(k, k - 1);
        if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            // swap rows k-1, k and patch the GSO data in place
            std::swap(b[k], b[k - 1]);
            std::swap(H[k], H[k - 1]);
            Rat m = mu[k][k - 1];
            Rat Bk = B[k] + m * m * B[k - 1];
            mu[k][k - 1] = m * B[k - 1] / Bk;
            B[k] = B[k - 1] * B[k] / Bk;
            B[k - 1] = Bk;
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            for (std::size_t i = k + 1; i <= kmax; ++i) {
                Rat t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - m * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            k = (k > 1) ? k - 1 : 1;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }
    return out;
}

// Exact rational Gram-Schmidt of the given (reduced) basis; min_i ||b_i*||^2
// is a certified lower bound on lambda_1(L)^2.
inline Rat shortest_vector_sq_lower_bound(const IntLattice& L) {
    const std::size_t n = L.dim();
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n, Rat(0));
    Rat best;
    for (std::size_t k = 0; k < n; ++k) {
        detail::gso_row(L.basis, k, mu, B);
        if (k == 0 || B[k] < best) best = B[k];
    }
    return best;
}

// rational r >= 0 with r^2 <= q (lower bound on sqrt(q))
inline Rat rat_sqrt_lower(const Rat& q) {
    if (q < 0) throw std::invalid_argument("rat_sqrt_lower: negative input");
    if (q == 0) return Rat(0);
    // floor(sqrt(num * den)) / den <= sqrt(num/den)
    Int nd = q.get_num() * q.get_den();
    Int s;
    mpz_sqrt(s.get_mpz_t(), nd.get_mpz_t());
    Rat r(s, q.get_den());
    r.canonicalize();
    return r;
}

inline Rat shortest_vector_lower_bound(const IntLattice& L) {
    return rat_sqrt_lower(shortest_vector_sq_lower_bound(L));
}

} // namespace uniteq
