#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "uniteq/lattice.hpp"

#include <random>

using namespace uniteq;

namespace {

std::vector<std::vector<Int>> mat_mul(const std::vector<std::vector<Int>>& A,
                                      const std::vector<std::vector<Int>>& B) {
    std::size_t n = A.size(), m = B[0].size(), k = B.size();
    std::vector<std::vector<Int>> C(n, std::vector<Int>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < k; ++t) C[i][j] += A[i][t] * B[t][j];
    return C;
}

// exact Gram-Schmidt data for a full basis
std::pair<std::vector<std::vector<Rat>>, std::vector<Rat>> full_gso(const IntLattice& L) {
    std::size_t n = L.dim();
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n, Rat(0));
    for (std::size_t k = 0; k < n; ++k) detail::gso_row(L.basis, k, mu, B);
    return {mu, B};
}

void check_lll_conditions(const IntLattice& L, const Rat& delta) {
    auto [mu, B] = full_gso(L);
    for (std::size_t k = 0; k < L.dim(); ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            REQUIRE(abs(mu[k][j]) <= Rat(1, 2));
        }
        if (k > 0) REQUIRE(B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]);
    }
}

// exhaustive shortest nonzero vector for tiny dimensions: coefficients in a box
Int brute_lambda1_sq(const IntLattice& L, long box) {
    std::size_t n = L.dim();
    std::vector<long> c(n, -box);
    Int best = -1;
    while (true) {
        std::vector<Int> v(L.basis[0].size(), 0);
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (c[i] != 0) zero = false;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] += Int(c[i]) * L.basis[i][j];
        }
        if (!zero) {
            Int nm = detail::dot(v, v);
            if (best < 0 || nm < best) best = nm;
        }
        std::size_t i = 0;
        while (i < n && ++c[i] > box) c[i++] = -box;
        if (i == n) break;
    }
    return best;
}

} // namespace

TEST_CASE("lll_reduce on trivial bases") {
    IntLattice I{{{1, 0}, {0, 1}}};
    auto r = lll_reduce(I);
    CHECK(r.reduced.basis == I.basis);
    CHECK(r.transform == I.basis);

    IntLattice skew{{{1, 0}, {1000000, 1}}};
    auto s = lll_reduce(skew);
    check_lll_conditions(s.reduced, Rat(99, 100));
    // covolume 1; the reduced first vector must be as short as the lattice allows
    Int n0 = detail::dot(s.reduced.basis[0], s.reduced.basis[0]);
    CHECK(n0 == brute_lambda1_sq(s.reduced, 3));
    CHECK(n0 <= 2);
}

TEST_CASE("lll_reduce preserves determinant and returns a unimodular transform") {
    std::mt19937_64 rng(777);
    for (int t = 0; t < 40; ++t) {
        std::size_t n = 4;
        IntLattice L;
        L.basis.assign(n, std::vector<Int>(n, 0));
        for (auto& row : L.basis)
            for (auto& x : row) x = Int(static_cast<long>(rng() % 2000001) - 1000000);
        Int d;
        try {
            d = oracles::bareiss_det(L.basis);
        } catch (...) {
            continue;
        }
        if (d == 0) continue;
        auto r = lll_reduce(L);
        CHECK(oracles::bareiss_det(r.reduced.basis) == d * oracles::bareiss_det(r.transform));
        Int dt = oracles::bareiss_det(r.transform);
        CHECK((dt == 1 || dt == -1));
        CHECK(mat_mul(r.transform, L.basis) == r.reduced.basis);
        check_lll_conditions(r.reduced, Rat(99, 100));
    }
}

TEST_CASE("lll_reduce is idempotent up to basis norms") {
    std::mt19937_64 rng(31337);
    for (int t = 0; t < 10; ++t) {
        IntLattice L;
        L.basis.assign(3, std::vector<Int>(3, 0));
        for (auto& row : L.basis)
            for (auto& x : row) x = Int(static_cast<long>(rng() % 20001) - 10000);
        if (oracles::bareiss_det(L.basis) == 0) continue;
        auto r1 = lll_reduce(L);
        auto r2 = lll_reduce(r1.reduced);
        // a second pass must not change the Gram-Schmidt profile
        auto [mu1, B1] = full_gso(r1.reduced);
        auto [mu2, B2] = full_gso(r2.reduced);
        (void)mu1;
        (void)mu2;
        CHECK(B1 == B2);
    }
}

TEST_CASE("shortest_vector_lower_bound") {
    IntLattice I{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
    CHECK(shortest_vector_sq_lower_bound(I) == 1);
    CHECK(shortest_vector_lower_bound(I) == 1);

    IntLattice two{{{2, 0}, {1, 2}}};
    Rat b = shortest_vector_sq_lower_bound(two);
    // by hand: B_0 = 4, B_1 = |(1,2) - (1/2)(2,0)|^2 = 4, so bound = 4
    CHECK(b == 4);
    CHECK(shortest_vector_lower_bound(two) == 2);

    // scaling the basis by c scales the bound by c
    IntLattice scaled{{{6, 0}, {3, 6}}};
    CHECK(shortest_vector_sq_lower_bound(scaled) == 9 * b);
}

TEST_CASE("lower bound vs brute-force lambda_1 on random lattices") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 25) {
        std::size_t n = 2 + rng() % 4; // dim 2..5
        IntLattice L;
        L.basis.assign(n, std::vector<Int>(n, 0));
        for (auto& row : L.basis)
            for (auto& x : row) x = Int(static_cast<long>(rng() % 20001) - 10000);
        if (oracles::bareiss_det(L.basis) == 0) continue;
        auto r = lll_reduce(L);
        Rat lb = shortest_vector_sq_lower_bound(r.reduced);
        Int l1 = brute_lambda1_sq(r.reduced, 2);
        REQUIRE(lb <= Rat(l1));
        // after LLL the first vector is within the classical 2^{n-1} factor
        Int n0 = detail::dot(r.reduced.basis[0], r.reduced.basis[0]);
        REQUIRE(Rat(n0) <= Rat(Int(1) << (n - 1)) * Rat(l1) * Rat(2)); // slack for delta < 1
        ++done;
    }
}

TEST_CASE("degenerate inputs") {
    IntLattice dep{{{1, 2}, {2, 4}}};
    CHECK_THROWS_AS(lll_reduce(dep), RankDeficient);
    IntLattice ok{{{1, 0}, {0, 1}}};
    CHECK_THROWS(lll_reduce(ok, Rat(1, 8)));
    CHECK_THROWS(lll_reduce(ok, Rat(1)));
}

TEST_CASE("rat_sqrt_lower") {
    CHECK(rat_sqrt_lower(Rat(4)) == 2);
    CHECK(rat_sqrt_lower(Rat(0)) == 0);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        Rat q(static_cast<long>(rng() % 100000 + 1), static_cast<long>(rng() % 1000 + 1));
        Rat r = rat_sqrt_lower(q);
        CHECK(r * r <= q);
        // not absurdly loose: (r + 1/den)^2 > q
        Rat r2 = r + Rat(1, q.get_den());
        CHECK(r2 * r2 > q);
    }
}
