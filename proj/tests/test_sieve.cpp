#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "uniteq/sieve.hpp"

using namespace uniteq;

TEST_CASE("R_5 and the ell=3 rejection") {
    CHECK(compute_Rl(5) == Int("-210736858987743"));
    CHECK_THROWS_AS(compute_Rl(3), EllIsThree);
    CHECK_THROWS_AS(compute_Rl(2), EllIsTwo);
}

TEST_CASE("ell does not divide R_ell (Lemma 3.1 suite)") {
    for (long ell : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        Int r = compute_Rl(ell);
        REQUIRE(r != 0);
        REQUIRE(mod_floor(r, Int(ell)) != 0);
    }
}

TEST_CASE("S_5 = {11, 31}") {
    auto s = compute_Sl(5);
    REQUIRE(s.complete);
    REQUIRE(s.primes == std::vector<Int>{11, 31});
    // 3 | R_5 but 3 is filtered out (3 != 1 mod 5)
    CHECK(mod_floor(compute_Rl(5), 3) == 0);
}

TEST_CASE("S_7 is consistent with the factorization oracle") {
    auto s = compute_Sl(7);
    REQUIRE(s.complete);
    Int r7 = compute_Rl(7);
    for (const Int& p : s.primes) {
        CHECK(is_prime(p));
        CHECK(mod_floor(p, 7) == 1);
        CHECK(mod_floor(r7, p) == 0);
    }
    // every prime factor == 1 mod 7 made it into S_7
    for (const auto& [p, e] : s.rl_factorization.factors) {
        (void)e;
        if (mod_floor(p, 7) == 1)
            CHECK(std::find(s.primes.begin(), s.primes.end(), p) != s.primes.end());
    }
}

TEST_CASE("candidate conductors for ell = 5") {
    auto rep = candidate_conductors(5);
    REQUIRE(rep.candidates.size() == 3); // 2^2 - 1
    CHECK(rep.candidates[0].conductor == 11);
    CHECK(rep.candidates[0].discriminant == pow_ui(Int(11), 4));
    CHECK(rep.candidates[1].conductor == 31);
    CHECK(rep.candidates[1].discriminant == pow_ui(Int(31), 4));
    CHECK(rep.candidates[2].conductor == 341);
    CHECK(rep.candidates[2].discriminant == pow_ui(Int(341), 4));
    for (const auto& c : rep.candidates) {
        // Delta = N^{ell-1}; N squarefree with all p == 1 mod ell
        CHECK(c.discriminant == pow_ui(c.conductor, 4));
        auto f = factorize(c.conductor);
        for (const auto& [p, e] : f.factors) {
            CHECK(e == 1);
            CHECK(mod_floor(p, 5) == 1);
        }
    }
}

TEST_CASE("residue_test") {
    CHECK(residue_test(1, 31, 5));
    CHECK(residue_test(2, 31, 5));       // 2^5 = 32 == 1
    CHECK_FALSE(residue_test(3, 31, 5)); // 3^5 == 26
    CHECK(residue_test(-1, 31, 5));
    CHECK_THROWS(residue_test(31, 31, 5));
}

TEST_CASE("common_root_check as independent oracle for p | R_ell") {
    CHECK(common_root_check(11, 5));
    CHECK(common_root_check(31, 5));
    CHECK_FALSE(common_root_check(7, 5));
    CHECK_THROWS_AS(common_root_check(Int("100000007"), 5), PTooLarge);

    // every p in S_ell passes; random primes not dividing R_ell fail
    for (long ell : {5, 7}) {
        Int rl = compute_Rl(ell);
        auto s = compute_Sl(ell);
        for (const Int& p : s.primes)
            if (p <= 100000000) CHECK(common_root_check(p, ell));
        auto primes = oracles::prime_sieve(10000);
        int tested = 0;
        for (std::size_t i = 7; i < primes.size() && tested < 20; i += 41) {
            Int q(static_cast<unsigned long>(primes[i]));
            if (mod_floor(rl, q) == 0) continue;
            CHECK_FALSE(common_root_check(q, ell));
            ++tested;
        }
        REQUIRE(tested == 20);
    }
}

TEST_CASE("common_root_check large-p path agrees with the scan") {
    // pick primes straddling the 2*10^6 strategy switch; the subgroup walk
    // and the raw scan must agree
    for (unsigned long p : {1999993ul, 2000003ul, 2999999ul}) {
        REQUIRE(is_prime(Int(p)));
        bool brute = false;
        for (unsigned long b = 0; b < p && !brute; ++b)
            if (powmod_u64(b, 10, p) == 1 && powmod_u64((b + p - 1) % p, 10, p) == 1) brute = true;
        CHECK(common_root_check(Int(p), 5) == brute);
    }
}

TEST_CASE("evertse_bound") {
    CHECK(evertse_bound(1, 0) == 1029);
    CHECK(evertse_bound(0, 1) == 7203);
    CHECK(evertse_bound(5, 0) == Int(3) * pow_ui(Int(7), 15));
    CHECK_THROWS(evertse_bound(0, 0));
}
