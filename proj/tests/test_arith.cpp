#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "uniteq/arith.hpp"

#include <random>
#include <set>

using namespace uniteq;

TEST_CASE("is_prime basics") {
    CHECK(is_prime(11));
    CHECK_FALSE(is_prime(341)); // 341 = 11 * 31
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK(is_prime(2));
    CHECK(is_prime(Int("210736858987751"))); // neighbours of |R_5|, spot checks
    CHECK_FALSE(is_prime(Int("210736858987743")));
    // strong pseudoprime traps
    CHECK_FALSE(is_prime(Int("3215031751")));
    CHECK_FALSE(is_prime(Int("3825123056546413051")));
}

TEST_CASE("is_prime agrees with a sieve up to 20000") {
    auto primes = oracles::prime_sieve(20000);
    std::set<std::uint64_t> ps(primes.begin(), primes.end());
    for (std::uint64_t n = 0; n <= 20000; ++n)
        REQUIRE(is_prime(Int(static_cast<unsigned long>(n))) == (ps.count(n) > 0));
}

TEST_CASE("factorize reference values") {
    auto f = factorize(Int("-210736858987743"));
    REQUIRE(f.sign == -1);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == std::make_pair(Int(3), 1u));
    CHECK(f.factors[1] == std::make_pair(Int(11), 9u));
    CHECK(f.factors[2] == std::make_pair(Int(31), 3u));
    CHECK(format_factorization(f) == "-3 * 11^9 * 31^3");

    auto g = factorize(341);
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0] == std::make_pair(Int(11), 1u));
    CHECK(g.factors[1] == std::make_pair(Int(31), 1u));

    auto h = factorize(-1);
    CHECK(h.sign == -1);
    CHECK(h.factors.empty());
}

TEST_CASE("factorize reconstructs random inputs and matches the sieve") {
    auto primes = oracles::prime_sieve(1000000);
    std::mt19937_64 rng(12345);
    for (int t = 0; t < 300; ++t) {
        std::uint64_t n = rng() % 999998 + 2;
        auto f = factorize(Int(static_cast<unsigned long>(n)));
        REQUIRE(f.complete());
        REQUIRE(f.value() == Int(static_cast<unsigned long>(n)));
        // every listed prime is prime per the sieve
        for (const auto& [p, e] : f.factors) {
            (void)e;
            REQUIRE(std::binary_search(primes.begin(), primes.end(), to_u64(p)));
        }
    }
    // a larger semiprime exercising Pollard rho
    Int n = Int("1000003") * Int("999983");
    auto f = factorize(n);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.value() == n);
}

TEST_CASE("factorize budget exhaustion raises FactorTimeout, try_factorize reports partial") {
    FactorConfig tight;
    tight.trial_limit = 10;
    tight.pollard_budget = 5;
    Int hard = Int("10000000019") * Int("10000000033");
    CHECK_THROWS_AS(factorize(hard, tight), FactorTimeout);
    auto part = try_factorize(hard, tight);
    CHECK_FALSE(part.complete());
    CHECK(part.value() == hard);
}

TEST_CASE("unit_group_structure") {
    auto g11 = unit_group_structure(11);
    REQUIRE(g11.components.size() == 1);
    CHECK(g11.components[0].order == 10);

    auto g341 = unit_group_structure(341);
    REQUIRE(g341.components.size() == 2);
    CHECK(g341.components[0].order == 10);
    CHECK(g341.components[1].order == 30);

    auto g15 = unit_group_structure(15);
    REQUIRE(g15.components.size() == 2);
    CHECK(g15.components[0].order == 2);
    CHECK(g15.components[1].order == 4);

    CHECK_THROWS_AS(unit_group_structure(9), NotSquarefree);
}

TEST_CASE("generators have exact order") {
    for (unsigned long N : {11ul, 341ul, 15ul, 1155ul}) {
        auto g = unit_group_structure(Int(N));
        for (const auto& c : g.components) {
            CHECK(powmod(c.generator, c.order, c.prime) == 1);
            auto of = factorize(c.order);
            for (const auto& [q, e] : of.factors) {
                (void)e;
                CHECK(powmod(c.generator, c.order / q, c.prime) != 1);
            }
        }
    }
}

TEST_CASE("crt_lift") {
    CHECK(crt_lift({{Int(1), Int(11)}, {Int(1), Int(31)}}) == 1);
    CHECK(crt_lift({{Int(2), Int(11)}, {Int(1), Int(31)}}) == 156);
    CHECK(crt_lift({{Int(0), Int(11)}}) == 0);
    // brute-force cross-check
    for (long r1 = 0; r1 < 11; ++r1)
        for (long r2 = 0; r2 < 31; ++r2) {
            Int x = crt_lift({{Int(r1), Int(11)}, {Int(r2), Int(31)}});
            REQUIRE(x % 11 == r1);
            REQUIRE(x % 31 == r2);
        }
}

namespace {

// Brute-force: all index-ell subgroups of (Z/NZ)^x as element sets, by
// enumerating every subset closed under multiplication. Done by checking
// all subgroups generated by single cosets of candidate kernels is too
// clever; instead enumerate subgroups as kernels found by scanning all
// element subsets is infeasible, so use the dumbest sound method: every
// subgroup of index ell contains all ell-th powers, so enumerate subgroups
// of the finite quotient G / G^ell.
std::vector<std::set<Int>> brute_force_index_ell(const Int& N, const Int& ell) {
    std::vector<Int> units;
    for (Int a = 1; a < N; ++a)
        if (gcd(a, N) == 1) units.push_back(a);
    std::set<Int> powers; // the subgroup G^ell
    for (const Int& a : units) powers.insert(powmod(a, ell, N));
    std::vector<std::set<Int>> found;
    // candidate subgroups: generated by G^ell together with subsets of units
    // (scan over subgroups generated by G^ell and one extra element per
    // quotient structure; collect distinct ones of the right index)
    std::set<std::set<Int>> seen;
    const std::size_t target = units.size() / static_cast<std::size_t>(ell.get_ui());
    for (std::size_t mask = 0; mask < (1u << std::min<std::size_t>(units.size(), 14)); ++mask) {
        std::set<Int> gen = powers;
        for (std::size_t i = 0; i < units.size() && i < 14; ++i)
            if (mask & (1u << i)) gen.insert(units[i]);
        // close under multiplication
        std::set<Int> h = gen;
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Int> els(h.begin(), h.end());
            for (const Int& a : els)
                for (const Int& b : els)
                    if (h.insert(a * b % N).second) grew = true;
        }
        if (h.size() == target && seen.insert(h).second) found.push_back(h);
    }
    return found;
}

} // namespace

TEST_CASE("index_ell_subgroups counts and element sets") {
    auto g341 = unit_group_structure(341);
    auto subs = index_ell_subgroups(g341, 5);
    CHECK(subs.size() == 6); // (5^2-1)/(5-1)

    auto g11 = unit_group_structure(11);
    CHECK(index_ell_subgroups(g11, 5).size() == 1);

    auto g15 = unit_group_structure(15);
    CHECK(index_ell_subgroups(g15, 5).empty());

    // element-set agreement with brute force on small groups
    for (auto [N, ell] : std::vector<std::pair<long, long>>{{11, 5}, {31, 5}, {31, 3}, {15, 2}, {33, 5}}) {
        auto G = unit_group_structure(Int(N));
        auto subs2 = index_ell_subgroups(G, Int(ell));
        auto brute = brute_force_index_ell(Int(N), Int(ell));
        REQUIRE(subs2.size() == brute.size());
        std::set<std::set<Int>> got;
        for (const auto& H : subs2) {
            REQUIRE(H.order() * ell == G.order());
            got.insert(std::set<Int>(H.elements().begin(), H.elements().end()));
        }
        std::set<std::set<Int>> want(brute.begin(), brute.end());
        REQUIRE(got == want);
    }
}
