#pragma once

// Arbitrary-precision integer utilities: primality, factorization and the
// multiplicative-group structure of (Z/NZ)^x for squarefree odd N.

#include "uniteq/bigint.hpp"
#include "uniteq/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

namespace uniteq {

// ---------------------------------------------------------------------------
// Primality

// Strong probable-prime test to base a. n odd, n > 2, 1 < a < n-1.
inline bool miller_rabin_witness(const Int& n, const Int& a) {
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true; // a witnesses compositeness
}

// True iff the answer of is_prime is unconditionally correct for this n.
inline bool primality_is_rigorous(const Int& n) {
    return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

// Deterministic for n < 2^64 (fixed Miller-Rabin base set, sufficient in
// that range); a strong probable-prime test beyond.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    static const unsigned small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                            23, 29, 31, 37, 41, 43, 47, 53};
    for (unsigned p : small_primes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Bases 2..37 decide primality below 2^64; reused as the probable-prime
    // bases above that, padded with a few larger ones.
    static const unsigned bases[] = {2,  3,  5,  7,  11, 13, 17,  19,  23,
                                     29, 31, 37, 61, 73, 97, 101, 127, 131};
    for (unsigned a : bases) {
        Int b = Int(a) % n;
        if (b <= 1 || b == n - 1) continue;
        if (miller_rabin_witness(n, b)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Factorization

struct FactorConfig {
    std::uint64_t pollard_budget = 1'000'000'000; // total rho iterations
    std::uint64_t trial_limit = 1'000'000;
    std::uint64_t seed = 0x5eedULL;
};

struct Factorization {
    int sign = 1;
    std::vector<std::pair<Int, unsigned>> factors; // (prime, exponent), primes increasing
    std::vector<Int> unfactored;                   // composite cofactors if the budget ran out

    bool complete() const { return unfactored.empty(); }

    Int value() const {
        Int v = sign;
        for (const auto& [p, e] : factors) v *= pow_ui(p, e);
        for (const Int& c : unfactored) v *= c;
        return v;
    }
};

namespace detail {

// Pollard rho, Brent's cycle variant. Returns a nontrivial factor of n
// (composite, odd, not a perfect power of a tiny prime) or nullopt when the
// iteration budget is exhausted.
inline std::optional<Int> pollard_brent(const Int& n, std::uint64_t& budget, std::uint64_t seed) {
    if (n % 2 == 0) return Int(2);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(static_cast<unsigned long>(seed));
    while (budget > 0) {
        Int y = rng.get_z_range(n - 3) + 2;
        Int c = rng.get_z_range(n - 1) + 1;
        Int x = y, q = 1, g = 1, ys = y;
        const unsigned long block = 128;
        unsigned long r = 1;
        while (g == 1 && budget > 0) {
            x = y;
            for (unsigned long i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            unsigned long k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                unsigned long steps = std::min(block, r - k);
                for (unsigned long i = 0; i < steps && budget > 0; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                    --budget;
                }
                g = gcd(q, n);
                k += steps;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n && g > 1) return g;
        // bad luck with this (y, c); retry with the next seed
        ++seed;
    }
    return std::nullopt;
}

} // namespace detail

inline Factorization factorize(const Int& n_in, const FactorConfig& cfg = {}) {
    if (n_in == 0) throw std::invalid_argument("factorize: n must be nonzero");
    Factorization out;
    Int n = n_in;
    if (n < 0) {
        out.sign = -1;
        n = -n;
    }
    std::map<Int, unsigned> acc;
    // trial division
    for (std::uint64_t d = 2; d <= cfg.trial_limit && Int(d) * d <= n; d = (d == 2 ? 3 : d + 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            ++acc[Int(d)];
            n /= d;
        }
    }
    std::uint64_t budget = cfg.pollard_budget;
    std::vector<Int> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        Int m = stack.back();
        stack.pop_back();
        if (is_prime(m)) {
            ++acc[m];
            continue;
        }
        unsigned long k = 2;
        if (mpz_perfect_power_p(m.get_mpz_t())) {
            Int root;
            for (k = 2; k <= mpz_sizeinbase(m.get_mpz_t(), 2); ++k) {
                if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k)) {
                    for (unsigned long i = 0; i < k; ++i) stack.push_back(root);
                    break;
                }
            }
            continue;
        }
        auto f = detail::pollard_brent(m, budget, cfg.seed);
        if (!f) {
            out.unfactored.push_back(m);
            continue;
        }
        stack.push_back(*f);
        stack.push_back(m / *f);
    }
    for (auto& [p, e] : acc) out.factors.emplace_back(p, e);
    std::sort(out.unfactored.begin(), out.unfactored.end());
    if (!out.complete())
        throw FactorTimeout("factorize: Pollard budget exceeded with composite cofactor left");
    return out;
}

// Like factorize but reports budget exhaustion through the `unfactored`
// cofactors instead of throwing.
inline Factorization try_factorize(const Int& n, const FactorConfig& cfg = {}) {
    try {
        return factorize(n, cfg);
    } catch (const FactorTimeout&) {
        // rebuild the partial result without the throw
        FactorConfig c = cfg;
        Factorization out;
        out.sign = sgn(n) < 0 ? -1 : 1;
        Int m = abs(n);
        std::map<Int, unsigned> acc;
        for (std::uint64_t d = 2; d <= c.trial_limit && Int(d) * d <= m; d = (d == 2 ? 3 : d + 2))
            while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
                ++acc[Int(d)];
                m /= d;
            }
        std::uint64_t budget = c.pollard_budget;
        std::vector<Int> stack;
        if (m > 1) stack.push_back(m);
        while (!stack.empty()) {
            Int x = stack.back();
            stack.pop_back();
            if (is_prime(x)) {
                ++acc[x];
                continue;
            }
            auto f = detail::pollard_brent(x, budget, c.seed);
            if (!f) {
                out.unfactored.push_back(x);
                continue;
            }
            stack.push_back(*f);
            stack.push_back(x / *f);
        }
        for (auto& [p, e] : acc) out.factors.emplace_back(p, e);
        std::sort(out.unfactored.begin(), out.unfactored.end());
        return out;
    }
}

inline std::string format_factorization(const Factorization& f) {
    std::string s = f.sign < 0 ? "-" : "";
    bool first = true;
    for (const auto& [p, e] : f.factors) {
        if (!first) s += " * ";
        first = false;
        s += p.get_str();
        if (e > 1) s += "^" + std::to_string(e);
    }
    for (const Int& c : f.unfactored) {
        if (!first) s += " * ";
        first = false;
        s += "C" + c.get_str(); // composite cofactor left unfactored
    }
    if (first) s += "1";
    return s;
}

// ---------------------------------------------------------------------------
// Structure of (Z/NZ)^x, N squarefree and odd

struct ZnComponent {
    Int prime;     // p
    Int generator; // generator of (Z/pZ)^x
    Int order;     // p - 1
};

struct UnitGroupZn {
    Int modulus = 1;
    std::vector<ZnComponent> components;

    Int order() const {
        Int o = 1;
        for (const auto& c : components) o *= c.order;
        return o;
    }

    // Discrete log of x in component i (base components[i].generator),
    // by linear scan; component orders stay small at our scale.
    Int dlog(std::size_t i, const Int& x) const {
        const auto& c = components[i];
        Int r = mod_floor(x, c.prime);
        if (r == 0) throw std::invalid_argument("dlog: not a unit");
        Int acc = 1;
        for (Int k = 0; k < c.order; ++k) {
            if (acc == r) return k;
            acc = acc * c.generator % c.prime;
        }
        throw std::logic_error("dlog: generator failed to reach element");
    }

    // Exponent vector of x with respect to the per-prime generators.
    std::vector<Int> dlog_vector(const Int& x) const {
        std::vector<Int> v(components.size());
        for (std::size_t i = 0; i < components.size(); ++i) v[i] = dlog(i, x);
        return v;
    }
};

inline Int crt_lift(const std::vector<std::pair<Int, Int>>& residues) {
    Int m = 1, x = 0;
    for (const auto& [r, p] : residues) {
        // solve x' == x (mod m), x' == r (mod p)
        Int t = mod_floor((r - x) * invmod(m % p, p), p);
        x += m * t;
        m *= p;
    }
    return mod_floor(x, m);
}

inline UnitGroupZn unit_group_structure(const Int& N, const FactorConfig& cfg = {}) {
    if (N < 3 || N % 2 == 0)
        throw std::invalid_argument("unit_group_structure: N must be odd and >= 3");
    Factorization f = factorize(N, cfg);
    UnitGroupZn g;
    g.modulus = N;
    for (const auto& [p, e] : f.factors) {
        if (e > 1) throw NotSquarefree("unit_group_structure: N is not squarefree");
        ZnComponent c;
        c.prime = p;
        c.order = p - 1;
        Factorization of = factorize(c.order, cfg);
        for (Int cand = 2;; ++cand) {
            if (mod_floor(cand, p) == 0) continue;
            bool ok = true;
            for (const auto& [q, qe] : of.factors) {
                (void)qe;
                if (powmod(cand, c.order / q, p) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                c.generator = cand;
                break;
            }
        }
        g.components.push_back(c);
    }
    return g;
}

// A finite-index subgroup of (Z/NZ)^x given by generators. Element
// membership is decided through the per-component discrete logs; the full
// element set is materialized lazily (|(Z/NZ)^x| <= ~10^5 at our scale).
struct SubgroupZn {
    std::shared_ptr<const UnitGroupZn> parent;
    std::vector<Int> generators; // residues mod N
    Int index = 1;

    mutable std::vector<Int> cached_elements;

    const std::vector<Int>& elements() const {
        if (cached_elements.empty()) {
            const Int N = parent->modulus;
            std::set<Int> seen{Int(1)};
            std::vector<Int> frontier{Int(1)};
            while (!frontier.empty()) {
                Int x = frontier.back();
                frontier.pop_back();
                for (const Int& gen : generators) {
                    Int y = x * gen % N;
                    if (seen.insert(y).second) frontier.push_back(y);
                }
            }
            cached_elements.assign(seen.begin(), seen.end());
        }
        return cached_elements;
    }

    bool contains(const Int& x) const {
        const auto& els = elements();
        return std::binary_search(els.begin(), els.end(), mod_floor(x, parent->modulus));
    }

    Int order() const { return Int(static_cast<long>(elements().size())); }
};

// All subgroups of index exactly ell, as kernels of the characters
// (Z/NZ)^x -> Z/ell. There are (ell^t - 1)/(ell - 1) of them where t counts
// components with ell | order.
inline std::vector<SubgroupZn> index_ell_subgroups(const UnitGroupZn& G, const Int& ell) {
    if (!is_prime(ell)) throw std::invalid_argument("index_ell_subgroups: ell must be prime");
    auto parent = std::make_shared<UnitGroupZn>(G);
    const Int N = G.modulus;
    const std::size_t k = G.components.size();

    // component generators as residues mod N
    std::vector<Int> e(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::pair<Int, Int>> res;
        for (std::size_t j = 0; j < k; ++j)
            res.emplace_back(i == j ? G.components[j].generator : Int(1), G.components[j].prime);
        e[i] = crt_lift(res);
    }

    std::vector<std::size_t> active; // components whose order ell divides
    for (std::size_t i = 0; i < k; ++i)
        if (G.components[i].order % ell == 0) active.push_back(i);
    const std::size_t t = active.size();
    if (t == 0) return {};

    const unsigned long l = ell.get_ui();
    std::vector<SubgroupZn> out;

    // characters phi in (Z/ell)^t, nonzero, first nonzero entry = 1
    std::vector<unsigned long> phi(t, 0);
    auto next = [&]() {
        for (std::size_t i = t; i-- > 0;) {
            if (++phi[i] < l) return true;
            phi[i] = 0;
        }
        return false;
    };
    while (next()) {
        std::size_t lead = 0;
        while (phi[lead] == 0) ++lead;
        if (phi[lead] != 1) continue; // normalize up to scalar

        SubgroupZn H;
        H.parent = parent;
        H.index = ell;
        // inactive components lie in every kernel
        for (std::size_t i = 0; i < k; ++i)
            if (G.components[i].order % ell != 0) H.generators.push_back(e[i]);
        const std::size_t i0 = active[lead];
        // e_{i0}^ell, and e_i * e_{i0}^{-phi_i/phi_lead} for the other active i
        H.generators.push_back(powmod(e[i0], ell, N));
        for (std::size_t j = 0; j < t; ++j) {
            if (j == lead) continue;
            const std::size_t i = active[j];
            Int c = mod_floor(Int(l - phi[j]), ell); // -phi_j / 1 mod ell
            H.generators.push_back(e[i] * powmod(e[i0], c, N) % N);
        }
        out.push_back(std::move(H));
    }
    return out;
}

} // namespace uniteq
