#pragma once

// The theorem engine: R_ell, S_ell, the finite candidate list of
// (conductor, discriminant) pairs, the congruence tests, and the Evertse
// solution-count bound.

#include "uniteq/arith.hpp"
#include "uniteq/polyring.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace uniteq {

// Res(X^{2l} - 1, (X-1)^{2l} - 1), nonzero for prime l != 3.
inline Int compute_Rl(const Int& ell) {
    if (!is_prime(ell)) throw std::invalid_argument("compute_Rl: ell must be prime");
    if (ell == 3)
        throw EllIsThree("R_3 = 0: X^6-1 and (X-1)^6-1 share the root (1+sqrt(-3))/2, "
                         "and cyclic cubics contain infinitely many exceptional fields");
    if (ell == 2)
        throw EllIsTwo("ell = 2 is settled classically: the only exceptional quadratic "
                       "fields are Q(sqrt(5)) and Q(sqrt(-3))");
    const unsigned long n = 2 * ell.get_ui();
    IntPoly f = x_pow_minus_one(n);
    // (x-1)^n - 1
    IntPoly xm1({std::vector<Int>{Int(-1), Int(1)}});
    IntPoly g = IntPoly::constant(1);
    for (unsigned long i = 0; i < n; ++i) g = g * xm1;
    g = g - IntPoly::constant(1);
    return resultant(f, g);
}

struct SlResult {
    std::vector<Int> primes; // sorted, == 1 mod ell
    Factorization rl_factorization;
    bool complete = true; // false if R_ell did not factor within budget
};

inline SlResult compute_Sl(const Int& ell, const FactorConfig& cfg = {}) {
    if (ell < 5) throw std::invalid_argument("compute_Sl: requires prime ell >= 5");
    Int rl = compute_Rl(ell);
    SlResult out;
    out.rl_factorization = try_factorize(rl, cfg);
    out.complete = out.rl_factorization.complete();
    for (const auto& [p, e] : out.rl_factorization.factors) {
        (void)e;
        if (mod_floor(p, ell) == 1) out.primes.push_back(p);
    }
    return out;
}

struct Candidate {
    std::vector<Int> subset; // nonempty T, a subset of S_ell
    Int conductor;           // prod of T
    Int discriminant;        // prod of p^{ell-1}
};

struct CandidateReport {
    Int ell;
    Int rl;
    Factorization rl_factorization;
    std::vector<Int> sl;
    bool sl_complete = true;
    std::vector<Candidate> candidates; // sorted by conductor
};

inline CandidateReport candidate_conductors(const Int& ell, const FactorConfig& cfg = {}) {
    CandidateReport rep;
    rep.ell = ell;
    rep.rl = compute_Rl(ell);
    SlResult sl = compute_Sl(ell, cfg);
    rep.rl_factorization = sl.rl_factorization;
    rep.sl = sl.primes;
    rep.sl_complete = sl.complete;
    const std::size_t k = rep.sl.size();
    if (k > 20) throw SubsetBlowup("candidate_conductors: |S_ell| > 20, refusing 2^|S| subsets");
    const unsigned long em1 = ell.get_ui() - 1;
    for (std::uint64_t mask = 1; mask < (1ull << k); ++mask) {
        Candidate c;
        c.conductor = 1;
        c.discriminant = 1;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1ull << i)) {
                c.subset.push_back(rep.sl[i]);
                c.conductor *= rep.sl[i];
                c.discriminant *= pow_ui(rep.sl[i], em1);
            }
        rep.candidates.push_back(std::move(c));
    }
    std::sort(rep.candidates.begin(), rep.candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.conductor < b.conductor; });
    return rep;
}

// b^ell == +-1 (mod p)?  (Lemma on residues of units at totally ramified p)
inline bool residue_test(const Int& b, const Int& p, const Int& ell) {
    if (mod_floor(b, p) == 0) throw std::invalid_argument("residue_test: p | b");
    Int r = powmod(mod_floor(b, p), ell, p);
    return r == 1 || r == p - 1;
}

// Does some b in F_p satisfy b^{2l} = 1 and (b-1)^{2l} = 1? Exhaustive scan
// for moderate p; for large p the scan runs only over the roots of
// x^{2l} - 1, i.e. the subgroup of order gcd(2l, p-1). Independent oracle
// for "p | R_ell".
inline bool common_root_check(const Int& p, const Int& ell) {
    if (p > 100000000) throw PTooLarge("common_root_check: scan budget is p <= 10^8");
    if (!fits_u64(p)) throw PTooLarge("common_root_check: p too large");
    const std::uint64_t pu = to_u64(p);
    const std::uint64_t n = 2 * ell.get_ui();
    if (pu <= 2000000) {
        for (std::uint64_t b = 0; b < pu; ++b) {
            if (powmod_u64(b, n, pu) != 1) continue;
            if (powmod_u64((b + pu - 1) % pu, n, pu) == 1) return true;
        }
        return false;
    }
    // enumerate the 2l-th roots of unity as powers of g^{(p-1)/d}
    const std::uint64_t d = std::gcd(n, pu - 1);
    auto g = unit_group_structure(p);
    std::uint64_t h = powmod_u64(to_u64(g.components[0].generator), (pu - 1) / d, pu);
    std::uint64_t b = 1;
    for (std::uint64_t i = 0; i < d; ++i) {
        if (powmod_u64((b + pu - 1) % pu, n, pu) == 1) return true;
        b = mulmod_u64(b, h, pu);
    }
    return false;
}

// Evertse: at most 3 * 7^{3r+4s} solutions for signature (r, s).
inline Int evertse_bound(unsigned r, unsigned s) {
    if (r == 0 && s == 0) throw std::invalid_argument("evertse_bound: (r,s) != (0,0)");
    return Int(3) * pow_ui(Int(7), 3ul * r + 4ul * s);
}

} // namespace uniteq
