#pragma once

// Complete solution of the unit equation lambda + mu = 1: a Baker-type
// initial height bound, lattice-based bound reduction, pruned exponent
// enumeration with a certified filter chain, and exact verification. Also
// the two classical fixture families (Sophie Germain units, Nagell cubics).

#include "uniteq/lattice.hpp"
#include "uniteq/sieve.hpp"
#include "uniteq/units.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace uniteq {

struct SolveConfig {
    std::string mode = "saturated"; // rigorous | saturated | heuristic
    std::optional<Int> initial_bound_override;
    std::vector<mpfr_prec_t> precision_schedule{512, 1024, 2048, 4096};
    std::uint64_t enumeration_budget = 1'000'000'000;
    unsigned threads = 1;
    std::vector<Int> saturation_primes{2, 3, 5, 7, 11, 13};
    const UnitSystem* user_units = nullptr; // required in rigorous mode
};

struct SolutionReport {
    const CyclicField* field = nullptr;
    std::string mode;
    std::vector<FieldElement> solutions;
    std::size_t count = 0;
    std::vector<std::vector<std::size_t>> orbits;
    Int b_initial = 0;
    std::vector<Int> b_sequence;
    Int b_final = 0;
    std::optional<long> log_cap; // certified embedding-log cap used in the scan
    bool exhaustive = false;
    std::string caveat;
    double seconds = 0;
};

// exact check: lambda integral, norm(lambda) = +-1, norm(1 - lambda) = +-1
inline bool verify_solution(const CyclicField& F, const FieldElement& lam) {
    if (lam.parent != &F) throw std::invalid_argument("verify_solution: element of another field");
    if (!is_algebraic_integer(lam)) return false;
    Rat nl = norm(lam);
    if (!(nl == 1 || nl == -1)) return false;
    Rat nm = norm(F.constant(1) - lam);
    return nm == 1 || nm == -1;
}

namespace detail {

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int rat_round(const Rat& q) {
    // nearest integer, ties upward: floor(q + 1/2)
    Rat s = q + Rat(1, 2);
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
    return r;
}

inline Rat abs_upper(const Interval& x) {
    Rat lo = x.lower_rat(), hi = x.upper_rat();
    if (lo < 0) lo = -lo;
    if (hi < 0) hi = -hi;
    return lo > hi ? lo : hi;
}

inline Rat log_upper(const Rat& q, mpfr_prec_t prec) {
    return log(Interval::exact(q, prec)).upper_rat();
}

inline std::vector<std::vector<Interval>> log_rows(const UnitSystem& U, mpfr_prec_t prec) {
    if (prec == U.precision) return U.log_matrix;
    std::vector<std::vector<Interval>> lm;
    lm.reserve(U.generators.size());
    for (const auto& g : U.generators) lm.push_back(log_embedding(g, prec));
    return lm;
}

// Certified upper bound c5 with max_j |a_j| <= c5 * V where V bounds every
// log|sigma_i(u)| from above for the unit u = prod g_j^{a_j}: a = A^{-1} l
// over m-1 embedding rows, where each l_i lies in [-(m-1)V, V] because the
// logs sum to zero. Maximizing each coordinate of A^{-1} l over that box
// gives the factor; minimized over which embedding row is dropped.
inline Rat exponent_cap_factor(const std::vector<std::vector<Interval>>& lm, std::size_t m,
                               mpfr_prec_t prec) {
    const std::size_t r = lm.size();
    if (r + 1 != m) throw std::invalid_argument("exponent_cap_factor: need rank m-1");
    const Rat neg_span(static_cast<long>(m - 1));
    std::optional<Rat> best;
    for (std::size_t drop = 0; drop < m; ++drop) {
        try {
            std::vector<std::vector<Interval>> A(r, std::vector<Interval>(r, Interval(prec)));
            std::size_t row = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (i == drop) continue;
                for (std::size_t j = 0; j < r; ++j) A[row][j] = lm[j][i];
                ++row;
            }
            // positive and negative parts of the rows of A^{-1}
            std::vector<Rat> pos(r, Rat(0)), neg(r, Rat(0));
            for (std::size_t i = 0; i < r; ++i) {
                std::vector<Interval> e(r, Interval::exact(0l, prec));
                e[i] = Interval::exact(1l, prec);
                auto x = interval_solve(A, e);
                for (std::size_t j = 0; j < r; ++j) {
                    Rat up = x[j].upper_rat(), lo = x[j].lower_rat();
                    if (up > 0) pos[j] += up;
                    if (lo < 0) neg[j] += -lo;
                }
            }
            Rat c5(0);
            for (std::size_t j = 0; j < r; ++j) {
                Rat hi = pos[j] + neg_span * neg[j];
                Rat lo = neg[j] + neg_span * pos[j];
                if (lo > hi) hi = lo;
                if (hi > c5) c5 = hi;
            }
            if (!best || c5 < *best) best = c5;
        } catch (const PrecisionExhausted&) {
        }
    }
    if (!best) throw PrecisionExhausted("exponent_cap_factor: no minor certified invertible");
    return *best;
}

} // namespace detail

// A sound bound B0 such that every solution lambda = +-prod g_j^{a_j},
// mu = 1 - lambda = +-prod g_j^{b_j} has max(|a_j|, |b_j|) <= B0. At the
// embedding where the largest conjugate of lambda or mu is attained, the
// linear form L = sum (b_j - a_j) log|sigma(g_j)| satisfies 0 < |L| <=
// 2 exp(-V); a Baker-Wustholz lower bound on |L| then caps V, and the
// exponent-cap factor turns V into a height bound.
inline Int initial_bound(const CyclicField& F, const UnitSystem& U) {
    const std::size_t r = U.generators.size();
    const std::size_t m = F.m;
    if (r == 0) throw std::invalid_argument("initial_bound: unit system has rank 0");
    const mpfr_prec_t prec = U.precision;
    Rat c5 = detail::exponent_cap_factor(U.log_matrix, m, prec);

    // C(n, d) = 18 (n+1)! n^{n+1} (32 d)^{n+2} log(2 n d), n = r, d = m
    Int fact = 1;
    for (std::size_t k = 2; k <= r + 1; ++k) fact *= static_cast<unsigned long>(k);
    Rat C = Rat(18) * Rat(fact) * Rat(pow_ui(Int(static_cast<long>(r)), r + 1)) *
            Rat(pow_ui(Int(32 * static_cast<long>(m)), r + 2));
    C *= detail::log_upper(Rat(2 * static_cast<long>(r) * static_cast<long>(m)), 128);
    // modified heights h'(|sigma(g_j)|) <= max(h(g_j), max_i |log|sigma_i||/d, 1/d)
    for (std::size_t j = 0; j < r; ++j) {
        Rat h(0), lmax(0);
        for (std::size_t i = 0; i < m; ++i) {
            Rat up = U.log_matrix[j][i].upper_rat();
            if (up > 0) h += up;
            Rat a = detail::abs_upper(U.log_matrix[j][i]);
            if (a > lmax) lmax = a;
        }
        h /= Rat(static_cast<long>(m));
        Rat hp = h;
        Rat alt = lmax / Rat(static_cast<long>(m));
        if (alt > hp) hp = alt;
        alt = Rat(1, static_cast<long>(m));
        if (alt > hp) hp = alt;
        C *= hp;
    }

    // largest H with H <= c5 (log 2 + C log(2H)), approached from above
    Rat log2 = detail::log_upper(Rat(2), 128);
    Rat H = (c5 * C + Rat(2)) * (c5 * C + Rat(2)) + Rat(1000000);
    for (int it = 0; it < 64; ++it) {
        Rat nh = c5 * (log2 + C * detail::log_upper(Rat(2) * H, 128));
        if (nh >= H) break;
        H = nh;
    }
    Int B0 = detail::rat_ceil(H) + 1;
    Int floor_cap = detail::rat_ceil(c5) + 1; // absorbs the V < 1 corner
    return B0 > floor_cap ? B0 : floor_cap;
}

namespace detail {

struct ReduceOutcome {
    Int bound;    // new exponent-height bound
    long log_cap; // certified cap on max_i log|sigma_i(lambda)| over solutions
};

// Davenport-type reduction: for each embedding i0, any solution with
// V >= v and height <= B yields a nonzero vector (c_j, sum c_j t_j) of the
// scaled lattice with norm^2 <= 4(r-1)B^2 + (2 C0 e^{-v} + (3/2) r B)^2,
// where t_j = round(C0 theta_j) within 3/4. A certified LLL lower bound on
// lambda_1 beating that excludes V >= v, and c5 converts v into B'.
inline ReduceOutcome reduce_bound_core(const CyclicField& F, const UnitSystem& U, const Int& B,
                                       mpfr_prec_t prec) {
    if (B < 1) throw std::invalid_argument("reduce_bound: B must be >= 1");
    const std::size_t r = U.generators.size();
    const std::size_t m = F.m;
    auto lm = log_rows(U, prec);
    Rat c5 = exponent_cap_factor(lm, m, prec);
    const Int K = 2 * B;
    long vmax = 1;
    const Rat threequarter(3, 4);
    for (std::size_t i0 = 0; i0 < m; ++i0) {
        bool done = false;
        Int scale = pow_ui(Int(64 * static_cast<long>(r)) * K, r);
        for (int boost = 0; boost < 4 && !done; ++boost, scale *= pow_ui(Int(2), r)) {
            std::vector<Int> t(r);
            std::size_t jlast = 0;
            Int tmax(-1);
            for (std::size_t j = 0; j < r; ++j) {
                Interval s = Interval::exact(scale, prec) * lm[j][i0];
                Rat lo = s.lower_rat(), hi = s.upper_rat();
                t[j] = rat_round((lo + hi) / 2);
                Rat e1 = Rat(t[j]) - lo, e2 = hi - Rat(t[j]);
                if (e1 < 0) e1 = -e1;
                if (e2 < 0) e2 = -e2;
                if ((e1 > e2 ? e1 : e2) > threequarter)
                    throw PrecisionExhausted("reduce_bound: scaled log too wide to round");
                Int a = t[j] < 0 ? Int(-t[j]) : t[j];
                if (a > tmax) {
                    tmax = a;
                    jlast = j;
                }
            }
            if (t[jlast] == 0) continue; // scale too small for these logs
            IntLattice L;
            L.basis.assign(r, std::vector<Int>(r, 0));
            std::size_t q = 0;
            for (std::size_t j = 0; j < r; ++j) {
                if (j == jlast) continue;
                L.basis[q][q] = 1;
                L.basis[q][r - 1] = t[j];
                ++q;
            }
            L.basis[r - 1][r - 1] = t[jlast];
            Rat lam2 = shortest_vector_sq_lower_bound(lll_reduce(L).reduced);
            Rat D = Rat(3 * static_cast<long>(r)) / Rat(2) * Rat(B);
            Rat T = lam2 - Rat(4 * static_cast<long>(r - 1)) * Rat(B) * Rat(B);
            if (T <= D * D) continue;
            Rat W = rat_sqrt_lower(T) - D;
            if (W <= 0) continue;
            long v = rat_ceil(log_upper(Rat(2) * Rat(scale) / W, prec)).get_si() + 1;
            if (v < 1) v = 1;
            if (v > vmax) vmax = v;
            done = true;
        }
        if (!done)
            throw NoProgress("reduce_bound: no certificate at this scale; raise precision");
    }
    Int B2 = rat_ceil(c5 * Rat(vmax)) + 1;
    if (B2 >= B) throw NoProgress("reduce_bound: certified bound not below B");
    return {B2, vmax};
}

} // namespace detail

inline Int reduce_bound(const CyclicField& F, const UnitSystem& U, const Int& B,
                        mpfr_prec_t precision = 512) {
    return detail::reduce_bound_core(F, U, B, precision).bound;
}

struct EnumOptions {
    // certified cap on max_i log|sigma_i(lambda)| over all solutions (from
    // bound reduction); without it the scan box is pruned only by B itself
    std::optional<double> log_cap;
    std::uint64_t budget = 1'000'000'000;
    unsigned threads = 1;
};

namespace detail {

struct EnumContext {
    const CyclicField* F = nullptr;
    const UnitSystem* U = nullptr;
    std::size_t r = 0, m = 0;
    long B = 0;
    std::vector<std::vector<double>> L;    // L[j][i] = log|sigma_i(g_j)|
    std::vector<std::vector<int>> sgn;     // sign of sigma_i(g_j)
    std::vector<double> cap_lo, cap_hi;    // admissible range of each log
    std::vector<std::vector<double>> tail; // tail[j][i] = sum_{j' >= j} B|L[j'][i]|
    std::vector<std::vector<Interval>> E;  // 128-bit generator embeddings
    std::atomic<std::uint64_t> visited{0};
    std::uint64_t budget = 0;
    std::atomic<bool> over_budget{false};
};

struct EnumWorker {
    EnumContext* C = nullptr;
    long stride = 1, offset = 0; // split of the top-level coordinate
    std::vector<long> a;
    std::vector<double> partial;
    std::vector<FieldElement> found;
    std::uint64_t local_visits = 0;

    void run() {
        a.assign(C->r, 0);
        partial.assign(C->m, 0.0);
        descend(0);
        C->visited += local_visits;
        if (C->visited.load() > C->budget) C->over_budget = true;
    }

    bool tick() {
        if (++local_visits >= 4096) {
            C->visited += local_visits;
            local_visits = 0;
            if (C->visited.load() > C->budget) C->over_budget = true;
        }
        return !C->over_budget.load(std::memory_order_relaxed);
    }

    void descend(std::size_t depth) {
        if (C->over_budget.load(std::memory_order_relaxed)) return;
        if (depth == C->r) {
            if (tick()) leaf();
            return;
        }
        long lo = -C->B, hi = C->B;
        for (std::size_t i = 0; i < C->m; ++i) {
            double R = (depth + 1 < C->r) ? C->tail[depth + 1][i] : 0.0;
            double c = C->L[depth][i];
            if (std::fabs(c) < 1e-12) {
                if (partial[i] - R > C->cap_hi[i] || partial[i] + R < C->cap_lo[i]) return;
                continue;
            }
            double b1 = (C->cap_lo[i] - R - partial[i]) / c;
            double b2 = (C->cap_hi[i] + R - partial[i]) / c;
            if (c < 0) std::swap(b1, b2);
            if (b1 > static_cast<double>(hi) || b2 < static_cast<double>(lo)) return;
            if (b1 > static_cast<double>(lo)) lo = static_cast<long>(std::ceil(b1 - 1e-9));
            if (b2 < static_cast<double>(hi)) hi = static_cast<long>(std::floor(b2 + 1e-9));
            if (lo > hi) return;
        }
        std::vector<double> saved = partial;
        for (long v = lo; v <= hi; ++v) {
            if (depth == 0 && ((v - lo) % stride) != offset) continue;
            a[depth] = v;
            for (std::size_t i = 0; i < C->m; ++i)
                partial[i] = saved[i] + static_cast<double>(v) * C->L[depth][i];
            descend(depth + 1);
            if (C->over_budget.load(std::memory_order_relaxed)) break;
        }
        partial = saved;
    }

    void leaf() {
        for (int s : {1, -1}) {
            // stage 1: double-precision norm-of-mu filter, generous margins
            double S = 0;
            bool fallback = false;
            for (std::size_t i = 0; i < C->m && !fallback; ++i) {
                double li = partial[i];
                if (li > 40) {
                    S += li; // log|1 - x| = li within e^{-40}
                    continue;
                }
                if (li < -46) continue; // |log|1 - x|| < 1e-20
                int sg = s;
                for (std::size_t j = 0; j < C->r; ++j)
                    if ((a[j] % 2) != 0 && C->sgn[j][i] < 0) sg = -sg;
                double x = sg > 0 ? std::exp(li) : -std::exp(li);
                double d = 1 - x;
                if (std::fabs(d) < 1e-9) {
                    fallback = true; // cancellation: defer to intervals
                    break;
                }
                S += std::log(std::fabs(d));
            }
            if (!fallback && std::fabs(S) > 1.0) continue;
            // stage 2: certified 128-bit interval check of norm(1 - lambda)
            bool candidate = true;
            try {
                Interval nrm = Interval::exact(1l, 128);
                for (std::size_t i = 0; i < C->m; ++i) {
                    Interval lamI = Interval::exact(static_cast<long>(s), 128);
                    for (std::size_t j = 0; j < C->r; ++j)
                        if (a[j] != 0) lamI = lamI * pow_int(C->E[j][i], a[j]);
                    nrm = nrm * (Interval::exact(1l, 128) - lamI);
                }
                Rat nlo = nrm.lower_rat(), nhi = nrm.upper_rat();
                candidate = (nlo <= 1 && Rat(1) <= nhi) || (nlo <= -1 && Rat(-1) <= nhi);
            } catch (const Error&) {
                candidate = true; // could not certify; let the exact stage decide
            }
            if (!candidate) continue;
            // stage 3: exact verification
            FieldElement lam = C->F->constant(s);
            for (std::size_t j = 0; j < C->r; ++j)
                if (a[j] != 0) lam = lam * pow_fe(C->U->generators[j], Int(a[j]));
            if (verify_solution(*C->F, lam)) found.push_back(lam);
        }
    }
};

inline std::vector<Int> element_key(const FieldElement& e) {
    std::vector<Int> k = e.num;
    k.push_back(e.den);
    return k;
}

} // namespace detail

// Exhaustive scan of lambda = +-prod g_j^{a_j}, max|a_j| <= B. Pruned by
// per-coordinate feasible ranges of the log-embedding box, filtered in
// doubles, then certified intervals; survivors verified exactly. Output is
// sorted by coordinates and duplicate-free.
inline std::vector<FieldElement> enumerate_solutions(const CyclicField& F, const UnitSystem& U,
                                                     const Int& B, const EnumOptions& opt = {}) {
    if (B < 1) throw std::invalid_argument("enumerate_solutions: B must be >= 1");
    const std::size_t r = U.generators.size();
    if (r == 0 || U.log_matrix.size() != r)
        throw std::invalid_argument("enumerate_solutions: unit system has rank 0");
    if (B > 1'000'000'000'000l)
        throw BudgetExceeded("enumerate_solutions: bound too large to scan exhaustively");

    detail::EnumContext C;
    C.F = &F;
    C.U = &U;
    C.r = r;
    C.m = F.m;
    C.B = B.get_si();
    C.budget = opt.budget;
    C.L.assign(r, std::vector<double>(F.m, 0.0));
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < F.m; ++i) C.L[j][i] = U.log_matrix[j][i].mid_d();
    C.sgn = U.sign_matrix;
    C.tail.assign(r, std::vector<double>(F.m, 0.0));
    for (std::size_t j = r; j-- > 0;)
        for (std::size_t i = 0; i < F.m; ++i)
            C.tail[j][i] = (j + 1 < r ? C.tail[j + 1][i] : 0.0) +
                           static_cast<double>(C.B) * std::fabs(C.L[j][i]);
    C.cap_lo.assign(F.m, 0.0);
    C.cap_hi.assign(F.m, 0.0);
    for (std::size_t i = 0; i < F.m; ++i) {
        if (opt.log_cap) {
            C.cap_hi[i] = *opt.log_cap + 0.5;
            C.cap_lo[i] = -static_cast<double>(F.m - 1) * (*opt.log_cap) - 0.5;
        } else {
            C.cap_hi[i] = C.tail[0][i] + 0.5;
            C.cap_lo[i] = -C.cap_hi[i];
        }
    }
    C.E.reserve(r);
    for (const auto& g : U.generators) C.E.push_back(embed_all(F, g, 128));

    unsigned nthreads = std::max(1u, opt.threads);
    std::vector<detail::EnumWorker> workers(nthreads);
    for (unsigned k = 0; k < nthreads; ++k) {
        workers[k].C = &C;
        workers[k].stride = static_cast<long>(nthreads);
        workers[k].offset = static_cast<long>(k);
    }
    if (nthreads == 1) {
        workers[0].run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (auto& w : workers) pool.emplace_back([&w] { w.run(); });
        for (auto& th : pool) th.join();
    }
    if (C.over_budget)
        throw BudgetExceeded("enumerate_solutions: enumeration budget exhausted");

    std::vector<FieldElement> all;
    for (auto& w : workers)
        for (auto& e : w.found) all.push_back(std::move(e));
    std::sort(all.begin(), all.end(), [](const FieldElement& x, const FieldElement& y) {
        return detail::element_key(x) < detail::element_key(y);
    });
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// orbits under the order-6 group generated by l -> 1 - l and l -> 1/l
inline std::vector<std::vector<std::size_t>> symmetry_orbits(
    const std::vector<FieldElement>& sols) {
    std::vector<std::vector<std::size_t>> orbits;
    if (sols.empty()) return orbits;
    const CyclicField& F = *sols[0].parent;
    std::map<std::vector<Int>, std::size_t> index;
    for (std::size_t i = 0; i < sols.size(); ++i) index[detail::element_key(sols[i])] = i;
    const FieldElement one = F.constant(1);
    std::vector<char> used(sols.size(), 0);
    for (std::size_t i = 0; i < sols.size(); ++i) {
        if (used[i]) continue;
        const FieldElement& l = sols[i];
        FieldElement il = inv(l);
        FieldElement om = one - l;
        std::vector<FieldElement> orbit{l, om, il, one - il, inv(om), l * inv(l - one)};
        std::vector<std::size_t> members;
        for (const auto& e : orbit) {
            auto it = index.find(detail::element_key(e));
            if (it == index.end())
                throw NotClosed("symmetry_orbits: input not closed under the symmetry group");
            if (!used[it->second]) {
                used[it->second] = 1;
                members.push_back(it->second);
            }
        }
        std::sort(members.begin(), members.end());
        orbits.push_back(std::move(members));
    }
    return orbits;
}

inline SolutionReport solve_unit_equation(const CyclicField& F, const SolveConfig& cfg = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    SolutionReport rep;
    rep.field = &F;
    rep.mode = cfg.mode;

    UnitSystem local;
    const UnitSystem* U = nullptr;
    if (cfg.mode == "rigorous") {
        if (!cfg.user_units || cfg.user_units->mode != "user-fundamental")
            throw std::invalid_argument(
                "solve_unit_equation: rigorous mode requires user-fundamental units");
        U = cfg.user_units;
    } else if (cfg.mode == "saturated") {
        local = saturate(cyclotomic_units(F), cfg.saturation_primes);
        U = &local;
        rep.caveat = "complete relative to the computed unit subgroup";
    } else if (cfg.mode == "heuristic") {
        local = cyclotomic_units(F);
        U = &local;
        rep.caveat = "non-exhaustive: heuristic bound without a height proof";
    } else {
        throw std::invalid_argument("solve_unit_equation: unknown mode " + cfg.mode);
    }

    EnumOptions eo;
    eo.budget = cfg.enumeration_budget;
    eo.threads = cfg.threads;
    if (cfg.mode == "heuristic") {
        rep.b_initial = cfg.initial_bound_override.value_or(Int(12));
        rep.b_final = rep.b_initial;
    } else {
        rep.b_initial = cfg.initial_bound_override ? *cfg.initial_bound_override
                                                   : initial_bound(F, *U);
        Int B = rep.b_initial;
        std::optional<long> cap;
        bool progress = true;
        while (progress) {
            progress = false;
            for (mpfr_prec_t prec : cfg.precision_schedule) {
                try {
                    auto out = detail::reduce_bound_core(F, *U, B, prec);
                    B = out.bound;
                    cap = out.log_cap;
                    rep.b_sequence.push_back(B);
                    progress = true;
                    break;
                } catch (const NoProgress&) {
                } catch (const PrecisionExhausted&) {
                }
            }
        }
        rep.b_final = B;
        rep.log_cap = cap;
        if (cap) eo.log_cap = static_cast<double>(*cap) + 1.0;
    }

    rep.solutions = enumerate_solutions(F, *U, rep.b_final, eo);
    rep.count = rep.solutions.size();
    try {
        rep.orbits = symmetry_orbits(rep.solutions);
    } catch (const NotClosed&) {
        // a heuristic box may cut through an orbit; exhaustive runs must not
        if (cfg.mode != "heuristic") throw;
        rep.orbits.clear();
        rep.caveat += "; orbit closure not reached at this bound";
    }
    rep.exhaustive = cfg.mode != "heuristic";
    rep.seconds =
        std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() -
                                                                  t0)
            .count();
    return rep;
}

// lambda = 2 + eta with eta = zeta_p + zeta_p^{-1} is an exceptional unit of
// Q(zeta_p)^+ for every prime p >= 5
inline bool sophie_germain_check(const Int& p) {
    if (p < 5 || !is_prime(p))
        throw std::invalid_argument("sophie_germain_check: p must be a prime >= 5");
    SubgroupZn H;
    H.parent = std::make_shared<UnitGroupZn>(unit_group_structure(p));
    H.generators = {p - 1};
    H.index = (p - 1) / 2;
    CyclicField F = build_cyclic_field(p, H);
    return verify_solution(F, F.constant(2) + F.eta());
}

struct NagellCubic {
    bool exceptional = false;
    Int disc;
};

// g_k = X^3 + kX^2 - (k+3)X + 1: norm(lambda) = -g_k(0) and norm(1-lambda)
// = g_k(1) via resultants, both must be +-1
inline NagellCubic nagell_cubic_check(const Int& k) {
    if (k < -1) throw std::invalid_argument("nagell_cubic_check: k must be >= -1");
    IntPoly g({std::vector<Int>{Int(1), -(k + 3), k, Int(1)}});
    NagellCubic out;
    out.disc = discriminant(g);
    Int nl = resultant(g, IntPoly({std::vector<Int>{Int(0), Int(1)}}));  // prod of roots
    Int nm = resultant(g, IntPoly({std::vector<Int>{Int(1), Int(-1)}})); // prod of 1 - root
    out.exceptional =
        (nl == 1 || nl == -1) && (nm == 1 || nm == -1) && out.disc != 0;
    return out;
}

} // namespace uniteq
