#pragma once

// Cyclotomic units, certified log embeddings, regulators, and saturation at
// small primes. The unit subgroup produced here feeds the solver; it is not
// claimed to be the full unit group unless the caller asserts so.

#include "uniteq/cyclofield.hpp"
#include "uniteq/qlinalg.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace uniteq {

struct UnitSystem {
    const CyclicField* field = nullptr;
    std::vector<FieldElement> generators; // r = m - 1 of them
    std::vector<std::vector<Interval>> log_matrix;
    std::vector<std::vector<int>> sign_matrix; // sign of sigma_i(g_j)
    Interval regulator;
    mpfr_prec_t precision = 512;
    std::string mode = "cyclotomic"; // "cyclotomic" | "saturated" | "user-fundamental"
    std::vector<std::pair<Int, std::string>> saturation_log;
};

inline FieldElement pow_fe(FieldElement a, Int e) {
    const CyclicField& F = *a.parent;
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    FieldElement r = F.constant(1);
    while (e > 0) {
        if (mod_floor(e, 2) == 1) r = r * a;
        a = a * a;
        e /= 2;
    }
    return r;
}

// sigma_i(u) for all i as certified intervals, in coset order
inline std::vector<Interval> embed_all(const CyclicField& F, const FieldElement& u,
                                       mpfr_prec_t prec) {
    auto periods = numeric_periods(F, prec);
    std::vector<Interval> out;
    out.reserve(F.m);
    Interval den = Interval::exact(u.den, prec);
    for (std::size_t i = 0; i < F.m; ++i) {
        Interval acc = Interval::exact(0l, prec);
        for (std::size_t j = u.num.size(); j-- > 0;)
            acc = acc * periods[i] + Interval::exact(u.num[j], prec);
        out.push_back(acc / den);
    }
    return out;
}

// (log|sigma_1(u)|, ..., log|sigma_m(u)|); throws PrecisionExhausted when
// some embedding cannot be certified away from zero
inline std::vector<Interval> log_embedding(const FieldElement& u, mpfr_prec_t prec) {
    if (u.is_zero()) throw std::invalid_argument("log_embedding: u = 0");
    auto emb = embed_all(*u.parent, u, prec);
    std::vector<Interval> out;
    out.reserve(emb.size());
    for (auto& e : emb) out.push_back(log(abs(e)));
    return out;
}

namespace detail {

// all distinct products prod_{h in H_d} (1 - zeta_d^{a h}) mapped into F,
// for every divisor d > 1 of N; prime d contributes the classical ratios.
// Returned elements all have |norm| = 1.
inline std::vector<FieldElement> cyclotomic_unit_pool(const CyclicField& F) {
    const Int& N = F.N;
    const unsigned long n = N.get_ui();
    const IntPoly phi = cyclotomic_poly(n);
    const std::size_t fdeg = static_cast<std::size_t>(phi.degree());

    // divisors of N (squarefree)
    std::vector<Int> divisors{Int(1)};
    for (const Int& p : F.ramified_primes) {
        std::size_t sz = divisors.size();
        for (std::size_t i = 0; i < sz; ++i) divisors.push_back(divisors[i] * p);
    }

    // each pool entry is a ratio of two products of (1 - zeta_N^t) factors;
    // store the zeta-basis vectors of numerator and denominator
    struct RawUnit {
        std::vector<Int> numv, denv;
    };
    std::vector<RawUnit> raw;

    auto one_minus_product = [&](const Int& d, const Int& a,
                                 const std::vector<Int>& Hd) -> std::vector<Int> {
        std::vector<Int> v(n, 0);
        v[0] = 1;
        for (const Int& h : Hd) {
            Int t = N / d * mod_floor(a * h, d);
            // multiply by (1 - x^t) in Z[x]/(x^N - 1)
            std::vector<Int> w(n, 0);
            unsigned long tu = to_u64(t);
            for (unsigned long k = 0; k < n; ++k) {
                if (v[k] == 0) continue;
                w[k] += v[k];
                w[(k + tu) % n] -= v[k];
            }
            v = std::move(w);
        }
        return v;
    };

    for (const Int& d : divisors) {
        if (d == 1) continue;
        // image of H in (Z/dZ)^x
        std::set<Int> hd_set;
        for (const Int& h : F.H.elements()) hd_set.insert(mod_floor(h, d));
        std::vector<Int> Hd(hd_set.begin(), hd_set.end());
        // transversal of Hd in (Z/dZ)^x
        std::set<Int> covered;
        std::vector<Int> reps;
        for (Int a = 1; a < d; ++a) {
            if (gcd(a, d) != 1 || covered.count(a)) continue;
            reps.push_back(a);
            for (const Int& h : Hd) covered.insert(mod_floor(a * h, d));
        }
        const bool d_prime = is_prime(d);
        std::vector<Int> base = one_minus_product(d, 1, Hd);
        for (const Int& a : reps) {
            if (d_prime && a == 1) continue; // ratio would be 1
            RawUnit r;
            r.numv = one_minus_product(d, a, Hd);
            if (d_prime)
                r.denv = base; // (1-zeta^a..)/(1-zeta..): unit for prime d
            else
                r.denv.clear(); // the product itself is a unit for composite d
            raw.push_back(std::move(r));
        }
        if (!d_prime) {
            RawUnit r;
            r.numv = base; // a = 1 product is itself a unit when d is composite
            raw.push_back(std::move(r));
        }
    }

    // express every zeta-basis vector over the eta power basis in one solve
    std::vector<std::vector<Int>> targets;
    for (const auto& r : raw) {
        targets.push_back(r.numv);
        if (!r.denv.empty()) targets.push_back(r.denv);
    }
    // eta^k columns over the zeta basis
    std::vector<std::vector<Int>> period0(1, std::vector<Int>(n, 0));
    for (const Int& h : F.H.elements()) period0[0][to_u64(mod_floor(h, N))] = 1;
    std::vector<std::vector<Rat>> A(fdeg, std::vector<Rat>(F.m, Rat(0)));
    std::vector<Int> pw(n, 0);
    pw[0] = 1;
    for (std::size_t k = 0; k < F.m; ++k) {
        IntPoly red = reduce_mod_phi(pw, phi);
        for (std::size_t i = 0; i < red.c.size(); ++i) A[i][k] = Rat(red.c[i]);
        if (k + 1 < F.m) pw = conv_mod_xn(pw, period0[0]);
    }
    std::vector<std::vector<Rat>> B(fdeg, std::vector<Rat>(targets.size(), Rat(0)));
    for (std::size_t t = 0; t < targets.size(); ++t) {
        IntPoly red = reduce_mod_phi(targets[t], phi);
        for (std::size_t i = 0; i < red.c.size(); ++i) B[i][t] = red.c[i];
    }
    auto X = solve_rational_system(std::move(A), std::move(B));

    auto column_element = [&](std::size_t t) {
        Int D = 1;
        for (std::size_t k = 0; k < F.m; ++k) D = lcm(D, Int(X[k][t].get_den()));
        std::vector<Int> num(F.m);
        for (std::size_t k = 0; k < F.m; ++k)
            num[k] = Int(X[k][t].get_num()) * (D / Int(X[k][t].get_den()));
        return F.element(std::move(num), D);
    };

    std::vector<FieldElement> pool;
    std::set<std::vector<Int>> seen;
    std::size_t col = 0;
    for (const auto& r : raw) {
        FieldElement u = column_element(col++);
        if (!r.denv.empty()) {
            FieldElement dd = column_element(col++);
            u = u / dd;
        }
        Rat nm = norm(u);
        if (!(nm == 1 || nm == -1)) continue;
        if (!is_algebraic_integer(u)) continue;
        // drop rational units and duplicates up to sign
        bool rational = true;
        for (std::size_t k = 1; k < F.m; ++k)
            if (u.num[k] != 0) rational = false;
        if (rational) continue;
        std::vector<Int> key = u.num;
        key.push_back(u.den);
        if (u.num[0] < 0 || (u.num[0] == 0 && u.num[1] < 0)) {
            for (auto& x : key) x = -x;
            key.back() = u.den;
        }
        if (!seen.insert(key).second) continue;
        pool.push_back(std::move(u));
    }
    return pool;
}

inline std::vector<int> certified_signs(const std::vector<Interval>& emb) {
    std::vector<int> s;
    s.reserve(emb.size());
    for (const auto& e : emb) {
        auto sg = e.sign();
        if (!sg || *sg == 0) throw PrecisionExhausted("certified_signs: sign not certain");
        s.push_back(*sg);
    }
    return s;
}

} // namespace detail

// the |det| of the (m-1) x (m-1) minor dropping the last embedding column
inline Interval subgroup_regulator(const std::vector<std::vector<Interval>>& log_matrix) {
    const std::size_t r = log_matrix.size();
    std::vector<std::vector<Interval>> M(r);
    for (std::size_t i = 0; i < r; ++i)
        M[i] = std::vector<Interval>(log_matrix[i].begin(), log_matrix[i].begin() + r);
    Interval d = interval_det(M);
    if (d.contains_zero())
        throw PrecisionExhausted("subgroup_regulator: determinant interval contains zero");
    return abs(d);
}

inline Interval subgroup_regulator(const UnitSystem& U) {
    return subgroup_regulator(U.log_matrix);
}

namespace detail {

inline void recompute_logs(UnitSystem& U) {
    const CyclicField& F = *U.field;
    U.log_matrix.clear();
    U.sign_matrix.clear();
    for (const auto& g : U.generators) {
        auto emb = embed_all(F, g, U.precision);
        U.sign_matrix.push_back(certified_signs(emb));
        std::vector<Interval> row;
        row.reserve(F.m);
        for (auto& e : emb) row.push_back(log(abs(e)));
        U.log_matrix.push_back(std::move(row));
    }
    U.regulator = subgroup_regulator(U.log_matrix);
}

} // namespace detail

inline UnitSystem cyclotomic_units(const CyclicField& F, mpfr_prec_t start_prec = 512) {
    auto pool = detail::cyclotomic_unit_pool(F);
    const std::size_t r = F.m - 1;
    for (mpfr_prec_t prec = start_prec; prec <= 8192; prec *= 2) {
        try {
            // greedy rank selection over the first r embedding columns,
            // certified by interval elimination
            std::vector<std::vector<Interval>> elim; // eliminated rows
            std::vector<std::size_t> pivots;
            std::vector<std::size_t> chosen;
            for (std::size_t t = 0; t < pool.size() && chosen.size() < r; ++t) {
                auto lrow = log_embedding(pool[t], prec);
                std::vector<Interval> row(lrow.begin(), lrow.begin() + r);
                for (std::size_t k = 0; k < elim.size(); ++k) {
                    Interval f = row[pivots[k]] / elim[k][pivots[k]];
                    for (std::size_t j = 0; j < r; ++j) row[j] = row[j] - f * elim[k][j];
                }
                std::size_t piv = r;
                double best = 0;
                for (std::size_t j = 0; j < r; ++j) {
                    if (row[j].contains_zero()) continue;
                    double mag = std::abs(row[j].mid_d());
                    if (piv == r || mag > best) {
                        piv = j;
                        best = mag;
                    }
                }
                if (piv == r) continue; // cannot certify independence; skip
                elim.push_back(std::move(row));
                pivots.push_back(piv);
                chosen.push_back(t);
            }
            if (chosen.size() < r)
                throw RankDeficient("cyclotomic_units: fewer than m-1 independent units");
            UnitSystem U;
            U.field = &F;
            U.precision = prec;
            for (std::size_t t : chosen) U.generators.push_back(pool[t]);
            detail::recompute_logs(U);
            return U;
        } catch (const PrecisionExhausted&) {
            if (prec * 2 > 8192) throw;
        } catch (const RankDeficient&) {
            if (prec * 2 > 8192) throw;
        }
    }
    throw RankDeficient("cyclotomic_units: rank not certified up to 8192 bits");
}

// p-th power descent: if some product of generators (up to sign) is a p-th
// power in F, replace a generator by the root. Best effort: failure to
// certify a root numerically counts as "no descent".
inline UnitSystem saturate(UnitSystem U, const std::vector<Int>& primes) {
    const CyclicField& F = *U.field;
    const std::size_t r = U.generators.size();
    auto periods = numeric_periods(F, U.precision);
    // circulant embedding matrix of the period basis: sigma_i(eta_k) = eta_{i+k}
    std::vector<std::vector<Interval>> M(F.m, std::vector<Interval>(F.m, Interval(U.precision)));
    for (std::size_t i = 0; i < F.m; ++i)
        for (std::size_t k = 0; k < F.m; ++k) M[i][k] = periods[(i + k) % F.m];

    for (const Int& p : primes) {
        if (p < 2) throw std::invalid_argument("saturate: primes must be >= 2");
        int descents = 0;
        bool found = true;
        while (found) {
            found = false;
            const unsigned long pu = p.get_ui();
            std::vector<unsigned long> e(r, 0);
            auto next_class = [&]() {
                for (std::size_t i = r; i-- > 0;) {
                    if (++e[i] < pu) return true;
                    e[i] = 0;
                }
                return false;
            };
            while (next_class()) {
                std::size_t lead = 0;
                while (e[lead] == 0) ++lead;
                if (e[lead] != 1) continue; // normalize classes up to scalar
                // embeddings of v = prod g^e via the log matrix
                std::vector<Interval> y;
                y.reserve(F.m);
                bool viable = true;
                std::vector<int> vsign(F.m, 1);
                for (std::size_t i = 0; i < F.m; ++i) {
                    Interval s = Interval::exact(0l, U.precision);
                    for (std::size_t j = 0; j < r; ++j) {
                        if (e[j] == 0) continue;
                        s = s + U.log_matrix[j][i] * Interval::exact(long(e[j]), U.precision);
                        if (U.sign_matrix[j][i] < 0 && (e[j] % 2)) vsign[i] = -vsign[i];
                    }
                    y.push_back(s);
                }
                if (pu == 2) {
                    // v or -v must be totally positive
                    bool all_pos = true, all_neg = true;
                    for (int s : vsign) (s > 0 ? all_neg : all_pos) = false;
                    if (!all_pos && !all_neg) continue;
                }
                std::vector<Interval> mag;
                mag.reserve(F.m);
                for (std::size_t i = 0; i < F.m; ++i)
                    mag.push_back(exp(y[i] / Interval::exact(long(pu), U.precision)));

                // for odd p the real root's signs follow v; for p = 2 the
                // root may take either sign at each embedding (normalize the
                // first one to +)
                const std::uint64_t patterns = (pu == 2) ? (1ull << (F.m - 1)) : 1;
                FieldElement v = F.constant(1);
                bool v_built = false;
                for (std::uint64_t mask = 0; mask < patterns && !found; ++mask) {
                    std::vector<Interval> yr;
                    yr.reserve(F.m);
                    for (std::size_t i = 0; i < F.m; ++i) {
                        int s = (pu == 2) ? ((i > 0 && (mask >> (i - 1)) & 1) ? -1 : 1)
                                          : vsign[i];
                        yr.push_back(s > 0 ? mag[i] : -mag[i]);
                    }
                    // solve for period-basis coordinates, round to integers
                    std::vector<Interval> x;
                    try {
                        x = interval_solve(M, yr);
                    } catch (const PrecisionExhausted&) {
                        continue;
                    }
                    std::vector<Int> coords(F.m);
                    bool ok = true;
                    for (std::size_t k = 0; k < F.m && ok; ++k) {
                        Rat lo = x[k].lower_rat(), hi = x[k].upper_rat();
                        Int c_lo, c_hi;
                        mpz_cdiv_q(c_lo.get_mpz_t(), lo.get_num().get_mpz_t(),
                                   lo.get_den().get_mpz_t());
                        mpz_fdiv_q(c_hi.get_mpz_t(), hi.get_num().get_mpz_t(),
                                   hi.get_den().get_mpz_t());
                        if (c_lo != c_hi)
                            ok = false; // no unique integer in the enclosure
                        else
                            coords[k] = c_lo;
                    }
                    if (!ok) continue;
                    // exact verification
                    FieldElement w = F.constant(0);
                    for (std::size_t k = 0; k < F.m; ++k) {
                        if (coords[k] == 0) continue;
                        FieldElement etak = F.element(F.galois_num[k], F.galois_den[k]);
                        w = w + etak * F.constant(coords[k]);
                    }
                    if (w.is_zero()) continue;
                    if (!v_built) {
                        for (std::size_t j = 0; j < r; ++j)
                            if (e[j]) v = v * pow_fe(U.generators[j], Int(long(e[j])));
                        v_built = true;
                    }
                    FieldElement wp = pow_fe(w, p);
                    if (wp == v || wp == -v) {
                        U.generators[lead] = w;
                        detail::recompute_logs(U);
                        ++descents;
                        found = true;
                    }
                }
                if (found) break;
            }
        }
        U.saturation_log.emplace_back(
            p, descents ? "descent at " + to_string(p) + " (x" + std::to_string(descents) + ")"
                        : "no descent at " + to_string(p));
    }
    U.mode = "saturated";
    return U;
}

} // namespace uniteq
