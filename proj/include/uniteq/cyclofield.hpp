#pragma once

// Real abelian fields Q(eta) built from Gaussian periods: exact minimal
// polynomials via arithmetic in Z[x]/(Phi_N), power-basis element arithmetic,
// Galois action, norms, and an exact field-isomorphism test.

#include "uniteq/arith.hpp"
#include "uniteq/interval.hpp"
#include "uniteq/lattice.hpp"
#include "uniteq/polyring.hpp"
#include "uniteq/qlinalg.hpp"
#include "uniteq/qpoly.hpp"

#include <algorithm>
#include <memory>
#include <vector>

namespace uniteq {

namespace detail {

// cyclic convolution in Z[x]/(x^N - 1)
inline std::vector<Int> conv_mod_xn(const std::vector<Int>& a, const std::vector<Int>& b) {
    const std::size_t n = a.size();
    std::vector<Int> r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            r[(i + j) % n] += a[i] * b[j];
        }
    }
    return r;
}

inline IntPoly reduce_mod_phi(const std::vector<Int>& v, const IntPoly& phi) {
    return rem_monic(IntPoly({v}), phi);
}

// smallest residue whose class generates the quotient (Z/NZ)^x / H, which
// must be cyclic of order m
inline Int quotient_generator(const Int& N, const SubgroupZn& H, std::size_t m) {
    for (Int g = 2; g < N; ++g) {
        if (gcd(g, N) != 1) continue;
        Int x = mod_floor(g, N);
        std::size_t k = 1;
        while (!H.contains(x)) {
            x = x * g % N;
            ++k;
        }
        if (k == m) return g;
    }
    throw std::invalid_argument("quotient_generator: quotient is not cyclic of order m");
}

} // namespace detail

struct CyclicField;

struct FieldElement {
    const CyclicField* parent = nullptr;
    std::vector<Int> num; // coordinates over 1, eta, ..., eta^{m-1}
    Int den = 1;

    void normalize();
    bool is_zero() const {
        for (const auto& x : num)
            if (x != 0) return false;
        return true;
    }
    bool is_integral() const { return den == 1; }
};

struct CyclicField {
    Int N;         // conductor, odd squarefree
    std::size_t m; // degree, prime
    SubgroupZn H;
    IntPoly minpoly;
    std::vector<Int> coset_reps; // c_i = g^i mod N, c_0 = 1
    // eta_{c_i} over the power basis; the power basis need not be maximal
    // (e.g. conductor 31: index 5), so these carry denominators
    std::vector<std::vector<Int>> galois_num;
    std::vector<Int> galois_den;
    Int discriminant; // field discriminant prod_{p | N} p^{m-1}, verified
    std::vector<Int> ramified_primes;
    // x = period_coords * power coordinate vector gives the (integral-basis)
    // period coordinates; used for integrality tests
    std::vector<std::vector<Rat>> period_coords;

    FieldElement element(std::vector<Int> coords, Int d = 1) const {
        FieldElement e;
        e.parent = this;
        e.num = std::move(coords);
        e.num.resize(m, 0);
        e.den = std::move(d);
        e.normalize();
        return e;
    }
    FieldElement constant(const Int& v) const {
        std::vector<Int> c(m, 0);
        c[0] = v;
        return element(std::move(c));
    }
    FieldElement eta() const {
        std::vector<Int> c(m, 0);
        if (m > 1) c[1] = 1;
        return element(std::move(c));
    }
};

inline void FieldElement::normalize() {
    if (den == 0) throw DivisionByZero("FieldElement: zero denominator");
    if (den < 0) {
        den = -den;
        for (auto& x : num) x = -x;
    }
    Int g = den;
    for (const auto& x : num) {
        g = gcd(g, x);
        if (g == 1) break;
    }
    if (g > 1) {
        for (auto& x : num) x /= g;
        den /= g;
    }
}

// --------------------------------------------------------------------------
// Construction

// Is the conductor of the fixed field of H exactly N? H must not contain the
// kernel of (Z/NZ)^x -> (Z/(N/p)Z)^x for any p | N.
inline bool conductor_is_exact(const Int& N, const SubgroupZn& H, const std::vector<Int>& primes) {
    for (const Int& p : primes) {
        Int M = N / p;
        bool kernel_inside = true;
        for (Int k = 0; k < p; ++k) {
            Int x = mod_floor(1 + k * M, N);
            if (gcd(x, N) != 1) continue;
            if (!H.contains(x)) {
                kernel_inside = false;
                break;
            }
        }
        if (kernel_inside) return false;
    }
    return true;
}

inline IntPoly period_minimal_polynomial(const Int& N, const SubgroupZn& H) {
    if (N < 3 || N % 2 == 0)
        throw std::invalid_argument("period_minimal_polynomial: N must be odd and >= 3");
    const Int& order = H.parent->order();
    const Int idx = order / H.order();
    if (idx * H.order() != order || idx < 2)
        throw std::invalid_argument("period_minimal_polynomial: index of H must be >= 2");
    const std::size_t m = static_cast<std::size_t>(idx.get_ui());

    auto fac = factorize(N);
    std::vector<Int> primes;
    for (const auto& [p, e] : fac.factors) {
        if (e > 1) throw NotSquarefree("period_minimal_polynomial: N not squarefree");
        primes.push_back(p);
    }
    if (!conductor_is_exact(N, H, primes))
        throw ConductorNotExact("period_minimal_polynomial: fixed field has conductor < N");

    const unsigned long n = N.get_ui();
    Int g = detail::quotient_generator(N, H, m);

    // period vectors in Z[x]/(x^N - 1)
    std::vector<std::vector<Int>> period(m, std::vector<Int>(n, 0));
    Int c = 1;
    for (std::size_t i = 0; i < m; ++i) {
        for (const Int& a : H.elements()) period[i][to_u64(c * a % N)] = 1;
        c = c * g % N;
    }

    // expand prod_i (X - eta_i) with coefficients in Z[x]/(x^N - 1)
    std::vector<std::vector<Int>> coeff(1, std::vector<Int>(n, 0));
    coeff[0][0] = 1;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::vector<Int>> next(coeff.size() + 1, std::vector<Int>(n, 0));
        for (std::size_t j = 0; j < coeff.size(); ++j) {
            next[j + 1] = coeff[j];
            std::vector<Int> t = detail::conv_mod_xn(coeff[j], period[i]);
            for (std::size_t k = 0; k < n; ++k) next[j][k] -= t[k];
        }
        coeff = std::move(next);
    }

    const IntPoly phi = cyclotomic_poly(n);
    std::vector<Int> out(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        IntPoly r = detail::reduce_mod_phi(coeff[j], phi);
        if (r.degree() > 0)
            throw NonConstantSymmetricFunction(
                "period_minimal_polynomial: symmetric function not rational");
        out[j] = r.is_zero() ? Int(0) : r.c[0];
    }
    if (out[m] != 1) throw NonConstantSymmetricFunction("period_minimal_polynomial: not monic");
    return IntPoly({out});
}

inline CyclicField build_cyclic_field(const Int& N, const SubgroupZn& H) {
    CyclicField F;
    F.N = N;
    F.H = H;
    F.minpoly = period_minimal_polynomial(N, H);
    F.m = static_cast<std::size_t>(F.minpoly.degree());

    auto fac = factorize(N);
    F.discriminant = 1;
    for (const auto& [p, e] : fac.factors) {
        (void)e;
        F.ramified_primes.push_back(p);
        F.discriminant *= pow_ui(p, F.m - 1);
    }
    for (const Int& p : F.ramified_primes) {
        auto shape = factor_mod_p_shape(F.minpoly, to_u64(p));
        if (shape.size() != 1 || shape[0].first != 1 || shape[0].second != static_cast<int>(F.m))
            throw RamificationAssumptionFailed(
                "build_cyclic_field: p | N is not totally ramified");
    }

    // coset reps and the coordinates of each eta_{c_i} over the power basis
    Int g = detail::quotient_generator(N, H, F.m);
    Int c = 1;
    const unsigned long n = N.get_ui();
    std::vector<std::vector<Int>> period(F.m, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < F.m; ++i) {
        F.coset_reps.push_back(c);
        for (const Int& a : H.elements()) period[i][to_u64(c * a % N)] = 1;
        c = c * g % N;
    }

    const IntPoly phi = cyclotomic_poly(n);
    const std::size_t fdeg = static_cast<std::size_t>(phi.degree());
    // columns: eta^k reduced mod Phi_N
    std::vector<std::vector<Rat>> A(fdeg, std::vector<Rat>(F.m, Rat(0)));
    std::vector<Int> pw(n, 0);
    pw[0] = 1;
    for (std::size_t k = 0; k < F.m; ++k) {
        IntPoly red = detail::reduce_mod_phi(pw, phi);
        for (std::size_t i = 0; i < red.c.size(); ++i) A[i][k] = Rat(red.c[i]);
        if (k + 1 < F.m) pw = detail::conv_mod_xn(pw, period[0]);
    }
    std::vector<std::vector<Rat>> B(fdeg, std::vector<Rat>(F.m, Rat(0)));
    for (std::size_t i = 0; i < F.m; ++i) {
        IntPoly red = detail::reduce_mod_phi(period[i], phi);
        for (std::size_t j = 0; j < red.c.size(); ++j) B[j][i] = Rat(red.c[j]);
    }
    auto X = solve_rational_system(std::move(A), std::move(B));
    F.galois_num.assign(F.m, std::vector<Int>(F.m, 0));
    F.galois_den.assign(F.m, Int(1));
    for (std::size_t i = 0; i < F.m; ++i) {
        Int D = 1;
        for (std::size_t k = 0; k < F.m; ++k) D = lcm(D, Int(X[k][i].get_den()));
        for (std::size_t k = 0; k < F.m; ++k)
            F.galois_num[i][k] = Int(X[k][i].get_num()) * (D / Int(X[k][i].get_den()));
        F.galois_den[i] = D;
    }

    // Verify that the periods eta_{c_0}, ..., eta_{c_{m-1}} are an integral
    // basis: det(C)^2 * disc(minpoly) must equal the field discriminant of
    // Eq-style conductor-discriminant shape prod p^{m-1}. The power basis
    // itself may sit at finite index (conductor 31: index 5).
    std::vector<std::vector<Rat>> C(F.m, std::vector<Rat>(F.m));
    for (std::size_t i = 0; i < F.m; ++i)
        for (std::size_t k = 0; k < F.m; ++k) C[i][k] = X[k][i];
    Rat det(1);
    {
        auto M = C;
        for (std::size_t col = 0; col < F.m; ++col) {
            std::size_t p = col;
            while (p < F.m && M[p][col] == 0) ++p;
            if (p == F.m) throw RankDeficient("build_cyclic_field: periods are dependent");
            if (p != col) {
                std::swap(M[p], M[col]);
                det = -det;
            }
            det *= M[col][col];
            Rat inv = 1 / M[col][col];
            for (std::size_t i = col + 1; i < F.m; ++i) {
                Rat f0 = M[i][col] * inv;
                for (std::size_t j = col; j < F.m; ++j) M[i][j] -= f0 * M[col][j];
            }
        }
    }
    if (det * det * Rat(discriminant(F.minpoly)) != Rat(F.discriminant))
        throw RamificationAssumptionFailed(
            "build_cyclic_field: period basis is not an integral basis of the expected "
            "discriminant");

    // inverse of the period-over-power matrix (columns = period coords)
    std::vector<std::vector<Rat>> P(F.m, std::vector<Rat>(F.m));
    std::vector<std::vector<Rat>> I(F.m, std::vector<Rat>(F.m, Rat(0)));
    for (std::size_t i = 0; i < F.m; ++i) {
        I[i][i] = 1;
        for (std::size_t k = 0; k < F.m; ++k) P[i][k] = C[k][i];
    }
    F.period_coords = solve_rational_system(std::move(P), std::move(I));
    return F;
}

// integral iff the coordinates over the period integral basis are integers
inline bool is_algebraic_integer(const FieldElement& a) {
    const CyclicField& F = *a.parent;
    for (std::size_t i = 0; i < F.m; ++i) {
        Rat x(0);
        for (std::size_t j = 0; j < F.m; ++j) x += F.period_coords[i][j] * Rat(a.num[j]);
        x /= Rat(a.den);
        if (x.get_den() != 1) return false;
    }
    return true;
}

// one field per index-ell subgroup whose fixed field has conductor exactly N;
// sorted by minimal polynomial for reproducible output
inline std::vector<CyclicField> subfields_of_conductor(const Int& ell, const Int& N) {
    auto G = unit_group_structure(N);
    auto subs = index_ell_subgroups(G, ell);
    std::vector<CyclicField> out;
    for (const auto& H : subs) {
        try {
            out.push_back(build_cyclic_field(N, H));
        } catch (const ConductorNotExact&) {
        }
    }
    std::sort(out.begin(), out.end(),
              [](const CyclicField& a, const CyclicField& b) { return a.minpoly.c < b.minpoly.c; });
    return out;
}

// --------------------------------------------------------------------------
// Element arithmetic

inline bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.parent == b.parent && a.num == b.num && a.den == b.den;
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    if (a.parent != b.parent) throw std::invalid_argument("FieldElement: parent mismatch");
    FieldElement r;
    r.parent = a.parent;
    r.num.resize(a.num.size());
    for (std::size_t i = 0; i < a.num.size(); ++i) r.num[i] = a.num[i] * b.den + b.num[i] * a.den;
    r.den = a.den * b.den;
    r.normalize();
    return r;
}

inline FieldElement operator-(const FieldElement& a) {
    FieldElement r = a;
    for (auto& x : r.num) x = -x;
    return r;
}

inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    if (a.parent != b.parent) throw std::invalid_argument("FieldElement: parent mismatch");
    IntPoly prod = IntPoly({a.num}) * IntPoly({b.num});
    IntPoly red = rem_monic(prod, a.parent->minpoly);
    FieldElement r;
    r.parent = a.parent;
    r.num = red.c;
    r.num.resize(a.parent->m, 0);
    r.den = a.den * b.den;
    r.normalize();
    return r;
}

namespace detail {

inline FieldElement from_qpoly(const CyclicField& F, const QPoly& q) {
    Int D = 1;
    for (const auto& x : q.c) D = lcm(D, Int(x.get_den()));
    std::vector<Int> num(F.m, 0);
    for (std::size_t i = 0; i < q.c.size() && i < F.m; ++i)
        num[i] = Int(q.c[i].get_num()) * (D / Int(q.c[i].get_den()));
    return F.element(std::move(num), D);
}

} // namespace detail

inline FieldElement inv(const FieldElement& a) {
    if (a.is_zero()) throw DivisionByZero("FieldElement inv: zero element");
    const CyclicField& F = *a.parent;
    QPoly A(IntPoly({a.num}));
    auto [g, u, v] = extended_gcd(QPoly(F.minpoly), A);
    (void)u;
    if (g.degree() != 0) throw DivisionByZero("FieldElement inv: gcd with minpoly nontrivial");
    // v * A == 1 (mod minpoly); inverse of A/den is den * v
    QPoly w = divmod(v * Rat(a.den), QPoly(F.minpoly)).second;
    return detail::from_qpoly(F, w);
}

inline FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * inv(b); }

inline Rat norm(const FieldElement& a) {
    if (a.is_zero()) return Rat(0);
    const CyclicField& F = *a.parent;
    IntPoly A({a.num});
    Int res;
    if (A.degree() == 0)
        res = pow_ui(A.c[0], F.m);
    else
        res = resultant(F.minpoly, A);
    Rat r(res, pow_ui(a.den, F.m));
    r.canonicalize();
    return r;
}

inline FieldElement galois_apply(std::size_t k, const FieldElement& a) {
    const CyclicField& F = *a.parent;
    if (k >= F.m) throw std::invalid_argument("galois_apply: 0 <= k < m");
    if (k == 0) return a;
    FieldElement img = F.element(F.galois_num[k], F.galois_den[k]);
    FieldElement acc = F.constant(0);
    for (std::size_t j = F.m; j-- > 0;) acc = acc * img + F.constant(a.num[j]);
    acc.den *= a.den;
    acc.normalize();
    return acc;
}

// the residue b mod p of a at the unique prime above a (totally ramified) p | N
inline Int residue_mod_ramified(const FieldElement& a, const Int& p) {
    const CyclicField& F = *a.parent;
    if (std::find(F.ramified_primes.begin(), F.ramified_primes.end(), p) ==
        F.ramified_primes.end())
        throw std::invalid_argument("residue_mod_ramified: p does not divide the conductor");
    auto shape = factor_mod_p_shape(F.minpoly, to_u64(p));
    if (shape.size() != 1 || shape[0].first != 1)
        throw RamificationAssumptionFailed("residue_mod_ramified: shape is not [(1, m)]");
    if (mod_floor(a.den, p) == 0)
        throw std::invalid_argument("residue_mod_ramified: denominator divisible by p");
    auto roots = roots_mod_p(F.minpoly, to_u64(p));
    Int a0(static_cast<unsigned long>(roots.at(0)));
    Int b = 0;
    for (std::size_t j = a.num.size(); j-- > 0;) b = mod_floor(b * a0 + a.num[j], p);
    return mod_floor(b * invmod(mod_floor(a.den, p), p), p);
}

// --------------------------------------------------------------------------
// Numerical embeddings

// certified enclosures of eta_{c_0}, ..., eta_{c_{m-1}} (the m real
// embeddings of eta, in coset order)
inline std::vector<Interval> numeric_periods(const CyclicField& F, mpfr_prec_t prec) {
    if (!F.H.contains(F.N - 1))
        throw std::invalid_argument("numeric_periods: field is not totally real");
    std::vector<Interval> out;
    out.reserve(F.m);
    for (std::size_t i = 0; i < F.m; ++i) {
        Interval s = Interval::exact(0l, prec);
        for (const Int& a : F.H.elements()) {
            Rat arg(mod_floor(F.coset_reps[i] * a, F.N), F.N);
            arg.canonicalize();
            s = s + cos2pi(arg, prec);
        }
        out.push_back(std::move(s));
    }
    return out;
}

// --------------------------------------------------------------------------
// Field-isomorphism test

enum class SameField { yes, no, unknown };

namespace detail {

inline Int eval_mod(const IntPoly& f, const Int& x, const Int& M) {
    Int r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) r = mod_floor(r * x + f.c[i], M);
    return r;
}

// Newton-lift a simple root of f from mod q up to mod q^{2^steps}
inline Int hensel_lift(const IntPoly& f, Int r, const Int& q, int steps) {
    IntPoly fp = derivative(f);
    Int M = q;
    for (int s = 0; s < steps; ++s) {
        M = M * M;
        Int d = eval_mod(fp, r, M);
        Int g = gcd(d, M);
        if (g != 1) throw std::logic_error("hensel_lift: derivative not invertible");
        r = mod_floor(r - eval_mod(f, r, M) * invmod(d, M), M);
    }
    return r;
}

// does g(r(x)) == 0 (mod f(x)) exactly over Q?
inline bool verify_root_poly(const IntPoly& f, const IntPoly& g, const QPoly& r) {
    QPoly fm(f);
    QPoly acc;
    for (std::size_t i = g.c.size(); i-- > 0;) {
        acc = divmod(acc * r, fm).second;
        acc = acc + QPoly(IntPoly::constant(g.c[i]));
    }
    return acc.is_zero();
}

// try to express a root of g in Q[x]/(f) from the q-adic data: find small
// (r_0..r_{m-1}, d) with sum r_i beta^i == d*gamma (mod M) via LLL, then
// verify exactly over Q.
inline bool find_root_poly(const IntPoly& f, const IntPoly& g, const Int& beta, const Int& gamma,
                           const Int& M, QPoly& out) {
    const std::size_t m = static_cast<std::size_t>(f.degree());
    const std::size_t dim = m + 2;
    IntLattice L;
    L.basis.assign(dim, std::vector<Int>(dim, 0));
    Int bp = 1;
    for (std::size_t i = 0; i < m; ++i) {
        L.basis[i][i] = 1;
        L.basis[i][dim - 1] = M * bp;
        bp = bp * beta % M;
    }
    L.basis[m][m] = 1;
    L.basis[m][dim - 1] = M * mod_floor(-gamma, M);
    L.basis[dim - 1][dim - 1] = M * M;
    auto red = lll_reduce(L);
    for (const auto& row : red.reduced.basis) {
        if (row[dim - 1] != 0) continue;
        Int d = row[m];
        if (d == 0) continue;
        std::vector<Rat> coeffs(m);
        for (std::size_t i = 0; i < m; ++i) {
            coeffs[i] = Rat(row[i], d);
            coeffs[i].canonicalize();
        }
        QPoly cand(std::move(coeffs));
        if (verify_root_poly(f, g, cand)) {
            out = std::move(cand);
            return true;
        }
    }
    return false;
}

} // namespace detail

// Isomorphism test for monic irreducible defining polynomials of prime
// degree whose fields are Galois (the cyclic fields of this project): "no"
// answers use the split-prime criterion, "yes" answers carry an exact root
// certificate g(r(x)) == 0 mod f(x).
inline SameField same_field(const IntPoly& f, const IntPoly& g, const FactorConfig& cfg = {}) {
    if (f.degree() != g.degree()) return SameField::no;
    if (f.c == g.c) return SameField::yes;
    Int df = discriminant(f), dg = discriminant(g);
    if (df == 0 || dg == 0) throw std::invalid_argument("same_field: inputs must be squarefree");
    // squarefree-part filter (skipped when the factorization budget runs out)
    auto ff = try_factorize(df, cfg);
    auto fg = try_factorize(dg, cfg);
    if (ff.complete() && fg.complete()) {
        auto sqf = [](const Factorization& fa) {
            Int s = fa.sign;
            for (const auto& [p, e] : fa.factors)
                if (e % 2) s *= p;
            return s;
        };
        if (sqf(ff) != sqf(fg)) return SameField::no;
    }
    int certificates_tried = 0;
    for (std::uint64_t q = 3; q < 20000 && certificates_tried < 3; ++q) {
        if (!is_prime(Int(q))) continue;
        if (mod_floor(df, q) == 0 || mod_floor(dg, q) == 0) continue;
        auto rf = roots_mod_p(f, q);
        auto rg = roots_mod_p(g, q);
        if (rf.empty() != rg.empty()) return SameField::no; // split sets differ
        if (rf.empty()) continue;
        ++certificates_tried;
        // lift to q^128 and search for the isomorphism polynomial
        Int beta = detail::hensel_lift(f, Int(rf[0]), Int(q), 7);
        Int M = pow_ui(Int(q), 128);
        for (std::uint64_t g0 : rg) {
            Int gamma = detail::hensel_lift(g, Int(g0), Int(q), 7);
            QPoly r;
            if (detail::find_root_poly(f, g, beta, gamma, M, r)) return SameField::yes;
        }
    }
    return SameField::unknown;
}

} // namespace uniteq
