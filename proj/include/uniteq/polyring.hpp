#pragma once

// Exact univariate polynomial arithmetic over Z and Q: resultants by the
// subresultant PRS, discriminants, cyclotomic polynomials, and factor
// shapes mod p. Dense representation, constant term first.

#include "uniteq/bigint.hpp"
#include "uniteq/errors.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace uniteq {

// ---------------------------------------------------------------------------
// IntPoly

struct IntPoly {
    std::vector<Int> c; // c[i] is the coefficient of x^i; no trailing zeros

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
    static IntPoly constant(Int v) { return IntPoly({std::move(v)}); }
    // x^n with coefficient a
    static IntPoly monomial(Int a, std::size_t n) {
        std::vector<Int> v(n + 1, Int(0));
        v[n] = std::move(a);
        return IntPoly(std::move(v));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    const Int& lc() const { return c.back(); }
    Int coeff(std::size_t i) const { return i < c.size() ? c[i] : Int(0); }

    bool operator==(const IntPoly& o) const { return c == o.c; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }
};

inline IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return IntPoly(std::move(r));
}

inline IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return IntPoly(std::move(r));
}

inline IntPoly operator-(const IntPoly& a) {
    IntPoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

inline IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    }
    return IntPoly(std::move(r));
}

inline IntPoly operator*(const IntPoly& a, const Int& s) {
    if (s == 0) return {};
    IntPoly r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

inline Int eval(const IntPoly& f, const Int& x) {
    Int r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) r = r * x + f.c[i];
    return r;
}

inline Rat eval(const IntPoly& f, const Rat& x) {
    Rat r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) r = r * x + Rat(f.c[i]);
    return r;
}

inline IntPoly derivative(const IntPoly& f) {
    if (f.c.size() <= 1) return {};
    std::vector<Int> r(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i) r[i - 1] = f.c[i] * Int(static_cast<long>(i));
    return IntPoly(std::move(r));
}

inline Int content(const IntPoly& f) {
    Int g = 0;
    for (const auto& x : f.c) g = gcd(g, x);
    return g;
}

// Quotient of an exact division; throws if the division is not exact.
inline IntPoly divexact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw DivisionByZero("divexact: zero divisor");
    if (a.is_zero()) return {};
    std::vector<Int> rem = a.c;
    const int db = b.degree();
    int dr = a.degree();
    if (dr < db) throw std::invalid_argument("divexact: not divisible");
    std::vector<Int> q(dr - db + 1, Int(0));
    while (dr >= db) {
        Int qc;
        mpz_divexact(qc.get_mpz_t(), rem[dr].get_mpz_t(), b.lc().get_mpz_t());
        if (qc * b.lc() != rem[dr]) throw std::invalid_argument("divexact: not divisible");
        q[dr - db] = qc;
        for (int i = 0; i <= db; ++i) rem[dr - db + i] -= qc * b.c[i];
        while (dr >= 0 && rem[dr] == 0) --dr;
    }
    for (int i = 0; i <= dr; ++i)
        if (rem[i] != 0) throw std::invalid_argument("divexact: nonzero remainder");
    return IntPoly(std::move(q));
}

// Remainder of a by monic b, exact over Z.
inline IntPoly rem_monic(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero() || b.lc() != 1) throw std::invalid_argument("rem_monic: divisor must be monic");
    std::vector<Int> r = a.c;
    const int db = b.degree();
    for (int dr = a.degree(); dr >= db; --dr) {
        if (r[dr] == 0) continue;
        Int qc = r[dr];
        for (int i = 0; i <= db; ++i) r[dr - db + i] -= qc * b.c[i];
    }
    return IntPoly(std::move(r));
}

namespace detail {
// Pseudo-remainder with the exact power lc(b)^{deg a - deg b + 1} required
// by the subresultant algorithm.
inline IntPoly prem_exact(const IntPoly& a, const IntPoly& b) {
    const int da = a.degree(), db = b.degree();
    if (da < db) {
        // lc(b)^{delta+1} * a with delta+1 = da-db+1 <= 0 never happens here
        return a;
    }
    IntPoly r = a;
    const Int& d = b.lc();
    int e = da - db + 1;
    while (!r.is_zero() && r.degree() >= db) {
        IntPoly shifted = IntPoly::monomial(r.lc(), static_cast<std::size_t>(r.degree() - db));
        r = r * d - shifted * b;
        --e;
    }
    // multiply by d^e to reach the exact pseudo-remainder power
    while (e-- > 0) r = r * d;
    return r;
}
} // namespace detail

// ---------------------------------------------------------------------------
// Resultant and discriminant

// Res(f, g) = lc(f)^{deg g} * prod_{f(alpha)=0} g(alpha), exact integer,
// via the subresultant polynomial remainder sequence.
inline Int resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero argument");
    if (f.degree() == 0) return pow_ui(f.c[0], static_cast<unsigned long>(g.degree()));
    if (g.degree() == 0) return pow_ui(g.c[0], static_cast<unsigned long>(f.degree()));

    IntPoly A = f, B = g;
    int s = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
        std::swap(A, B);
    }
    Int g_ = 1, h = 1;
    while (true) {
        const int da = A.degree(), db = B.degree();
        const int delta = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        IntPoly R = detail::prem_exact(A, B);
        A = B;
        Int divisor = g_ * pow_ui(h, static_cast<unsigned long>(delta));
        if (R.is_zero()) return 0; // nonconstant gcd
        {
            std::vector<Int> q(R.c.size());
            for (std::size_t i = 0; i < R.c.size(); ++i)
                mpz_divexact(q[i].get_mpz_t(), R.c[i].get_mpz_t(), divisor.get_mpz_t());
            B = IntPoly(std::move(q));
        }
        g_ = A.lc();
        if (delta == 0) {
            // h unchanged
        } else {
            // h = g^delta / h^{delta-1}
            Int num = pow_ui(g_, static_cast<unsigned long>(delta));
            Int den = pow_ui(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (B.degree() == 0) {
            const int dA = A.degree();
            Int num = pow_ui(B.c[0], static_cast<unsigned long>(dA));
            Int den = pow_ui(h, static_cast<unsigned long>(dA - 1));
            Int res;
            mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            return s < 0 ? Int(-res) : res;
        }
    }
}

// disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f), exact.
inline Int discriminant(const IntPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("discriminant: degree must be >= 1");
    if (f.degree() == 1) return 1;
    Int r = resultant(f, derivative(f));
    Int d;
    mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), f.lc().get_mpz_t());
    const long n = f.degree();
    if (((n * (n - 1)) / 2) % 2 != 0) d = -d;
    return d;
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

inline IntPoly x_pow_minus_one(unsigned long n) {
    std::vector<Int> v(n + 1, Int(0));
    v[0] = -1;
    v[n] = 1;
    return IntPoly(std::move(v));
}

inline IntPoly cyclotomic_poly(unsigned long n) {
    if (n == 0) throw std::invalid_argument("cyclotomic_poly: n >= 1");
    static std::map<unsigned long, IntPoly> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    IntPoly phi = x_pow_minus_one(n);
    for (unsigned long d = 1; d < n; ++d)
        if (n % d == 0) phi = divexact(phi, cyclotomic_poly(d));
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(n, phi);
    return phi;
}

// ---------------------------------------------------------------------------
// Rational polynomials

struct RatPoly {
    IntPoly num;
    Int den = 1; // positive; content(num) coprime to den

    RatPoly() = default;
    RatPoly(IntPoly n, Int d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    explicit RatPoly(IntPoly n) : num(std::move(n)), den(1) {}

    void normalize() {
        if (den == 0) throw DivisionByZero("RatPoly: zero denominator");
        if (num.is_zero()) {
            den = 1;
            return;
        }
        if (den < 0) {
            den = -den;
            for (auto& x : num.c) x = -x;
        }
        Int g = gcd(content(num), den);
        if (g > 1) {
            for (auto& x : num.c)
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
        }
    }

    bool is_zero() const { return num.is_zero(); }
    int degree() const { return num.degree(); }
    Rat coeff(std::size_t i) const { return Rat(num.coeff(i)) / Rat(den); }

    bool operator==(const RatPoly& o) const { return num == o.num && den == o.den; }
};

inline RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    return RatPoly(a.num * b.den + b.num * a.den, a.den * b.den);
}
inline RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    return RatPoly(a.num * b.den - b.num * a.den, a.den * b.den);
}
inline RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    return RatPoly(a.num * b.num, a.den * b.den);
}

// a*b reduced modulo the monic polynomial m.
inline RatPoly mod_poly_mul(const RatPoly& a, const RatPoly& b, const IntPoly& m) {
    if (m.is_zero() || m.lc() != 1) throw std::invalid_argument("mod_poly_mul: modulus must be monic");
    IntPoly prod = a.num * b.num;
    return RatPoly(rem_monic(prod, m), a.den * b.den);
}

// ---------------------------------------------------------------------------
// Polynomials over F_p (p < 2^62), used for factor shapes and root finding

struct PolyModP {
    std::uint64_t p;
    std::vector<std::uint64_t> c; // no trailing zeros

    explicit PolyModP(std::uint64_t prime) : p(prime) {}
    PolyModP(std::uint64_t prime, std::vector<std::uint64_t> coeffs) : p(prime), c(std::move(coeffs)) {
        trim();
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    std::uint64_t lc() const { return c.back(); }

    static PolyModP from_int_poly(const IntPoly& f, std::uint64_t p) {
        std::vector<std::uint64_t> v(f.c.size());
        for (std::size_t i = 0; i < f.c.size(); ++i)
            v[i] = to_u64(mod_floor(f.c[i], Int(static_cast<unsigned long>(p))));
        return PolyModP(p, std::move(v));
    }

    void make_monic() {
        if (is_zero()) return;
        std::uint64_t inv = powmod_u64(lc(), p - 2, p);
        for (auto& x : c) x = mulmod_u64(x, inv, p);
    }
};

inline PolyModP mul(const PolyModP& a, const PolyModP& b) {
    if (a.is_zero() || b.is_zero()) return PolyModP(a.p);
    std::vector<std::uint64_t> r(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r[i + j] = (r[i + j] + static_cast<unsigned __int128>(a.c[i]) * b.c[j]) % a.p;
    }
    return PolyModP(a.p, std::move(r));
}

inline PolyModP sub(const PolyModP& a, const PolyModP& b) {
    std::vector<std::uint64_t> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = (r[i] + a.p - b.c[i]) % a.p;
    return PolyModP(a.p, std::move(r));
}

inline PolyModP rem(const PolyModP& a, const PolyModP& b) {
    if (b.is_zero()) throw DivisionByZero("PolyModP rem: zero divisor");
    std::vector<std::uint64_t> r = a.c;
    const int db = b.degree();
    std::uint64_t inv = powmod_u64(b.lc(), a.p - 2, a.p);
    for (int dr = static_cast<int>(r.size()) - 1; dr >= db; --dr) {
        if (r[dr] == 0) continue;
        std::uint64_t q = mulmod_u64(r[dr], inv, a.p);
        for (int i = 0; i <= db; ++i) {
            std::uint64_t t = mulmod_u64(q, b.c[i], a.p);
            r[dr - db + i] = (r[dr - db + i] + a.p - t) % a.p;
        }
    }
    r.resize(std::max(db, 0));
    return PolyModP(a.p, std::move(r));
}

inline PolyModP divexact_modp(const PolyModP& a, const PolyModP& b) {
    if (b.is_zero()) throw DivisionByZero("PolyModP div: zero divisor");
    std::vector<std::uint64_t> r = a.c;
    const int db = b.degree();
    std::vector<std::uint64_t> q(a.c.size() >= b.c.size() ? a.c.size() - b.c.size() + 1 : 0, 0);
    std::uint64_t inv = powmod_u64(b.lc(), a.p - 2, a.p);
    for (int dr = static_cast<int>(r.size()) - 1; dr >= db; --dr) {
        if (r[dr] == 0) continue;
        std::uint64_t qc = mulmod_u64(r[dr], inv, a.p);
        q[dr - db] = qc;
        for (int i = 0; i <= db; ++i) {
            std::uint64_t t = mulmod_u64(qc, b.c[i], a.p);
            r[dr - db + i] = (r[dr - db + i] + a.p - t) % a.p;
        }
    }
    return PolyModP(a.p, std::move(q));
}

inline PolyModP gcd(const PolyModP& a, const PolyModP& b) {
    PolyModP x = a, y = b;
    while (!y.is_zero()) {
        PolyModP r = rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    x.make_monic();
    return x;
}

inline PolyModP derivative(const PolyModP& f) {
    if (f.c.size() <= 1) return PolyModP(f.p);
    std::vector<std::uint64_t> r(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i)
        r[i - 1] = mulmod_u64(f.c[i], i % f.p, f.p);
    return PolyModP(f.p, std::move(r));
}

// base^e mod m over F_p[x]
inline PolyModP powmod(const PolyModP& base, const Int& e, const PolyModP& m) {
    PolyModP r(base.p, {1});
    PolyModP b = rem(base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = rem(mul(r, r), m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, b), m);
    }
    return r;
}

namespace detail {

inline PolyModP pth_root(const PolyModP& f) {
    // In F_p[x], f with f' = 0 is u(x^p) and u has coefficients c_{jp}.
    std::vector<std::uint64_t> u;
    for (std::size_t i = 0; i < f.c.size(); i += static_cast<std::size_t>(f.p))
        u.push_back(f.c[i]);
    return PolyModP(f.p, std::move(u));
}

inline void squarefree_parts(const PolyModP& f_in, unsigned mult,
                             std::vector<std::pair<PolyModP, unsigned>>& out) {
    PolyModP f = f_in;
    f.make_monic();
    if (f.degree() <= 0) return;
    PolyModP d = derivative(f);
    if (d.is_zero()) {
        squarefree_parts(pth_root(f), mult * static_cast<unsigned>(f.p), out);
        return;
    }
    PolyModP g = gcd(f, d);
    PolyModP w = divexact_modp(f, g);
    unsigned i = 1;
    while (w.degree() > 0) {
        PolyModP y = gcd(w, g);
        PolyModP fac = divexact_modp(w, y);
        if (fac.degree() > 0) out.emplace_back(fac, mult * i);
        w = std::move(y);
        g = divexact_modp(g, w);
        ++i;
    }
    if (g.degree() > 0) squarefree_parts(g, mult, out);
}

// distinct-degree factorization degrees of a squarefree monic f
inline std::vector<std::pair<int, int>> ddf_degrees(PolyModP f) {
    std::vector<std::pair<int, int>> out; // (degree, count)
    PolyModP h(f.p, {0, 1});              // x
    Int p(Int(static_cast<unsigned long>(f.p)));
    int d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) {
            out.emplace_back(f.degree(), 1);
            break;
        }
        h = powmod(h, p, f);
        PolyModP hx = sub(h, PolyModP(f.p, {0, 1}));
        PolyModP g = gcd(hx, f);
        if (g.degree() > 0) {
            out.emplace_back(d, g.degree() / d);
            f = divexact_modp(f, g);
            h = rem(h, f);
        }
    }
    return out;
}

} // namespace detail

// Degrees and multiplicities of the irreducible factors of f mod p,
// sorted by (degree, multiplicity). One entry per factor.
inline std::vector<std::pair<int, int>> factor_mod_p_shape(const IntPoly& f, std::uint64_t p) {
    PolyModP fp = PolyModP::from_int_poly(f, p);
    if (fp.is_zero()) throw std::invalid_argument("factor_mod_p_shape: f vanishes mod p");
    std::vector<std::pair<PolyModP, unsigned>> parts;
    detail::squarefree_parts(fp, 1, parts);
    std::vector<std::pair<int, int>> shape; // (degree, multiplicity)
    for (const auto& [s, m] : parts)
        for (const auto& [d, count] : detail::ddf_degrees(s))
            for (int i = 0; i < count; ++i) shape.emplace_back(d, static_cast<int>(m));
    std::sort(shape.begin(), shape.end());
    return shape;
}

// All roots of f in F_p (without multiplicity), deterministic given seed.
inline std::vector<std::uint64_t> roots_mod_p(const IntPoly& f, std::uint64_t p,
                                              std::uint64_t seed = 1) {
    PolyModP fp = PolyModP::from_int_poly(f, p);
    if (fp.is_zero()) throw std::invalid_argument("roots_mod_p: f vanishes mod p");
    fp.make_monic();
    if (p < 256) { // brute force for tiny p
        std::vector<std::uint64_t> roots;
        for (std::uint64_t b = 0; b < p; ++b) {
            std::uint64_t v = 0;
            for (std::size_t i = fp.c.size(); i-- > 0;)
                v = (mulmod_u64(v, b, p) + fp.c[i]) % p;
            if (v == 0) roots.push_back(b);
        }
        return roots;
    }
    // linear part: gcd(x^p - x, f)
    PolyModP x(p, {0, 1});
    PolyModP xp = powmod(x, Int(static_cast<unsigned long>(p)), fp);
    PolyModP lin = gcd(sub(xp, x), fp);
    std::vector<std::uint64_t> roots;
    std::vector<PolyModP> work{lin};
    std::uint64_t c = seed % p;
    while (!work.empty()) {
        PolyModP g = work.back();
        work.pop_back();
        if (g.degree() <= 0) continue;
        if (g.degree() == 1) {
            // x + c0 = 0 -> root = -c0
            roots.push_back((p - g.c[0]) % p);
            continue;
        }
        // split with gcd(g, (x+c)^{(p-1)/2} - 1)
        c = (c + 1) % p;
        PolyModP shifted(p, {c, 1});
        PolyModP h = powmod(shifted, Int((static_cast<unsigned long>(p) - 1) / 2), g);
        h = sub(h, PolyModP(p, {1}));
        PolyModP d = gcd(h, g);
        if (d.degree() == 0 || d.degree() == g.degree()) {
            work.push_back(g); // unlucky c, retry
            continue;
        }
        work.push_back(d);
        work.push_back(divexact_modp(g, d));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace uniteq
