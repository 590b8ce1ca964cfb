#pragma once

// Dense polynomials over Q: division, extended Euclid, Sturm sequences.
// Used for inverses modulo the minimal polynomial and for exact real-root
// isolation. Degrees stay tiny (<= a few dozen).

#include "uniteq/bigint.hpp"
#include "uniteq/errors.hpp"
#include "uniteq/polyring.hpp"

#include <utility>
#include <vector>

namespace uniteq {

struct QPoly {
    std::vector<Rat> c; // constant term first, no trailing zeros

    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    explicit QPoly(const IntPoly& f) {
        c.reserve(f.c.size());
        for (const auto& x : f.c) c.emplace_back(x);
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rat& lc() const { return c.back(); }
    Rat coeff(std::size_t i) const { return i < c.size() ? c[i] : Rat(0); }
};

inline QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return QPoly(std::move(r));
}

inline QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return QPoly(std::move(r));
}

inline QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return QPoly(std::move(r));
}

inline QPoly operator*(const QPoly& a, const Rat& s) {
    if (s == 0) return {};
    QPoly r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw DivisionByZero("QPoly divmod: zero divisor");
    std::vector<Rat> r = a.c;
    const int db = b.degree();
    std::vector<Rat> q(a.c.size() >= b.c.size() ? a.c.size() - b.c.size() + 1 : 0, Rat(0));
    for (int dr = static_cast<int>(r.size()) - 1; dr >= db; --dr) {
        if (r[dr] == 0) continue;
        Rat qc = r[dr] / b.lc();
        q[dr - db] = qc;
        for (int i = 0; i <= db; ++i) r[dr - db + i] -= qc * b.c[i];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

inline Rat eval(const QPoly& f, const Rat& x) {
    Rat r = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) r = r * x + f.c[i];
    return r;
}

inline QPoly derivative(const QPoly& f) {
    if (f.c.size() <= 1) return {};
    std::vector<Rat> r(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i) r[i - 1] = f.c[i] * Rat(static_cast<long>(i));
    return QPoly(std::move(r));
}

// g, u, v with u*a + v*b = g = gcd(a, b) (g monic).
inline std::tuple<QPoly, QPoly, QPoly> extended_gcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b;
    QPoly u0(std::vector<Rat>{Rat(1)}), u1;
    QPoly v0, v1(std::vector<Rat>{Rat(1)});
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        QPoly u2 = u0 - q * u1;
        QPoly v2 = v0 - q * v1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (!r0.is_zero()) {
        Rat inv = 1 / r0.lc();
        r0 = r0 * inv;
        u0 = u0 * inv;
        v0 = v0 * inv;
    }
    return {r0, u0, v0};
}

// ---------------------------------------------------------------------------
// Exact real-root isolation by Sturm bisection

namespace detail {

inline std::vector<QPoly> sturm_sequence(const IntPoly& f) {
    std::vector<QPoly> seq;
    seq.emplace_back(f);
    seq.push_back(QPoly(derivative(f)));
    while (!seq.back().is_zero()) {
        auto [q, r] = divmod(seq[seq.size() - 2], seq.back());
        (void)q;
        if (r.is_zero()) break;
        for (auto& x : r.c) x = -x;
        r.trim();
        seq.push_back(std::move(r));
    }
    return seq;
}

inline int sturm_sign_changes(const std::vector<QPoly>& seq, const Rat& x) {
    int changes = 0, last = 0;
    for (const auto& s : seq) {
        Rat v = eval(s, x);
        int sg = sgn(v);
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++changes;
        last = sg;
    }
    return changes;
}

} // namespace detail

// Isolating rational intervals (a, b] for all real roots of the squarefree
// polynomial f, refined by sign bisection until b - a <= width. Roots are
// returned in increasing order.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const IntPoly& f, const Rat& width) {
    if (f.degree() < 1) return {};
    auto seq = detail::sturm_sequence(f);
    // Cauchy bound
    Rat bound(1);
    for (const auto& x : f.c) {
        Rat t = abs(Rat(x) / Rat(f.lc()));
        if (t > bound) bound = t;
    }
    bound += 1;
    std::vector<std::pair<Rat, Rat>> isolating;
    std::vector<std::pair<Rat, Rat>> work{{-bound, bound}};
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        int n = detail::sturm_sign_changes(seq, a) - detail::sturm_sign_changes(seq, b);
        if (n == 0) continue;
        if (n == 1) {
            isolating.emplace_back(a, b);
            continue;
        }
        Rat m = (a + b) / 2;
        if (eval(f, m) == 0) {
            // nudge the split point off the root
            m += (b - a) / 4;
        }
        work.emplace_back(a, m);
        work.emplace_back(m, b);
    }
    std::sort(isolating.begin(), isolating.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    // refine by sign bisection; f(a) and f(b) have opposite signs once the
    // interval is narrow enough to exclude the even-touch case (squarefree
    // simple real roots, so signs differ on a true isolating interval)
    for (auto& [a, b] : isolating) {
        // ensure sign change (Sturm guarantees exactly one root in (a, b])
        int sa = sgn(eval(f, a));
        int sb = sgn(eval(f, b));
        if (sa == 0 || sb == 0) throw std::logic_error("isolate_real_roots: rational root hit");
        while (b - a > width) {
            Rat m = (a + b) / 2;
            int sm = sgn(eval(f, m));
            if (sm == 0) {
                // rational midpoint equals the root: shrink both sides around it
                Rat eps = (b - a) / 4;
                a = m - eps;
                b = m + eps;
                if (b - a <= width) break;
                continue;
            }
            if (sm == sa)
                a = m;
            else
                b = m;
        }
    }
    return isolating;
}

} // namespace uniteq
