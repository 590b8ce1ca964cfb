#pragma once

// Directed-rounding interval arithmetic on top of MPFR. Every operation
// returns an interval guaranteed to contain the exact result; this is what
// makes the regulator and the enumeration pre-filter certificates rigorous.

#include "uniteq/bigint.hpp"
#include "uniteq/errors.hpp"
#include "uniteq/polyring.hpp"

#include <mpfr.h>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

namespace uniteq {

class Interval {
  public:
    explicit Interval(mpfr_prec_t prec = 128) : prec_(prec) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Interval(const Interval& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval(Interval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, MPFR_PREC_MIN);
        mpfr_init2(hi_, MPFR_PREC_MIN);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Interval& operator=(Interval o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval exact(const Int& v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static Interval exact(const Rat& v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static Interval exact(long v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_si(r.lo_, v, MPFR_RNDD);
        mpfr_set_si(r.hi_, v, MPFR_RNDU);
        return r;
    }
    static Interval hull(const Rat& a, const Rat& b, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_q(r.lo_, (a <= b ? a : b).get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, (a <= b ? b : a).get_mpq_t(), MPFR_RNDU);
        return r;
    }

    mpfr_prec_t prec() const { return prec_; }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }
    mpfr_t& lo() { return lo_; }
    mpfr_t& hi() { return hi_; }

    bool finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    // definite sign: +1, -1, or nullopt when the interval straddles 0
    std::optional<int> sign() const {
        if (mpfr_sgn(lo_) > 0) return 1;
        if (mpfr_sgn(hi_) < 0) return -1;
        if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_)) return 0;
        return std::nullopt;
    }

    double mid_d() const {
        double a = mpfr_get_d(lo_, MPFR_RNDN);
        double b = mpfr_get_d(hi_, MPFR_RNDN);
        return (a + b) / 2;
    }
    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

    Rat lower_rat() const { return to_rat(lo_); }
    Rat upper_rat() const { return to_rat(hi_); }
    Rat width_rat() const { return upper_rat() - lower_rat(); }

  private:
    static Rat to_rat(const mpfr_t& x) {
        if (!mpfr_number_p(x)) throw PrecisionExhausted("interval bound is not finite");
        if (mpfr_zero_p(x)) return Rat(0);
        Int z;
        mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
        Rat r(z);
        if (e >= 0) {
            mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
        } else {
            mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
        }
        return r;
    }

    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

namespace detail {
inline mpfr_prec_t iprec(const Interval& a, const Interval& b) {
    return std::max(a.prec(), b.prec());
}
} // namespace detail

inline Interval operator+(const Interval& a, const Interval& b) {
    Interval r(detail::iprec(a, b));
    mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

inline Interval operator-(const Interval& a, const Interval& b) {
    Interval r(detail::iprec(a, b));
    mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
}

inline Interval operator-(const Interval& a) {
    Interval r(a.prec());
    mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
    return r;
}

inline Interval operator*(const Interval& a, const Interval& b) {
    Interval r(detail::iprec(a, b));
    mpfr_t t;
    mpfr_init2(t, r.prec());
    // lower bound: min of the four endpoint products rounded down
    mpfr_mul(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_mul(t, a.lo(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
    mpfr_mul(t, a.hi(), b.lo(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
    mpfr_mul(t, a.hi(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
    // upper bound symmetric
    mpfr_mul(r.hi(), a.lo(), b.lo(), MPFR_RNDU);
    mpfr_mul(t, a.lo(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_mul(t, a.hi(), b.lo(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_mul(t, a.hi(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DivisionByZero("interval division: divisor straddles zero");
    Interval r(detail::iprec(a, b));
    mpfr_t t;
    mpfr_init2(t, r.prec());
    mpfr_div(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_div(t, a.lo(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
    mpfr_div(t, a.hi(), b.lo(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
    mpfr_div(t, a.hi(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t, MPFR_RNDD);
    mpfr_div(r.hi(), a.lo(), b.lo(), MPFR_RNDU);
    mpfr_div(t, a.lo(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_div(t, a.hi(), b.lo(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_div(t, a.hi(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

inline Interval abs(const Interval& a) {
    Interval r(a.prec());
    if (a.contains_zero()) {
        mpfr_set_zero(r.lo(), 1);
        mpfr_abs(r.hi(), a.lo(), MPFR_RNDU);
        mpfr_t t;
        mpfr_init2(t, r.prec());
        mpfr_abs(t, a.hi(), MPFR_RNDU);
        mpfr_max(r.hi(), r.hi(), t, MPFR_RNDU);
        mpfr_clear(t);
    } else if (mpfr_sgn(a.lo()) > 0) {
        r = a;
    } else {
        r = -a;
    }
    return r;
}

// natural log; requires the interval to be strictly positive
inline Interval log(const Interval& a) {
    if (mpfr_sgn(a.lo()) <= 0)
        throw PrecisionExhausted("interval log: argument not certainly positive");
    Interval r(a.prec());
    mpfr_log(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_log(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

inline Interval exp(const Interval& a) {
    Interval r(a.prec());
    mpfr_exp(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_exp(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

inline Interval sqrt(const Interval& a) {
    if (mpfr_sgn(a.lo()) < 0) throw PrecisionExhausted("interval sqrt: argument may be negative");
    Interval r(a.prec());
    mpfr_sqrt(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_sqrt(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

inline Interval pow_int(const Interval& a, long e) {
    Interval one = Interval::exact(1l, a.prec());
    if (e == 0) return one;
    if (e < 0) return one / pow_int(a, -e);
    Interval acc = one, base = a;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

// cos(2*pi*a) for rational a; sound for any width via |cos'| <= 1:
// cos(x) lies in [cos(m) - r, cos(m) + r] where m is the midpoint and r the
// radius of the argument interval.
inline Interval cos2pi(const Rat& a, mpfr_prec_t prec) {
    mpfr_t pi_lo, pi_hi, th_lo, th_hi, m, r, c;
    mpfr_inits2(prec + 16, pi_lo, pi_hi, th_lo, th_hi, m, r, c, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi_lo, MPFR_RNDD);
    mpfr_const_pi(pi_hi, MPFR_RNDU);
    mpfr_t qa;
    mpfr_init2(qa, prec + 16);
    mpfr_set_q(qa, a.get_mpq_t(), MPFR_RNDD);
    bool neg = mpfr_sgn(qa) < 0;
    // theta = 2*pi*a, outward
    mpfr_set_q(th_lo, a.get_mpq_t(), neg ? MPFR_RNDU : MPFR_RNDD);
    mpfr_set_q(th_hi, a.get_mpq_t(), neg ? MPFR_RNDD : MPFR_RNDU);
    mpfr_mul(th_lo, th_lo, neg ? pi_hi : pi_lo, MPFR_RNDD);
    mpfr_mul_ui(th_lo, th_lo, 2, MPFR_RNDD);
    mpfr_mul(th_hi, th_hi, neg ? pi_lo : pi_hi, MPFR_RNDU);
    mpfr_mul_ui(th_hi, th_hi, 2, MPFR_RNDU);
    // midpoint and radius
    mpfr_add(m, th_lo, th_hi, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    mpfr_sub(r, th_hi, th_lo, MPFR_RNDU);
    mpfr_div_2ui(r, r, 1, MPFR_RNDU);
    mpfr_abs(r, r, MPFR_RNDU);
    // extra ulp of slack to absorb the midpoint rounding
    mpfr_nextabove(r);
    mpfr_nextabove(r);
    mpfr_cos(c, m, MPFR_RNDN);
    Interval out(prec);
    mpfr_sub(out.lo(), c, r, MPFR_RNDD);
    mpfr_add(out.hi(), c, r, MPFR_RNDU);
    // the rounding of cos itself
    mpfr_nextbelow(out.lo());
    mpfr_nextabove(out.hi());
    if (mpfr_cmp_si(out.lo(), -1) < 0) mpfr_set_si(out.lo(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(out.hi(), 1) > 0) mpfr_set_si(out.hi(), 1, MPFR_RNDU);
    mpfr_clears(pi_lo, pi_hi, th_lo, th_hi, m, r, c, static_cast<mpfr_ptr>(nullptr));
    mpfr_clear(qa);
    return out;
}

inline bool certainly_less(const Interval& a, const Interval& b) {
    return mpfr_cmp(a.hi(), b.lo()) < 0;
}

inline bool overlap(const Interval& a, const Interval& b) {
    return mpfr_cmp(a.hi(), b.lo()) >= 0 && mpfr_cmp(b.hi(), a.lo()) >= 0;
}

// evaluate an integer polynomial on an interval (Horner, outward at every step)
inline Interval eval(const IntPoly& f, const Interval& x) {
    Interval r(x.prec());
    for (std::size_t i = f.c.size(); i-- > 0;) r = r * x + Interval::exact(f.c[i], x.prec());
    return r;
}

} // namespace uniteq
