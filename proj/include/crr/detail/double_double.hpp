/*
   Copyright 2026 The crrlib authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CRR_DETAIL_DOUBLE_DOUBLE_HPP
#define CRR_DETAIL_DOUBLE_DOUBLE_HPP

// Unevaluated double-double arithmetic (Dekker/Bailey style).  The
// hypergeometric sums in this library cancel by many orders of magnitude
// at moderate arguments; carrying ~32 significant digits through the term
// recurrences keeps the final double-precision results trustworthy.
// Requires round-to-nearest IEEE doubles and a correct std::fma.

#include <cmath>
#include <complex>

namespace crr::detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;
    dd() = default;
    dd(double h) : hi(h) {}
    dd(double h, double l) : hi(h), lo(l) {}
    double to_double() const { return hi + lo; }
};

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    return {s, (a - (s - v)) + (b - v)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline double abs_hi(dd a) { return std::fabs(a.hi); }

/// Complex number with double-double components.
struct cdd {
    dd re, im;
    cdd() = default;
    cdd(dd r, dd i) : re(r), im(i) {}
    cdd(double r, double i = 0.0) : re(r), im(i) {}
    explicit cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
    double abs_estimate() const { return std::hypot(re.hi, im.hi); }
};

inline cdd operator+(cdd a, cdd b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(cdd a, cdd b) { return {a.re - b.re, a.im - b.im}; }

inline cdd operator*(cdd a, cdd b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline cdd operator*(cdd a, dd s) { return {a.re * s, a.im * s}; }

inline cdd conj(cdd a) { return {a.re, -a.im}; }

inline cdd operator/(cdd a, cdd b) {
    dd denom = b.re * b.re + b.im * b.im;
    cdd num = a * conj(b);
    return {num.re / denom, num.im / denom};
}

inline cdd operator/(cdd a, dd s) { return {a.re / s, a.im / s}; }

inline dd dd_ldexp(dd a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

/// exp in double-double precision; |a| up to ~700.
inline dd exp_dd(dd a) {
    static const dd ln2(6.931471805599453094e-01, 2.319046813846299558e-17);
    const double m = std::round(a.hi / ln2.hi);
    const dd r = a - ln2 * dd(m);
    dd sum(1.0), term(1.0);
    for (int k = 1; k <= 48; ++k) {
        term = term * r / dd(static_cast<double>(k));
        sum = sum + term;
        if (std::fabs(term.hi) < 1e-34 * std::fabs(sum.hi)) break;
    }
    return dd_ldexp(sum, static_cast<int>(m));
}

/// sin and cos in double-double precision; |a| up to ~1e6.
inline void sincos_dd(dd a, dd& s, dd& c) {
    static const dd half_pi(1.570796326794896558e+00, 6.123233995736766036e-17);
    const double k = std::round(a.hi / half_pi.hi);
    const long q = ((static_cast<long>(k) % 4) + 4) % 4;
    const dd r = a - half_pi * dd(k);
    const dd r2 = r * r;
    dd s0 = r, st = r;
    for (int n = 1; n <= 30; ++n) {
        st = -(st * r2) / dd(static_cast<double>(2 * n) * (2 * n + 1));
        s0 = s0 + st;
        if (std::fabs(st.hi) < 1e-35) break;
    }
    dd c0(1.0), ct(1.0);
    for (int n = 1; n <= 30; ++n) {
        ct = -(ct * r2) / dd(static_cast<double>(2 * n - 1) * (2 * n));
        c0 = c0 + ct;
        if (std::fabs(ct.hi) < 1e-35) break;
    }
    switch (q) {
        case 0: s = s0; c = c0; break;
        case 1: s = c0; c = -s0; break;
        case 2: s = -s0; c = -c0; break;
        default: s = -c0; c = s0; break;
    }
}

}  // namespace crr::detail

#endif  // CRR_DETAIL_DOUBLE_DOUBLE_HPP
