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

#ifndef CRR_COULOMB_HPP
#define CRR_COULOMB_HPP

// Extended regular Coulomb wave machinery built on Kummer's 1F1:
//
//   N(b; w) = e^{-iw} 1F1(b; b+conj(b); 2iw)        (real for real w)
//   M(b; w) = C(b) w^lambda N(b; w),  C(b) = 2^{l-1} e^{pi eta/2} |Gamma(b)|/Gamma(2l)
//   F_L(eta, w) = M(L+1-i eta; w)                    (regular Coulomb waves)
//   N(l; w)  ~ Bessel J_{l-1/2}                      (eta = 0)
//
// plus the generating-function identities that expand these functions in
// the monic CRR polynomials, and the trigonometric product expansions.
//
// All infinite and terminating hypergeometric sums run in double-double
// arithmetic; the alternating terms cancel by many orders of magnitude at
// desk-scale arguments.  Direct summation is used throughout, so |w| is
// capped at 20; no asymptotic continuation is attempted beyond it.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "crr/chain_seq.hpp"
#include "crr/detail/double_double.hpp"
#include "crr/gamma.hpp"
#include "crr/poly_core.hpp"
#include "crr/types.hpp"

namespace crr {

namespace detail {

inline cdd kummer_1f1_cdd(cplx a, cplx c, cplx z, const SeriesControl& ctl) {
    if (is_nonpositive_integer(c))
        throw std::domain_error("kummer_1f1: pole, c is a non-positive integer");
    const cdd aa(a), cc(c), zz(z);
    cdd term(1.0, 0.0);
    cdd sum = term;
    int quiet = 0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        const cdd kk(static_cast<double>(k), 0.0);
        term = term * (aa + kk) * zz / ((cc + kk) * dd(static_cast<double>(k + 1)));
        sum = sum + term;
        const double tmag = term.abs_estimate();
        if (tmag <= std::max(ctl.rel_tol * sum.abs_estimate(), ctl.abs_floor)) {
            if (++quiet >= 3) return sum;
        } else {
            quiet = 0;
        }
    }
    throw convergence_error("kummer_1f1: series did not converge within max_terms");
}

}  // namespace detail

/// Kummer's confluent hypergeometric function 1F1(a; c; z) by direct
/// series summation with term-ratio updates.
inline cplx kummer_1f1(cplx a, cplx c, cplx z, const SeriesControl& ctl = {}) {
    return detail::kummer_1f1_cdd(a, c, z, ctl).to_complex();
}

/// N(b; w) = e^{-iw} 1F1(b; b + conj(b); 2iw).  Real for real w by the
/// Kummer reflection; the imaginary residue is checked against
/// 1e-10 * max(1, |N|) and discarded.
inline double ercw_n(const ParamB& b, double w, const SeriesControl& ctl = {}) {
    require_lambda_gt(b, 0.0, "ercw_n");
    if (std::fabs(w) > 20.0)
        throw std::domain_error("ercw_n: |w| > 20 is outside the direct-series range");
    const detail::cdd series =
        detail::kummer_1f1_cdd(b.value(), 2.0 * b.lambda, cplx(0.0, 2.0 * w), ctl);
    const detail::cdd rot(cplx(std::cos(w), -std::sin(w)));
    const cplx value = (rot * series).to_complex();
    if (std::fabs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value)))
        throw convergence_error("ercw_n: imaginary residue above tolerance");
    return value.real();
}

/// Gamow-Sommerfeld type constant C(b) = 2^{l-1} e^{pi eta/2} |Gamma(b)| / Gamma(2l).
inline double gamow_factor(const ParamB& b) {
    require_lambda_gt(b, 0.0, "gamow_factor");
    constexpr double pi = 3.14159265358979323846;
    const double lg = (b.lambda - 1.0) * std::log(2.0) + 0.5 * pi * b.eta +
                      log_gamma(b.value()).real() - std::lgamma(2.0 * b.lambda);
    return std::exp(lg);
}

/// M(b; w) = C(b) w^lambda N(b; w) for w > 0.
inline double ercw_m(const ParamB& b, double w, const SeriesControl& ctl = {}) {
    require_lambda_gt(b, 0.0, "ercw_m");
    if (!(w > 0.0)) throw std::domain_error("ercw_m: requires w > 0 (real power w^lambda)");
    return gamow_factor(b) * std::pow(w, b.lambda) * ercw_n(b, w, ctl);
}

/// Regular Coulomb wave function F_L(eta, w) = M(L+1-i eta; w).
inline double coulomb_f(int L, double eta, double w, const SeriesControl& ctl = {}) {
    if (L < 0) throw std::invalid_argument("coulomb_f: L must be >= 0");
    return ercw_m(ParamB{static_cast<double>(L + 1), -eta}, w, ctl);
}

/// Residual of F'' + [1 - 2 eta/w - L(L+1)/w^2] F = 0, normalized by
/// max(1, |F|).  F'' uses the five-point fourth-order stencil; the step is
/// sized for second derivatives, h ~ eps^{1/6}.
inline double coulomb_ode_residual(int L, double eta, double w, const SeriesControl& ctl = {}) {
    if (!(w > 0.0)) throw std::domain_error("coulomb_ode_residual: requires w > 0");
    double h = 2.4e-3 * std::sqrt(std::max(1.0, w));  // ~eps^{1/6} scaled
    h = std::min(h, 0.2 * w);
    const double f0 = coulomb_f(L, eta, w - 2.0 * h, ctl);
    const double f1 = coulomb_f(L, eta, w - h, ctl);
    const double f2 = coulomb_f(L, eta, w, ctl);
    const double f3 = coulomb_f(L, eta, w + h, ctl);
    const double f4 = coulomb_f(L, eta, w + 2.0 * h, ctl);
    const double second = (-f0 + 16.0 * f1 - 30.0 * f2 + 16.0 * f3 - f4) / (12.0 * h * h);
    const double resid = second + (1.0 - 2.0 * eta / w - L * (L + 1.0) / (w * w)) * f2;
    return std::fabs(resid) / std::max(1.0, std::fabs(f2));
}

/// Residual of the L three-term recurrence (valid L >= 1),
///   F_{L+1} = (2L+1)/(L |L+1+i eta|) [L(L+1)/w + eta] F_L
///             - (L+1)|L+i eta| / (L |L+1+i eta|) F_{L-1},
/// normalized by max(1, |F_{L+1}|).
inline double powel_recurrence_residual(int L, double eta, double w,
                                        const SeriesControl& ctl = {}) {
    if (L < 1) throw std::invalid_argument("powel_recurrence_residual: L must be >= 1");
    const double f_lm1 = coulomb_f(L - 1, eta, w, ctl);
    const double f_l = coulomb_f(L, eta, w, ctl);
    const double f_lp1 = coulomb_f(L + 1, eta, w, ctl);
    const double mod_lp1 = std::hypot(L + 1.0, eta);
    const double mod_l = std::hypot(static_cast<double>(L), eta);
    const double rhs = (2.0 * L + 1.0) / (L * mod_lp1) * (L * (L + 1.0) / w + eta) * f_l -
                       (L + 1.0) * mod_l / (L * mod_lp1) * f_lm1;
    return std::fabs(f_lp1 - rhs) / std::max(1.0, std::fabs(f_lp1));
}

/// Residual of the shift identity in lambda (holds for lambda > 0),
///   M(b+2; w) = (2l+1)/(l |b+1|) [l(l+1)/w - eta] M(b+1; w)
///               - (l+1)|b| / (l |b+1|) M(b; w),
/// normalized by max(1, |M(b+2; w)|).
inline double lambda_recurrence_residual(const ParamB& b, double w,
                                         const SeriesControl& ctl = {}) {
    require_lambda_gt(b, 0.0, "lambda_recurrence_residual");
    const double l = b.lambda;
    const double m0 = ercw_m(b, w, ctl);
    const double m1 = ercw_m(ParamB{l + 1.0, b.eta}, w, ctl);
    const double m2 = ercw_m(ParamB{l + 2.0, b.eta}, w, ctl);
    const double mod_b = std::hypot(l, b.eta);
    const double mod_bp1 = std::hypot(l + 1.0, b.eta);
    const double rhs = (2.0 * l + 1.0) / (l * mod_bp1) * (l * (l + 1.0) / w - b.eta) * m1 -
                       (l + 1.0) * mod_b / (l * mod_bp1) * m0;
    return std::fabs(m2 - rhs) / std::max(1.0, std::fabs(m2));
}

/// Bessel J_alpha(w) through N(alpha+1/2; w) = Gamma(alpha+1) (w/2)^{-alpha} J_alpha(w).
/// Negative w is meaningful only for integer alpha (by parity).
inline double bessel_j(double alpha, double w, const SeriesControl& ctl = {}) {
    if (!(alpha > -0.5)) throw std::domain_error("bessel_j: requires alpha > -1/2");
    if (w < 0.0) {
        if (alpha == std::floor(alpha)) {
            const int ia = static_cast<int>(alpha);
            return (ia % 2 == 0 ? 1.0 : -1.0) * bessel_j(alpha, -w, ctl);
        }
        throw std::domain_error("bessel_j: w < 0 needs integer alpha");
    }
    if (w == 0.0) return alpha == 0.0 ? 1.0 : 0.0;
    return std::pow(0.5 * w, alpha) / std::tgamma(alpha + 1.0) *
           ercw_n(ParamB{alpha + 0.5, 0.0}, w, ctl);
}

namespace detail {

inline dd appell_series_dd(const ParamB& b, double x, double w, int N) {
    const dd xx(x);
    const dd x2p1 = xx * xx + dd(1.0);
    const dd lam(b.lambda), eta(b.eta), two_lam(2.0 * b.lambda);
    dd sum(0.0);
    dd p_prev(0.0), p(1.0);  // P_{n-1}, P_n
    dd monic(1.0);           // 2^n (l)_n / (2l)_n
    dd wfac(1.0);            // w^n / n!
    for (int n = 0; n <= N; ++n) {
        sum = sum + monic * p * wfac;
        if (n == N) break;
        const dd nn(static_cast<double>(n));
        const dd c = eta / (lam + nn);  // c_{n+1}
        dd next = (xx - c) * p;
        if (n >= 1) {
            // d_{n+1} = n (2l+n-1) / (4 (l+n-1)(l+n))
            const dd d = dd(0.25) * nn * (two_lam + dd(static_cast<double>(n - 1))) /
                         ((lam + dd(static_cast<double>(n - 1))) * (lam + nn));
            next = next - d * x2p1 * p_prev;
        }
        p_prev = p;
        p = next;
        monic = monic * ((dd(2.0) * (lam + nn)) / (two_lam + nn));
        wfac = wfac * (dd(w) / dd(static_cast<double>(n + 1)));
    }
    return sum;
}

}  // namespace detail

/// Partial sum  sum_{n<=N} Phat_n(b; x) w^n / n!  of the exponential
/// generating function of the monic polynomials.  The early terms can sit
/// orders of magnitude above the limit, so the recurrence and the sum run
/// in double-double to keep the tail meaningful at the 1e-10 scale.
inline double appell_series(const ParamB& b, double x, double w, int N) {
    require_lambda_gt(b, 0.0, "appell_series");
    if (N < 0) throw std::invalid_argument("appell_series: N must be >= 0");
    return detail::appell_series_dd(b, x, w, N).to_double();
}

/// |e^{xw} N(b; w) - appell_series(b, x, w, N)|, formed in double-double:
/// both sides can exceed 1e5 while the difference of interest is ~1e-10.
inline double appell_genfunc_residual(const ParamB& b, double x, double w, int N,
                                      const SeriesControl& ctl = {}) {
    require_lambda_gt(b, 0.0, "appell_genfunc_residual");
    if (N < 0) throw std::invalid_argument("appell_genfunc_residual: N must be >= 0");
    if (std::fabs(w) > 20.0)
        throw std::domain_error("appell_genfunc_residual: |w| > 20 outside series range");
    using detail::dd;
    const detail::cdd series =
        detail::kummer_1f1_cdd(b.value(), 2.0 * b.lambda, cplx(0.0, 2.0 * w), ctl);
    dd sw, cw;
    detail::sincos_dd(dd(w), sw, cw);
    const dd n_value = cw * series.re + sw * series.im;  // Re(e^{-iw} 1F1)
    const dd lhs = detail::exp_dd(dd(x) * dd(w)) * n_value;
    const dd rhs = detail::appell_series_dd(b, x, w, N);
    return std::fabs((lhs - rhs).to_double());
}

/// Closed form of the Weber-type generating function,
///   e^{2 eta arccot x} / ([(xw-1)^2 + w^2]^l e^{2 eta arccot(x - w(x^2+1))}),
/// valid in the window |w| < 1/(2(1+x^2)) where the arccot branch is safe.
inline double weber_genfunc_lhs(const ParamB& b, double x, double w) {
    require_lambda_gt(b, 0.0, "weber_genfunc_lhs");
    if (!(std::fabs(w) < 0.5 / (1.0 + x * x)))
        throw std::domain_error("weber_genfunc_lhs: w outside validity window |w| < 1/(2(1+x^2))");
    const double shifted = x - w * (x * x + 1.0);
    const double base = (x * w - 1.0) * (x * w - 1.0) + w * w;
    return std::exp(2.0 * b.eta * arccot(x)) /
           (std::pow(base, b.lambda) * std::exp(2.0 * b.eta * arccot(shifted)));
}

/// Partial sum  sum_{n<=N} (2l)_n Phat_n(b; x) w^n / n!  matching the Weber
/// closed form inside its window.  (2l)_n Phat_n = 2^n (l)_n P_n.
inline double weber_series(const ParamB& b, double x, double w, int N) {
    require_lambda_gt(b, 0.0, "weber_series");
    double sum = 0.0;
    double p_prev = 0.0, p = 1.0;
    double fac = 1.0;   // 2^n (l)_n
    double wfac = 1.0;  // w^n / n!
    for (int n = 0; n <= N; ++n) {
        sum += fac * p * wfac;
        if (n == N) break;
        const double next = (x - recurrence_c(b, n + 1)) * p -
                            (n >= 1 ? recurrence_d(b.lambda, n + 1) * (x * x + 1.0) * p_prev
                                    : 0.0);
        p_prev = p;
        p = next;
        fac *= 2.0 * (b.lambda + n);
        wfac *= w / (n + 1.0);
    }
    return sum;
}

/// Coefficients A_{L+1}^L, ..., A_{L+1+K}^L of the small-w expansion
///   F_L(eta, w) = C_L(eta) w^{L+1} sum_k A_k^L(eta) w^{k-L-1},
/// from the closed form A_{k+L+1}^L = ((-i)^k / k!) 2F1(-k, L+1-i eta; 2L+2; 2).
/// Each value is real; the imaginary residue is asserted below 1e-12
/// relative and discarded.
inline std::vector<double> a_coeffs(int L, double eta, int K) {
    if (L < 0) throw std::invalid_argument("a_coeffs: L must be >= 0");
    if (K < 0) throw std::invalid_argument("a_coeffs: K must be >= 0");
    using detail::cdd;
    using detail::dd;
    const cdd bb(L + 1.0, -eta);
    std::vector<double> out(K + 1);
    cdd phase(1.0, 0.0);  // (-i)^k
    dd inv_fact(1.0);     // 1/k!
    for (int k = 0; k <= K; ++k) {
        cdd term(1.0, 0.0);
        cdd sum = term;
        double term_max = 1.0;
        for (int j = 0; j < k; ++j) {
            const cdd num = cdd(static_cast<double>(j - k), 0.0) *
                            (bb + cdd(static_cast<double>(j), 0.0)) * dd(2.0);
            const dd den = dd(2.0 * L + 2.0 + j) * dd(static_cast<double>(j + 1));
            term = term * num / den;
            sum = sum + term;
            term_max = std::max(term_max, term.abs_estimate());
        }
        const cplx val = (phase * sum * inv_fact).to_complex();
        // the attainable absolute accuracy scales with the largest summand
        if (std::fabs(val.imag()) > 1e-12 * std::max(std::abs(val), term_max * inv_fact.hi))
            throw convergence_error("a_coeffs: imaginary residue above tolerance");
        out[k] = val.real();
        phase = phase * cdd(0.0, -1.0);
        inv_fact = inv_fact / dd(static_cast<double>(k + 1));
    }
    return out;
}

/// Real coefficient pair of the trigonometric product expansions
///   cos(w) N(b; w) = sum a_n w^n/n!,
///   sin(w) N(b; w) = w sum b_{n+1}/(n+1) w^n/n!,
/// generated by the 2x2 recurrence
///   a_{n+1} = 2/(2l+n) [ -eta a_n - (l+n) b_n ],
///   b_{n+1} = 2/(2l+n) [ (l+n) a_n - eta b_n ],
/// with a_0 = 1, b_0 = 0.  Equivalently 2 a_n = Phat_n(b;i) + Phat_n(b;-i).
struct SinCosCoeffs {
    std::vector<double> a;
    std::vector<double> b;
};

inline SinCosCoeffs sincos_coeffs(const ParamB& b, int N) {
    require_lambda_gt(b, 0.0, "sincos_coeffs");
    if (N < 0) throw std::invalid_argument("sincos_coeffs: N must be >= 0");
    SinCosCoeffs sc;
    sc.a.assign(N + 1, 0.0);
    sc.b.assign(N + 1, 0.0);
    sc.a[0] = 1.0;
    for (int n = 0; n < N; ++n) {
        const double scale = 2.0 / (2.0 * b.lambda + n);
        const double ln = b.lambda + n;
        sc.a[n + 1] = scale * (-b.eta * sc.a[n] - ln * sc.b[n]);
        sc.b[n + 1] = scale * (ln * sc.a[n] - b.eta * sc.b[n]);
    }
    return sc;
}

enum class TrigKind { cosine, sine, combined };

/// Truncation residual of the cos/sin/combined expansions at order N.
inline double sincos_expansion_residual(const ParamB& b, double w, int N, TrigKind which,
                                        const SeriesControl& ctl = {}) {
    require_lambda_gt(b, 0.0, "sincos_expansion_residual");
    const SinCosCoeffs sc = sincos_coeffs(b, N + 1);
    double sum_cos = 0.0, sum_sin = 0.0;
    double wfac = 1.0;
    for (int n = 0; n <= N; ++n) {
        sum_cos += sc.a[n] * wfac;
        sum_sin += sc.b[n + 1] / (n + 1.0) * wfac;
        wfac *= w / (n + 1.0);
    }
    const double nval = ercw_n(b, w, ctl);
    switch (which) {
        case TrigKind::cosine: return std::fabs(std::cos(w) * nval - sum_cos);
        case TrigKind::sine: return std::fabs(std::sin(w) * nval - w * sum_sin);
        case TrigKind::combined:
            return std::fabs(nval - (sum_cos * std::cos(w) + sum_sin * w * std::sin(w)));
    }
    throw std::invalid_argument("sincos_expansion_residual: unknown kind");
}

/// Closed forms of the surviving parities at eta = 0 (the Bessel case):
///   a_{2n} = (-1)^n 2^{2n} (alpha+1/2)_{2n} / (2 alpha+1)_{2n},
///   b_{2n+1} = (-1)^n 2^{2n} (alpha+3/2)_{2n} / (2 alpha+2)_{2n};
/// odd a's and even b's vanish identically.
struct BesselSinCosCoeffs {
    std::vector<double> a_even;  ///< a_even[j] = a_{2j}
    std::vector<double> b_odd;   ///< b_odd[j]  = b_{2j+1}
};

inline BesselSinCosCoeffs bessel_sincos_coeffs(double alpha, int N) {
    if (!(alpha > -0.5))
        throw std::domain_error("bessel_sincos_coeffs: requires alpha > -1/2");
    if (N < 0) throw std::invalid_argument("bessel_sincos_coeffs: N must be >= 0");
    BesselSinCosCoeffs out;
    double a = 1.0;
    for (int j = 0; 2 * j <= N; ++j) {
        out.a_even.push_back(a);
        a *= -4.0 * (alpha + 0.5 + 2 * j) * (alpha + 1.5 + 2 * j) /
             ((2.0 * alpha + 1.0 + 2 * j) * (2.0 * alpha + 2.0 + 2 * j));
    }
    double bb = 1.0;
    for (int j = 0; 2 * j + 1 <= N; ++j) {
        out.b_odd.push_back(bb);
        bb *= -4.0 * (alpha + 1.5 + 2 * j) * (alpha + 2.5 + 2 * j) /
              ((2.0 * alpha + 2.0 + 2 * j) * (2.0 * alpha + 3.0 + 2 * j));
    }
    return out;
}

}  // namespace crr

#endif  // CRR_COULOMB_HPP
