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

#ifndef CRR_OPUC_HPP
#define CRR_OPUC_HPP

// Orthogonal polynomials Phi_n(b; .) on the unit circle for the measure
//
//   d mu^(b) = [4^l |Gamma(b+1)|^2 / Gamma(2l+1)] (1/2pi)
//              e^{(pi-theta) eta} (sin^2(theta/2))^l dtheta,
//
// their para-orthogonal combinations R_n(b; .), the Christoffel-Darboux
// kernel, and the Cayley transform linking the circle to the CRR family on
// the real line.

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

/// Dense complex polynomial, coeffs[k] multiplies z^k.
struct ComplexPolynomial {
    std::vector<cplx> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    cplx eval(cplx z) const {
        cplx r = 0.0;
        for (int k = degree(); k >= 0; --k) r = r * z + coeffs[k];
        return r;
    }
};

/// zeta = (x + i)/(x - i), mapping the real line onto the cut circle.
inline cplx cayley_to_circle(double x) {
    return cplx(x, 1.0) / cplx(x, -1.0);
}

/// Inverse map x = i (zeta+1)/(zeta-1); requires |zeta| = 1 and zeta != 1.
inline double cayley_to_line(cplx zeta) {
    if (std::fabs(std::abs(zeta) - 1.0) > 1e-12)
        throw std::domain_error("cayley_to_line: zeta must lie on the unit circle");
    if (std::abs(zeta - 1.0) < 1e-14)
        throw std::domain_error("cayley_to_line: pole at zeta = 1 (x = infinity)");
    return (cplx(0.0, 1.0) * (zeta + 1.0) / (zeta - 1.0)).real();
}

/// Monic OPUC value Phi_n(b; z); defined for lambda > -1/2.
inline cplx phi_eval(const ParamB& b, int n, cplx z) {
    require_lambda_gt(b, -0.5, "phi_eval");
    if (n < 0) throw std::invalid_argument("phi_eval: n must be >= 0");
    using detail::cdd;
    using detail::dd;

    const cdd one_minus_z = cdd(1.0, 0.0) - cdd(z);
    const cdd bp1(b.lambda + 1.0, b.eta);
    cdd term(1.0, 0.0);
    cdd sum = term;
    const dd c0 = dd(2.0 * b.lambda) + dd(1.0);  // b + conj(b) + 1, exact
    for (int k = 0; k < n; ++k) {
        cdd num = cdd(static_cast<double>(k - n), 0.0) * (bp1 + cdd(static_cast<double>(k), 0.0));
        dd den = (c0 + dd(static_cast<double>(k))) * dd(static_cast<double>(k + 1));
        term = term * num * one_minus_z / den;
        sum = sum + term;
    }
    cdd pref(1.0, 0.0);
    for (int k = 0; k < n; ++k)
        pref = pref * (cdd(2.0 * b.lambda + 1.0 + k, 0.0) / (bp1 + cdd(static_cast<double>(k), 0.0)));
    return (pref * sum).to_complex();
}

/// Coefficients of Phi_n(b; .) in the monomial basis.
inline ComplexPolynomial phi_coeffs(const ParamB& b, int n) {
    require_lambda_gt(b, -0.5, "phi_coeffs");
    if (n < 0) throw std::invalid_argument("phi_coeffs: n must be >= 0");
    const cplx bp1 = b.value() + 1.0;
    // accumulate pref * sum_k t_k (1-z)^k
    std::vector<cplx> acc(n + 1, 0.0);
    std::vector<cplx> pow1mz = {1.0};  // (1-z)^k
    cplx t = 1.0;
    for (int k = 0; k <= n; ++k) {
        for (int j = 0; j <= k; ++j) acc[j] += t * pow1mz[j];
        if (k == n) break;
        t *= cplx(static_cast<double>(k - n), 0.0) * (bp1 + static_cast<double>(k)) /
             ((2.0 * b.lambda + 1.0 + k) * (k + 1.0));
        std::vector<cplx> next(k + 2, 0.0);
        for (int j = 0; j <= k; ++j) {
            next[j] += pow1mz[j];
            next[j + 1] -= pow1mz[j];
        }
        pow1mz = std::move(next);
    }
    cplx pref = 1.0;
    for (int k = 0; k < n; ++k) pref *= (2.0 * b.lambda + 1.0 + k) / (bp1 + static_cast<double>(k));
    for (cplx& c : acc) c *= pref;
    return {acc};
}

/// Squared norm of Phi_n under mu^(b): (2l+1)_n n! / |(b+1)_n|^2.
inline double phi_norm_sq(const ParamB& b, int n) {
    require_lambda_gt(b, -0.5, "phi_norm_sq");
    double num = 1.0;
    for (int k = 1; k <= n; ++k) num *= (2.0 * b.lambda + k) * k;
    return num / std::norm(pochhammer(b.value() + 1.0, n));
}

/// Reversed-conjugate polynomial: coefficient k of the output is the
/// conjugate of coefficient (len-1-k) of the input.
inline ComplexPolynomial poly_star(const ComplexPolynomial& p) {
    const size_t len = p.coeffs.size();
    std::vector<cplx> out(len);
    for (size_t k = 0; k < len; ++k) out[k] = std::conj(p.coeffs[len - 1 - k]);
    return {out};
}

/// Christoffel-Darboux kernel
///   K_n(b; z, w) = [conj(phi_{n+1}(w)) phi_{n+1}(z)
///                   - conj(phi*_{n+1}(w)) phi*_{n+1}(z)] / (conj(w) z - 1)
/// with phi_n the orthonormal polynomials (positive real scaling).
inline cplx cd_kernel(const ParamB& b, int n, cplx z, cplx w) {
    require_lambda_gt(b, -0.5, "cd_kernel");
    const cplx den = std::conj(w) * z - 1.0;
    if (std::abs(den) < 1e-14)
        throw std::domain_error("cd_kernel: singular denominator, conj(w)*z too close to 1");
    const double inv_norm = 1.0 / std::sqrt(phi_norm_sq(b, n + 1));
    const ComplexPolynomial star = poly_star(phi_coeffs(b, n + 1));
    const cplx phi_z = phi_eval(b, n + 1, z) * inv_norm;
    const cplx phi_w = phi_eval(b, n + 1, w) * inv_norm;
    const cplx star_z = star.eval(z) * inv_norm;
    const cplx star_w = star.eval(w) * inv_norm;
    return (std::conj(phi_w) * phi_z - std::conj(star_w) * star_z) / den;
}

enum class RnMethod { recurrence, hypergeometric, para };

namespace detail {

inline cplx para_r_recurrence(const ParamB& b, int n, cplx z) {
    if (n == 0) return 1.0;
    const cplx i_unit(0.0, 1.0);
    cplx rm1 = 1.0;
    cplx c1 = i_unit * recurrence_c(b, 1);
    cplx r = (1.0 + c1) * z + (1.0 - c1);
    for (int k = 1; k < n; ++k) {
        cplx ck = i_unit * recurrence_c(b, k + 1);
        cplx next = ((1.0 + ck) * z + (1.0 - ck)) * r -
                    4.0 * recurrence_d(b.lambda, k + 1) * z * rm1;
        rm1 = r;
        r = next;
    }
    return r;
}

inline cplx para_r_hypergeometric(const ParamB& b, int n, cplx z) {
    using detail::cdd;
    using detail::dd;
    const cdd one_minus_z = cdd(1.0, 0.0) - cdd(z);
    const cdd bb(b.lambda, b.eta);
    cdd term(1.0, 0.0);
    cdd sum = term;
    const dd two_lambda(2.0 * b.lambda);
    for (int k = 0; k < n; ++k) {
        cdd num = cdd(static_cast<double>(k - n), 0.0) * (bb + cdd(static_cast<double>(k), 0.0));
        dd den = (two_lambda + dd(static_cast<double>(k))) * dd(static_cast<double>(k + 1));
        term = term * num * one_minus_z / den;
        sum = sum + term;
    }
    dd pref(1.0);
    for (int k = 0; k < n; ++k) pref = pref * dd((2.0 * b.lambda + k) / (b.lambda + k));
    return (sum * pref).to_complex();
}

inline cplx para_r_combination(const ParamB& b, int n, cplx z) {
    if (n == 0) return 1.0;
    const cplx tau = pochhammer(b.conj_value(), n) / pochhammer(b.value(), n);
    const cplx scale = pochhammer(b.value(), n) / pochhammer(cplx(b.lambda, 0.0), n);
    const cplx phi = phi_eval(b, n - 1, z);
    const cplx phi_star = poly_star(phi_coeffs(b, n - 1)).eval(z);
    return scale * (z * phi + tau * phi_star);
}

}  // namespace detail

/// Para-orthogonal polynomial R_n(b; z) by one of three equivalent routes:
/// the circle three-term recurrence, the terminating 2F1 form, or the
/// combination z Phi_{n-1} + tau Phi*_{n-1}.
inline cplx para_r(const ParamB& b, int n, cplx z, RnMethod method = RnMethod::recurrence) {
    require_lambda_gt(b, 0.0, "para_r");
    if (n < 0) throw std::invalid_argument("para_r: n must be >= 0");
    switch (method) {
        case RnMethod::recurrence: return detail::para_r_recurrence(b, n, z);
        case RnMethod::hypergeometric: return detail::para_r_hypergeometric(b, n, z);
        case RnMethod::para: return detail::para_r_combination(b, n, z);
    }
    throw std::invalid_argument("para_r: unknown method");
}

/// Coefficients of R_n(b; .) from the circle recurrence.
inline ComplexPolynomial para_r_coeffs(const ParamB& b, int n) {
    require_lambda_gt(b, 0.0, "para_r_coeffs");
    if (n < 0) throw std::invalid_argument("para_r_coeffs: n must be >= 0");
    std::vector<cplx> rm1 = {1.0};
    if (n == 0) return {rm1};
    const cplx i_unit(0.0, 1.0);
    cplx c1 = i_unit * recurrence_c(b, 1);
    std::vector<cplx> r = {1.0 - c1, 1.0 + c1};
    for (int k = 1; k < n; ++k) {
        const cplx ck = i_unit * recurrence_c(b, k + 1);
        const double dk = 4.0 * recurrence_d(b.lambda, k + 1);
        std::vector<cplx> next(k + 2, 0.0);
        for (int j = 0; j <= k; ++j) {
            next[j + 1] += (1.0 + ck) * r[j];
            next[j] += (1.0 - ck) * r[j];
        }
        for (int j = 0; j <= k - 1; ++j) next[j + 1] -= dk * rm1[j];
        rm1 = std::move(r);
        r = std::move(next);
    }
    return {r};
}

/// Residual of the kernel-polynomial identity
///   R_n(b; z) = xi_n K_n(b-1; z, 1),  xi_n = 2^n prod_{j<=n} (1 - L_j) = n!/(l)_n,
/// normalized by max(1, |R_n|).  Requires lambda > 1/2.  The 2^n factor
/// makes the identity exact for the orthonormal-kernel normalization used
/// here; it checks out against K_n(1,1) = sum |phi_k(1)|^2.
inline double kernel_relation_residual(const ParamB& b, int n, cplx z) {
    require_lambda_gt(b, 0.5, "kernel_relation_residual");
    const cplx r = para_r(b, n, z, RnMethod::recurrence);
    double xi = 1.0;
    for (int j = 1; j <= n; ++j) xi *= j / (b.lambda + j - 1);
    const ParamB bm1{b.lambda - 1.0, b.eta};
    const cplx k = cd_kernel(bm1, n, z, 1.0);
    return std::abs(r - xi * k) / std::max(1.0, std::abs(r));
}

/// Normalization constant of d mu^(b): 4^l |Gamma(b+1)|^2 / (Gamma(2l+1) 2 pi).
inline double measure_normalization(const ParamB& b) {
    require_lambda_gt(b, -0.5, "measure_normalization");
    constexpr double two_pi = 6.28318530717958647693;
    const double log_norm = b.lambda * std::log(4.0) +
                            2.0 * log_gamma(b.value() + 1.0).real() -
                            std::lgamma(2.0 * b.lambda + 1.0);
    return std::exp(log_norm) / two_pi;
}

/// Density of d mu^(b) with respect to dtheta on (0, 2 pi).
inline double measure_density_circle(const ParamB& b, double theta) {
    require_lambda_gt(b, -0.5, "measure_density_circle");
    constexpr double pi = 3.14159265358979323846;
    if (!(theta > 0.0 && theta < 2.0 * pi))
        throw std::domain_error("measure_density_circle: theta must lie strictly in (0, 2 pi)");
    const double s = std::sin(0.5 * theta);
    return measure_normalization(b) * std::exp((pi - theta) * b.eta) *
           std::pow(s, 2.0 * b.lambda);
}

/// Density nu^(l,eta) on the real line (lambda > 1/2):
///   [2^{2l-1} |Gamma(b)|^2 / Gamma(2l-1)] (e^{eta pi}/2 pi)
///   e^{-2 eta arccot x} (1+x^2)^{-l}.
inline double measure_density_line(const ParamB& b, double x) {
    require_lambda_gt(b, 0.5, "measure_density_line");
    constexpr double pi = 3.14159265358979323846;
    constexpr double two_pi = 6.28318530717958647693;
    const double log_norm = (2.0 * b.lambda - 1.0) * std::log(2.0) +
                            2.0 * log_gamma(b.value()).real() -
                            std::lgamma(2.0 * b.lambda - 1.0) + b.eta * pi;
    return std::exp(log_norm) / two_pi * std::exp(-2.0 * b.eta * arccot(x)) *
           std::pow(1.0 + x * x, -b.lambda);
}

/// First moment of mu^(b-1), with the convention mu_1 = integral of
/// zeta^{-1} d mu^(b-1) = (1 - b)/conj(b); the zeta moment is its conjugate.
inline cplx moment_first(const ParamB& b) {
    require_lambda_gt(b, 0.5, "moment_first");
    return (1.0 - b.value()) / b.conj_value();
}

}  // namespace crr

#endif  // CRR_OPUC_HPP
