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

#ifndef CRR_POLY_CORE_HPP
#define CRR_POLY_CORE_HPP

// Complementary Romanovski-Routh (CRR) polynomials P_n(b; x), b = lambda+i*eta,
// lambda > 0.  Two independent evaluation routes are provided:
//
//   * the three-term recurrence
//       P_{n+1} = (x - c_{n+1}) P_n - d_{n+1} (x^2+1) P_{n-1},
//       P_0 = 1, P_1 = x - eta/lambda,
//   * the terminating hypergeometric sum
//       P_n = ((x-i)^n / 2^n) ((2l)_n/(l)_n) 2F1(-n, b; b+conj(b); -2i/(x-i)),
//
// plus coefficient construction, the derivative identity
// P_n' = n (1 - ell_n) P_{n-1}, and the second-order ODE residual.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "crr/chain_seq.hpp"
#include "crr/detail/double_double.hpp"
#include "crr/types.hpp"

namespace crr {

/// Dense real polynomial, coeffs[k] multiplies x^k.
struct RealPolynomial {
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    double eval(double x) const {
        double r = 0.0;
        for (int k = degree(); k >= 0; --k) r = r * x + coeffs[k];
        return r;
    }

    cplx eval(cplx x) const {
        cplx r = 0.0;
        for (int k = degree(); k >= 0; --k) r = r * x + coeffs[k];
        return r;
    }

    RealPolynomial derivative() const {
        if (coeffs.size() <= 1) return {{0.0}};
        std::vector<double> dc(coeffs.size() - 1);
        for (size_t k = 1; k < coeffs.size(); ++k) dc[k - 1] = k * coeffs[k];
        return {dc};
    }
};

namespace detail {

template <class T>
T crr_recurrence(const ParamB& b, int n, T x) {
    if (n == 0) return T(1.0);
    T pm1 = T(1.0);
    T p = x - recurrence_c(b, 1);
    for (int k = 1; k < n; ++k) {
        T next = (x - recurrence_c(b, k + 1)) * p -
                 recurrence_d(b.lambda, k + 1) * (x * x + T(1.0)) * pm1;
        pm1 = p;
        p = next;
    }
    return p;
}

}  // namespace detail

/// P_n(b; x) by forward recurrence.
inline double eval_recurrence(const ParamB& b, int n, double x) {
    require_lambda_gt(b, 0.0, "eval_recurrence");
    if (n < 0) throw std::invalid_argument("eval_recurrence: n must be >= 0");
    return detail::crr_recurrence<double>(b, n, x);
}

/// Same recurrence continued to complex argument.
inline cplx eval_recurrence(const ParamB& b, int n, cplx x) {
    require_lambda_gt(b, 0.0, "eval_recurrence");
    if (n < 0) throw std::invalid_argument("eval_recurrence: n must be >= 0");
    return detail::crr_recurrence<cplx>(b, n, x);
}

/// Leading coefficient of P_n: (2 lambda)_n / (2^n (lambda)_n) > 0.
inline double leading_coeff(const ParamB& b, int n) {
    require_lambda_gt(b, 0.0, "leading_coeff");
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= (2.0 * b.lambda + k) / (2.0 * (b.lambda + k));
    return p;
}

/// P_n(b; x) through the terminating 2F1 sum, evaluated in double-double
/// complex arithmetic (the sum cancels heavily near x = 0 for larger n).
/// The mathematical result is real; its imaginary residue, relative to
/// max(1, |P_n|), is reported through imag_residue when given.  A residue
/// above 1e-10 signals precision loss and raises convergence_error.
inline double eval_hypergeometric(const ParamB& b, int n, double x,
                                  double* imag_residue = nullptr) {
    require_lambda_gt(b, 0.0, "eval_hypergeometric");
    if (n < 0) throw std::invalid_argument("eval_hypergeometric: n must be >= 0");
    if (!std::isfinite(x)) throw std::domain_error("eval_hypergeometric: x must be finite");
    using detail::cdd;
    using detail::dd;

    const cdd x_minus_i(x, -1.0);
    const cdd zeta = cdd(0.0, -2.0) / x_minus_i;
    const cdd bb(b.lambda, b.eta);

    cdd term(1.0, 0.0);
    cdd sum = term;
    const dd two_lambda(2.0 * b.lambda);  // exact: doubling is exact
    for (int k = 0; k < n; ++k) {
        // t_{k+1}/t_k = (-n+k)(b+k) zeta / ((2 lambda + k)(k+1)); the
        // denominator parameter must match b + conj(b) to the last bit or
        // the imaginary parts stop cancelling
        cdd num = cdd(static_cast<double>(k - n), 0.0) * (bb + cdd(static_cast<double>(k), 0.0));
        dd den = (two_lambda + dd(static_cast<double>(k))) * dd(static_cast<double>(k + 1));
        term = term * num * zeta / den;
        sum = sum + term;
    }

    cdd pref(1.0, 0.0);
    for (int k = 0; k < n; ++k)
        pref = pref * x_minus_i * dd(0.5) * dd((2.0 * b.lambda + k) / (b.lambda + k));

    cplx value = (pref * sum).to_complex();
    double residue = std::fabs(value.imag()) / std::max(1.0, std::abs(value));
    if (imag_residue) *imag_residue = residue;
    if (residue > 1e-10)
        throw convergence_error("eval_hypergeometric: imaginary residue above 1e-10");
    return value.real();
}

/// Coefficients of P_n(b; .) built by running the recurrence on
/// coefficient vectors.
inline RealPolynomial poly_coeffs(const ParamB& b, int n) {
    require_lambda_gt(b, 0.0, "poly_coeffs");
    if (n < 0) throw std::invalid_argument("poly_coeffs: n must be >= 0");
    std::vector<double> pm1 = {1.0};
    if (n == 0) return {pm1};
    std::vector<double> p = {-recurrence_c(b, 1), 1.0};
    for (int k = 1; k < n; ++k) {
        const double c = recurrence_c(b, k + 1);
        const double d = recurrence_d(b.lambda, k + 1);
        std::vector<double> next(k + 2, 0.0);
        for (int j = 0; j <= k; ++j) {
            next[j + 1] += p[j];
            next[j] -= c * p[j];
        }
        for (int j = 0; j <= k - 1; ++j) {
            next[j + 2] -= d * pm1[j];
            next[j] -= d * pm1[j];
        }
        pm1 = std::move(p);
        p = std::move(next);
    }
    return {p};
}

/// Monic polynomials: P-hat_n = (2^n (lambda)_n / (2 lambda)_n) P_n.
inline RealPolynomial monic_coeffs(const ParamB& b, int n) {
    RealPolynomial p = poly_coeffs(b, n);
    const double scale = 1.0 / leading_coeff(b, n);
    for (double& c : p.coeffs) c *= scale;
    p.coeffs[n] = 1.0;  // exact by construction
    return p;
}

inline double monic_eval(const ParamB& b, int n, double x) {
    return eval_recurrence(b, n, x) / leading_coeff(b, n);
}

inline cplx monic_eval(const ParamB& b, int n, cplx x) {
    return eval_recurrence(b, n, x) / leading_coeff(b, n);
}

/// d/dx P_n = n (1 - ell_n) P_{n-1} with 1 - ell_n = (2l+n-1)/(2(l+n-1)).
/// For n = 0 the derivative of the constant is returned as 0.
inline double derivative_eval(const ParamB& b, int n, double x) {
    require_lambda_gt(b, 0.0, "derivative_eval");
    if (n == 0) return 0.0;
    const double one_minus_ell = (2.0 * b.lambda + n - 1) / (2.0 * (b.lambda + n - 1));
    return n * one_minus_ell * eval_recurrence(b, n - 1, x);
}

inline cplx derivative_eval(const ParamB& b, int n, cplx x) {
    require_lambda_gt(b, 0.0, "derivative_eval");
    if (n == 0) return 0.0;
    const double one_minus_ell = (2.0 * b.lambda + n - 1) / (2.0 * (b.lambda + n - 1));
    return n * one_minus_ell * eval_recurrence(b, n - 1, x);
}

/// Left-hand side of the defining ODE,
///   (x^2+1) P_n'' - 2[(l+n-1)x - eta] P_n' + n(n-1+2l) P_n,
/// with both derivatives taken through the derivative identity.
/// Mathematically zero for every n >= 1.
inline double ode_residual(const ParamB& b, int n, double x) {
    require_lambda_gt(b, 0.0, "ode_residual");
    if (n < 1) throw std::invalid_argument("ode_residual: n must be >= 1");
    const double p = eval_recurrence(b, n, x);
    const double dp = derivative_eval(b, n, x);
    double ddp = 0.0;
    if (n >= 2) {
        const double f_n = n * (2.0 * b.lambda + n - 1) / (2.0 * (b.lambda + n - 1));
        const double f_nm1 = (n - 1) * (2.0 * b.lambda + n - 2) / (2.0 * (b.lambda + n - 2));
        ddp = f_n * f_nm1 * eval_recurrence(b, n - 2, x);
    }
    const double A = x * x + 1.0;
    const double B = (b.lambda + n - 1) * x - b.eta;
    const double C = n * (n - 1 + 2.0 * b.lambda);
    return A * ddp - 2.0 * B * dp + C * p;
}

/// Scaled values S_n(x) = P_n(b; x) / (x^2+1)^{n/2}, bounded uniformly in x.
/// The recurrence for S_n has coefficients (x - c)/sqrt(x^2+1) in [-1-|c|, 1+|c|],
/// so S_n never overflows even for huge |x|.
inline double scaled_eval(const ParamB& b, int n, double x) {
    require_lambda_gt(b, 0.0, "scaled_eval");
    if (n == 0) return 1.0;
    const double r = 1.0 / std::sqrt(x * x + 1.0);
    double sm1 = 1.0;
    double s = (x - recurrence_c(b, 1)) * r;
    for (int k = 1; k < n; ++k) {
        double next = (x - recurrence_c(b, k + 1)) * r * s -
                      recurrence_d(b.lambda, k + 1) * sm1;
        sm1 = s;
        s = next;
    }
    return s;
}

/// S_n expressed through the circle variable: with x = cot(theta/2) the
/// recurrence multiplier becomes co - c*si where co = cos(theta/2),
/// si = sin(theta/2).  Taking (co, si) directly avoids forming cot at all,
/// which matters for quadrature nodes exponentially close to theta = 0.
inline double scaled_eval_circle(const ParamB& b, int n, double co, double si) {
    require_lambda_gt(b, 0.0, "scaled_eval_circle");
    if (n == 0) return 1.0;
    double sm1 = 1.0;
    double s = co - recurrence_c(b, 1) * si;
    for (int k = 1; k < n; ++k) {
        double next = (co - recurrence_c(b, k + 1) * si) * s -
                      recurrence_d(b.lambda, k + 1) * sm1;
        sm1 = s;
        s = next;
    }
    return s;
}

}  // namespace crr

#endif  // CRR_POLY_CORE_HPP
