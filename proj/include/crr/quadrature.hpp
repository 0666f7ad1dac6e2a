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

#ifndef CRR_QUADRATURE_HPP
#define CRR_QUADRATURE_HPP

// Integration on the circle (0, 2pi) with algebraic endpoint singularities
// and on the real line via the substitution x = cot(theta/2).
//
// Endpoint panels use tanh-sinh (double-exponential) nodes, which absorb
// integrable sin(theta/2)^{2 sigma} singularities with sigma > -1/2; the
// interior uses globally adaptive Gauss7/Kronrod15 panels.  Naive composite
// rules are hopeless against Fisher-Hartwig-type weights.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "crr/chain_seq.hpp"
#include "crr/gamma.hpp"
#include "crr/opuc.hpp"
#include "crr/poly_core.hpp"
#include "crr/types.hpp"

namespace crr {

struct QuadratureResult {
    cplx value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

namespace detail {

constexpr double qpi = 3.14159265358979323846;

// Tanh-sinh rule on [a, b].  Node positions are generated as exact
// distances from the endpoints so that integrable singularities at a or b
// are sampled accurately; the outward extension on each side stops when the
// node becomes indistinguishable from the endpoint or its contribution
// drops below the tolerance.
template <class F>
QuadratureResult tanh_sinh_panel(F&& f, double a, double b, double tol, long max_evals) {
    const double half = 0.5 * (b - a);
    const double cut = std::max(tol * 1e-3, 1e-305);
    const int max_level = 9;

    long evals = 0;

    // contribution w*f at parameter u; false = stop extending this side
    auto node_term = [&](double u, cplx& term) -> bool {
        const double t = 0.5 * qpi * std::sinh(std::fabs(u));
        const double delta = half * 2.0 / (std::exp(2.0 * t) + 1.0);
        const double x = (u < 0.0) ? a + delta : b - delta;
        if (x == a || x == b) return false;
        const double ch = std::cosh(t);
        const double w = half * (0.5 * qpi) * std::cosh(u) / (ch * ch);
        if (w == 0.0 || !std::isfinite(w)) return false;
        term = w * cplx(f(x));
        ++evals;
        return true;
    };

    cplx sum = 0.0;            // sum of w*f over nodes, step factored out
    cplx integral = 0.0;
    cplx prev_integral = 0.0;
    double err = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool have_estimate = false;

    for (int level = 0; level <= max_level; ++level) {
        const double h = std::ldexp(1.0, -level);
        cplx new_sum = 0.0;
        cplx term;
        bool level_complete = true;
        if (level == 0) {
            if (node_term(0.0, term)) new_sum += term;
        }
        const int stride = (level == 0) ? 1 : 2;
        for (int side = 0; side < 2; ++side) {
            int low_count = 0;
            for (int k = 1; k <= 4000; k += stride) {
                const double u = (side == 0) ? -k * h : k * h;
                if (!node_term(u, term)) break;
                new_sum += term;
                if (std::abs(term) * h < cut) {
                    if (++low_count >= 2) break;
                } else {
                    low_count = 0;
                }
                if (evals >= max_evals) {
                    level_complete = false;
                    break;
                }
            }
            if (!level_complete) break;
        }
        // an aborted level would corrupt the estimate: keep the last full one
        if (!level_complete && have_estimate) break;
        sum = (level == 0) ? new_sum : sum + new_sum;  // step factor h carries the halving
        prev_integral = integral;
        integral = h * sum;
        have_estimate = true;
        if (level >= 2) {
            err = std::abs(integral - prev_integral);
            if (err <= tol) {
                converged = true;
                break;
            }
        }
        if (!level_complete || evals >= max_evals) break;
    }

    return {integral, err, evals, converged};
}

// Gauss 7 / Kronrod 15 pair on [a, b]; K and G receive the two estimates.
template <class F>
void gk15_rule(F&& f, double a, double b, cplx& kronrod, cplx& gauss) {
    static constexpr double xgk[8] = {
        0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
        0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
    static constexpr double wgk[8] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
    static constexpr double wg[4] = {
        0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const cplx fc(f(mid));
    kronrod = wgk[7] * fc;
    gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const cplx f1(f(mid - half * xgk[j]));
        const cplx f2(f(mid + half * xgk[j]));
        kronrod += wgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += wg[(j - 1) / 2] * (f1 + f2);
    }
    kronrod *= half;
    gauss *= half;
}

// Globally adaptive Gauss-Kronrod: repeatedly bisect the segment with the
// largest error estimate.  Deterministic: ties broken by left endpoint,
// final assembly ordered by position.
template <class F>
QuadratureResult gk_adaptive(F&& f, double a, double b, double tol, long max_evals) {
    struct Seg {
        double a, b, err;
        cplx val;
    };
    auto worse = [](const Seg& s1, const Seg& s2) {
        if (s1.err != s2.err) return s1.err < s2.err;
        return s1.a > s2.a;
    };
    std::priority_queue<Seg, std::vector<Seg>, decltype(worse)> queue(worse);

    long evals = 0;
    auto make_seg = [&](double lo, double hi) {
        cplx k, g;
        gk15_rule(f, lo, hi, k, g);
        evals += 15;
        return Seg{lo, hi, std::abs(k - g), k};
    };

    std::vector<Seg> final_segs;
    queue.push(make_seg(a, b));
    double total_err = queue.top().err;

    while (total_err > tol && evals + 30 <= max_evals && !queue.empty()) {
        Seg s = queue.top();
        queue.pop();
        if (s.b - s.a < 1e-13 * (b - a)) {
            final_segs.push_back(s);  // cannot refine further
            continue;
        }
        const double mid = 0.5 * (s.a + s.b);
        Seg left = make_seg(s.a, mid);
        Seg right = make_seg(mid, s.b);
        total_err += left.err + right.err - s.err;
        queue.push(left);
        queue.push(right);
    }

    while (!queue.empty()) {
        final_segs.push_back(queue.top());
        queue.pop();
    }
    std::sort(final_segs.begin(), final_segs.end(),
              [](const Seg& s1, const Seg& s2) { return s1.a < s2.a; });
    cplx value = 0.0;
    double err = 0.0;
    for (const Seg& s : final_segs) {
        value += s.val;
        err += s.err;
    }
    return {value, err, evals, err <= tol};
}

}  // namespace detail

/// Integral of f over theta in (0, 2pi) where f may carry an integrable
/// algebraic singularity (sin^2(theta/2))^{b_exponent}, b_exponent > -1/2,
/// at the interval ends.  Returns the best estimate with an error estimate
/// and a convergence flag; the flag is false when the evaluation budget ran
/// out before the tolerance was met.
template <class F>
QuadratureResult integrate_circle(F&& f, double b_exponent, double tol = 1e-10,
                                  long max_evals = 200000) {
    if (!(b_exponent > -0.5))
        throw std::domain_error("integrate_circle: b_exponent must be > -1/2 (integrable)");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_circle: tol must be > 0");
    constexpr double two_pi = 2.0 * detail::qpi;
    constexpr double cutpt = 0.5 * detail::qpi;

    QuadratureResult left =
        detail::tanh_sinh_panel(f, 0.0, cutpt, tol / 3.0, max_evals / 4);
    QuadratureResult mid =
        detail::gk_adaptive(f, cutpt, two_pi - cutpt, tol / 3.0, max_evals / 2);
    QuadratureResult right =
        detail::tanh_sinh_panel(f, two_pi - cutpt, two_pi, tol / 3.0, max_evals / 4);

    QuadratureResult r;
    r.value = left.value + mid.value + right.value;
    r.error_estimate = left.error_estimate + mid.error_estimate + right.error_estimate;
    r.evaluations = left.evaluations + mid.evaluations + right.evaluations;
    r.converged = left.converged && mid.converged && right.converged;
    return r;
}

/// Integral of f over the whole real line, for f with algebraic decay at
/// least (1+x^2)^{-lambda}, lambda > 1/2.  Reduces to the circle through
/// x = cot(theta/2), dx = -(1/2) csc^2(theta/2) dtheta.
template <class F>
QuadratureResult integrate_line(F&& f, double tol = 1e-10, long max_evals = 200000) {
    auto g = [&f](double theta) -> cplx {
        const double si = std::sin(0.5 * theta);
        const double co = std::cos(0.5 * theta);
        const double x = co / si;
        return cplx(f(x)) * (0.5 / (si * si));
    };
    return integrate_circle(g, 0.0, tol, max_evals);
}

struct OrthogonalityMatrix {
    std::vector<std::vector<double>> entries;  ///< entries[m][n], m <= n filled
    bool converged = true;
};

/// Entries (m, n), m <= n <= n_max, of the orthogonality integral
///   integral x^m  P_n(b;x) (1+x^2)^{-n} nu^(l,eta)(x) dx.
/// The diagonal reproduces gamma_n, everything above it is zero in exact
/// arithmetic.  Entries below the diagonal are left at zero.
///
/// The integrand is assembled in the circle variable with the polynomial in
/// its scaled form S_n = P_n/(1+x^2)^{n/2}, and the (pi, 2pi) half is folded
/// onto (0, pi], so both measure singularities land at theta = 0 where
/// tanh-sinh nodes can approach arbitrarily closely.
inline OrthogonalityMatrix orthogonality_matrix(const ParamB& b, int n_max,
                                                double tol = 1e-10) {
    require_lambda_gt(b, 0.5, "orthogonality_matrix");
    if (n_max < 0) throw std::invalid_argument("orthogonality_matrix: n_max must be >= 0");
    constexpr double pi = detail::qpi;
    const double lambda = b.lambda;
    const double eta = b.eta;

    const double log_norm = (2.0 * lambda - 1.0) * std::log(2.0) +
                            2.0 * log_gamma(b.value()).real() -
                            std::lgamma(2.0 * lambda - 1.0) + eta * pi;
    const double pref = std::exp(log_norm) / (2.0 * pi) * 0.5;

    OrthogonalityMatrix result;
    result.entries.assign(n_max + 1, std::vector<double>(n_max + 1, 0.0));

    for (int n = 0; n <= n_max; ++n) {
        for (int m = 0; m <= n; ++m) {
            const double sin_exp = n - m + 2.0 * lambda - 2.0;
            auto h = [&](double phi) -> double {
                const double co = std::cos(0.5 * phi);
                const double si = std::sin(0.5 * phi);
                const double direct = ipow(co, m) * std::exp(-eta * phi) *
                                      scaled_eval_circle(b, n, co, si);
                const double folded = ipow(-co, m) * std::exp(-eta * (2.0 * pi - phi)) *
                                      scaled_eval_circle(b, n, -co, si);
                return pref * (direct + folded) * std::pow(si, sin_exp);
            };
            QuadratureResult qleft =
                detail::tanh_sinh_panel(h, 0.0, 0.5 * pi, tol / 2.0, 25000);
            QuadratureResult qright =
                detail::gk_adaptive(h, 0.5 * pi, pi, tol / 2.0, 25000);
            result.entries[m][n] = (qleft.value + qright.value).real();
            result.converged = result.converged && qleft.converged && qright.converged;
        }
    }
    return result;
}

}  // namespace crr

#endif  // CRR_QUADRATURE_HPP
