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

#ifndef CRR_ZEROS_HPP
#define CRR_ZEROS_HPP

// Zeros of P_m(b; .) and their electrostatic characterization: m movable
// unit charges on the line, two fixed charges of size lambda_m = lambda+m-1
// at +-i, and an arctan background field.  The energy
//
//   E = sum_{j<i} ln 1/|x_j - x_i| + (lambda_m/2) sum_j ln(x_j^2 + 1)
//       - eta sum_j arctan(x_j)
//
// is minimized exactly at the zeros of P_m.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "crr/poly_core.hpp"
#include "crr/types.hpp"

namespace crr {

struct ZeroConfiguration {
    std::vector<double> positions;  ///< strictly increasing
    double energy = 0.0;
    double grad_norm = 0.0;
    bool converged = true;
    int iterations = 0;
};

inline void check_distinct(const std::vector<double>& xs, const char* where) {
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j)
            if (std::fabs(xs[i] - xs[j]) < 1e-12)
                throw std::invalid_argument(std::string(where) +
                                            ": coincident charge positions");
}

/// Symmetric in the positions; summation runs over a sorted copy so that
/// permuted inputs produce bit-identical values.
inline double energy_eval(double lambda_m, double eta, const std::vector<double>& xs) {
    check_distinct(xs, "energy_eval");
    std::vector<double> s = xs;
    std::sort(s.begin(), s.end());
    double e = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
        for (size_t j = i + 1; j < s.size(); ++j) e -= std::log(std::fabs(s[i] - s[j]));
        e += 0.5 * lambda_m * std::log(s[i] * s[i] + 1.0);
        e -= eta * std::atan(s[i]);
    }
    return e;
}

inline std::vector<double> energy_gradient(double lambda_m, double eta,
                                           const std::vector<double>& xs) {
    check_distinct(xs, "energy_gradient");
    const size_t m = xs.size();
    std::vector<double> g(m, 0.0);
    for (size_t k = 0; k < m; ++k) {
        double s = 0.0;
        for (size_t j = 0; j < m; ++j)
            if (j != k) s += 1.0 / (xs[k] - xs[j]);
        g[k] = -s + (lambda_m * xs[k] - eta) / (xs[k] * xs[k] + 1.0);
    }
    return g;
}

namespace detail {

inline double grad_norm2(const std::vector<double>& g) {
    double s = 0.0;
    for (double v : g) s += v * v;
    return std::sqrt(s);
}

// Parlett-Reinsch balancing with radix-2 scale factors (exact similarity).
// Eigen's nonsymmetric solver does not balance, and the companion matrices
// of these polynomials carry a large dynamic range when zeros spread out.
inline void balance_matrix(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::fabs(a(j, i));
                r += std::fabs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            while (c < 0.5 * r) {
                c *= 2.0;
                r *= 0.5;
                f *= 2.0;
            }
            while (c >= 2.0 * r) {
                c *= 0.5;
                r *= 2.0;
                f *= 0.5;
            }
            if (c + r < 0.95 * s) {
                done = false;
                for (int j = 0; j < n; ++j) a(i, j) /= f;
                for (int j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

inline std::vector<cplx> companion_roots(const RealPolynomial& monic) {
    const int n = monic.degree();
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -monic.coeffs[i];
    balance_matrix(comp);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
    std::vector<cplx> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = solver.eigenvalues()[i];
    return roots;
}

inline bool roots_valid(const std::vector<double>& xs) {
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        const double gap_tol =
            1e-9 * std::max({1.0, std::fabs(xs[i]), std::fabs(xs[i + 1])});
        if (!(xs[i + 1] - xs[i] > gap_tol)) return false;
    }
    return true;
}

// Deterministic fallback: the scaled polynomial on the circle variable is
// bounded with n simple sign changes; bracket them on a refined grid and
// bisect.  theta increasing maps to x = cot(theta/2) decreasing.
inline std::vector<double> circle_sweep_zeros(const ParamB& b, int n, bool& found_all) {
    constexpr double pi = 3.14159265358979323846;
    auto t_val = [&](double th) {
        return scaled_eval_circle(b, n, std::cos(0.5 * th), std::sin(0.5 * th));
    };
    const double lo = 1e-6, hi = 2.0 * pi - 1e-6;
    for (int mult : {8, 16, 32, 64, 128}) {
        const int m = mult * n + 1;
        std::vector<double> th(m), tv(m);
        for (int i = 0; i < m; ++i) {
            th[i] = lo + (hi - lo) * i / (m - 1);
            tv[i] = t_val(th[i]);
        }
        std::vector<std::pair<double, double>> brackets;
        for (int i = 0; i + 1 < m; ++i)
            if (tv[i] == 0.0)
                brackets.emplace_back(th[i], th[i]);
            else if ((tv[i] < 0.0) != (tv[i + 1] < 0.0))
                brackets.emplace_back(th[i], th[i + 1]);
        if (static_cast<int>(brackets.size()) != n) continue;
        std::vector<double> xs;
        for (auto [ta, tb] : brackets) {
            double fa = t_val(ta);
            for (int it = 0; it < 80 && tb - ta > 4e-16; ++it) {
                const double mid = 0.5 * (ta + tb);
                const double fm = t_val(mid);
                if (fm == 0.0) {
                    ta = tb = mid;
                    break;
                }
                if ((fa < 0.0) != (fm < 0.0))
                    tb = mid;
                else {
                    ta = mid;
                    fa = fm;
                }
            }
            const double theta = 0.5 * (ta + tb);
            xs.push_back(std::cos(0.5 * theta) / std::sin(0.5 * theta));
        }
        std::sort(xs.begin(), xs.end());
        found_all = true;
        return xs;
    }
    found_all = false;
    return {};
}

}  // namespace detail

/// All n zeros of P_n(b; .), real and simple.  Balanced companion-matrix
/// eigenvalues seeded into a complex Newton polish driven by the recurrence
/// evaluation and the derivative identity; if the eigensolver merges roots,
/// a deterministic sign-change sweep on the circle variable re-brackets all
/// of them.  converged reports whether the final set is real and distinct.
inline ZeroConfiguration poly_zeros(const ParamB& b, int n) {
    require_lambda_gt(b, 0.0, "poly_zeros");
    if (n < 1) throw std::invalid_argument("poly_zeros: n must be >= 1");

    ZeroConfiguration out;
    std::vector<cplx> roots;
    if (n == 1) {
        roots = {cplx(b.eta / b.lambda, 0.0)};
    } else {
        roots = detail::companion_roots(monic_coeffs(b, n));
    }
    bool all_real = true;
    for (cplx& r : roots) {
        for (int it = 0; it < 40; ++it) {
            const cplx p = eval_recurrence(b, n, r);
            const cplx dp = derivative_eval(b, n, r);
            if (std::abs(dp) == 0.0) break;
            const cplx step = p / dp;
            r -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(r))) break;
        }
        if (std::fabs(r.imag()) > 1e-8) all_real = false;
    }

    out.positions.resize(n);
    for (int i = 0; i < n; ++i) out.positions[i] = roots[i].real();
    std::sort(out.positions.begin(), out.positions.end());
    out.converged = all_real && detail::roots_valid(out.positions);

    if (!out.converged) {
        bool found_all = false;
        std::vector<double> swept = detail::circle_sweep_zeros(b, n, found_all);
        if (found_all) {
            for (double& x : swept) {
                for (int it = 0; it < 3; ++it) {
                    const double dp = derivative_eval(b, n, x);
                    if (dp == 0.0) break;
                    x -= eval_recurrence(b, n, x) / dp;
                }
            }
            std::sort(swept.begin(), swept.end());
            if (detail::roots_valid(swept)) {
                out.positions = std::move(swept);
                out.converged = true;
            }
        }
    }

    const double lambda_m = b.lambda + n - 1;
    if (detail::roots_valid(out.positions)) {
        out.energy = energy_eval(lambda_m, b.eta, out.positions);
        out.grad_norm = detail::grad_norm2(energy_gradient(lambda_m, b.eta, out.positions));
    } else {
        out.energy = std::numeric_limits<double>::quiet_NaN();
        out.grad_norm = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

/// Minimize the electrostatic energy for m charges with lambda_m = lambda+m-1.
/// Newton steps on the analytic gradient/Hessian with a gradient-descent
/// fallback; steps are clipped to half the minimal gap so the ordering
/// barrier is never crossed.  Converges to the zeros of P_m(b; .).
inline ZeroConfiguration minimize_energy(int m, const ParamB& b,
                                         std::vector<double> init = {},
                                         double tol = 1e-10, int max_iter = 500) {
    require_lambda_gt(b, 0.0, "minimize_energy");
    if (m < 1) throw std::invalid_argument("minimize_energy: m must be >= 1");
    const double lambda_m = b.lambda + m - 1;
    constexpr double pi = 3.14159265358979323846;

    std::vector<double> x;
    if (init.empty()) {
        // circle-uniform images: x_k = cot(theta_k/2), theta_k equally spaced
        for (int k = 1; k <= m; ++k) x.push_back(1.0 / std::tan(pi * k / (m + 1.0)));
        std::sort(x.begin(), x.end());
    } else {
        if (static_cast<int>(init.size()) != m)
            throw std::invalid_argument("minimize_energy: init size must equal m");
        x = std::move(init);
        std::sort(x.begin(), x.end());
        check_distinct(x, "minimize_energy");
    }

    ZeroConfiguration out;
    double e = energy_eval(lambda_m, b.eta, x);
    std::vector<double> g = energy_gradient(lambda_m, b.eta, x);

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        const double gn = detail::grad_norm2(g);
        if (gn <= tol) break;

        // Newton direction from the analytic Hessian
        Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m, m);
        for (int k = 0; k < m; ++k) {
            const double xk = x[k];
            const double den = xk * xk + 1.0;
            double diag = (lambda_m * (1.0 - xk * xk) + 2.0 * b.eta * xk) / (den * den);
            for (int j = 0; j < m; ++j) {
                if (j == k) continue;
                const double inv2 = 1.0 / ((xk - x[j]) * (xk - x[j]));
                diag += inv2;
                hess(k, j) = -inv2;
            }
            hess(k, k) = diag;
        }
        Eigen::VectorXd gv(m);
        for (int k = 0; k < m; ++k) gv[k] = g[k];
        Eigen::VectorXd step = hess.ldlt().solve(-gv);
        if (!step.allFinite() || gv.dot(step) >= 0.0) step = -gv;  // descent fallback

        // Newton endgame: once the gradient is small, the energy is flat to
        // roundoff and a monitored line search can no longer make progress;
        // plain Newton steps converge quadratically from here
        if (gn <= 1e-6) {
            std::vector<double> trial(m);
            for (int k = 0; k < m; ++k) trial[k] = x[k] + step[k];
            bool ordered = true;
            for (int k = 0; k + 1 < m; ++k)
                if (!(trial[k + 1] - trial[k] > 1e-12)) ordered = false;
            if (ordered) {
                x = std::move(trial);
                e = energy_eval(lambda_m, b.eta, x);
                g = energy_gradient(lambda_m, b.eta, x);
                continue;
            }
        }

        // clip to half the minimal gap; the ordering barrier stays intact
        double min_gap = std::numeric_limits<double>::infinity();
        for (int k = 0; k + 1 < m; ++k) min_gap = std::min(min_gap, x[k + 1] - x[k]);
        const double max_step = step.lpNorm<Eigen::Infinity>();
        double alpha = 1.0;
        if (m > 1 && max_step > 0.5 * min_gap) alpha = 0.5 * min_gap / max_step;

        // backtracking on the energy
        bool accepted = false;
        for (int bt = 0; bt < 50; ++bt) {
            std::vector<double> trial(m);
            for (int k = 0; k < m; ++k) trial[k] = x[k] + alpha * step[k];
            bool ordered = true;
            for (int k = 0; k + 1 < m; ++k)
                if (!(trial[k] < trial[k + 1])) ordered = false;
            if (ordered) {
                const double et = energy_eval(lambda_m, b.eta, trial);
                if (et < e) {
                    x = std::move(trial);
                    e = et;
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!accepted) break;  // stuck at numerical floor
        g = energy_gradient(lambda_m, b.eta, x);
    }

    out.positions = x;
    out.energy = energy_eval(lambda_m, b.eta, x);
    out.grad_norm = detail::grad_norm2(g);
    out.converged = out.grad_norm <= tol;
    out.iterations = iter;
    return out;
}

}  // namespace crr

#endif  // CRR_ZEROS_HPP
