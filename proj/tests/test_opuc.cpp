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

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "crr/opuc.hpp"
#include "crr/quadrature.hpp"

using namespace crr;

namespace {
constexpr double pi = 3.14159265358979323846;

// complex companion-matrix roots followed by a Newton polish on the
// recurrence; used to probe where the zeros of R_n actually sit
std::vector<cplx> para_r_roots(const ParamB& b, int n) {
    ComplexPolynomial p = para_r_coeffs(b, n);
    const cplx lead = p.coeffs[n];
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.coeffs[i] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    std::vector<cplx> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = solver.eigenvalues()[i];
    // value-and-derivative recurrence for the polish
    auto value_deriv = [&](cplx z) {
        cplx r_m1 = 1.0, d_m1 = 0.0;
        cplx c1 = cplx(0.0, 1.0) * recurrence_c(b, 1);
        cplx r = (1.0 + c1) * z + (1.0 - c1), d = 1.0 + c1;
        for (int k = 1; k < n; ++k) {
            const cplx ck = cplx(0.0, 1.0) * recurrence_c(b, k + 1);
            const double dk = 4.0 * recurrence_d(b.lambda, k + 1);
            const cplx lin = (1.0 + ck) * z + (1.0 - ck);
            const cplx r_next = lin * r - dk * z * r_m1;
            const cplx d_next = (1.0 + ck) * r + lin * d - dk * (r_m1 + z * d_m1);
            r_m1 = r;
            d_m1 = d;
            r = r_next;
            d = d_next;
        }
        return std::pair<cplx, cplx>(r, d);
    };
    for (cplx& z : roots) {
        for (int it = 0; it < 30; ++it) {
            const auto [v, dv] = value_deriv(z);
            if (std::abs(dv) == 0.0) break;
            const cplx step = v / dv;
            z -= step;
            if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
        }
    }
    return roots;
}
}  // namespace

TEST_CASE("Cayley transform") {
    CHECK(std::abs(cayley_to_circle(0.0) - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(cayley_to_circle(1.0) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(cayley_to_line(cplx(-1.0, 0.0)) == Catch::Approx(0.0).margin(1e-15));
    for (double x : {-15.0, -2.2, 0.4, 7.9, 20.0}) {
        const cplx zeta = cayley_to_circle(x);
        CHECK(std::fabs(std::abs(zeta) - 1.0) < 1e-14);
        CHECK(std::fabs(cayley_to_line(zeta) - x) <= 1e-13 * std::max(1.0, std::fabs(x)));
    }
    CHECK_THROWS_AS(cayley_to_line(cplx(1.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(cayley_to_line(cplx(0.5, 0.0)), std::domain_error);
}

TEST_CASE("Phi values") {
    CHECK(std::abs(phi_eval({2.0, -1.0}, 0, cplx(0.3, 0.1)) - 1.0) < 1e-15);
    CHECK_THROWS_AS(phi_eval({-0.5, 0.0}, 2, cplx(0.3, 0.1)), std::domain_error);
    CHECK_THROWS_AS(para_r({-0.1, 1.0}, 2, cplx(1.0, 0.0)), std::domain_error);
    // at z = 1 the 2F1 collapses: Phi_n(1) = (2l+1)_n / (b+1)_n
    for (int n : {1, 3, 6}) {
        const ParamB b{0.8, 2.0};
        const cplx expected = pochhammer(2.0 * b.lambda + 1.0, n) / pochhammer(b.value() + 1.0, n);
        CHECK(std::abs(phi_eval(b, n, 1.0) - expected) < 1e-12 * std::abs(expected));
    }
    // Phi_1(1+i; z) = z + (1-i)/(2+i)
    const cplx got = phi_eval({1.0, 1.0}, 1, cplx(0.2, -0.7));
    const cplx expect = cplx(0.2, -0.7) + cplx(1.0, -1.0) / cplx(2.0, 1.0);
    CHECK(std::abs(got - expect) < 1e-14);
}

TEST_CASE("Phi is monic and coefficients match evaluation") {
    for (int n : {1, 4, 9}) {
        const ParamB b{1.2, -0.8};
        const ComplexPolynomial p = phi_coeffs(b, n);
        REQUIRE(p.degree() == n);
        CHECK(std::abs(p.coeffs[n] - 1.0) < 1e-12);
        const cplx z = std::polar(1.0, 1.234);
        CHECK(std::abs(p.eval(z) - phi_eval(b, n, z)) < 1e-11);
    }
}

TEST_CASE("norms") {
    CHECK(phi_norm_sq({0.3, 5.0}, 0) == 1.0);
    CHECK(phi_norm_sq({1.0, 0.0}, 1) == Catch::Approx(0.75).margin(1e-15));
    // quadrature cross-check of |Phi_1|^2 against the closed form
    const ParamB b{1.0, 1.0};
    auto q = integrate_circle(
        [&](double th) {
            const cplx z = std::polar(1.0, th);
            return std::norm(phi_eval(b, 1, z)) * measure_density_circle(b, th);
        },
        b.lambda, 1e-10);
    CHECK(q.converged);
    CHECK(q.value.real() == Catch::Approx(phi_norm_sq(b, 1)).margin(1e-8));
}

TEST_CASE("poly_star reverses and conjugates") {
    const ComplexPolynomial c1{{cplx(1.0, 0.0), cplx(0.0, 0.0)}};
    const ComplexPolynomial s1 = poly_star(c1);
    CHECK(s1.coeffs[0] == cplx(0.0, 0.0));
    CHECK(s1.coeffs[1] == cplx(1.0, 0.0));
    const ComplexPolynomial c2{{cplx(1.0, 2.0), cplx(3.0, -4.0)}};
    const ComplexPolynomial s2 = poly_star(c2);
    CHECK(s2.coeffs[0] == std::conj(c2.coeffs[1]));
    CHECK(s2.coeffs[1] == std::conj(c2.coeffs[0]));
    // Phi_1^* at z=0 equals the conjugated leading coefficient, i.e. 1
    const ComplexPolynomial star = poly_star(phi_coeffs({1.0, 1.0}, 1));
    CHECK(std::abs(star.eval(0.0) - 1.0) < 1e-13);
}

TEST_CASE("CD kernel: symmetry, degree, and the sum form") {
    const ParamB b{0.9, 1.3};
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> angle(0.1, 6.0);
    for (int rep = 0; rep < 5; ++rep) {
        const cplx z = std::polar(1.0, angle(rng));
        const cplx w = std::polar(1.0, angle(rng));
        const int n = 4;
        const cplx k_zw = cd_kernel(b, n, z, w);
        const cplx k_wz = cd_kernel(b, n, w, z);
        CHECK(std::abs(std::conj(k_zw) - k_wz) < 1e-10 * std::max(1.0, std::abs(k_zw)));
        // independent route: sum of conj(phi_k(w)) phi_k(z)
        cplx direct = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double inv = 1.0 / std::sqrt(phi_norm_sq(b, k));
            direct += std::conj(phi_eval(b, k, w) * inv) * (phi_eval(b, k, z) * inv);
        }
        CHECK(std::abs(k_zw - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
    }
    // degree check by synthetic division: numerator divisible by (conj(w) z - 1)
    {
        const int n = 3;
        const cplx w = std::polar(1.0, 2.0);
        const double inv = 1.0 / std::sqrt(phi_norm_sq(b, n + 1));
        ComplexPolynomial phi = phi_coeffs(b, n + 1);
        ComplexPolynomial star = poly_star(phi);
        const cplx cw = std::conj(phi.eval(w) * inv) * inv;
        const cplx cs = std::conj(star.eval(w) * inv) * inv;
        std::vector<cplx> num(n + 2);
        for (int k = 0; k <= n + 1; ++k) num[k] = cw * phi.coeffs[k] - cs * star.coeffs[k];
        // divide by (conj(w) z - 1): synthetic division from the top
        std::vector<cplx> quot(n + 1, 0.0);
        cplx carry = 0.0;
        for (int k = n + 1; k >= 1; --k) {
            const cplx q = (num[k] + carry) / std::conj(w);
            quot[k - 1] = q;
            carry = q;
        }
        const cplx remainder = num[0] + carry;
        CHECK(std::abs(remainder) < 1e-11);
        CHECK(std::abs(quot[n]) > 1e-8);  // exact degree n for |w| = 1
    }
    CHECK_THROWS_AS(cd_kernel(b, 2, cplx(1.0, 0.0), cplx(1.0, 0.0)), std::domain_error);
}

TEST_CASE("para-orthogonal values and the three routes") {
    // R_n(b; 1) = (2l)_n/(l)_n; b=1, n=2 -> 3
    CHECK(std::abs(para_r({1.0, 0.0}, 2, 1.0, RnMethod::hypergeometric) - cplx(3.0)) < 1e-12);
    CHECK(std::abs(para_r({0.7, -2.0}, 0, cplx(0.3, 0.4), RnMethod::para) - cplx(1.0)) < 1e-15);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> angle(0.05, 6.2);
    for (double lambda : {0.6, 1.0, 3.0}) {
        for (double eta : {-2.0, 0.0, 1.5}) {
            const ParamB b{lambda, eta};
            for (int n : {1, 2, 5, 10}) {
                const cplx z = std::polar(1.0, angle(rng));
                const cplx r1 = para_r(b, n, z, RnMethod::recurrence);
                const cplx r2 = para_r(b, n, z, RnMethod::hypergeometric);
                const cplx r3 = para_r(b, n, z, RnMethod::para);
                const double scale = std::max(1.0, std::abs(r1));
                CHECK(std::abs(r1 - r2) <= 1e-10 * scale);
                CHECK(std::abs(r1 - r3) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("R relates to P through the Cayley transform") {
    const ParamB b{1.0, 1.0};
    const double x = 0.7;
    const int n = 3;
    const cplx zeta = cayley_to_circle(x);
    const cplx lhs = para_r(b, n, zeta, RnMethod::recurrence);
    const cplx rhs = ipow(cplx(2.0, 0.0) / cplx(x, -1.0), n) * eval_recurrence(b, n, x);
    CHECK(std::abs(lhs - rhs) < 1e-11 * std::max(1.0, std::abs(lhs)));

    // R_n(zeta(x)) (x-i)^n / 2^n is real for real x
    for (double xx : {-4.0, -0.3, 2.6}) {
        for (int nn : {1, 6, 13}) {
            const cplx v = para_r(b, nn, cayley_to_circle(xx), RnMethod::recurrence) *
                           ipow(cplx(xx, -1.0) / cplx(2.0, 0.0), nn);
            CHECK(std::fabs(v.imag()) <= 1e-10 * std::max(1.0, std::abs(v)));
        }
    }
}

TEST_CASE("zeros of R_n sit on the unit circle") {
    for (double lambda : {0.6, 1.0, 3.0}) {
        for (double eta : {-2.0, 0.0, 1.5}) {
            const ParamB b{lambda, eta};
            for (int n : {5, 12, 25}) {
                for (const cplx& root : para_r_roots(b, n))
                    CHECK(std::fabs(std::abs(root) - 1.0) <= 1e-9);
            }
        }
    }
}

TEST_CASE("kernel-polynomial relation") {
    CHECK(kernel_relation_residual({1.5, 0.0}, 1, cplx(0.4, 0.2)) <= 1e-9);
    CHECK(kernel_relation_residual({2.0, 1.0}, 4, std::polar(1.0, 2.1)) <= 1e-9);
    CHECK(kernel_relation_residual({0.9, 0.0}, 2, cplx(-1.0, 0.0)) <= 1e-9);
    CHECK_THROWS_AS(kernel_relation_residual({0.5, 0.0}, 2, cplx(0.5, 0.5)),
                    std::domain_error);
}

TEST_CASE("measure densities") {
    // b = 1: density (1/pi) sin^2(theta/2); value 1/pi at theta = pi
    CHECK(measure_density_circle({1.0, 0.0}, pi) == Catch::Approx(1.0 / pi).epsilon(1e-13));
    // symmetry for eta = 0
    for (double th : {0.3, 1.1, 2.9}) {
        CHECK(measure_density_circle({1.7, 0.0}, th) ==
              Catch::Approx(measure_density_circle({1.7, 0.0}, 2.0 * pi - th)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(measure_density_circle({1.0, 0.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(measure_density_circle({1.0, 0.0}, 2.0 * pi), std::domain_error);

    // line density: lambda = 1, eta = 0 is the Cauchy density
    CHECK(measure_density_line({1.0, 0.0}, 0.0) == Catch::Approx(1.0 / pi).epsilon(1e-13));
    CHECK_THROWS_AS(measure_density_line({0.5, 0.0}, 1.0), std::domain_error);

    // pullback: nu(cot(theta/2)) |dx/dtheta| equals the circle density of
    // mu^(b-1) at theta
    const ParamB b{1.4, 0.6};
    const double theta = 0.5 * pi;
    const double xx = std::cos(0.5 * theta) / std::sin(0.5 * theta);
    const double jac = 0.5 / (std::sin(0.5 * theta) * std::sin(0.5 * theta));
    const double lhs = measure_density_line(b, xx) * jac;
    const double rhs = measure_density_circle({b.lambda - 1.0, b.eta}, theta);
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("first moment of mu^(b-1)") {
    CHECK(std::abs(moment_first({1.0, 0.0})) < 1e-15);
    CHECK(std::abs(moment_first({2.0, 0.0}) - cplx(-0.5, 0.0)) < 1e-15);
    CHECK(std::abs(moment_first({1.0, 1.0}) - cplx(0.5, -0.5)) < 1e-15);
    // quadrature cross-check at b = 1+1i: (1-b)/conj(b) is the moment of
    // zeta^{-1} (equivalently, the conjugate of the zeta moment)
    const ParamB b{1.0, 1.0};
    auto q = integrate_circle(
        [&](double th) {
            return cplx(measure_density_circle({b.lambda - 1.0, b.eta}, th)) *
                   std::polar(1.0, -th);
        },
        b.lambda - 1.0, 1e-10);
    CHECK(q.converged);
    CHECK(std::abs(q.value - moment_first(b)) < 1e-8);
}

TEST_CASE("quadrature Gram matrix of Phi is diagonal with the closed norms") {
    const ParamB b{0.8, 2.0};
    for (int m = 0; m <= 8; ++m) {
        for (int n = m; n <= 8; ++n) {
            auto q = integrate_circle(
                [&](double th) {
                    const cplx z = std::polar(1.0, th);
                    return std::conj(phi_eval(b, m, z)) * phi_eval(b, n, z) *
                           measure_density_circle(b, th);
                },
                b.lambda, 1e-10);
            const double expected = (m == n) ? phi_norm_sq(b, n) : 0.0;
            CHECK(std::abs(q.value - expected) < 1e-8);
        }
    }
}
