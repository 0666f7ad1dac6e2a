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

#include <cmath>

#include "crr/poly_core.hpp"

using namespace crr;

TEST_CASE("recurrence evaluation at hand-checked points") {
    CHECK(eval_recurrence({0.7, 3.0}, 0, 5.0) == 1.0);
    // P_1 = x - eta/lambda
    CHECK(eval_recurrence({1.0, 2.0}, 1, 0.5) == Catch::Approx(-1.5).margin(1e-15));
    // lambda = 1: c = 0, d_2 = 1/4, P_2 = (3x^2-1)/4
    CHECK(eval_recurrence({1.0, 0.0}, 2, 1.0) == Catch::Approx(0.5).margin(1e-15));
    CHECK(eval_recurrence({1.0, 0.0}, 2, -2.0) == Catch::Approx(11.0 / 4.0).margin(1e-14));
}

TEST_CASE("hypergeometric route matches the recurrence") {
    CHECK(eval_hypergeometric({1.0, 0.0}, 2, 1.0) == Catch::Approx(0.5).margin(1e-13));
    CHECK(eval_hypergeometric({2.5, -1.0}, 0, -3.0) == 1.0);
    CHECK(eval_hypergeometric({1.0, 2.0}, 1, 0.5) == Catch::Approx(-1.5).margin(1e-13));

    // broad agreement, including the cancellation-heavy x ~ 0 region
    for (double lambda : {0.6, 1.0, 2.5}) {
        for (double eta : {-2.0, 0.0, 3.0}) {
            const ParamB b{lambda, eta};
            for (int n : {1, 7, 19, 30}) {
                for (double x : {-10.0, -1.1, 0.0, 0.05, 0.7, 10.0}) {
                    const double r = eval_recurrence(b, n, x);
                    const double h = eval_hypergeometric(b, n, x);
                    CHECK(std::fabs(r - h) <= 1e-10 * std::max(1.0, std::fabs(r)));
                }
            }
        }
    }
}

TEST_CASE("leading coefficient is (2l)_n / (2^n (l)_n)") {
    for (double lambda : {0.4, 1.0, 3.2}) {
        const ParamB b{lambda, -1.0};
        for (int n : {1, 2, 5, 12}) {
            const double expected =
                pochhammer(2.0 * lambda, n) / (std::pow(2.0, n) * pochhammer(lambda, n));
            const RealPolynomial p = poly_coeffs(b, n);
            CHECK(p.degree() == n);
            CHECK(p.coeffs[n] == Catch::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("monic coefficients") {
    const RealPolynomial m1 = monic_coeffs({3.0, 1.5}, 1);
    REQUIRE(m1.coeffs.size() == 2);
    CHECK(m1.coeffs[0] == Catch::Approx(-0.5).margin(1e-15));
    CHECK(m1.coeffs[1] == 1.0);

    const RealPolynomial m2 = monic_coeffs({1.0, 0.0}, 2);
    REQUIRE(m2.coeffs.size() == 3);
    CHECK(m2.coeffs[0] == Catch::Approx(-1.0 / 3.0).margin(1e-15));
    CHECK(m2.coeffs[1] == 0.0);
    CHECK(m2.coeffs[2] == 1.0);

    // value at x = i: monic P_2(1; i) = -4/3
    const cplx v = monic_eval({1.0, 0.0}, 2, cplx(0.0, 1.0));
    CHECK(v.real() == Catch::Approx(-4.0 / 3.0).margin(1e-14));
    CHECK(std::fabs(v.imag()) < 1e-14);

    // closed form at i: 2^n i^n (b)_n / (2l)_n
    for (int n : {1, 3, 8}) {
        const ParamB b{1.3, -0.4};
        const cplx expect = std::pow(2.0, n) * ipow(cplx(0.0, 1.0), n) *
                            pochhammer(b.value(), n) / pochhammer(2.0 * b.lambda, n);
        const cplx got = monic_eval(b, n, cplx(0.0, 1.0));
        CHECK(std::abs(got - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("derivative identity") {
    // n (1- ell_n) P_{n-1}: at lambda=1, n=2: 2 * 3/4 * P_1(1;1) = 1.5
    CHECK(derivative_eval({1.0, 0.0}, 2, 1.0) == Catch::Approx(1.5).margin(1e-14));
    CHECK(derivative_eval({1.0, 2.0}, 1, 7.0) == Catch::Approx(1.0).margin(1e-15));
    CHECK(derivative_eval({1.0, 2.0}, 0, 7.0) == 0.0);

    // finite-difference oracle
    const ParamB b{0.8, -1.0};
    const double h = 1e-6;
    const double fd =
        (eval_recurrence(b, 5, 0.3 + h) - eval_recurrence(b, 5, 0.3 - h)) / (2.0 * h);
    const double an = derivative_eval(b, 5, 0.3);
    CHECK(std::fabs(fd - an) <= 1e-6 * std::max(1.0, std::fabs(an)));
}

TEST_CASE("monic family is Appell: d/dx Phat_n = n Phat_{n-1} coefficientwise") {
    for (double lambda : {0.6, 1.7}) {
        const ParamB b{lambda, 2.0};
        for (int n : {2, 5, 11}) {
            const RealPolynomial deriv = monic_coeffs(b, n).derivative();
            const RealPolynomial prev = monic_coeffs(b, n - 1);
            for (int k = 0; k <= n - 1; ++k) {
                const double want = n * prev.coeffs[k];
                CHECK(std::fabs(deriv.coeffs[k] - want) <=
                      1e-13 * std::max(1.0, std::fabs(want)));
            }
        }
    }
}

TEST_CASE("ODE residual vanishes") {
    auto scaled_res = [](const ParamB& b, int n, double x) {
        const double res = ode_residual(b, n, x);
        const double scale =
            std::max({1.0, std::fabs(n * (n - 1 + 2.0 * b.lambda) * eval_recurrence(b, n, x)),
                      std::fabs(2.0 * ((b.lambda + n - 1) * x - b.eta) *
                                derivative_eval(b, n, x))});
        return std::fabs(res) / scale;
    };
    CHECK(scaled_res({1.0, 0.0}, 2, 1.0) < 1e-10);
    CHECK(scaled_res({2.5, 4.0}, 7, -2.2) < 1e-9);
    CHECK(scaled_res({0.6, 0.0}, 1, 0.0) < 1e-14);
    for (int n : {1, 4, 17, 30})
        for (double x : {-9.5, -0.4, 0.0, 3.3}) CHECK(scaled_res({0.7, -1.3}, n, x) < 1e-9);
}

TEST_CASE("even/odd symmetry for real b") {
    const ParamB b{1.4, 0.0};
    for (int n : {1, 2, 5, 10}) {
        for (double x : {0.3, 1.7, 6.0}) {
            const double plus = eval_recurrence(b, n, x);
            const double minus = eval_recurrence(b, n, -x);
            CHECK(std::fabs(minus - (n % 2 == 0 ? plus : -plus)) <=
                  1e-13 * std::max(1.0, std::fabs(plus)));
        }
    }
}

TEST_CASE("scaled evaluation agrees with the plain one") {
    const ParamB b{0.9, 1.1};
    for (int n : {1, 4, 9}) {
        for (double x : {-3.0, 0.2, 40.0}) {
            const double s = scaled_eval(b, n, x);
            const double direct = eval_recurrence(b, n, x) / std::pow(x * x + 1.0, 0.5 * n);
            CHECK(s == Catch::Approx(direct).margin(1e-12 * std::max(1.0, std::fabs(direct))));
            // circle form
            const double theta = 2.0 * std::atan2(1.0, x);  // cot(theta/2) = x
            const double circ = scaled_eval_circle(b, n, std::cos(0.5 * theta),
                                                   std::sin(0.5 * theta));
            CHECK(circ == Catch::Approx(s).margin(1e-12 * std::max(1.0, std::fabs(s))));
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(eval_recurrence({0.0, 1.0}, 3, 0.5), std::domain_error);
    CHECK_THROWS_AS(eval_recurrence({-0.2, 0.0}, 1, 0.5), std::domain_error);
    CHECK_THROWS_AS(eval_hypergeometric({-1.0, 0.0}, 1, 0.5), std::domain_error);
    CHECK_THROWS_AS(monic_coeffs({0.0, 0.0}, 2), std::domain_error);
    CHECK_THROWS_AS(ode_residual({1.0, 0.0}, 0, 0.5), std::invalid_argument);
}
