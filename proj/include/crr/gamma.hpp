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

#ifndef CRR_GAMMA_HPP
#define CRR_GAMMA_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include "crr/types.hpp"

namespace crr {

namespace detail {

// Lanczos approximation, g = 7 with 9 coefficients.  Good to ~1e-14
// relative accuracy on the right half plane at the scales used here.
inline cplx log_gamma_lanczos(cplx z) {
    static constexpr double g = 7.0;
    static constexpr double coeff[9] = {
        0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
    constexpr double pi = 3.14159265358979323846;
    constexpr double log_sqrt_2pi = 0.91893853320467274178;  // log(2*pi)/2

    if (z.real() < 0.5) {
        // reflection; only the real part of the result is branch-safe,
        // which is all the normalization constants below ever use
        return std::log(pi / std::sin(pi * z)) - log_gamma_lanczos(1.0 - z);
    }
    cplx zz = z - 1.0;
    cplx x = coeff[0];
    for (int i = 1; i < 9; ++i) x += coeff[i] / (zz + static_cast<double>(i));
    cplx t = zz + (g + 0.5);
    return log_sqrt_2pi + (zz + 0.5) * std::log(t) - t + std::log(x);
}

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace detail

/// log Gamma(z) for complex z away from the poles at 0, -1, -2, ...
/// Only Re(log Gamma) is branch-independent; callers that need |Gamma|
/// or Gamma of real arguments are unaffected by the Im branch choice.
inline cplx log_gamma(cplx z) {
    if (detail::is_nonpositive_integer(z))
        throw std::domain_error("log_gamma: pole at non-positive integer");
    return detail::log_gamma_lanczos(z);
}

/// |Gamma(z)| for complex z away from the poles.
inline double abs_gamma(cplx z) { return std::exp(log_gamma(z).real()); }

}  // namespace crr

#endif  // CRR_GAMMA_HPP
