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

#ifndef CRR_TYPES_HPP
#define CRR_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace crr {

using cplx = std::complex<double>;

/// The complex parameter b = lambda + i*eta that organizes the whole family.
/// All polynomial and wave-function routines take it split into real parts.
struct ParamB {
    double lambda = 1.0;  ///< real part, must be positive for most operations
    double eta = 0.0;     ///< imaginary part, unrestricted

    cplx value() const { return {lambda, eta}; }
    cplx conj_value() const { return {lambda, -eta}; }
};

/// Truncation policy for infinite series evaluation.
struct SeriesControl {
    double rel_tol = 1e-14;
    double abs_floor = 1e-300;
    int max_terms = 10000;
};

/// Thrown when a series or iteration exhausts its budget, or when a
/// computed quantity fails an internal accuracy check.
class convergence_error : public std::runtime_error {
  public:
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require_lambda_gt(const ParamB& b, double bound, const char* where) {
    if (!(b.lambda > bound))
        throw std::domain_error(std::string(where) + ": requires lambda > " +
                                std::to_string(bound) + ", got " + std::to_string(b.lambda));
}

/// Pochhammer symbol (z)_n as a forward product.
inline double pochhammer(double z, int n) {
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= z + k;
    return p;
}

inline cplx pochhammer(cplx z, int n) {
    cplx p = 1.0;
    for (int k = 0; k < n; ++k) p *= z + static_cast<double>(k);
    return p;
}

/// Integer power with correct sign handling for negative bases.
inline double ipow(double x, int n) {
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= x;
    return r;
}

inline cplx ipow(cplx x, int n) {
    cplx r = 1.0;
    for (int k = 0; k < n; ++k) r *= x;
    return r;
}

/// arccot on the branch that decreases continuously from pi to 0
/// as x runs over the real line.
inline double arccot(double x) {
    constexpr double half_pi = 1.57079632679489661923;
    return half_pi - std::atan(x);
}

}  // namespace crr

#endif  // CRR_TYPES_HPP
