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

#ifndef CRR_CHAIN_SEQ_HPP
#define CRR_CHAIN_SEQ_HPP

// Recurrence coefficients of the CRR polynomial family and the associated
// positive-chain-sequence parameters.
//
// Indexing convention: vector index equals the mathematical subscript.
// Slots below the first defined subscript are zero-filled, so e.g.
// recurrence_coeffs(...).d[2] literally holds d_2.

#include <stdexcept>
#include <vector>

#include "crr/types.hpp"

namespace crr {

struct RecurrenceCoeffs {
    std::vector<double> c;  ///< c[1..n_max], c_n = eta / (lambda + n - 1)
    std::vector<double> d;  ///< d[2..n_max], d_{n+1} = n(2l+n-1) / (4(l+n-1)(l+n))
};

inline double recurrence_c(const ParamB& b, int n) {
    return b.eta / (b.lambda + n - 1);
}

inline double recurrence_d(double lambda, int np1) {
    const int n = np1 - 1;  // d_{n+1} with n >= 1
    return 0.25 * n * (2.0 * lambda + n - 1) / ((lambda + n - 1) * (lambda + n));
}

inline RecurrenceCoeffs recurrence_coeffs(const ParamB& b, int n_max) {
    require_lambda_gt(b, 0.0, "recurrence_coeffs");
    if (n_max < 1) throw std::invalid_argument("recurrence_coeffs: n_max must be >= 1");
    RecurrenceCoeffs rc;
    rc.c.assign(n_max + 1, 0.0);
    rc.d.assign(n_max + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) rc.c[n] = recurrence_c(b, n);
    for (int n = 2; n <= n_max; ++n) rc.d[n] = recurrence_d(b.lambda, n);
    return rc;
}

/// Minimal parameter sequence of {d_{n+1}}: ell_1 = 0 and
/// ell_n = (n-1) / (2(lambda+n-1)).  Computed from the closed form, not by
/// forward iteration, which is repelling toward the minimal sequence.
inline std::vector<double> minimal_params(double lambda, int n_max) {
    if (!(lambda > 0.0)) throw std::domain_error("minimal_params: requires lambda > 0");
    std::vector<double> ell(n_max + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) ell[n] = (n - 1) / (2.0 * (lambda + n - 1));
    return ell;
}

/// Maximal parameter sequence L_n = (2lambda+n-2) / (2(lambda+n-1)),
/// which exists as a sequence distinct from the minimal one only for
/// lambda > 1/2.
inline std::vector<double> maximal_params(double lambda, int n_max) {
    if (!(lambda > 0.5))
        throw std::domain_error("maximal_params: requires lambda > 1/2");
    std::vector<double> bigL(n_max + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) bigL[n] = 0.5 * (2.0 * lambda + n - 2) / (lambda + n - 1);
    return bigL;
}

/// gamma_0 = 1, gamma_n = (1 - L_n) gamma_{n-1}; the orthogonality norms.
inline std::vector<double> gamma_seq(double lambda, int n_max) {
    std::vector<double> bigL = maximal_params(lambda, n_max);
    std::vector<double> gamma(n_max + 1, 0.0);
    gamma[0] = 1.0;
    for (int n = 1; n <= n_max; ++n) gamma[n] = (1.0 - bigL[n]) * gamma[n - 1];
    return gamma;
}

/// Check whether g is a parameter sequence of the chain sequence d, i.e.
/// g_1 in [0,1), g_n in (0,1) for n >= 2 and (1-g_n) g_{n+1} = d_{n+1}
/// within tol.  Both vectors use the subscript-indexed convention above
/// (g[1..N], d[2..N]) and must have equal length.
inline bool is_parameter_seq(const std::vector<double>& d, const std::vector<double>& g,
                             double tol) {
    if (d.size() != g.size())
        throw std::invalid_argument("is_parameter_seq: length mismatch");
    if (!(tol > 0.0)) throw std::invalid_argument("is_parameter_seq: tol must be > 0");
    const int n_max = static_cast<int>(g.size()) - 1;
    if (n_max < 1) return true;
    if (!(g[1] >= 0.0 && g[1] < 1.0)) return false;
    for (int n = 2; n <= n_max; ++n)
        if (!(g[n] > 0.0 && g[n] < 1.0)) return false;
    for (int n = 1; n + 1 <= n_max; ++n)
        if (std::fabs((1.0 - g[n]) * g[n + 1] - d[n + 1]) > tol) return false;
    return true;
}

struct ChainSequences {
    double lambda = 0.0;
    std::vector<double> d;      ///< d[2..n_max]
    std::vector<double> ell;    ///< ell[1..n_max]
    std::vector<double> bigL;   ///< L[1..n_max], empty when lambda <= 1/2
    std::vector<double> gamma;  ///< gamma[0..n_max], empty when lambda <= 1/2
};

inline ChainSequences chain_sequences(double lambda, int n_max) {
    if (!(lambda > 0.0)) throw std::domain_error("chain_sequences: requires lambda > 0");
    ChainSequences cs;
    cs.lambda = lambda;
    cs.d.assign(n_max + 1, 0.0);
    for (int n = 2; n <= n_max; ++n) cs.d[n] = recurrence_d(lambda, n);
    cs.ell = minimal_params(lambda, n_max);
    if (lambda > 0.5) {
        cs.bigL = maximal_params(lambda, n_max);
        cs.gamma = gamma_seq(lambda, n_max);
    }
    return cs;
}

}  // namespace crr

#endif  // CRR_CHAIN_SEQ_HPP
