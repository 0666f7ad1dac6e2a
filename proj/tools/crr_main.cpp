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

// crr: command-line frontend for the CRR polynomial / Coulomb wave library.
//
// Output is a deterministic record {command, params, rows, diagnostics} as
// JSON (sorted keys, floats as %.17g) or CSV (rows only).  Exit codes:
// 0 success, 2 domain error, 3 convergence/accuracy flag, 64 usage error.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "crr/crr.hpp"

namespace {

using crr::cplx;
using crr::ParamB;

struct OutputRecord {
    std::string command;
    std::map<std::string, std::string> params;
    std::vector<std::pair<std::string, std::vector<double>>> rows;
    std::vector<std::pair<std::string, double>> diagnostics;
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit_json(const OutputRecord& rec) {
    std::string out = "{\"command\":\"" + rec.command + "\",\"diagnostics\":[";
    for (size_t i = 0; i < rec.diagnostics.size(); ++i) {
        if (i) out += ",";
        out += "{\"name\":\"" + rec.diagnostics[i].first +
               "\",\"value\":" + fmt_double(rec.diagnostics[i].second) + "}";
    }
    out += "],\"params\":{";
    bool first = true;
    for (const auto& [k, v] : rec.params) {
        if (!first) out += ",";
        first = false;
        out += "\"" + k + "\":\"" + v + "\"";
    }
    out += "},\"rows\":[";
    for (size_t i = 0; i < rec.rows.size(); ++i) {
        if (i) out += ",";
        out += "{\"label\":\"" + rec.rows[i].first + "\",\"values\":[";
        for (size_t j = 0; j < rec.rows[i].second.size(); ++j) {
            if (j) out += ",";
            out += fmt_double(rec.rows[i].second[j]);
        }
        out += "]}";
    }
    out += "]}\n";
    std::fputs(out.c_str(), stdout);
}

void emit_csv(const OutputRecord& rec) {
    std::string out;
    for (const auto& [label, values] : rec.rows) {
        out += label;
        for (double v : values) out += "," + fmt_double(v);
        out += "\n";
    }
    std::fputs(out.c_str(), stdout);
}

void emit(const OutputRecord& rec, const std::string& format) {
    if (format == "csv")
        emit_csv(rec);
    else
        emit_json(rec);
}

std::vector<double> parse_grid(const std::string& spec) {
    double a = 0.0, b = 0.0;
    long steps = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%ld", &a, &b, &steps) != 3 || steps < 1)
        throw CLI::ValidationError("grid", "expected a:b:steps with steps >= 1");
    std::vector<double> xs(steps);
    if (steps == 1) {
        xs[0] = a;
    } else {
        for (long i = 0; i < steps; ++i) xs[i] = a + (b - a) * i / (steps - 1);
    }
    return xs;
}

// Deterministic grid map; --parallel chunks the grid over threads and the
// results land in index order regardless of scheduling.
std::vector<double> map_grid(const std::vector<double>& xs,
                             const std::function<double(double)>& f, bool parallel) {
    std::vector<double> out(xs.size());
    if (!parallel || xs.size() < 16) {
        for (size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
        return out;
    }
    const unsigned n_threads =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        workers.emplace_back([&, t]() {
            try {
                for (size_t i = t; i < xs.size(); i += n_threads) out[i] = f(xs[i]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

crr::SeriesControl series_control_from_env() {
    crr::SeriesControl ctl;
    if (const char* env = std::getenv("CRR_MAX_TERMS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) ctl.max_terms = static_cast<int>(v);
    }
    return ctl;
}

constexpr double kMethodAgreementTol = 1e-10;  // eval-poly dual routes
constexpr double kZeroAgreementTol = 1e-8;     // eigen vs electrostatic zeros
constexpr double kOdeCheckTol = 1e-8;
constexpr double kRecurrenceCheckTol = 1e-9;

int run_eval_poly(double lambda, double eta, int n, const std::string& grid,
                  const std::string& method, bool parallel, const std::string& format) {
    const ParamB b{lambda, eta};
    const std::vector<double> xs = parse_grid(grid);
    OutputRecord rec;
    rec.command = "eval-poly";
    rec.params = {{"lambda", fmt_double(lambda)}, {"eta", fmt_double(eta)},
                  {"n", std::to_string(n)},       {"x-grid", grid},
                  {"method", method},             {"format", format}};
    rec.rows.emplace_back("x", xs);

    int exit_code = 0;
    if (method == "recurrence" || method == "both") {
        rec.rows.emplace_back(method == "both" ? "P_recurrence" : "P",
                              map_grid(xs, [&](double x) { return crr::eval_recurrence(b, n, x); },
                                       parallel));
    }
    if (method == "hyper" || method == "both") {
        rec.rows.emplace_back(method == "both" ? "P_hypergeometric" : "P",
                              map_grid(xs,
                                       [&](double x) { return crr::eval_hypergeometric(b, n, x); },
                                       parallel));
    }
    if (method == "both") {
        const auto& pr = rec.rows[1].second;
        const auto& ph = rec.rows[2].second;
        double worst = 0.0;
        for (size_t i = 0; i < pr.size(); ++i)
            worst = std::max(worst, std::fabs(pr[i] - ph[i]) / std::max(1.0, std::fabs(pr[i])));
        rec.diagnostics.emplace_back("max_discrepancy", worst);
        if (worst > kMethodAgreementTol) exit_code = 3;
    }
    emit(rec, format);
    return exit_code;
}

int run_zeros(double lambda, double eta, int n, const std::string& method,
              const std::string& format) {
    const ParamB b{lambda, eta};
    OutputRecord rec;
    rec.command = "zeros";
    rec.params = {{"lambda", fmt_double(lambda)},
                  {"eta", fmt_double(eta)},
                  {"n", std::to_string(n)},
                  {"method", method},
                  {"format", format}};
    int exit_code = 0;
    crr::ZeroConfiguration eig, ele;
    if (method == "eigen" || method == "both") {
        eig = crr::poly_zeros(b, n);
        rec.rows.emplace_back("zeros", eig.positions);
        rec.diagnostics.emplace_back("energy", eig.energy);
        rec.diagnostics.emplace_back("grad_norm", eig.grad_norm);
        if (!eig.converged) exit_code = 3;
    }
    if (method == "electro" || method == "both") {
        ele = crr::minimize_energy(n, b);
        rec.rows.emplace_back(method == "both" ? "zeros_electro" : "zeros", ele.positions);
        rec.diagnostics.emplace_back(method == "both" ? "energy_electro" : "energy", ele.energy);
        rec.diagnostics.emplace_back(method == "both" ? "grad_norm_electro" : "grad_norm",
                                     ele.grad_norm);
        rec.diagnostics.emplace_back("iterations", ele.iterations);
        if (!ele.converged) exit_code = 3;
    }
    if (method == "both") {
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            worst = std::max(worst, std::fabs(eig.positions[i] - ele.positions[i]));
        rec.diagnostics.emplace_back("max_discrepancy", worst);
        if (worst > kZeroAgreementTol) exit_code = 3;
    }
    emit(rec, format);
    return exit_code;
}

int run_ortho(double lambda, double eta, int n_max, double tol, const std::string& format) {
    const ParamB b{lambda, eta};
    OutputRecord rec;
    rec.command = "ortho";
    rec.params = {{"lambda", fmt_double(lambda)},
                  {"eta", fmt_double(eta)},
                  {"n-max", std::to_string(n_max)},
                  {"tol", fmt_double(tol)},
                  {"format", format}};
    const crr::OrthogonalityMatrix om = crr::orthogonality_matrix(b, n_max, tol);
    const std::vector<double> gamma = crr::gamma_seq(lambda, n_max);
    double max_offdiag = 0.0, max_diag_dev = 0.0;
    for (int m = 0; m <= n_max; ++m) {
        rec.rows.emplace_back("row_" + std::to_string(m), om.entries[m]);
        for (int n = m; n <= n_max; ++n) {
            if (m == n)
                max_diag_dev = std::max(max_diag_dev, std::fabs(om.entries[m][n] - gamma[n]));
            else
                max_offdiag = std::max(max_offdiag, std::fabs(om.entries[m][n]));
        }
    }
    rec.diagnostics.emplace_back("max_offdiag", max_offdiag);
    rec.diagnostics.emplace_back("max_diag_dev", max_diag_dev);
    rec.diagnostics.emplace_back("converged", om.converged ? 1.0 : 0.0);
    emit(rec, format);
    return om.converged ? 0 : 3;
}

int run_coulomb(int L, double eta, const std::string& grid, const std::string& checks,
                bool parallel, const std::string& format) {
    const std::vector<double> ws = parse_grid(grid);
    const crr::SeriesControl ctl = series_control_from_env();
    OutputRecord rec;
    rec.command = "coulomb";
    rec.params = {{"L", std::to_string(L)},
                  {"eta", fmt_double(eta)},
                  {"w-grid", grid},
                  {"check", checks},
                  {"format", format}};
    rec.rows.emplace_back("w", ws);
    rec.rows.emplace_back("F", map_grid(ws,
                                        [&](double w) { return crr::coulomb_f(L, eta, w, ctl); },
                                        parallel));
    int exit_code = 0;
    if (checks.find("ode") != std::string::npos) {
        double worst = 0.0;
        for (double w : ws) worst = std::max(worst, crr::coulomb_ode_residual(L, eta, w, ctl));
        rec.diagnostics.emplace_back("max_ode_residual", worst);
        if (worst > kOdeCheckTol) exit_code = 3;
    }
    if (checks.find("recurrence") != std::string::npos) {
        const int l_check = std::max(L, 1);
        double worst = 0.0;
        for (double w : ws)
            worst = std::max(worst, crr::powel_recurrence_residual(l_check, eta, w, ctl));
        rec.diagnostics.emplace_back("max_recurrence_residual", worst);
        if (worst > kRecurrenceCheckTol) exit_code = 3;
    }
    emit(rec, format);
    return exit_code;
}

int run_bessel(double alpha, const std::string& grid, bool parallel,
               const std::string& format) {
    const std::vector<double> ws = parse_grid(grid);
    const crr::SeriesControl ctl = series_control_from_env();
    OutputRecord rec;
    rec.command = "bessel";
    rec.params = {{"alpha", fmt_double(alpha)}, {"w-grid", grid}, {"format", format}};
    rec.rows.emplace_back("w", ws);
    rec.rows.emplace_back("J", map_grid(ws,
                                        [&](double w) { return crr::bessel_j(alpha, w, ctl); },
                                        parallel));
    emit(rec, format);
    return 0;
}

int run_expand(double lambda, double eta, const std::string& kind, int order, double x,
               double w, bool have_x, bool have_w, const std::string& format) {
    const ParamB b{lambda, eta};
    const crr::SeriesControl ctl = series_control_from_env();
    OutputRecord rec;
    rec.command = "expand";
    rec.params = {{"lambda", fmt_double(lambda)}, {"eta", fmt_double(eta)},
                  {"kind", kind},                 {"order", std::to_string(order)},
                  {"format", format}};
    if (have_x) rec.params.emplace("x", fmt_double(x));
    if (have_w) rec.params.emplace("w", fmt_double(w));

    if (kind == "appell" || kind == "weber") {
        if (!have_x || !have_w)
            throw CLI::ValidationError("expand", "--x and --w are required for kind " + kind);
        std::vector<double> monic(order + 1);
        for (int n = 0; n <= order; ++n) monic[n] = crr::monic_eval(b, n, x);
        rec.rows.emplace_back("monic_at_x", monic);
        if (kind == "appell") {
            const double series = crr::appell_series(b, x, w, order);
            const double reference = std::exp(x * w) * crr::ercw_n(b, w, ctl);
            rec.diagnostics.emplace_back("series", series);
            rec.diagnostics.emplace_back("reference", reference);
            rec.diagnostics.emplace_back("residual", std::fabs(series - reference));
        } else {
            const double lhs = crr::weber_genfunc_lhs(b, x, w);
            const double series = crr::weber_series(b, x, w, order);
            rec.diagnostics.emplace_back("lhs", lhs);
            rec.diagnostics.emplace_back("series", series);
            rec.diagnostics.emplace_back("residual", std::fabs(series - lhs));
        }
    } else if (kind == "sincos") {
        const crr::SinCosCoeffs sc = crr::sincos_coeffs(b, order);
        rec.rows.emplace_back("a", sc.a);
        rec.rows.emplace_back("b", sc.b);
        if (have_w) {
            rec.diagnostics.emplace_back(
                "residual_cos",
                crr::sincos_expansion_residual(b, w, order, crr::TrigKind::cosine, ctl));
            rec.diagnostics.emplace_back(
                "residual_sin",
                crr::sincos_expansion_residual(b, w, order, crr::TrigKind::sine, ctl));
            rec.diagnostics.emplace_back(
                "residual_combined",
                crr::sincos_expansion_residual(b, w, order, crr::TrigKind::combined, ctl));
        }
    } else if (kind == "acoeffs") {
        if (lambda < 1.0 || lambda != std::floor(lambda))
            throw std::domain_error("expand acoeffs: lambda must be a positive integer (L+1)");
        const int L = static_cast<int>(lambda) - 1;
        rec.rows.emplace_back("a_coeffs", crr::a_coeffs(L, eta, order));
    } else {
        throw CLI::ValidationError("expand", "unknown kind " + kind);
    }
    emit(rec, format);
    return 0;
}

int run_chain(double lambda, int n_max, const std::string& format) {
    OutputRecord rec;
    rec.command = "chain";
    rec.params = {{"lambda", fmt_double(lambda)},
                  {"n-max", std::to_string(n_max)},
                  {"format", format}};
    const crr::ChainSequences cs = crr::chain_sequences(lambda, n_max);
    std::vector<double> d(cs.d.begin() + std::min<size_t>(2, cs.d.size()), cs.d.end());
    std::vector<double> ell(cs.ell.begin() + std::min<size_t>(1, cs.ell.size()), cs.ell.end());
    rec.rows.emplace_back("d", d);
    rec.rows.emplace_back("ell", ell);
    if (!cs.bigL.empty()) {
        std::vector<double> bigL(cs.bigL.begin() + 1, cs.bigL.end());
        rec.rows.emplace_back("bigL", bigL);
        rec.rows.emplace_back("gamma", cs.gamma);
    }
    emit(rec, format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CRR polynomial and Coulomb wave function toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    bool parallel = false;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--parallel", parallel, "Parallelize grid evaluation");

    double lambda = 1.0, eta = 0.0, tol = 1e-8, alpha = 0.0, x = 0.0, w = 0.0;
    int n = 1, n_max = 4, L = 0, order = 10;
    std::string grid = "0:1:11", method = "recurrence", zmethod = "eigen", checks;
    std::string kind = "appell";

    auto* eval = app.add_subcommand("eval-poly", "Evaluate P_n on an x grid");
    eval->add_option("--lambda", lambda)->required();
    eval->add_option("--eta", eta)->required();
    eval->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
    eval->add_option("--x-grid", grid, "a:b:steps")->required();
    eval->add_option("--method", method)->check(CLI::IsMember({"recurrence", "hyper", "both"}));

    auto* zer = app.add_subcommand("zeros", "Zeros of P_n");
    zer->add_option("--lambda", lambda)->required();
    zer->add_option("--eta", eta)->required();
    zer->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    zer->add_option("--method", zmethod)->check(CLI::IsMember({"eigen", "electro", "both"}));

    auto* ort = app.add_subcommand("ortho", "Orthogonality matrix by quadrature");
    ort->add_option("--lambda", lambda)->required();
    ort->add_option("--eta", eta)->required();
    ort->add_option("--n-max", n_max)->required()->check(CLI::NonNegativeNumber);
    ort->add_option("--tol", tol);

    auto* cou = app.add_subcommand("coulomb", "Regular Coulomb wave F_L on a w grid");
    cou->add_option("--L", L)->required()->check(CLI::NonNegativeNumber);
    cou->add_option("--eta", eta)->required();
    cou->add_option("--w-grid", grid, "a:b:steps")->required();
    cou->add_option("--check", checks, "comma list: ode,recurrence");

    auto* bes = app.add_subcommand("bessel", "Bessel J_alpha on a w grid");
    bes->add_option("--alpha", alpha)->required();
    bes->add_option("--w-grid", grid, "a:b:steps")->required();

    auto* exp_cmd = app.add_subcommand("expand", "Generating-function expansions");
    exp_cmd->add_option("--lambda", lambda)->required();
    exp_cmd->add_option("--eta", eta)->required();
    exp_cmd->add_option("--kind", kind)
        ->required()
        ->check(CLI::IsMember({"appell", "weber", "sincos", "acoeffs"}));
    exp_cmd->add_option("--order", order)->required()->check(CLI::NonNegativeNumber);
    auto* xopt = exp_cmd->add_option("--x", x);
    auto* wopt = exp_cmd->add_option("--w", w);

    auto* cha = app.add_subcommand("chain", "Chain-sequence data for lambda");
    cha->add_option("--lambda", lambda)->required();
    cha->add_option("--n-max", n_max)->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (eval->parsed())
            return run_eval_poly(lambda, eta, n, grid, method, parallel, format);
        if (zer->parsed()) return run_zeros(lambda, eta, n, zmethod, format);
        if (ort->parsed()) return run_ortho(lambda, eta, n_max, tol, format);
        if (cou->parsed()) return run_coulomb(L, eta, grid, checks, parallel, format);
        if (bes->parsed()) return run_bessel(alpha, grid, parallel, format);
        if (exp_cmd->parsed())
            return run_expand(lambda, eta, kind, order, x, w, xopt->count() > 0,
                              wopt->count() > 0, format);
        if (cha->parsed()) return run_chain(lambda, n_max, format);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 64;
    } catch (const crr::convergence_error& e) {
        std::fprintf(stderr, "convergence flag: %s\n", e.what());
        return 3;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 2;
    }
    return 0;
}
