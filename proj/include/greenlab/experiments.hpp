#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "greenlab/bounds.hpp"
#include "greenlab/fd_solver.hpp"
#include "greenlab/radial_green.hpp"
#include "greenlab/verifier.hpp"

namespace greenlab {

enum class ExperimentKind { MSweep, CSweep, BetaSweep, Verify, FdCheck, Blowup };

std::string to_string(ExperimentKind k);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares of y against x.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct ExperimentReport {
    ExperimentKind kind = ExperimentKind::MSweep;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::optional<LinearFit> fit;  // MSweep only
    nlohmann::json config_echo;
    bool passed = true;  // Verify only: max residual below threshold

    void write_csv(const std::string& path) const;
    nlohmann::json to_json() const;
};

/// G_m(r_eval) per m, plus the least-squares fit of G against log m.
/// Rule: when r2 < 0.999 with >= 6 points, the two smallest m are dropped
/// and the fit repeated.
ExperimentReport run_m_sweep(double C, int n, std::vector<int> m_list,
                             double r_eval = 0.5,
                             const QuadratureConfig& q = {});

ExperimentReport run_c_sweep(int m, int n, std::vector<double> C_list,
                             double r_eval = 0.5,
                             const QuadratureConfig& q = {});

ExperimentReport run_beta_sweep(double C, int n, std::vector<double> beta_list,
                                double r_eval = 0.5,
                                const QuadratureConfig& q = {});

/// Wraps identity_residual over the certified family; passed iff the max
/// residual is below 1e-6.
ExperimentReport run_verify(const DriftSpec& spec, int n, double mis_scale = 1.0,
                            const QuadratureConfig& q = {});

ExperimentReport run_fd_check(int m, double C, int N, double rho_factor = 4.0,
                              const QuadratureConfig& q = {});

ExperimentReport run_blowup(double C, std::vector<int> m_list, int N);

/// Writes <out_dir>/report.json and <out_dir>/rows.csv.
void write_report(const ExperimentReport& report, const std::string& out_dir);

}  // namespace greenlab
