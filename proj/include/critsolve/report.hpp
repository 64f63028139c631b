#pragma once

#include <optional>
#include <string>
#include <vector>

#include "critsolve/analytic.hpp"
#include "critsolve/cn.hpp"
#include "critsolve/config.hpp"

namespace critsolve {

/// Per-representation comparison record: the eigenvalue by every requested
/// route plus dispatch and timing metadata.  A failed case carries its error
/// message instead of aborting the batch.
struct CaseReport {
    SigmaKind kind = SigmaKind::Constant;
    std::optional<double> analytic_lambda;
    std::optional<double> analytic_keff;
    std::optional<double> quadrature_lambda;
    std::vector<ConvergencePoint> cn_series;
    std::vector<double> cn_lambdas;  // aligned with cn_series
    std::optional<double> coupling_lambda;
    int coupling_iterations = 0;
    bool coupling_converged = false;
    std::string case_tag;
    std::map<std::string, double> wall_times_ms;
    std::optional<std::string> error;
    std::vector<ProfilePoint> profile;
};

/// Executes every requested (kind, method) combination.  Solver failures are
/// captured per case.  When the config enables file output, writes
/// report.json, table.csv and the per-kind profile_<kind>.csv /
/// sigma_v_<kind>.csv files under config.output_dir after all cases finish.
std::vector<CaseReport> run(const RunConfig& config);

/// Serializes reports; exposed separately so outputs can be regenerated.
void write_outputs(const RunConfig& config,
                   const std::vector<CaseReport>& reports);

/// Fixed 12-significant-digit float formatting used for all CSV output.
std::string format_float(double value);

} // namespace critsolve
