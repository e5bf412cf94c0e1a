#pragma once

#include <string>

#include "auglag/solver.hpp"

namespace auglag {

/// Deterministic shortest-roundtrip-ish formatting (%.17g) used for all
/// emitted numbers, so identical runs produce byte-identical files.
std::string format_double(double v);

/// One row per outer iteration with the frozen column set
/// k,n,alpha,rho,R,step_class,inner_iters,feas,compl,stop_residual,err_u_L2
/// (err_u_L2 empty when the problem has no exact solution).
void write_log_csv(const std::string& path, const OuterLog& log);

/// Frozen summary keys: problem, resolution, params, counts{successful,
/// intermediate, not_successful}, final{alpha, rho, stop_residual,
/// err_u_L2 (null without exact solution)} plus a converged flag.
void write_summary_json(const std::string& path, const std::string& problem, int resolution,
                        double beta, const SolverParams& params, const OuterLog& log);

/// Error-over-alpha curve for plotting: successful and intermediate rows
/// only. Requires a log with error columns.
void write_error_curve_csv(const std::string& path, const OuterLog& log);

}  // namespace auglag
