#include "auglag/run_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace auglag {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

const OuterRecord* last_recorded(const OuterLog& log) {
  const OuterRecord* rec = nullptr;
  for (const auto& row : log.rows)
    if (row.step != StepClass::NotSuccessful) rec = &row;
  if (!rec && !log.rows.empty()) rec = &log.rows.back();
  return rec;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_log_csv(const std::string& path, const OuterLog& log) {
  auto out = open_out(path);
  out << "k,n,alpha,rho,R,step_class,inner_iters,feas,compl,stop_residual,err_u_L2\n";
  for (const auto& r : log.rows) {
    out << r.k << ',' << r.n << ',' << format_double(r.alpha) << ',' << format_double(r.rho) << ','
        << format_double(r.R) << ',' << to_string(r.step) << ',' << r.inner_iterations << ','
        << format_double(r.feasibility) << ',' << format_double(r.complementarity) << ','
        << format_double(r.stop_residual) << ',' << (r.err_u ? format_double(*r.err_u) : "")
        << '\n';
  }
}

void write_summary_json(const std::string& path, const std::string& problem, int resolution,
                        double beta, const SolverParams& params, const OuterLog& log) {
  nlohmann::json j;
  j["problem"] = problem;
  j["resolution"] = resolution;
  j["params"] = {
      {"alpha1", params.alpha1}, {"rho1", params.rho1},   {"theta", params.theta},
      {"omega", params.omega},   {"tau", params.tau},     {"eps", params.eps},
      {"eps_i", params.eps_i},   {"beta", beta},          {"max_outer", params.max_outer},
      {"max_inner", params.max_inner},
  };
  const StepCounts c = log.counts();
  j["counts"] = {{"successful", c.successful},
                 {"intermediate", c.intermediate},
                 {"not_successful", c.not_successful}};
  const OuterRecord* rec = last_recorded(log);
  nlohmann::json fin;
  fin["alpha"] = rec ? rec->alpha : params.alpha1;
  fin["rho"] = rec ? rec->rho : params.rho1;
  fin["stop_residual"] = rec ? rec->stop_residual : 0.0;
  if (rec && rec->err_u) fin["err_u_L2"] = *rec->err_u;
  else fin["err_u_L2"] = nullptr;
  j["final"] = fin;
  j["converged"] = log.converged;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_error_curve_csv(const std::string& path, const OuterLog& log) {
  auto out = open_out(path);
  out << "k,alpha,err_u_L2,err_y_L2,err_y_sq_over_alpha,step_class\n";
  for (const auto& r : log.rows) {
    if (r.step == StepClass::NotSuccessful) continue;
    if (!r.err_u || !r.err_y) continue;
    out << r.k << ',' << format_double(r.alpha) << ',' << format_double(*r.err_u) << ','
        << format_double(*r.err_y) << ',' << format_double(*r.err_y * *r.err_y / r.alpha) << ','
        << to_string(r.step) << '\n';
  }
}

}  // namespace auglag
