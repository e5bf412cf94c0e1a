#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "auglag/diagnostics.hpp"
#include "auglag/run_io.hpp"
#include "auglag/solver.hpp"

namespace {

struct RunConfig {
  std::string problem = "example1";
  int cells = 0;  // 0: per-dimension default (4096 in 1D, 128 in 2D)
  auglag::SolverParams params;
  std::optional<double> beta;
  std::vector<double> batch_beta;
  std::string out_dir = "runs";
  bool plot_data = true;
};

struct Instance {
  std::string label;
  auglag::ProblemSpec spec;
  int cells = 0;
};

std::string beta_label(double beta) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", beta);
  return buf;
}

bool execute(const RunConfig& cfg, const Instance& inst) {
  using clock = std::chrono::steady_clock;
  const auto dir = std::filesystem::path(cfg.out_dir) / inst.label;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    std::cerr << inst.label << ": cannot create output directory " << dir << "\n";
    return false;
  }

  const auto t0 = clock::now();
  const auglag::Grid grid = auglag::make_grid(inst.spec, inst.cells);
  const auglag::DiscreteProblem dp = auglag::discretize(inst.spec, grid);
  const auglag::EllipticOperator op(grid, cfg.params.tol_lin);
  const auglag::RunResult result = auglag::run(dp, op, cfg.params);
  const double seconds = std::chrono::duration<double>(clock::now() - t0).count();

  auglag::write_log_csv((dir / "log.csv").string(), result.log);
  auglag::write_summary_json((dir / "summary.json").string(), inst.spec.name, inst.cells,
                             dp.beta, cfg.params, result.log);
  if (cfg.plot_data && dp.exact) {
    auglag::write_error_curve_csv((dir / "error_vs_alpha.csv").string(), result.log);
  }

  const auto counts = result.log.counts();
  const auto* last = result.log.rows.empty() ? nullptr : &result.log.rows.back();
  std::cout << inst.label << ": " << (result.log.converged ? "converged" : "NOT converged")
            << " after " << result.log.rows.size() << " outer steps (" << counts.successful
            << " successful, " << counts.intermediate << " intermediate, "
            << counts.not_successful << " not successful)";
  if (last) std::cout << ", final alpha=" << last->alpha << " rho=" << last->rho;
  std::cout << ", " << seconds << " s\n";
  return result.log.converged;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Augmented-Lagrange solver for state-constrained elliptic optimal control "
               "with L1-sparse controls"};
  app.set_config("--config", "", "Flat key=value config file; command-line flags win");

  const auto positive = CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          if (std::stod(s) > 0.0) return {};
        } catch (...) {
        }
        return "must be positive";
      },
      "POSITIVE", "positive");
  const auto open_unit = CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          const double v = std::stod(s);
          if (v > 0.0 && v < 1.0) return {};
        } catch (...) {
        }
        return "must lie in (0,1)";
      },
      "(0,1)", "open_unit");
  const auto greater_one = CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          if (std::stod(s) > 1.0) return {};
        } catch (...) {
        }
        return "must be greater than 1";
      },
      ">1", "greater_one");

  app.add_option("--problem", cfg.problem, "Problem name")
      ->check(CLI::IsMember({"example1", "example2_rect", "example3", "tikhonov_sanity"}));
  app.add_option("--cells", cfg.cells, "Cells per axis (default 4096 in 1D, 128 in 2D)")
      ->check(CLI::Range(4, 1 << 24));
  app.add_option("--alpha1", cfg.params.alpha1, "Initial Tikhonov weight")->check(positive);
  app.add_option("--rho1", cfg.params.rho1, "Initial penalty parameter")->check(positive);
  app.add_option("--theta", cfg.params.theta, "Penalty growth factor")->check(greater_one);
  app.add_option("--omega", cfg.params.omega, "Tikhonov decay factor")->check(open_unit);
  app.add_option("--tau", cfg.params.tau, "Sufficient-decrease factor")->check(open_unit);
  app.add_option("--eps", cfg.params.eps, "Outer stopping tolerance")->check(positive);
  app.add_option("--eps-i", cfg.params.eps_i, "Intermediate-step tolerance")->check(positive);
  double beta_flag = 0.0;
  auto* beta_opt = app.add_option("--beta", beta_flag, "Sparsity weight override")->check(positive);
  app.add_option("--batch-beta", cfg.batch_beta,
                 "Comma-separated beta values; runs one instance per value concurrently")
      ->delimiter(',');
  app.add_option("--out", cfg.out_dir, "Output directory (one subdirectory per run)")
      ->envname("AUGLAG_OUT");
  app.add_option("--max-outer", cfg.params.max_outer, "Outer iteration cap")
      ->check(CLI::Range(1, 100000));
  app.add_option("--max-inner", cfg.params.max_inner, "Inner iteration cap")
      ->check(CLI::Range(1, 100000));
  app.add_flag("--plot-data,!--no-plot-data", cfg.plot_data,
               "Emit error-vs-alpha plot data when an exact solution exists");

  CLI11_PARSE(app, argc, argv);
  if (beta_opt->count() > 0) cfg.beta = beta_flag;

  std::vector<Instance> instances;
  try {
    cfg.params.validate();
    if (cfg.batch_beta.empty()) {
      Instance inst;
      inst.spec = auglag::make_problem(cfg.problem, cfg.beta);
      inst.label = cfg.problem;
      instances.push_back(std::move(inst));
    } else {
      for (double b : cfg.batch_beta) {
        if (!(b > 0.0)) throw std::invalid_argument("batch-beta values must be positive");
        Instance inst;
        inst.spec = auglag::make_problem(cfg.problem, b);
        inst.label = cfg.problem + "_beta_" + beta_label(b);
        instances.push_back(std::move(inst));
      }
    }
    for (auto& inst : instances)
      inst.cells = cfg.cells > 0 ? cfg.cells : (inst.spec.dim == 1 ? 4096 : 128);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::vector<std::future<bool>> futures;
  futures.reserve(instances.size());
  for (const auto& inst : instances) {
    futures.push_back(std::async(std::launch::async, [&cfg, &inst]() -> bool {
      try {
        return execute(cfg, inst);
      } catch (const std::exception& e) {
        std::cerr << inst.label << ": error: " << e.what() << "\n";
        return false;
      }
    }));
  }

  bool all_ok = true;
  for (auto& f : futures) all_ok = f.get() && all_ok;
  return all_ok ? 0 : 2;
}
