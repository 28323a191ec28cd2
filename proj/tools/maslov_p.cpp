// maslov-p: command-line front end for the Maslov P-index toolkit.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "maslovp/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Maslov P-index computations for linear and nonlinear Hamiltonian systems with P-boundary conditions"};
  app.require_subcommand(1);
  app.fallthrough();

  maslovp::RunOptions opts;
  std::string json_path;
  int m = 0, grid = 0, starts = 0;
  double tol = 0.0, l = 0.0, r = 0.0;
  unsigned threads = 0;
  std::uint64_t seed = 0;

  auto* m_opt = app.add_option("--m", m, "Initial truncation level (Fourier shells)");
  auto* tol_opt = app.add_option("--tol", tol, "Relative zero band and kernel tolerance");
  app.add_option("--json", json_path, "Also write the report to this file");
  auto* grid_opt = app.add_option("--grid", grid, "Crossing-scan grid size");
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads (default: logical cores)");
  app.add_option("--path", opts.path, "Coefficient path used by single-path commands")->capture_default_str();
  app.add_flag("--timings", opts.timings, "Include wall-clock timings in the report");

  const auto add_file = [&](CLI::App* sub) {
    sub->add_option("problem", opts.problem_file, "Problem file (JSON)")->required();
  };
  CLI::App* nullity = app.add_subcommand("nullity", "dim ker(gamma(1) - P) of a coefficient path");
  CLI::App* index = app.add_subcommand("index", "Maslov P-index pair (i_P, nu_P)");
  CLI::App* dual = app.add_subcommand("dual-index", "l-dual Morse index");
  CLI::App* relative = app.add_subcommand("relative-index", "Relative index along an ordered segment");
  CLI::App* spectrum = app.add_subcommand("spectrum", "Galerkin spectrum and Floquet multipliers");
  CLI::App* certify = app.add_subcommand("certify", "Check the twist-condition hypotheses");
  CLI::App* solve = app.add_subcommand("solve", "Find P-solutions by multi-start shooting");
  for (CLI::App* sub : {nullity, index, dual, relative, spectrum, certify, solve}) add_file(sub);

  auto* l_opt = dual->add_option("--l", l, "Shift l (chosen automatically when omitted)");
  relative->add_option("--from", opts.from, "Lower path name")->capture_default_str();
  relative->add_option("--to", opts.to, "Upper path name")->capture_default_str();
  auto* r_opt = certify->add_option("--r", r, "Radius beyond which the Hessian sandwich is checked");
  auto* twist_opt = certify->add_option("--l", l, "Twist constant l (largest admissible when omitted)");
  auto* starts_opt = solve->add_option("--starts", starts, "Number of Newton starts");
  auto* seed_opt = solve->add_option("--seed", seed, "Seed of the start sequence");
  auto* cert_seed_opt = certify->add_option("--seed", seed, "Seed of the sandwich samples");
  solve->add_option("--csv", opts.csv, "Write trajectory samples as CSV");

  CLI11_PARSE(app, argc, argv);

  opts.command = app.get_subcommands().front()->get_name();
  if (*m_opt) opts.m = m;
  if (*tol_opt) opts.tol = tol;
  if (*grid_opt) opts.grid = grid;
  if (*threads_opt) opts.threads = threads;
  if (*l_opt || *twist_opt) opts.l = l;
  if (*r_opt) opts.r = r;
  if (*starts_opt) opts.starts = starts;
  if (*seed_opt || *cert_seed_opt) opts.seed = seed;

  const maslovp::RunReport report = maslovp::run(opts);
  const std::string text = report.serialize();
  std::cout << text;
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << json_path << "\n";
      return 1;
    }
    out << text;
  }
  if (report.exit_code == 1 && report.document.contains("error")) {
    std::cerr << report.document["error"]["kind"].get<std::string>() << ": "
              << report.document["error"]["message"].get<std::string>() << "\n";
  }
  return report.exit_code;
}
