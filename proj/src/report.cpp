#include "maslovp/report.hpp"

#include <chrono>
#include <fstream>
#include <numbers>

#include "maslovp/certify.hpp"
#include "maslovp/dual.hpp"
#include "maslovp/error.hpp"
#include "maslovp/parallel.hpp"
#include "maslovp/shoot.hpp"

namespace maslovp {

std::string RunReport::serialize() const { return canonical_dump(document) + "\n"; }

namespace {

struct Resolved {
  IndexOptions index;
  HomotopyOptions homotopy;
  int m = 8;
  double tol = 1e-8;
  int grid = 512;
};

Resolved resolve(const RunOptions& o, const Settings& s) {
  Resolved r;
  r.m = o.m.value_or(s.m);
  r.tol = o.tol.value_or(s.tol);
  r.grid = o.grid.value_or(s.grid);
  if (r.m < 4) throw Error(ErrorKind::InvalidArgument, "--m must be at least 4");
  if (!(r.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "--tol must be positive");
  if (r.grid < 8) throw Error(ErrorKind::InvalidArgument, "--grid must be at least 8");
  r.index.m = r.m;
  r.index.zero_band = r.tol;
  r.index.floquet_tol = r.tol;
  r.index.flow.steps = s.steps;
  r.index.quadrature.points = s.quad_points;
  r.homotopy.index = r.index;
  r.homotopy.grid = r.grid;
  return r;
}

Json tolerances_json(const Resolved& r) {
  const IndexOptions& i = r.index;
  return {{"m", i.m},
          {"stride", i.stride},
          {"max_m", i.max_m},
          {"zero_band", i.zero_band},
          {"floquet_tol", i.floquet_tol},
          {"quad_points", i.quadrature.points},
          {"quad_max_points", i.quadrature.max_points},
          {"quad_tol", i.quadrature.tol},
          {"flow_steps", i.flow.steps},
          {"flow_max_steps", i.flow.max_steps},
          {"flow_accuracy", i.flow.accuracy},
          {"grid", r.homotopy.grid},
          {"max_grid", r.homotopy.max_grid},
          {"refine_width", r.homotopy.refine_width},
          {"ordering_eps", r.homotopy.ordering_eps}};
}

Json flags_json(const RunOptions& o) {
  Json j = Json::object();
  j["path"] = o.path;
  if (o.m) j["m"] = *o.m;
  if (o.tol) j["tol"] = *o.tol;
  if (o.grid) j["grid"] = *o.grid;
  if (o.l) j["l"] = *o.l;
  if (o.r) j["r"] = *o.r;
  if (o.starts) j["starts"] = *o.starts;
  if (o.seed) j["seed"] = *o.seed;
  if (o.command == "relative-index") {
    j["from"] = o.from;
    j["to"] = o.to;
  }
  return j;
}

Json cmd_nullity(const Problem& p, const RunOptions& o, const Resolved& r) {
  const CoefficientPath& b = p.path(o.path);
  const Monodromy mono = fundamental_solution(b, r.index.flow);
  const FloquetNullity fl = nullity_of_monodromy(p.P(), mono.gamma_1, r.tol);
  return {{"nu_P", fl.nu},
          {"gap", fl.gap},
          {"sigma_min", fl.sigma_min},
          {"tau", fl.tau},
          {"gamma_1", matrix_json(mono.gamma_1)},
          {"ode_error_estimate", mono.ode_error_estimate},
          {"steps", mono.steps},
          {"symplectic_drift", mono.symplectic_drift},
          {"det", mono.det}};
}

Json cmd_index(const Problem& p, const RunOptions& o, const Resolved& r) {
  return index_pair_json(maslov_index(p.P(), p.path(o.path), r.index), true);
}

Json cmd_dual(const Problem& p, const RunOptions& o, const Resolved& r) {
  const CoefficientPath& b = p.path(o.path);
  std::optional<double> l = o.l ? o.l : p.settings.l;
  const bool automatic = !l;
  if (!l) l = select_shift(p.P(), {b});
  const DualIndexReport rep = dual_index(p.P(), b, *l, r.index);
  Json j = dual_report_json(rep);
  j["l_auto"] = automatic;
  const IndexPair ip = maslov_index(p.P(), b, r.index);
  j["nu_P"] = ip.nu_P;
  j["nu_dual_equals_nu_P"] = rep.nu_dual == ip.nu_P;
  return j;
}

Json cmd_relative(const Problem& p, const RunOptions& o, const Resolved& r) {
  const RelativeIndex rel = relative_index(p.P(), p.path(o.from), p.path(o.to), r.homotopy);
  return {{"relative_index", rel.total},
          {"i_from", rel.i_from},
          {"i_to", rel.i_to},
          {"crossings", crossing_list_json(rel.crossings)}};
}

Json cmd_spectrum(const Problem& p, const RunOptions& o, const Resolved& r) {
  const CoefficientPath& b = p.path(o.path);
  IndexEngine engine(p.P(), b, r.index);
  const Vector galerkin = engine.galerkin_spectrum(r.m);
  const Monodromy mono = fundamental_solution(b, r.index.flow);
  Eigen::EigenSolver<Matrix> es(mono.gamma_1);
  std::vector<std::pair<double, double>> multipliers;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    multipliers.emplace_back(es.eigenvalues()(i).real(), es.eigenvalues()(i).imag());
  }
  std::sort(multipliers.begin(), multipliers.end());
  Json mult = Json::array();
  for (const auto& [re, im] : multipliers) mult.push_back({re, im});
  // the few eigenvalues closest to zero decide the index and nullity
  std::vector<double> near(galerkin.data(), galerkin.data() + galerkin.size());
  std::sort(near.begin(), near.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  near.resize(std::min<std::size_t>(near.size(), 8));
  std::sort(near.begin(), near.end());
  return {{"phases", vector_json(p.P().phases())},
          {"m", r.m},
          {"galerkin_eigenvalues", vector_json(galerkin)},
          {"galerkin_nearest_zero", near},
          {"floquet_multipliers", mult},
          {"order", p.P().order() ? Json(*p.P().order()) : Json(nullptr)},
          {"dim_ker_P_minus_I", p.P().dim_ker_P_minus_I()}};
}

CoefficientPath origin_hessian(const Problem& p) {
  if (p.has_path("B0")) return p.path("B0");
  const Hamiltonian& h = *p.hamiltonian;
  const Vector zero = Vector::Zero(2 * p.n);
  if (h.autonomous()) return CoefficientPath::constant(h.hessian(0.0, zero));
  auto hp = p.hamiltonian;
  return CoefficientPath::function(2 * p.n, [hp, zero](double t) { return hp->hessian(t, zero); }, "origin_hessian");
}

Json cmd_certify(const Problem& p, const RunOptions& o, const Resolved& r, int& exit_code) {
  if (!p.hamiltonian) throw Error(ErrorKind::InvalidArgument, "certify needs a hamiltonian");
  const std::optional<double> radius = o.r ? o.r : p.settings.r;
  if (!radius) throw Error(ErrorKind::InvalidArgument, "certify needs a radius r (--r or settings.r)");
  CertifyOptions co;
  co.homotopy = r.homotopy;
  co.seed = o.seed.value_or(p.settings.seed);
  const std::optional<double> l = o.l ? o.l : p.settings.twist;
  const Certificate cert =
      certify(p.P(), *p.hamiltonian, origin_hessian(p), p.path("B1"), p.path("B2"), *radius, l, co);
  if (!cert.ok()) exit_code = 2;
  return cert.to_json();
}

Json cmd_solve(const Problem& p, const RunOptions& o, const Resolved& r) {
  if (!p.hamiltonian) throw Error(ErrorKind::InvalidArgument, "solve needs a hamiltonian");
  ShootOptions so;
  so.index = r.index;
  const int starts = o.starts.value_or(p.settings.starts);
  const std::uint64_t seed = o.seed.value_or(p.settings.seed);
  const SolveResult res = find_solutions(*p.hamiltonian, p.P(), starts, seed, so);

  Json sols = Json::array();
  for (const auto& s : res.solutions) {
    Json traj = Json::array();
    for (std::size_t k = 0; k < s.trajectory.size(); ++k) {
      Json row = Json::array();
      row.push_back(s.times[k]);
      for (Eigen::Index i = 0; i < s.trajectory[k].size(); ++i) row.push_back(s.trajectory[k](i));
      traj.push_back(std::move(row));
    }
    sols.push_back({{"x0", vector_json(s.x0)},
                    {"residual", s.residual},
                    {"ode_error", s.ode_error},
                    {"action_like_norm", s.action_like_norm},
                    {"energy_drift", s.energy_drift},
                    {"energy_ok", s.energy_ok},
                    {"is_trivial", s.is_trivial},
                    {"degenerate", s.degenerate},
                    {"index_pair", s.has_index ? index_pair_json(s.index_pair) : Json(nullptr)},
                    {"orbit", s.orbit},
                    {"start", s.start},
                    {"newton_iterations", s.newton_iterations},
                    {"multiple_shooting", s.multiple_shooting},
                    {"trajectory", std::move(traj)}});
  }
  Json orbits = Json::array();
  for (const auto& orb : res.orbits) {
    orbits.push_back({{"representative", vector_json(orb.representative)},
                      {"members", orb.members},
                      {"is_trivial", orb.is_trivial},
                      {"radius", orb.radius},
                      {"index_pair", orb.has_index ? index_pair_json(orb.index_pair) : Json(nullptr)}});
  }
  if (!o.csv.empty()) {
    std::ofstream csv(o.csv);
    if (!csv) throw Error(ErrorKind::InvalidArgument, "cannot write CSV file '" + o.csv + "'");
    csv << "solution,orbit,t";
    for (int i = 0; i < 2 * p.n; ++i) csv << ",x" << i;
    csv << "\n";
    char buf[40];
    for (std::size_t s = 0; s < res.solutions.size(); ++s) {
      const PSolution& sol = res.solutions[s];
      for (std::size_t k = 0; k < sol.trajectory.size(); ++k) {
        csv << s << ',' << sol.orbit;
        std::snprintf(buf, sizeof buf, ",%.17g", sol.times[k]);
        csv << buf;
        for (Eigen::Index i = 0; i < sol.trajectory[k].size(); ++i) {
          std::snprintf(buf, sizeof buf, ",%.17g", sol.trajectory[k](i));
          csv << buf;
        }
        csv << "\n";
      }
    }
  }
  return {{"starts", res.starts},
          {"seed", seed},
          {"converged_starts", res.converged},
          {"failed_starts", res.failed},
          {"blowups", res.blowups},
          {"symmetry_orbits_used", res.symmetry_used},
          {"points", static_cast<int>(res.solutions.size())},
          {"nontrivial_points", res.nontrivial_points()},
          {"orbit_count", static_cast<int>(res.orbits.size())},
          {"nontrivial_orbits", res.nontrivial_orbits()},
          {"solutions", std::move(sols)},
          {"orbits", std::move(orbits)},
          {"residual_tol", so.residual_tol},
          {"energy_tol", so.energy_tol},
          {"dedup_distance", so.dedup_distance}};
}

Json error_json(const std::string& kind, std::string message) {
  const std::string prefix = kind + ": ";
  if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
  return {{"kind", kind}, {"message", message}};
}

}  // namespace

RunReport run(const RunOptions& options, const Problem& problem) {
  RunReport report;
  Json& doc = report.document;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = options.command;
  doc["inputs"] = {{"problem_file", options.problem_file}, {"problem", problem.document}, {"flags", flags_json(options)}};
  const auto start = std::chrono::steady_clock::now();
  try {
    const unsigned threads = options.threads.value_or(problem.settings.threads.value_or(0));
    if (threads > 0) set_thread_count(threads);
    const Resolved r = resolve(options, problem.settings);
    doc["diagnostics"]["tolerances"] = tolerances_json(r);
    int exit_code = 0;
    Json results;
    const std::string& c = options.command;
    if (c == "nullity") results = cmd_nullity(problem, options, r);
    else if (c == "index") results = cmd_index(problem, options, r);
    else if (c == "dual-index") results = cmd_dual(problem, options, r);
    else if (c == "relative-index") results = cmd_relative(problem, options, r);
    else if (c == "spectrum") results = cmd_spectrum(problem, options, r);
    else if (c == "certify") results = cmd_certify(problem, options, r, exit_code);
    else if (c == "solve") results = cmd_solve(problem, options, r);
    else throw Error(ErrorKind::InvalidArgument, "unknown command '" + c + "'");
    doc["results"] = std::move(results);
    doc["status"] = exit_code == 0 ? "ok" : "check_failed";
    report.exit_code = exit_code;
  } catch (const Error& e) {
    doc["status"] = "error";
    doc["error"] = error_json(to_string(e.kind()), e.what());
    report.exit_code = 1;
  } catch (const std::exception& e) {
    doc["status"] = "error";
    doc["error"] = error_json("Internal", e.what());
    report.exit_code = 1;
  }
  if (options.timings) {
    doc["diagnostics"]["timings"]["total_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

RunReport run(const RunOptions& options) {
  try {
    const Problem problem = load_problem(options.problem_file);
    return run(options, problem);
  } catch (const Error& e) {
    RunReport report;
    report.document = {{"schema_version", kSchemaVersion},
                       {"command", options.command},
                       {"inputs", {{"problem_file", options.problem_file}, {"flags", flags_json(options)}}},
                       {"status", "error"},
                       {"error", error_json(to_string(e.kind()), e.what())}};
    report.exit_code = 1;
    return report;
  }
}

}  // namespace maslovp
