#include "maslovp/certify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "maslovp/error.hpp"

namespace maslovp {

const Check* Certificate::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool Certificate::passed(const std::string& name) const {
  const Check* c = find(name);
  return c && c->pass;
}

bool Certificate::ok() const {
  for (const auto& c : checks) {
    if (c.required && !c.pass) return false;
  }
  return true;
}

void Certificate::add(Check c) {
  for (auto& existing : checks) {
    if (existing.name == c.name) {
      existing = std::move(c);
      return;
    }
  }
  checks.push_back(std::move(c));
}

void Certificate::merge(const Certificate& other) {
  for (const auto& c : other.checks) add(c);
  if (other.b0) b0 = other.b0;
  if (other.b1) b1 = other.b1;
  if (other.b2) b2 = other.b2;
}

Json Certificate::to_json() const {
  Json list = Json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"pass", c.pass}, {"required", c.required}, {"evidence", c.evidence}});
  }
  Json indices = Json::object();
  if (b0) indices["B0"] = index_pair_json(*b0);
  if (b1) indices["B1"] = index_pair_json(*b1);
  if (b2) indices["B2"] = index_pair_json(*b2);
  return {{"checks", std::move(list)}, {"indices", std::move(indices)}, {"predicted_solutions", predicted_solutions},
          {"all_required_pass", ok()}};
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Smallest eigenvalue of upper(t) - lower(t) - shift I over a grid.
double ordering_margin(const CoefficientPath& lower, const CoefficientPath& upper, double shift) {
  return min_ordering_margin(lower.shifted(shift), upper);
}

}  // namespace

Certificate check_hypotheses(const SymplecticBoundary& boundary, const Hamiltonian& h, const CoefficientPath& b0,
                             const CoefficientPath& b1, const CoefficientPath& b2, double r,
                             const CertifyOptions& options) {
  if (h.n() != boundary.n()) throw Error(ErrorKind::InvalidArgument, "Hamiltonian dimension does not match P");
  const int dim = boundary.dim();
  Certificate cert;

  {
    const Matrix& p = boundary.P();
    const Matrix& j = boundary.J();
    const double orth = max_abs(p.transpose() * p - Matrix::Identity(dim, dim));
    const double symp = max_abs(p.transpose() * j * p - j);
    const double recon = max_abs(boundary.gamma_P(1.0) - p);
    Check c{"orthogonal_symplectic", orth <= 1e-10 && symp <= 1e-10 && recon <= 1e-8, true,
            {{"orthogonality_error", orth}, {"symplecticity_error", symp}, {"log_reconstruction_error", recon},
             {"near_branch_cut", boundary.near_branch_cut()}}};
    cert.add(std::move(c));
  }

  {
    const DerivativeCheck d = check_derivatives(h, boundary, 100, options.seed);
    Check c{"H_equivariance", d.equivariance_violation <= 1e-10, true,
            {{"max_violation", d.equivariance_violation}, {"gradient_rel_error", d.gradient_rel_error},
             {"hessian_rel_error", d.hessian_rel_error}}};
    cert.add(std::move(c));
    Check fd{"H_derivatives", d.gradient_rel_error <= 1e-6 && d.hessian_rel_error <= 1e-5, true,
             {{"gradient_rel_error", d.gradient_rel_error}, {"hessian_rel_error", d.hessian_rel_error}}};
    cert.add(std::move(fd));
  }

  {
    double grad0 = 0.0, b0_err = 0.0;
    const Vector zero = Vector::Zero(dim);
    for (int i = 0; i <= 32; ++i) {
      const double t = i / 32.0;
      grad0 = std::max(grad0, h.gradient(t, zero).cwiseAbs().maxCoeff());
      b0_err = std::max(b0_err, max_abs(h.hessian(t, zero) - b0(t)));
    }
    if (b0_err > 1e-8) {
      throw Error(ErrorKind::Inconsistent, "B0 differs from H''(t, 0) by " + std::to_string(b0_err));
    }
    cert.add({"H0_critical_origin", grad0 <= 1e-10, true, {{"max_gradient_at_origin", grad0}, {"B0_error", b0_err}}});
  }

  {
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    double lower_margin = std::numeric_limits<double>::infinity();
    double upper_margin = std::numeric_limits<double>::infinity();
    for (int s = 0; s < options.sandwich_samples; ++s) {
      Vector x(dim);
      for (int i = 0; i < dim; ++i) x(i) = normal(rng);
      x *= (r + 3.0 * r * unit(rng)) / x.norm();
      const double t = unit(rng);
      const Matrix hess = h.hessian(t, x);
      lower_margin = std::min(lower_margin, min_eigenvalue(hess - b1(t)));
      upper_margin = std::min(upper_margin, min_eigenvalue(b2(t) - hess));
    }
    const double margin = std::min(lower_margin, upper_margin);
    cert.add({"Hinf_sandwich", margin >= -options.semidefinite_slack, true,
              {{"radius", r}, {"samples", options.sandwich_samples}, {"lower_margin", lower_margin},
               {"upper_margin", upper_margin}, {"margin", margin}}});
  }

  const IndexOptions& io = options.homotopy.index;
  const IndexPair p1 = maslov_index(boundary, b1, io);
  const IndexPair p2 = maslov_index(boundary, b2, io);
  cert.b1 = p1;
  cert.b2 = p2;
  cert.add({"index_agreement_i_B1_eq_i_B2", p1.i_P == p2.i_P, true, {{"i_B1", p1.i_P}, {"i_B2", p2.i_P}}});
  cert.add({"nullity_B2_zero", p2.nu_P == 0, true, {{"nu_B2", p2.nu_P}, {"floquet_nu_B2", p2.floquet_nu}}});
  return cert;
}

Certificate twist_certificate(const SymplecticBoundary& boundary, const CoefficientPath& b0, const CoefficientPath& b1,
                              std::optional<double> l, const CertifyOptions& options) {
  Certificate cert;
  const int n = boundary.n();
  const double slack = options.semidefinite_slack;
  const IndexOptions& io = options.homotopy.index;

  const double commutator = max_J_commutator(b1);
  cert.add({"J_commutation_B1", commutator <= 1e-10, true, {{"max_commutator", commutator}}});

  // largest shifts allowed by B1 + lI <= B0 (upper) and B0 + lI <= B1 (lower)
  const double l_upper = min_ordering_margin(b1, b0);
  const double l_lower = min_ordering_margin(b0, b1);
  double chosen = l ? *l : (l_upper >= l_lower ? l_upper : l_lower);
  std::string which = "none";
  if (ordering_margin(b1, b0, chosen) >= -slack) which = "upper";
  else if (ordering_margin(b0, b1, chosen) >= -slack) which = "lower";
  const bool l_ok = chosen >= kTwoPi - slack;
  cert.add({"twist_condition", which != "none" && l_ok, true,
            {{"condition", which}, {"l", chosen}, {"l_auto", !l.has_value()}, {"upper_margin", l_upper}, {"lower_margin", l_lower},
             {"l_at_least_2pi", l_ok}}});

  const IndexPair p0 = maslov_index(boundary, b0, io);
  const IndexPair p1 = maslov_index(boundary, b1, io);
  const IndexPair p1l = maslov_index(boundary, b1.shifted(chosen), io);
  cert.b0 = p0;
  cert.b1 = p1;
  cert.add({"gap_inequality", p1.i_P + 2 * n < p1l.i_P, false,
            {{"i_B1", p1.i_P}, {"i_B1_plus_lI", p1l.i_P}, {"two_n", 2 * n}, {"l", chosen}}});

  bool separation = false;
  Json evidence = {{"condition", which}};
  if (which == "upper") {
    separation = p1.i_P + p1.nu_P + 2 * n < p0.i_P;
    evidence["lhs"] = p1.i_P + p1.nu_P + 2 * n;
    evidence["rhs"] = p0.i_P;
  } else if (which == "lower") {
    separation = p0.i_P + p0.nu_P + 2 * n < p1.i_P;
    evidence["lhs"] = p0.i_P + p0.nu_P + 2 * n;
    evidence["rhs"] = p1.i_P;
  }
  cert.add({"index_separation", separation, false, std::move(evidence)});
  return cert;
}

Certificate interior_crossing_certificate(const SymplecticBoundary& boundary, const CoefficientPath& b0,
                                    const CoefficientPath& b1, const CertifyOptions& options) {
  Certificate cert;
  const int n = boundary.n();
  const double eps = options.homotopy.ordering_eps;
  const bool b1_below = min_ordering_margin(b1, b0) >= eps;
  const bool b0_below = min_ordering_margin(b0, b1) >= eps;
  if (!b1_below && !b0_below) throw Error(ErrorKind::OrderingViolated, "B0 and B1 are not strictly ordered");

  HomotopyOptions ho = options.homotopy;
  ho.include_start = false;
  const CrossingList list = b1_below ? crossing_scan(boundary, b1, b0, ho) : crossing_scan(boundary, b0, b1, ho);
  const IndexPair p0 = maslov_index(boundary, b0, options.homotopy.index);
  cert.b0 = p0;
  int predicted = list.total > 0 ? 1 : 0;
  if (predicted == 1 && p0.nu_P == 0 && list.total >= 2 * n) predicted = 2;
  cert.predicted_solutions = predicted;
  cert.add({"interior_crossings", predicted > 0, false,
            {{"ordering", b1_below ? "B1<B0" : "B0<B1"}, {"interior", crossing_list_json(list)},
             {"nu_B0", p0.nu_P}, {"predicted_solutions", predicted}}});
  return cert;
}

Certificate final_criterion(const SymplecticBoundary& boundary, const CoefficientPath& b0, const CoefficientPath& b1,
                            const CertifyOptions& options) {
  Certificate cert;
  const int n = boundary.n();
  const IndexPair p0 = maslov_index(boundary, b0, options.homotopy.index);
  const IndexPair p1 = maslov_index(boundary, b1, options.homotopy.index);
  cert.b0 = p0;
  cert.b1 = p1;
  const bool excluded = p1.i_P < p0.i_P || p1.i_P > p0.i_P + p0.nu_P;
  int predicted = excluded ? 1 : 0;
  if (excluded && p0.nu_P == 0 && std::abs(p1.i_P - p0.i_P) >= 2 * n) predicted = 2;
  cert.predicted_solutions = predicted;
  cert.add({"final_criterion", excluded, true,
            {{"i_B0", p0.i_P}, {"nu_B0", p0.nu_P}, {"i_B1", p1.i_P}, {"two_n", 2 * n},
             {"predicted_solutions", predicted}}});
  return cert;
}

Certificate certify(const SymplecticBoundary& boundary, const Hamiltonian& h, const CoefficientPath& b0,
                    const CoefficientPath& b1, const CoefficientPath& b2, double r, std::optional<double> l,
                    const CertifyOptions& options) {
  Certificate cert = check_hypotheses(boundary, h, b0, b1, b2, r, options);
  cert.merge(twist_certificate(boundary, b0, b1, l, options));
  const Certificate fin = final_criterion(boundary, b0, b1, options);
  cert.merge(fin);
  cert.predicted_solutions = cert.ok() ? fin.predicted_solutions : 0;
  return cert;
}

}  // namespace maslovp
