#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maslovp/hamiltonian.hpp"
#include "maslovp/homotopy.hpp"
#include "maslovp/serialize.hpp"

namespace maslovp {

struct Check {
  std::string name;
  bool pass = false;
  /// Optional checks are reported but do not affect the verdict.
  bool required = true;
  Json evidence = Json::object();
};

struct Certificate {
  std::vector<Check> checks;
  std::optional<IndexPair> b0, b1, b2;
  int predicted_solutions = 0;

  const Check* find(const std::string& name) const;
  bool passed(const std::string& name) const;
  /// All required checks pass.
  bool ok() const;
  void add(Check c);
  void merge(const Certificate& other);
  Json to_json() const;
};

struct CertifyOptions {
  HomotopyOptions homotopy;
  /// Sandwich samples with r <= |x| <= 4r.
  int sandwich_samples = 200;
  std::uint64_t seed = 1;
  double semidefinite_slack = 1e-8;
};

/// (H), (H0) and (H_inf): equivariance, H'(t, 0) = 0, B1 <= H'' <= B2 for
/// |x| >= r, i_P(B1) = i_P(B2) and nu_P(B2) = 0. Throws Inconsistent when B0
/// is not H''(t, 0).
Certificate check_hypotheses(const SymplecticBoundary& boundary, const Hamiltonian& h, const CoefficientPath& b0,
                             const CoefficientPath& b1, const CoefficientPath& b2, double r,
                             const CertifyOptions& options = {});

/// Twist condition B1 + lI <= B0 or B0 + lI <= B1 with l >= 2 pi, J B1 = B1 J,
/// the gap inequality i_P(B1) + 2n < i_P(B1 + lI) and the resulting index
/// separation. With no l given, the largest admissible l is taken from the
/// ordering margins.
Certificate twist_certificate(const SymplecticBoundary& boundary, const CoefficientPath& b0, const CoefficientPath& b1,
                              std::optional<double> l = std::nullopt, const CertifyOptions& options = {});

/// Interior crossings of the segment between strictly ordered B0 and B1.
Certificate interior_crossing_certificate(const SymplecticBoundary& boundary, const CoefficientPath& b0,
                                    const CoefficientPath& b1, const CertifyOptions& options = {});

/// i_P(B1) outside [i_P(B0), i_P(B0) + nu_P(B0)] gives one solution; with
/// nu_P(B0) = 0 and |i_P(B1) - i_P(B0)| >= 2n, two.
Certificate final_criterion(const SymplecticBoundary& boundary, const CoefficientPath& b0, const CoefficientPath& b1,
                            const CertifyOptions& options = {});

/// Everything above; predicted_solutions is zero unless every required
/// check passes.
Certificate certify(const SymplecticBoundary& boundary, const Hamiltonian& h, const CoefficientPath& b0,
                    const CoefficientPath& b1, const CoefficientPath& b2, double r,
                    std::optional<double> l = std::nullopt, const CertifyOptions& options = {});

}  // namespace maslovp
