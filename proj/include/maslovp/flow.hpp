#pragma once

#include <vector>

#include "maslovp/model.hpp"

namespace maslovp {

struct FlowOptions {
  int steps = 2048;
  /// Doubling stops once 2 * steps would exceed this.
  int max_steps = 32768;
  /// Richardson estimate must fall below accuracy * max(1, ||gamma(1)||_max).
  double accuracy = 1e-9;
  bool keep_samples = false;
};

/// Fundamental solution of y' = J B(t) y on [0, 1].
struct Monodromy {
  Matrix gamma_1;
  /// gamma(t) at every step point when FlowOptions::keep_samples is set.
  std::vector<double> times;
  std::vector<Matrix> samples;
  double ode_error_estimate = 0.0;
  int steps = 0;
  double symplectic_drift = 0.0;
  double det = 1.0;
};

/// Classical fixed-step RK4 without verification.
Matrix rk4_monodromy(const CoefficientPath& b, int steps, std::vector<Matrix>* samples = nullptr);

/// RK4 with Richardson verification against twice the step count; the step
/// count doubles until the estimate passes or the cap is hit.
Monodromy fundamental_solution(const CoefficientPath& b, const FlowOptions& options = {});

/// Smallest step count (from options.steps, doubling) meeting the accuracy
/// target; used to fix one step count for a family of related flows.
int verified_steps(const CoefficientPath& b, const FlowOptions& options = {});

struct FloquetNullity {
  int nu = 0;
  double gap = 0.0;
  double sigma_min = 0.0;
  double tau = 0.0;
  Matrix gamma_1;
};

/// nu_P(B) = dim ker(gamma(1) - P).
FloquetNullity floquet_nullity(const SymplecticBoundary& boundary, const CoefficientPath& b,
                               const FlowOptions& options = {}, double tol_scale = 1e-8);

FloquetNullity nullity_of_monodromy(const SymplecticBoundary& boundary, const Matrix& gamma_1,
                                    double tol_scale = 1e-8);

/// B~(t) = gamma_P(t)^T J gamma_P'(t) + gamma_P(t)^T B(t) gamma_P(t): the
/// coefficient of gamma_P(t)^{-1} gamma(t), a loop problem with P = I.
CoefficientPath tilde_transform(const SymplecticBoundary& boundary, const CoefficientPath& b);

}  // namespace maslovp
