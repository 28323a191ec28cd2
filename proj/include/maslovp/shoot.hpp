#pragma once

#include <cstdint>
#include <vector>

#include "maslovp/hamiltonian.hpp"
#include "maslovp/index.hpp"

namespace maslovp {

struct ShootOptions {
  int steps = 2048;
  int max_steps = 32768;
  /// Richardson target for x(1): accuracy * max(1, |x(1)|).
  double accuracy = 1e-9;
  int max_iterations = 60;
  double residual_tol = 1e-10;
  double dedup_distance = 1e-6;
  double blowup = 1e6;
  int segments = 4;
  /// Multiple shooting takes over once ||F_{k+1}|| / ||F_k|| exceeds this.
  double contraction_switch = 0.5;
  std::vector<double> radii = {0.5, 1.0, 2.0, 5.0, 10.0};
  /// Trajectory samples stored per solution (uniform in t, endpoints included).
  int trajectory_samples = 65;
  double trivial_threshold = 1e-8;
  double energy_tol = 1e-8;
  bool compute_indices = true;
  IndexOptions index;
};

struct ShootResidual {
  Vector residual;
  Matrix jacobian;
  Vector x1;
  /// Richardson estimate of the error in x(1).
  double ode_error = 0.0;
  int steps = 0;
};

/// F(x0) = x(1) - P x0 and DF = Phi(1) - P for x' = J H'(t, x), with Phi the
/// variational flow. Throws BlowUp when |x(t)| exceeds options.blowup.
ShootResidual shoot_residual(const Hamiltonian& h, const SymplecticBoundary& boundary, const Vector& x0,
                             const ShootOptions& options = {});

struct PSolution {
  Vector x0;
  std::vector<double> times;
  std::vector<Vector> trajectory;
  double residual = 0.0;
  double ode_error = 0.0;
  double action_like_norm = 0.0;
  double energy_drift = 0.0;
  bool energy_ok = true;
  bool is_trivial = false;
  /// Nullity of the linearisation is positive (the solution is not isolated).
  bool degenerate = false;
  IndexPair index_pair;
  bool has_index = false;
  int orbit = 0;
  int start = 0;
  int newton_iterations = 0;
  bool multiple_shooting = false;
};

struct SolutionOrbit {
  Vector representative;
  int members = 0;
  bool is_trivial = false;
  double radius = 0.0;
  IndexPair index_pair;
  bool has_index = false;
};

struct SolveResult {
  std::vector<PSolution> solutions;
  std::vector<SolutionOrbit> orbits;
  int starts = 0;
  int converged = 0;
  int failed = 0;
  int blowups = 0;
  bool symmetry_used = false;
  int nontrivial_points() const;
  int nontrivial_orbits() const;
};

/// Deterministic start points: a Halton sequence offset by the seed, cycling
/// through the ball radii.
std::vector<Vector> start_points(int dim, int starts, std::uint64_t seed, const std::vector<double>& radii);

/// Multi-start damped Newton shooting with duplicate removal and orbit
/// grouping under x -> exp(phi J) x for radial autonomous H.
SolveResult find_solutions(const Hamiltonian& h, const SymplecticBoundary& boundary, int starts, std::uint64_t seed,
                           const ShootOptions& options = {});

/// Maslov P-index of B(t) = H''(t, x(t)) along an accepted solution. Throws
/// EquivarianceBroken when P^T B(1) P differs from B(0).
IndexPair solution_index(const Hamiltonian& h, const SymplecticBoundary& boundary, const Vector& x0,
                         const ShootOptions& options = {});

}  // namespace maslovp
