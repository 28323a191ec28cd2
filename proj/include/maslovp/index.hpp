#pragma once

#include <memory>
#include <vector>

#include "maslovp/basis.hpp"
#include "maslovp/flow.hpp"

namespace maslovp {

struct IndexOptions {
  /// First truncation level; convergence compares m, m + stride, m + 2 stride.
  int m = 8;
  int stride = 4;
  /// Largest level ever assembled before giving up with NotConverged.
  int max_m = 64;
  /// Zero band tau = zero_band * max(|lambda_min|, |lambda_max|).
  double zero_band = 1e-8;
  QuadratureOptions quadrature;
  FlowOptions flow;
  /// Cross-check the Galerkin zero band against dim ker(gamma(1) - P).
  bool check_floquet = true;
  double floquet_tol = 1e-8;
};

/// Counts at one truncation level.
struct IndexLevel {
  int m = 0;
  int i_P = 0;
  int nu_P = 0;
  int neg_A = 0;
  double tau = 0.0;
  double gap = 0.0;
};

/// Maslov P-index pair (i_P, nu_P) with truncation diagnostics.
struct IndexPair {
  int i_P = 0;
  int nu_P = 0;
  int m_used = 0;
  double zero_band_gap = 0.0;
  bool converged = false;
  double tau = 0.0;
  /// Factor applied to the default zero band (1, 10 or 0.1) to match Floquet.
  double tau_factor = 1.0;
  int floquet_nu = -1;
  double floquet_gap = 0.0;
  std::vector<IndexLevel> levels;
};

/// Caches the spectral basis and the B-form for one (P, B) pair and answers
/// index queries for the shifted family B + sI, whose form is B_form + sI
/// because the basis is L2-orthonormal.
class IndexEngine {
 public:
  IndexEngine(const SymplecticBoundary& boundary, const CoefficientPath& b, IndexOptions options = {});

  /// (i_P, nu_P) of B + shift * I.
  IndexPair index(double shift = 0.0);

  /// Eigenvalues of the Galerkin form A - B at truncation level m (ascending).
  Vector galerkin_spectrum(int m);

  /// Counts at a single level, without convergence loop or Floquet check.
  IndexLevel count(int m, double shift, double tau_factor = 1.0);

  const SymplecticBoundary& boundary() const { return boundary_; }
  const CoefficientPath& path() const { return path_; }
  const IndexOptions& options() const { return options_; }
  const WPBasis& basis();
  const FormAssembly& b_form();

 private:
  void ensure_level(int m);

  SymplecticBoundary boundary_;
  CoefficientPath path_;
  IndexOptions options_;
  std::unique_ptr<WPBasis> basis_;
  FormAssembly form_;
};

/// i_P(B) as the relative Morse count #neg(A - B) - #neg(A) on truncations of
/// W_P, nu_P as the zero band of A - B, cross-checked against Floquet.
IndexPair maslov_index(const SymplecticBoundary& boundary, const CoefficientPath& b, const IndexOptions& options = {});

/// Index of the generating path gamma_P(t) = exp(t M1), i.e. of B_P = -J M1.
IndexPair index_of_gamma_P(const SymplecticBoundary& boundary, const IndexOptions& options = {});

struct PerturbationRow {
  double s = 0.0;
  IndexPair plus;
  IndexPair minus;
};

struct PerturbationScan {
  double s0 = 0.0;
  /// Distance to the nearest crossing above (B + sI) and below (B - sI).
  double crossing_above = 0.0;
  double crossing_below = 0.0;
  IndexPair base;
  std::vector<PerturbationRow> rows;
};

/// Finds s0 as half the distance to the nearest nullity crossing of
/// s -> B + sI and verifies, at s in {s0/4, s0/2, s0}:
///   nu(B +- sI) = 0, i(B - sI) = i(B), i(B + sI) = i(B) + nu(B).
/// Throws IdentityViolated when any identity fails.
PerturbationScan perturbation_scan(const SymplecticBoundary& boundary, const CoefficientPath& b,
                                   const IndexOptions& options = {});

struct BridgeOffset {
  int offset = 0;
  int i_B = 0;
  int i_gamma_P = 0;
  int i_tilde = 0;
  /// The value n the relation is stated with under its own normalization.
  int reference = 0;
};

/// i_P(B) - i_P(B_P) - i_I(B~) with B~ = tilde_transform(P, B).
BridgeOffset bridge_offset(const SymplecticBoundary& boundary, const CoefficientPath& b,
                           const IndexOptions& options = {});

}  // namespace maslovp
