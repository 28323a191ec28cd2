#pragma once

#include <optional>
#include <vector>

#include "maslovp/homotopy.hpp"
#include "maslovp/index.hpp"

namespace maslovp {

struct ShiftCheck {
  bool valid = false;
  /// Distance from -l to the spectrum {2 pi j + phi_k} of A.
  double spectrum_distance = 0.0;
  /// Smallest eigenvalue of B(t) + lI over the quadrature nodes.
  double min_eigenvalue = 0.0;
};

ShiftCheck shift_check(const SymplecticBoundary& boundary, const CoefficientPath& b, double l);
bool check_shift(const SymplecticBoundary& boundary, const CoefficientPath& b, double l);

/// Smallest l >= min_l, on a 1/8 lattice, that is valid for every path and
/// keeps -l at least `clearance` away from the spectrum of A.
double select_shift(const SymplecticBoundary& boundary, const std::vector<CoefficientPath>& paths, double min_l = 1.0,
                    double clearance = 0.05);

struct DualLevel {
  int m = 0;
  int i_dual = 0;
  int nu_dual = 0;
  double tau = 0.0;
};

struct DualIndexReport {
  double l = 0.0;
  int i_dual = 0;
  int nu_dual = 0;
  int m_used = 0;
  bool converged = false;
  /// i_dual - i_P(B) at the same truncation.
  int offset = 0;
  int i_P = 0;
  /// M = 2 m n - offset and its bracket, when P has finite order k.
  std::optional<bool> shell_bounds_ok;
  int M = 0;
  int M_lower = 0;
  int M_upper = 0;
  double condition_number = 0.0;
  double tau = 0.0;
  std::vector<DualLevel> levels;
};

/// Negative and zero counts of G_C - G_Lambda with G_C the L2 form of
/// (B + lI)^{-1} and G_Lambda = diag(1 / (lambda_i + l)).
DualIndexReport dual_index(const SymplecticBoundary& boundary, const CoefficientPath& b, double l,
                           const IndexOptions& options = {});

struct DualDifference {
  int lhs = 0;
  int rhs = 0;
  bool equal = false;
};

/// relative_index(B1, B2) against i_l*(B2) - i_l*(B1); throws Mismatch when
/// they differ.
DualDifference dual_difference_check(const SymplecticBoundary& boundary, const CoefficientPath& b1,
                                     const CoefficientPath& b2, double l, const HomotopyOptions& options = {});

struct OffsetInvariance {
  int offset = 0;
  std::vector<int> offsets;
  std::optional<bool> bounds_ok;
};

/// i_l*(B) - i_P(B) across the list; throws OffsetNotConstant if it varies.
OffsetInvariance offset_invariance_check(const SymplecticBoundary& boundary, const std::vector<CoefficientPath>& paths,
                                         double l, const IndexOptions& options = {});

}  // namespace maslovp
