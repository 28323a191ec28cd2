#pragma once

#include <vector>

#include "maslovp/index.hpp"

namespace maslovp {

struct HomotopyOptions {
  int grid = 512;
  int max_grid = 8192;
  double refine_width = 1e-10;
  /// Required lower bound on the smallest eigenvalue of B2 - B1.
  double ordering_eps = 1e-6;
  /// Count the s = 0 term (the half-open window [0, 1)); the open variant
  /// (0, 1) drops it.
  bool include_start = true;
  IndexOptions index;
};

struct Crossing {
  double s = 0.0;
  int nu = 0;
  double refined_width = 0.0;
  double sigma_min = 0.0;
};

struct CrossingList {
  std::vector<Crossing> crossings;
  int total = 0;
  int grid_used = 0;
  int coarse_steps = 0;
  int fine_steps = 0;
};

/// Nullity crossings of s -> (1 - s) B1 + s B2 on [0, 1).
CrossingList crossing_scan(const SymplecticBoundary& boundary, const CoefficientPath& b1, const CoefficientPath& b2,
                           const HomotopyOptions& options = {});

struct RelativeIndex {
  int total = 0;
  int i_from = 0;
  int i_to = 0;
  CrossingList crossings;
};

/// Sum of crossing nullities; throws TheoremMismatch unless it equals
/// i_P(B2) - i_P(B1).
RelativeIndex relative_index(const SymplecticBoundary& boundary, const CoefficientPath& b1, const CoefficientPath& b2,
                             const HomotopyOptions& options = {});

}  // namespace maslovp
