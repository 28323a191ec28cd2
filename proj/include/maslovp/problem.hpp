#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "maslovp/hamiltonian.hpp"
#include "maslovp/serialize.hpp"

namespace maslovp {

/// Solver settings from the problem file; command-line flags override them.
struct Settings {
  int m = 8;
  double tol = 1e-8;
  int grid = 512;
  int steps = 2048;
  int quad_points = 256;
  std::optional<double> l;
  std::optional<double> r;
  std::optional<double> twist;
  int starts = 200;
  std::uint64_t seed = 1;
  std::optional<unsigned> threads;
};

/// Parsed problem document:
///   {"n": int,
///    "P": {"kind": "identity" | "rotation" | "matrix", "theta"?: float, "entries"?: [[...]]},
///    "paths": {name: path},
///    "hamiltonian"?: {"kind": "radial", "a", "c", "alpha", "q"?} | {"kind": "quadratic", "b"},
///    "settings"?: {...}}
/// with path one of
///   {"kind": "constant", "value": [[...]]} or {"kind": "constant", "scalar": b},
///   {"kind": "trig", "c0": [[...]], "cos"?: [[[...]]], "sin"?: [[[...]]], "frame"?: "none" | "boundary"},
///   {"kind": "samples", "values": [[[...]], ...]}.
struct Problem {
  int n = 0;
  std::optional<SymplecticBoundary> boundary;
  std::map<std::string, CoefficientPath> paths;
  std::shared_ptr<const Hamiltonian> hamiltonian;
  Settings settings;
  Json document;

  const SymplecticBoundary& P() const { return *boundary; }
  bool has_path(const std::string& name) const { return paths.count(name) > 0; }
  /// Throws InvalidArgument naming the missing path.
  const CoefficientPath& path(const std::string& name) const;
};

/// Throws ParseError with line and column for malformed JSON and with the
/// offending location for schema violations.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& file);

/// Line and column (both 1-based) of a byte offset.
std::pair<int, int> line_column(const std::string& text, std::size_t byte);

}  // namespace maslovp
