#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "maslovp/problem.hpp"

namespace maslovp {

/// Command and flags of one CLI invocation. Unset flags fall back to the
/// problem's settings.
struct RunOptions {
  std::string command;
  std::string problem_file;
  std::string path = "B";
  std::optional<int> m;
  std::optional<double> tol;
  std::optional<int> grid;
  std::optional<unsigned> threads;
  std::optional<double> l;
  std::optional<double> r;
  std::string from = "B1";
  std::string to = "B2";
  std::optional<int> starts;
  std::optional<std::uint64_t> seed;
  bool timings = false;
  std::string csv;
};

struct RunReport {
  Json document;
  /// 0 success, 2 a required check failed, 1 operational error.
  int exit_code = 0;

  std::string serialize() const;
};

inline constexpr const char* kSchemaVersion = "1";

/// Loads the problem, runs the command and never throws: errors become a
/// report with exit code 1.
RunReport run(const RunOptions& options);

/// Same, with an already parsed problem.
RunReport run(const RunOptions& options, const Problem& problem);

}  // namespace maslovp
