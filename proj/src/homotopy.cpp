#include "maslovp/homotopy.hpp"

#include <algorithm>
#include <cmath>

#include "maslovp/error.hpp"
#include "maslovp/parallel.hpp"

namespace maslovp {

namespace {

double sigma_min_at(const SymplecticBoundary& boundary, const CoefficientPath& b1, const CoefficientPath& b2, double s,
                    int steps) {
  const Matrix g = rk4_monodromy(b1.lerp(b2, s), steps);
  return kernel_dimension(g - boundary.P()).sigma_min;
}

struct Bracket {
  double lo, hi;
};

// Golden-section search for the minimiser of f on [lo, hi].
template <class F>
double golden(F&& f, double lo, double hi, double width) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

int count_local_minima(const std::vector<double>& v) {
  int count = 0;
  const int last = static_cast<int>(v.size()) - 1;
  for (int i = 1; i < last; ++i) {
    if (v[i] < v[i - 1] && v[i] <= v[i + 1]) ++count;
  }
  return count;
}

CrossingList scan_once(const SymplecticBoundary& boundary, const CoefficientPath& b1, const CoefficientPath& b2,
                       const HomotopyOptions& options, int grid, int fine_steps) {
  CrossingList out;
  out.grid_used = grid;
  out.fine_steps = fine_steps;
  out.coarse_steps = std::max(64, fine_steps / 8);
  const double tol = options.index.floquet_tol;

  std::vector<double> sigma(grid + 1);
  parallel_for(grid + 1, [&](std::size_t i) {
    sigma[i] = sigma_min_at(boundary, b1, b2, static_cast<double>(i) / grid, out.coarse_steps);
  });

  std::vector<Bracket> brackets;
  for (int i = 0; i <= grid; ++i) {
    const bool left = i == 0 || sigma[i] < sigma[i - 1];
    const bool right = i == grid || sigma[i] <= sigma[i + 1];
    // near a crossing sigma_min is V-shaped, so the minimum is small against
    // the rise to its neighbours; smooth positive minima are skipped
    const double rise = std::max(i > 0 ? sigma[i - 1] : sigma[i], i < grid ? sigma[i + 1] : sigma[i]) - sigma[i];
    if (left && right && sigma[i] <= 4.0 * rise + 1e-6) {
      brackets.push_back({std::max(0.0, (i - 1.0) / grid), std::min(1.0, (i + 1.0) / grid)});
    }
  }

  std::vector<Crossing> found(brackets.size());
  std::vector<int> ambiguous(brackets.size(), 0);
  parallel_for(brackets.size(), [&](std::size_t k) {
    const Bracket br = brackets[k];
    auto f = [&](double s) { return sigma_min_at(boundary, b1, b2, s, fine_steps); };
    std::vector<double> sub(17);
    for (int i = 0; i <= 16; ++i) sub[i] = f(br.lo + (br.hi - br.lo) * i / 16.0);
    const double s = golden(f, br.lo, br.hi, options.refine_width);
    const Matrix g = rk4_monodromy(b1.lerp(b2, s), fine_steps);
    const FloquetNullity fl = nullity_of_monodromy(boundary, g, tol);
    found[k] = {s, fl.nu, options.refine_width, fl.sigma_min};
    if (fl.nu > 0 && count_local_minima(sub) > 1) {
      // a second dip inside the bracket: confirm it is a genuine crossing
      int genuine = 0;
      for (int i = 1; i < 16; ++i) {
        if (sub[i] < sub[i - 1] && sub[i] <= sub[i + 1]) {
          const double lo = br.lo + (br.hi - br.lo) * (i - 1) / 16.0;
          const double hi = br.lo + (br.hi - br.lo) * (i + 1) / 16.0;
          const double si = golden(f, lo, hi, options.refine_width);
          if (nullity_of_monodromy(boundary, rk4_monodromy(b1.lerp(b2, si), fine_steps), tol).nu > 0 &&
              std::abs(si - s) > 1e-8) {
            ++genuine;
          }
        }
      }
      ambiguous[k] = genuine;
    }
  });
  for (std::size_t k = 0; k < found.size(); ++k) {
    if (ambiguous[k] > 0) {
      throw Error(ErrorKind::UnresolvedCrossing,
                  "two crossings inside one bracket near s = " + std::to_string(found[k].s));
    }
  }

  const double edge = 1e-8;
  if (options.include_start) {
    const FloquetNullity start = nullity_of_monodromy(boundary, rk4_monodromy(b1, fine_steps), tol);
    if (start.nu > 0) out.crossings.push_back({0.0, start.nu, 0.0, start.sigma_min});
  }
  for (const Crossing& c : found) {
    if (c.nu == 0 || c.s <= edge || c.s >= 1.0 - edge) continue;
    if (!out.crossings.empty() && std::abs(out.crossings.back().s - c.s) <= edge) continue;
    out.crossings.push_back(c);
  }
  std::sort(out.crossings.begin(), out.crossings.end(), [](const Crossing& a, const Crossing& b) { return a.s < b.s; });
  for (const auto& c : out.crossings) out.total += c.nu;
  return out;
}

}  // namespace

CrossingList crossing_scan(const SymplecticBoundary& boundary, const CoefficientPath& b1, const CoefficientPath& b2,
                           const HomotopyOptions& options) {
  if (b1.dim() != boundary.dim() || b2.dim() != boundary.dim()) {
    throw Error(ErrorKind::InvalidArgument, "path dimension does not match P");
  }
  const double margin = min_ordering_margin(b1, b2);
  if (margin < options.ordering_eps) {
    throw Error(ErrorKind::OrderingViolated, "min eigenvalue of B2 - B1 is " + std::to_string(margin));
  }
  const int fine_steps = std::max(verified_steps(b1, options.index.flow), verified_steps(b2, options.index.flow));
  for (int grid = options.grid;; grid *= 2) {
    try {
      return scan_once(boundary, b1, b2, options, grid, fine_steps);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnresolvedCrossing || 2 * grid > options.max_grid) throw;
    }
  }
}

RelativeIndex relative_index(const SymplecticBoundary& boundary, const CoefficientPath& b1, const CoefficientPath& b2,
                             const HomotopyOptions& options) {
  RelativeIndex out;
  out.crossings = crossing_scan(boundary, b1, b2, options);
  out.total = out.crossings.total;
  out.i_from = maslov_index(boundary, b1, options.index).i_P;
  out.i_to = maslov_index(boundary, b2, options.index).i_P;
  if (out.total != out.i_to - out.i_from) {
    throw Error(ErrorKind::TheoremMismatch, "crossing sum " + std::to_string(out.total) + " vs index difference " +
                                                std::to_string(out.i_to - out.i_from));
  }
  return out;
}

}  // namespace maslovp
