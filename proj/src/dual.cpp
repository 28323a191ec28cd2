#include "maslovp/dual.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "maslovp/error.hpp"
#include "maslovp/parallel.hpp"

namespace maslovp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double spectrum_distance(const SymplecticBoundary& boundary, double l) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < boundary.phases().size(); ++k) {
    best = std::min(best, std::abs(std::remainder(-l - boundary.phases()(k), kTwoPi)));
  }
  return best;
}

double min_shifted_eigenvalue(const CoefficientPath& b, double l, int points) {
  if (auto c = b.constant_value()) return min_eigenvalue(*c) + l;
  const Quadrature& q = gauss_legendre(points);
  double best = std::numeric_limits<double>::infinity();
  Matrix bt;
  for (double t : q.nodes) {
    b.eval(t, bt);
    best = std::min(best, min_eigenvalue(bt));
  }
  return best + l;
}

}  // namespace

ShiftCheck shift_check(const SymplecticBoundary& boundary, const CoefficientPath& b, double l) {
  ShiftCheck out;
  out.spectrum_distance = spectrum_distance(boundary, l);
  out.min_eigenvalue = min_shifted_eigenvalue(b, l, 256);
  out.valid = out.spectrum_distance >= 1e-6 && out.min_eigenvalue >= 1e-6;
  return out;
}

bool check_shift(const SymplecticBoundary& boundary, const CoefficientPath& b, double l) {
  return shift_check(boundary, b, l).valid;
}

double select_shift(const SymplecticBoundary& boundary, const std::vector<CoefficientPath>& paths, double min_l,
                    double clearance) {
  double l = min_l;
  for (const auto& p : paths) l = std::max(l, 1e-3 - min_shifted_eigenvalue(p, 0.0, 256));
  l = std::ceil(l * 8.0) / 8.0;
  for (int guard = 0; guard < 1000; ++guard, l += 0.125) {
    if (spectrum_distance(boundary, l) < clearance) continue;
    bool ok = true;
    for (const auto& p : paths) ok = ok && check_shift(boundary, p, l);
    if (ok) return l;
  }
  throw Error(ErrorKind::ShiftInvalid, "no admissible shift found");
}

DualIndexReport dual_index(const SymplecticBoundary& boundary, const CoefficientPath& b, double l,
                           const IndexOptions& options) {
  const ShiftCheck sc = shift_check(boundary, b, l);
  if (!sc.valid) {
    throw Error(ErrorKind::ShiftInvalid, "l = " + std::to_string(l) + ": spectrum distance " +
                                             std::to_string(sc.spectrum_distance) + ", min eigenvalue of B + lI " +
                                             std::to_string(sc.min_eigenvalue));
  }
  IndexEngine engine(boundary, b, options);
  DualIndexReport out;
  out.l = l;

  for (int m = options.m; m + 2 * options.stride <= options.max_m; m += options.stride) {
    const int top = m + 2 * options.stride;
    const WPBasis basis(boundary, top);
    double cond = 0.0;
    const int dim = boundary.dim();
    const auto weight = [&](double t, Matrix& w) {
      Matrix bt;
      b.eval(t, bt);
      bt.diagonal().array() += l;
      const Vector ev = sym_eigenvalues(bt);
      cond = std::max(cond, ev(dim - 1) / ev(0));
      w = bt.llt().solve(Matrix::Identity(dim, dim));
      w = 0.5 * (w + w.transpose());
    };
    const FormAssembly gc = assemble_weighted_form(basis, weight, options.quadrature);
    out.condition_number = cond;

    std::vector<DualLevel> levels(3);
    parallel_for(3, [&](std::size_t k) {
      const int mk = m + static_cast<int>(k) * options.stride;
      const auto [off, size] = basis.sub_range(mk);
      Matrix q = gc.form.block(off, off, size, size);
      q.diagonal().array() -= (basis.a_eigenvalues().segment(off, size).array() + l).inverse();
      const Vector eig = sym_eigenvalues(q);
      const double tau = zero_band(eig, options.zero_band);
      const SignCount s = count_signs(eig, tau);
      levels[k] = {mk, s.negative, s.zero, tau};
    });
    bool same = true;
    for (int k = 1; k < 3; ++k) {
      same = same && levels[k].i_dual == levels[0].i_dual && levels[k].nu_dual == levels[0].nu_dual;
    }
    if (!same) continue;

    out.i_dual = levels[0].i_dual;
    out.nu_dual = levels[0].nu_dual;
    out.m_used = m;
    out.converged = true;
    out.tau = levels[0].tau;
    out.levels = std::move(levels);
    out.i_P = engine.index().i_P;
    out.offset = out.i_dual - out.i_P;
    if (auto k = boundary.order()) {
      const int n = boundary.n();
      const int wraps = static_cast<int>(std::floor(l / kTwoPi)) / *k;
      out.M = 2 * m * n - out.offset;
      out.M_lower = 2 * n * (m - 1 - wraps);
      out.M_upper = 2 * n * (m - wraps);
      out.shell_bounds_ok = out.M_lower <= out.M && out.M <= out.M_upper;
    }
    return out;
  }
  throw Error(ErrorKind::NotConverged, "dual counts did not stabilise up to m = " + std::to_string(options.max_m));
}

DualDifference dual_difference_check(const SymplecticBoundary& boundary, const CoefficientPath& b1,
                                     const CoefficientPath& b2, double l, const HomotopyOptions& options) {
  DualDifference out;
  out.lhs = relative_index(boundary, b1, b2, options).total;
  out.rhs = dual_index(boundary, b2, l, options.index).i_dual - dual_index(boundary, b1, l, options.index).i_dual;
  out.equal = out.lhs == out.rhs;
  if (!out.equal) {
    throw Error(ErrorKind::Mismatch,
                "relative index " + std::to_string(out.lhs) + " vs dual difference " + std::to_string(out.rhs));
  }
  return out;
}

OffsetInvariance offset_invariance_check(const SymplecticBoundary& boundary, const std::vector<CoefficientPath>& paths,
                                         double l, const IndexOptions& options) {
  if (paths.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two coefficient paths");
  std::vector<DualIndexReport> reports(paths.size());
  parallel_for(paths.size(), [&](std::size_t i) { reports[i] = dual_index(boundary, paths[i], l, options); });
  OffsetInvariance out;
  out.offset = reports[0].offset;
  bool bounds = true;
  bool have_bounds = false;
  for (const auto& r : reports) {
    out.offsets.push_back(r.offset);
    if (r.shell_bounds_ok) {
      have_bounds = true;
      bounds = bounds && *r.shell_bounds_ok;
    }
  }
  for (int o : out.offsets) {
    if (o != out.offset) {
      std::string list;
      for (int v : out.offsets) list += (list.empty() ? "" : ", ") + std::to_string(v);
      throw Error(ErrorKind::OffsetNotConstant, "offsets " + list);
    }
  }
  if (have_bounds) out.bounds_ok = bounds;
  return out;
}

}  // namespace maslovp
