#include "maslovp/index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maslovp/error.hpp"
#include "maslovp/parallel.hpp"

namespace maslovp {

IndexEngine::IndexEngine(const SymplecticBoundary& boundary, const CoefficientPath& b, IndexOptions options)
    : boundary_(boundary), path_(b), options_(options) {
  if (b.dim() != boundary.dim()) throw Error(ErrorKind::InvalidArgument, "path dimension does not match P");
  if (options_.m < 1 || options_.stride < 1) throw Error(ErrorKind::InvalidArgument, "truncation must be positive");
}

void IndexEngine::ensure_level(int m) {
  if (m > options_.max_m) {
    throw Error(ErrorKind::NotConverged, "truncation level " + std::to_string(m) + " exceeds cap " +
                                             std::to_string(options_.max_m));
  }
  if (basis_ && basis_->m() >= m) return;
  basis_ = std::make_unique<WPBasis>(boundary_, m);
  form_ = assemble_B_form(*basis_, path_, options_.quadrature);
}

const WPBasis& IndexEngine::basis() {
  ensure_level(options_.m + 2 * options_.stride);
  return *basis_;
}

const FormAssembly& IndexEngine::b_form() {
  ensure_level(options_.m + 2 * options_.stride);
  return form_;
}

Vector IndexEngine::galerkin_spectrum(int m) {
  ensure_level(m);
  const auto [off, size] = basis_->sub_range(m);
  Matrix q = -form_.form.block(off, off, size, size);
  q.diagonal() += basis_->a_eigenvalues().segment(off, size);
  return sym_eigenvalues(q);
}

IndexLevel IndexEngine::count(int m, double shift, double tau_factor) {
  ensure_level(m);
  const auto [off, size] = basis_->sub_range(m);
  Matrix q = -form_.form.block(off, off, size, size);
  const Vector a = basis_->a_eigenvalues().segment(off, size);
  q.diagonal() += a;
  q.diagonal().array() -= shift;
  const Vector eig = sym_eigenvalues(q);
  const double tau = tau_factor * zero_band(eig, options_.zero_band);
  const SignCount sc = count_signs(eig, tau);
  IndexLevel level;
  level.m = m;
  level.tau = tau;
  level.gap = sc.gap;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < -tau) ++level.neg_A;
  }
  level.i_P = sc.negative - level.neg_A;
  level.nu_P = sc.zero;
  return level;
}

IndexPair IndexEngine::index(double shift) {
  int floquet_nu = -1;
  double floquet_gap = 0.0;
  if (options_.check_floquet) {
    const CoefficientPath shifted = shift == 0.0 ? path_ : path_.shifted(shift);
    const FloquetNullity fl = floquet_nullity(boundary_, shifted, options_.flow, options_.floquet_tol);
    floquet_nu = fl.nu;
    floquet_gap = fl.gap;
  }

  static constexpr double kFactors[] = {1.0, 10.0, 0.1};
  bool mismatch = false;
  std::string detail;
  for (int m = options_.m; m + 2 * options_.stride <= options_.max_m; m += options_.stride) {
    mismatch = false;
    for (double factor : kFactors) {
      ensure_level(m + 2 * options_.stride);
      std::vector<IndexLevel> levels(3);
      parallel_for(3, [&](std::size_t k) {
        levels[k] = count(m + static_cast<int>(k) * options_.stride, shift, factor);
      });
      bool same = true;
      for (int k = 1; k < 3; ++k) {
        same = same && levels[k].i_P == levels[0].i_P && levels[k].nu_P == levels[0].nu_P;
      }
      if (!same) {
        // a different band cannot repair a truncation that has not settled
        if (factor == 1.0) break;
        continue;
      }
      if (options_.check_floquet && levels[0].nu_P != floquet_nu) {
        mismatch = true;
        detail = "Galerkin nullity " + std::to_string(levels[0].nu_P) + " vs Floquet " +
                 std::to_string(floquet_nu) + " at m = " + std::to_string(m);
        continue;
      }
      IndexPair out;
      out.i_P = levels[0].i_P;
      out.nu_P = levels[0].nu_P;
      out.m_used = m;
      out.converged = true;
      out.tau = levels[0].tau;
      out.tau_factor = factor;
      out.zero_band_gap = std::numeric_limits<double>::infinity();
      for (const auto& l : levels) out.zero_band_gap = std::min(out.zero_band_gap, l.gap);
      out.floquet_nu = floquet_nu;
      out.floquet_gap = floquet_gap;
      out.levels = std::move(levels);
      return out;
    }
  }
  if (mismatch) throw Error(ErrorKind::NullityMismatch, detail);
  throw Error(ErrorKind::NotConverged, "index counts did not stabilise up to m = " + std::to_string(options_.max_m));
}

IndexPair maslov_index(const SymplecticBoundary& boundary, const CoefficientPath& b, const IndexOptions& options) {
  IndexEngine engine(boundary, b, options);
  return engine.index();
}

IndexPair index_of_gamma_P(const SymplecticBoundary& boundary, const IndexOptions& options) {
  return maslov_index(boundary, CoefficientPath::constant(boundary.generator_coefficient()), options);
}

namespace {

// Golden-section minimisation of f on [lo, hi] down to width tol.
template <class F>
double golden_minimize(F&& f, double lo, double hi, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Confirms by the Floquet criterion that s -> B + sI has a crossing near s_hint.
bool confirm_crossing(const SymplecticBoundary& boundary, const CoefficientPath& b, double s_hint,
                      const IndexOptions& options) {
  // the Galerkin eigenvalue is usually accurate enough to hit the crossing directly
  if (floquet_nullity(boundary, b.shifted(s_hint), options.flow, options.floquet_tol).nu > 0) return true;
  const double delta = std::min(1e-5, 0.5 * std::abs(s_hint));
  const int steps = verified_steps(b.shifted(s_hint), options.flow);
  auto sigma = [&](double s) {
    const Matrix g = rk4_monodromy(b.shifted(s), steps);
    return kernel_dimension(g - boundary.P(), options.floquet_tol).sigma_min;
  };
  const double s = golden_minimize(sigma, s_hint - delta, s_hint + delta, 1e-12);
  FlowOptions flow = options.flow;
  flow.steps = steps;
  return floquet_nullity(boundary, b.shifted(s), flow, options.floquet_tol).nu > 0;
}

}  // namespace

PerturbationScan perturbation_scan(const SymplecticBoundary& boundary, const CoefficientPath& b,
                                   const IndexOptions& options) {
  IndexEngine engine(boundary, b, options);
  PerturbationScan out;
  out.base = engine.index(0.0);

  // A - B - sI is singular exactly at s = mu for mu in the Galerkin spectrum
  const Vector mu = engine.galerkin_spectrum(out.base.m_used + 2 * options.stride);
  const double tau = out.base.tau;
  double above = std::numeric_limits<double>::infinity();
  double below = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (mu(i) > tau) above = std::min(above, mu(i));
    if (mu(i) < -tau) below = std::min(below, -mu(i));
  }
  if (!std::isfinite(above) || !std::isfinite(below)) {
    throw Error(ErrorKind::IdentityViolated, "no crossing found on one side of the shift family");
  }
  if (!confirm_crossing(boundary, b, above, options) || !confirm_crossing(boundary, b, -below, options)) {
    throw Error(ErrorKind::NullityMismatch, "Galerkin crossing not confirmed by the Floquet criterion");
  }
  out.crossing_above = above;
  out.crossing_below = below;
  out.s0 = 0.5 * std::min(above, below);

  for (double s : {out.s0 / 4.0, out.s0 / 2.0, out.s0}) {
    PerturbationRow row;
    row.s = s;
    row.plus = engine.index(s);
    row.minus = engine.index(-s);
    std::string failure;
    if (row.plus.nu_P != 0 || row.minus.nu_P != 0) failure = "nullity nonzero";
    else if (row.minus.i_P != out.base.i_P) failure = "i(B - sI) != i(B)";
    else if (row.plus.i_P != out.base.i_P + out.base.nu_P) failure = "i(B + sI) != i(B) + nu(B)";
    if (!failure.empty()) {
      throw Error(ErrorKind::IdentityViolated, failure + " at s = " + std::to_string(s));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

BridgeOffset bridge_offset(const SymplecticBoundary& boundary, const CoefficientPath& b,
                           const IndexOptions& options) {
  BridgeOffset out;
  out.reference = boundary.n();
  out.i_B = maslov_index(boundary, b, options).i_P;
  out.i_gamma_P = index_of_gamma_P(boundary, options).i_P;
  const SymplecticBoundary identity = SymplecticBoundary::rotation(boundary.n(), 0.0);
  out.i_tilde = maslov_index(identity, tilde_transform(boundary, b), options).i_P;
  out.offset = out.i_B - out.i_gamma_P - out.i_tilde;
  return out;
}

}  // namespace maslovp
