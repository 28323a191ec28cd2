#include "maslovp/shoot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maslovp/error.hpp"
#include "maslovp/parallel.hpp"

namespace maslovp {

namespace {

void apply_J(const Vector& v, Vector& out) {
  const Eigen::Index n = v.size() / 2;
  out.resize(v.size());
  out.head(n) = -v.tail(n);
  out.tail(n) = v.head(n);
}

void apply_J(const Matrix& m, Matrix& out) {
  const Eigen::Index n = m.rows() / 2;
  out.resize(m.rows(), m.cols());
  out.topRows(n) = -m.bottomRows(n);
  out.bottomRows(n) = m.topRows(n);
}

struct SegmentFlow {
  Vector x1;
  Matrix phi;
};

// RK4 for x' = J H'(t, x) on [t0, t1], optionally with Phi' = J H''(t, x) Phi.
SegmentFlow flow_segment(const Hamiltonian& h, const Vector& x0, double t0, double t1, int steps, bool variational,
                         double blowup, std::vector<Vector>* path = nullptr) {
  const Eigen::Index d = x0.size();
  const double dt = (t1 - t0) / steps;
  Vector x = x0, k1, k2, k3, k4, xs;
  Matrix phi, p1, p2, p3, p4, ps;
  if (variational) phi = Matrix::Identity(d, d);
  if (path) {
    path->clear();
    path->reserve(steps + 1);
    path->push_back(x);
  }
  auto stage = [&](double t, const Vector& xv, const Matrix* pv, Vector& kx, Matrix& kp) {
    apply_J(h.gradient(t, xv), kx);
    if (pv) apply_J(Matrix(h.hessian(t, xv) * *pv), kp);
  };
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * dt;
    stage(t, x, variational ? &phi : nullptr, k1, p1);
    xs = x + 0.5 * dt * k1;
    if (variational) ps = phi + 0.5 * dt * p1;
    stage(t + 0.5 * dt, xs, variational ? &ps : nullptr, k2, p2);
    xs = x + 0.5 * dt * k2;
    if (variational) ps = phi + 0.5 * dt * p2;
    stage(t + 0.5 * dt, xs, variational ? &ps : nullptr, k3, p3);
    xs = x + dt * k3;
    if (variational) ps = phi + dt * p3;
    stage(t + dt, xs, variational ? &ps : nullptr, k4, p4);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (variational) phi += (dt / 6.0) * (p1 + 2.0 * p2 + 2.0 * p3 + p4);
    if (!x.allFinite() || x.norm() > blowup) {
      throw Error(ErrorKind::BlowUp, "|x(t)| exceeded " + std::to_string(blowup) + " at t = " + std::to_string(t + dt));
    }
    if (path) path->push_back(x);
  }
  return {std::move(x), std::move(phi)};
}

// Steps meeting the Richardson target for x(1) from x0.
int verified_shoot_steps(const Hamiltonian& h, const Vector& x0, const ShootOptions& o, double* error) {
  int steps = o.steps;
  Vector coarse = flow_segment(h, x0, 0.0, 1.0, steps, false, o.blowup).x1;
  while (2 * steps <= o.max_steps) {
    const Vector fine = flow_segment(h, x0, 0.0, 1.0, 2 * steps, false, o.blowup).x1;
    const double est = (fine - coarse).cwiseAbs().maxCoeff() / 15.0;
    if (est <= o.accuracy * std::max(1.0, fine.cwiseAbs().maxCoeff())) {
      if (error) *error = est;
      return steps;
    }
    steps *= 2;
    coarse = fine;
  }
  throw Error(ErrorKind::AccuracyNotReached, "shooting flow did not meet the Richardson target");
}

Vector pinv_solve(const Matrix& a, const Vector& b) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  return svd.solve(b);
}

struct NewtonOutcome {
  bool converged = false;
  bool blowup = false;
  Vector x0;
  int iterations = 0;
  bool multiple = false;
};

// Multiple shooting residual and Jacobian over S equal segments.
void multiple_residual(const Hamiltonian& h, const Matrix& p, const std::vector<Vector>& z, int steps,
                       const ShootOptions& o, Vector& f, Matrix* jac) {
  const int segs = static_cast<int>(z.size());
  const Eigen::Index d = z[0].size();
  f.resize(segs * d);
  if (jac) jac->setZero(segs * d, segs * d);
  for (int k = 0; k < segs; ++k) {
    const double t0 = static_cast<double>(k) / segs, t1 = static_cast<double>(k + 1) / segs;
    const SegmentFlow sf = flow_segment(h, z[k], t0, t1, steps, jac != nullptr, o.blowup);
    const bool last = k == segs - 1;
    f.segment(k * d, d) = sf.x1 - (last ? Vector(p * z[0]) : z[k + 1]);
    if (jac) {
      jac->block(k * d, k * d, d, d) += sf.phi;
      if (last) jac->block(k * d, 0, d, d) -= p;
      else jac->block(k * d, (k + 1) * d, d, d) -= Matrix::Identity(d, d);
    }
  }
}

NewtonOutcome newton(const Hamiltonian& h, const SymplecticBoundary& boundary, const Vector& start,
                     const ShootOptions& o) {
  NewtonOutcome out;
  const Matrix& p = boundary.P();
  const double inf = std::numeric_limits<double>::infinity();
  auto single = [&](const Vector& x, Matrix* jac) {
    const SegmentFlow sf = flow_segment(h, x, 0.0, 1.0, o.steps, jac != nullptr, o.blowup);
    if (jac) *jac = sf.phi - p;
    return Vector(sf.x1 - p * x);
  };
  auto norm_or_inf = [&](const Vector& x) {
    try {
      return single(x, nullptr).norm();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::BlowUp) return inf;
      throw;
    }
  };

  Vector x = start;
  Matrix jac;
  Vector f;
  try {
    f = single(x, &jac);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BlowUp) throw;
    out.blowup = true;
    return out;
  }
  double norm = f.norm();
  bool switch_to_multiple = false;
  // aim below the acceptance threshold so the re-verified residual stays under it
  const double target = 0.01 * o.residual_tol;
  for (int it = 0; it < o.max_iterations; ++it) {
    out.iterations = it;
    if (norm <= target) {
      out.converged = true;
      out.x0 = x;
      return out;
    }
    const Vector dx = -pinv_solve(jac, f);
    double alpha = 1.0, trial = inf;
    Vector xn;
    while (alpha >= 1.0 / 1024.0) {
      xn = x + alpha * dx;
      trial = norm_or_inf(xn);
      if (trial <= (1.0 - 1e-4 * alpha) * norm) break;
      alpha *= 0.5;
    }
    if (!(trial < norm)) break;
    const double ratio = trial / norm;
    x = xn;
    f = single(x, &jac);
    norm = f.norm();
    if (it >= 2 && ratio > o.contraction_switch && norm > target) {
      switch_to_multiple = true;
      break;
    }
  }
  if (!switch_to_multiple) {
    out.x0 = x;
    out.converged = norm <= o.residual_tol;
    return out;
  }

  // multiple shooting from the current iterate
  out.multiple = true;
  const int segs = std::max(2, o.segments);
  const int seg_steps = std::max(16, o.steps / segs);
  std::vector<Vector> z(segs);
  z[0] = x;
  try {
    for (int k = 1; k < segs; ++k) {
      z[k] = flow_segment(h, z[k - 1], static_cast<double>(k - 1) / segs, static_cast<double>(k) / segs, seg_steps,
                          false, o.blowup)
                 .x1;
    }
    Vector fm;
    Matrix jm;
    multiple_residual(h, p, z, seg_steps, o, fm, &jm);
    double mnorm = fm.norm();
    for (int it = 0; it < o.max_iterations; ++it) {
      if (mnorm <= 0.1 * target) break;
      const Vector dz = -pinv_solve(jm, fm);
      double alpha = 1.0, trial = inf;
      std::vector<Vector> zn(segs);
      while (alpha >= 1.0 / 1024.0) {
        for (int k = 0; k < segs; ++k) zn[k] = z[k] + alpha * dz.segment(k * z[0].size(), z[0].size());
        try {
          Vector ft;
          multiple_residual(h, p, zn, seg_steps, o, ft, nullptr);
          trial = ft.norm();
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::BlowUp) throw;
          trial = inf;
        }
        if (trial <= (1.0 - 1e-4 * alpha) * mnorm) break;
        alpha *= 0.5;
      }
      if (!(trial < mnorm)) break;
      z = zn;
      multiple_residual(h, p, z, seg_steps, o, fm, &jm);
      mnorm = fm.norm();
      out.iterations++;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BlowUp) throw;
    out.blowup = true;
    return out;
  }
  out.x0 = z[0];
  // polish on the single-shooting map so the accepted residual is the one reported
  for (int it = 0; it < 5; ++it) {
    try {
      f = single(out.x0, &jac);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BlowUp) throw;
      out.blowup = true;
      return out;
    }
    if (f.norm() <= target) {
      out.converged = true;
      return out;
    }
    out.x0 -= pinv_solve(jac, f);
  }
  out.converged = norm_or_inf(out.x0) <= o.residual_tol;
  return out;
}

double radical_inverse(std::uint64_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

// exp(phi J) x with phi chosen so the first significant complex coordinate
// z_k = x_k + i x_{n+k} becomes real and positive.
Vector orbit_representative(const Vector& x) {
  const Eigen::Index n = x.size() / 2;
  const double scale = x.norm();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double re = x(k), im = x(n + k);
    if (std::hypot(re, im) > 1e-6 * scale) {
      const double phi = -std::atan2(im, re);
      const double c = std::cos(phi), s = std::sin(phi);
      Vector y(x.size());
      y.head(n) = c * x.head(n) - s * x.tail(n);
      y.tail(n) = s * x.head(n) + c * x.tail(n);
      y(n + k) = 0.0;
      return y;
    }
  }
  return x;
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

}  // namespace

ShootResidual shoot_residual(const Hamiltonian& h, const SymplecticBoundary& boundary, const Vector& x0,
                             const ShootOptions& options) {
  if (x0.size() != boundary.dim() || h.n() != boundary.n()) {
    throw Error(ErrorKind::InvalidArgument, "dimension mismatch in shooting");
  }
  ShootResidual out;
  out.steps = 2 * verified_shoot_steps(h, x0, options, &out.ode_error);
  const SegmentFlow sf = flow_segment(h, x0, 0.0, 1.0, out.steps, true, options.blowup);
  out.x1 = sf.x1;
  out.residual = sf.x1 - boundary.P() * x0;
  out.jacobian = sf.phi - boundary.P();
  return out;
}

std::vector<Vector> start_points(int dim, int starts, std::uint64_t seed, const std::vector<double>& radii) {
  if (dim > 15) throw Error(ErrorKind::InvalidArgument, "start sequence supports dimensions up to 15");
  if (radii.empty()) throw Error(ErrorKind::InvalidArgument, "no start radii");
  std::vector<Vector> out;
  out.reserve(starts);
  const std::uint64_t offset = 1 + seed * 7919;
  for (int i = 0; i < starts; ++i) {
    const std::uint64_t k = offset + static_cast<std::uint64_t>(i);
    Vector u(dim);
    for (int c = 0; c < dim; ++c) u(c) = 2.0 * radical_inverse(k, kPrimes[c]) - 1.0;
    const double frac = radical_inverse(k, kPrimes[dim]);
    const double radius = radii[static_cast<std::size_t>(i) % radii.size()];
    const double len = u.norm();
    if (len < 1e-12) u.setZero(), u(0) = 1.0;
    else u /= len;
    out.push_back(u * radius * std::pow(std::max(frac, 1e-3), 1.0 / dim));
  }
  return out;
}

int SolveResult::nontrivial_points() const {
  return static_cast<int>(std::count_if(solutions.begin(), solutions.end(), [](const PSolution& s) { return !s.is_trivial; }));
}

int SolveResult::nontrivial_orbits() const {
  return static_cast<int>(std::count_if(orbits.begin(), orbits.end(), [](const SolutionOrbit& o) { return !o.is_trivial; }));
}

IndexPair solution_index(const Hamiltonian& h, const SymplecticBoundary& boundary, const Vector& x0,
                         const ShootOptions& options) {
  int steps = std::max(1024, verified_shoot_steps(h, x0, options, nullptr));
  std::vector<Vector> path;
  flow_segment(h, x0, 0.0, 1.0, steps, false, options.blowup, &path);
  std::vector<Matrix> values;
  values.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    values.push_back(h.hessian(static_cast<double>(i) / steps, path[i]));
  }
  const Matrix& p = boundary.P();
  const double violation = max_abs(p.transpose() * values.back() * p - values.front());
  if (violation > 1e-7 * std::max(1.0, max_abs(values.front()))) {
    throw Error(ErrorKind::EquivarianceBroken, "P^T B(1) P - B(0) = " + std::to_string(violation));
  }
  return maslov_index(boundary, CoefficientPath::samples(std::move(values)), options.index);
}

SolveResult find_solutions(const Hamiltonian& h, const SymplecticBoundary& boundary, int starts, std::uint64_t seed,
                           const ShootOptions& options) {
  if (starts < 1) throw Error(ErrorKind::InvalidArgument, "starts must be positive");
  if (h.n() != boundary.n()) throw Error(ErrorKind::InvalidArgument, "Hamiltonian dimension does not match P");
  const int dim = boundary.dim();
  const std::vector<Vector> x_start = start_points(dim, starts, seed, options.radii);
  std::vector<NewtonOutcome> outcomes(starts);
  parallel_for(starts, [&](std::size_t i) { outcomes[i] = newton(h, boundary, x_start[i], options); });

  SolveResult result;
  result.starts = starts;
  result.symmetry_used = h.radial() && h.autonomous();

  struct Candidate {
    Vector x0;
    int start;
    const NewtonOutcome* outcome;
  };
  std::vector<Candidate> candidates;
  for (int i = 0; i < starts; ++i) {
    if (outcomes[i].blowup) ++result.blowups;
    if (outcomes[i].converged) {
      ++result.converged;
      candidates.push_back({outcomes[i].x0, i, &outcomes[i]});
    } else {
      ++result.failed;
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    const double na = a.x0.norm(), nb = b.x0.norm();
    if (na != nb) return na < nb;
    if (lex_less(a.x0, b.x0)) return true;
    if (lex_less(b.x0, a.x0)) return false;
    return a.start < b.start;
  });

  // deflation: keep one point per cluster, in sorted order
  std::vector<Candidate> distinct;
  for (const auto& c : candidates) {
    bool dup = false;
    for (const auto& d : distinct) {
      if ((d.x0 - c.x0).norm() <= options.dedup_distance) {
        dup = true;
        break;
      }
    }
    if (!dup) distinct.push_back(c);
  }

  for (const auto& c : distinct) {
    PSolution sol;
    sol.x0 = c.x0;
    sol.start = c.start;
    sol.newton_iterations = c.outcome->iterations;
    sol.multiple_shooting = c.outcome->multiple;
    const int steps = 2 * verified_shoot_steps(h, c.x0, options, &sol.ode_error);
    std::vector<Vector> path;
    const SegmentFlow sf = flow_segment(h, c.x0, 0.0, 1.0, steps, false, options.blowup, &path);
    sol.residual = (sf.x1 - boundary.P() * c.x0).norm();
    const double h0 = h.value(0.0, c.x0);
    const int stride = std::max(1, steps / std::max(1, options.trajectory_samples - 1));
    for (int k = 0; k <= steps; ++k) {
      const double t = static_cast<double>(k) / steps;
      sol.action_like_norm = std::max(sol.action_like_norm, path[k].norm());
      if (h.autonomous()) sol.energy_drift = std::max(sol.energy_drift, std::abs(h.value(t, path[k]) - h0));
      if (k % stride == 0) {
        sol.times.push_back(t);
        sol.trajectory.push_back(path[k]);
      }
    }
    sol.energy_ok = !h.autonomous() || sol.energy_drift <= options.energy_tol * (1.0 + std::abs(h0));
    sol.is_trivial = sol.action_like_norm <= options.trivial_threshold;
    if (sol.residual > options.residual_tol) continue;
    result.solutions.push_back(std::move(sol));
  }

  // orbit grouping
  std::vector<Vector> reps;
  for (auto& sol : result.solutions) {
    const Vector rep = result.symmetry_used ? orbit_representative(sol.x0) : sol.x0;
    int found = -1;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      if ((reps[k] - rep).norm() <= options.dedup_distance) {
        found = static_cast<int>(k);
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(reps.size());
      reps.push_back(rep);
      SolutionOrbit orbit;
      orbit.representative = rep;
      orbit.is_trivial = sol.is_trivial;
      orbit.radius = rep.norm();
      result.orbits.push_back(orbit);
    }
    sol.orbit = found;
    result.orbits[found].members++;
  }

  if (options.compute_indices) {
    parallel_for(result.orbits.size(), [&](std::size_t k) {
      SolutionOrbit& orbit = result.orbits[k];
      orbit.index_pair = solution_index(h, boundary, orbit.representative, options);
      orbit.has_index = true;
    });
    for (auto& sol : result.solutions) {
      const SolutionOrbit& orbit = result.orbits[sol.orbit];
      sol.index_pair = orbit.index_pair;
      sol.has_index = true;
      sol.degenerate = orbit.index_pair.nu_P > 0;
    }
  }
  return result;
}

}  // namespace maslovp
