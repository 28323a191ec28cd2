#include "maslovp/flow.hpp"

#include <cmath>

#include "maslovp/error.hpp"

namespace maslovp {

namespace {

// out = J * b for J = [[0, -I], [I, 0]]
void apply_J(const Matrix& b, Matrix& out) {
  const Eigen::Index n = b.rows() / 2;
  out.resize(b.rows(), b.cols());
  out.topRows(n) = -b.bottomRows(n);
  out.bottomRows(n) = b.topRows(n);
}

}  // namespace

Matrix rk4_monodromy(const CoefficientPath& b, int steps, std::vector<Matrix>* samples) {
  const int d = b.dim();
  const double h = 1.0 / steps;
  Matrix y = Matrix::Identity(d, d);
  Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
  Matrix jb0, jb_half, jb1, bt;
  const auto constant = b.constant_value();
  if (constant) apply_J(*constant, jb0);
  if (samples) {
    samples->clear();
    samples->reserve(steps + 1);
    samples->push_back(y);
  }
  for (int s = 0; s < steps; ++s) {
    const double t = s * h;
    if (!constant) {
      if (s == 0) {
        b.eval(t, bt);
        apply_J(bt, jb0);
      } else {
        jb0.swap(jb1);
      }
      b.eval(t + 0.5 * h, bt);
      apply_J(bt, jb_half);
      b.eval(t + h, bt);
      apply_J(bt, jb1);
    }
    const Matrix& a0 = jb0;
    const Matrix& am = constant ? jb0 : jb_half;
    const Matrix& a1 = constant ? jb0 : jb1;
    k1.noalias() = a0 * y;
    tmp = y + (0.5 * h) * k1;
    k2.noalias() = am * tmp;
    tmp = y + (0.5 * h) * k2;
    k3.noalias() = am * tmp;
    tmp = y + h * k3;
    k4.noalias() = a1 * tmp;
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (samples) samples->push_back(y);
  }
  return y;
}

int verified_steps(const CoefficientPath& b, const FlowOptions& options) {
  int steps = std::max(1, options.steps);
  Matrix coarse = rk4_monodromy(b, steps);
  while (2 * steps <= options.max_steps) {
    const Matrix fine = rk4_monodromy(b, 2 * steps);
    const double estimate = max_abs(coarse - fine) / 15.0;
    if (estimate <= options.accuracy * std::max(1.0, max_abs(fine))) return steps;
    steps *= 2;
    coarse = fine;
  }
  throw Error(ErrorKind::AccuracyNotReached,
              "Richardson estimate above " + std::to_string(options.accuracy) + " at " + std::to_string(steps) + " steps");
}

Monodromy fundamental_solution(const CoefficientPath& b, const FlowOptions& options) {
  if (options.steps < 64) throw Error(ErrorKind::InvalidArgument, "fundamental_solution needs at least 64 steps");
  Monodromy out;
  int steps = options.steps;
  Matrix coarse = rk4_monodromy(b, steps);
  bool ok = false;
  while (2 * steps <= options.max_steps) {
    std::vector<Matrix> samples;
    const Matrix fine = rk4_monodromy(b, 2 * steps, options.keep_samples ? &samples : nullptr);
    const double estimate = max_abs(coarse - fine) / 15.0;
    if (estimate <= options.accuracy * std::max(1.0, max_abs(fine))) {
      out.gamma_1 = fine;
      out.ode_error_estimate = estimate;
      out.steps = 2 * steps;
      if (options.keep_samples) {
        out.samples = std::move(samples);
        out.times.resize(out.samples.size());
        for (std::size_t i = 0; i < out.times.size(); ++i) out.times[i] = static_cast<double>(i) / (2 * steps);
      }
      ok = true;
      break;
    }
    steps *= 2;
    coarse = fine;
  }
  if (!ok) {
    throw Error(ErrorKind::AccuracyNotReached, "Richardson estimate above tolerance at the step cap");
  }
  const Matrix j = symplectic_J(b.n());
  out.symplectic_drift = max_abs(out.gamma_1.transpose() * j * out.gamma_1 - j);
  out.det = out.gamma_1.determinant();
  if (out.symplectic_drift > 1e-7 * std::max(1.0, max_abs(out.gamma_1) * max_abs(out.gamma_1))) {
    throw Error(ErrorKind::AccuracyNotReached, "symplectic drift " + std::to_string(out.symplectic_drift));
  }
  return out;
}

FloquetNullity nullity_of_monodromy(const SymplecticBoundary& boundary, const Matrix& gamma_1, double tol_scale) {
  FloquetNullity out;
  const KernelDimension k = kernel_dimension(gamma_1 - boundary.P(), tol_scale);
  out.nu = k.dim;
  out.gap = k.gap;
  out.sigma_min = k.sigma_min;
  out.tau = k.tau;
  out.gamma_1 = gamma_1;
  return out;
}

FloquetNullity floquet_nullity(const SymplecticBoundary& boundary, const CoefficientPath& b,
                               const FlowOptions& options, double tol_scale) {
  if (b.dim() != boundary.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  return nullity_of_monodromy(boundary, fundamental_solution(b, options).gamma_1, tol_scale);
}

CoefficientPath tilde_transform(const SymplecticBoundary& boundary, const CoefficientPath& b) {
  if (b.dim() != boundary.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  if (max_abs(boundary.M1()) == 0.0) return b;
  const Matrix jm1 = boundary.J() * boundary.M1();
  auto fn = [boundary, b, jm1](double t) {
    Matrix f;
    boundary.gamma_P_into(t, f);
    Matrix out = jm1 + f.transpose() * b(t) * f;
    return Matrix(0.5 * (out + out.transpose()));
  };
  if (const auto c = b.constant_value(); c && max_abs(boundary.M1() * *c - *c * boundary.M1()) == 0.0) {
    // B commutes with M1, so the conjugation is trivial
    return CoefficientPath::constant(0.5 * (jm1 + jm1.transpose()) + *c);
  }
  return CoefficientPath::function(b.dim(), fn, "tilde");
}

}  // namespace maslovp
