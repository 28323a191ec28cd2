#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maslovp/numerics.hpp"

namespace maslovp {

/// Orthogonal symplectic boundary matrix P together with its principal
/// logarithm M1 (P = exp(M1)) and the detected finite order, if any.
class SymplecticBoundary {
 public:
  /// Block rotation P = exp(theta J). theta is reduced to (-pi, pi] so that
  /// M1 = theta J is the principal logarithm.
  static SymplecticBoundary rotation(int n, double theta);

  /// Validates an arbitrary matrix and computes M1 and the order.
  static SymplecticBoundary validate(const Matrix& p, int max_order = 64);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const Matrix& P() const { return p_; }
  const Matrix& M1() const { return m1_; }
  const Matrix& J() const { return j_; }
  std::optional<int> order() const { return order_; }
  int dim_ker_P_minus_I() const { return ker_dim_; }
  /// Eigenphases of M1 in (-pi, pi] (one per complex dimension, ascending).
  const Vector& phases() const { return generator_.phases(); }
  /// Some eigenphase is within 1e-6 of pi; the logarithm is discontinuous there.
  bool near_branch_cut() const { return near_branch_cut_; }

  /// exp(t M1), the path gamma_P(t) from I to P.
  Matrix gamma_P(double t) const { return generator_.exp(t); }
  void gamma_P_into(double t, Matrix& out) const { generator_.exp_into(t, out); }

  /// Constant symmetric coefficient -J M1 generating gamma_P.
  Matrix generator_coefficient() const { return -j_ * m1_; }

 private:
  SymplecticBoundary(Matrix p, Matrix m1);

  int n_ = 0;
  Matrix p_, m1_, j_;
  std::optional<int> order_;
  int ker_dim_ = 0;
  bool near_branch_cut_ = false;
  RotationGenerator generator_;
};

/// Smallest k in [1, max_order] with ||P^k - I||_max <= tol.
std::optional<int> detect_order(const Matrix& p, int max_order = 64, double tol = 1e-8);

/// Source of symmetric matrix values on [0, 1]. Implementations must be
/// immutable and thread-safe.
class PathSource {
 public:
  virtual ~PathSource() = default;
  virtual int dim() const = 0;
  virtual std::string kind() const = 0;
  /// Writes B(t) into out (resized by the callee).
  virtual void eval(double t, Matrix& out) const = 0;
  /// True if the formula is meaningful for t outside [0, 1].
  virtual bool intrinsic_on_line() const { return true; }
};

/// Time-dependent symmetric coefficient B(t) on [0, 1]. Values are immutable;
/// copies share storage. A path is a weighted sum of sources plus a multiple
/// of the identity, so affine homotopies and shifts stay cheap.
class CoefficientPath {
 public:
  CoefficientPath() = default;

  static CoefficientPath constant(const Matrix& value);
  static CoefficientPath scalar(int n, double b);
  /// B(t) = F(t) (c0 + sum_k cos_k cos(2 pi k t) + sin_k sin(2 pi k t)) F(t)^T
  /// where F(t) = exp(t M1) of `frame` when given, identity otherwise.
  static CoefficientPath trig(const Matrix& c0, const std::vector<Matrix>& cos_terms,
                              const std::vector<Matrix>& sin_terms,
                              const SymplecticBoundary* frame = nullptr);
  /// Uniform samples on [0, 1] (first at t = 0, last at t = 1), cubic
  /// Lagrange interpolation between them.
  static CoefficientPath samples(std::vector<Matrix> values);
  static CoefficientPath function(int dim, std::function<Matrix(double)> fn, std::string kind = "function");

  int dim() const { return dim_; }
  int n() const { return dim_ / 2; }
  bool empty() const { return dim_ == 0; }
  /// "constant", "trig", "samples", "function" or "combination".
  std::string kind() const;

  Matrix operator()(double t) const;
  void eval(double t, Matrix& out) const;

  /// Equivariant extension B(t + k) = (P^{-T})^k B(t) P^{-k} from values on [0, 1).
  Matrix extended(double t, const SymplecticBoundary& boundary) const;

  /// Value of the defining formula at t, even outside [0, 1]. Sampled paths
  /// clamp to [0, 1].
  Matrix intrinsic(double t) const;
  bool intrinsic_on_line() const;

  /// Constant paths know their value; others return nullopt.
  std::optional<Matrix> constant_value() const;

  CoefficientPath shifted(double s) const;
  CoefficientPath scaled(double w) const;
  CoefficientPath plus(const CoefficientPath& other) const;
  /// (1 - s) * this + s * other.
  CoefficientPath lerp(const CoefficientPath& other, double s) const;

  double identity_shift() const { return shift_; }

 private:
  struct Term {
    double weight;
    std::shared_ptr<const PathSource> source;
  };
  int dim_ = 0;
  std::vector<Term> terms_;
  double shift_ = 0.0;
  std::optional<Matrix> constant_;
};

struct EquivarianceReport {
  bool pass = false;
  double max_violation = 0.0;
  int samples = 0;
};

/// Checks P^T B(t + 1) P = B(t) at 64 points of [0, 1) using the intrinsic
/// formula. Sampled paths only allow the t = 0 comparison.
EquivarianceReport check_equivariance(const SymplecticBoundary& boundary, const CoefficientPath& path,
                                      double tol = 1e-10);

/// Minimum over a grid of [0, 1] of the smallest eigenvalue of B2(t) - B1(t).
double min_ordering_margin(const CoefficientPath& lower, const CoefficientPath& upper, int grid = 257);

/// Largest entry of B(t)J - JB(t) over a grid of [0, 1].
double max_J_commutator(const CoefficientPath& path, int grid = 257);

}  // namespace maslovp
