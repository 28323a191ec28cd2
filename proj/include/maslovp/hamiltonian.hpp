#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "maslovp/model.hpp"

namespace maslovp {

/// H(t, x) on R x R^{2n} with gradient H' and Hessian H''.
class Hamiltonian {
 public:
  virtual ~Hamiltonian() = default;
  virtual int n() const = 0;
  virtual double value(double t, const Vector& x) const = 0;
  virtual Vector gradient(double t, const Vector& x) const = 0;
  virtual Matrix hessian(double t, const Vector& x) const = 0;
  virtual bool autonomous() const { return false; }
  /// H depends on |x| only, so x -> exp(phi J) x maps P-solutions to P-solutions.
  virtual bool radial() const { return false; }
  virtual std::string describe() const = 0;
};

/// H(x) = h(|x|^2) with h(r) = a r + c (1 - exp(-alpha r)) + q r^2.
/// q = 0 gives the asymptotically linear exponential-well family; c = 0,
/// q = 0 gives the quadratic H = a |x|^2.
class RadialHamiltonian final : public Hamiltonian {
 public:
  RadialHamiltonian(int n, double a, double c, double alpha, double q = 0.0);

  int n() const override { return n_; }
  double value(double t, const Vector& x) const override;
  Vector gradient(double t, const Vector& x) const override;
  Matrix hessian(double t, const Vector& x) const override;
  bool autonomous() const override { return true; }
  bool radial() const override { return true; }
  std::string describe() const override;

  double a() const { return a_; }
  double c() const { return c_; }
  double alpha() const { return alpha_; }
  double q() const { return q_; }

  /// h'(r) and h''(r).
  double dh(double r) const;
  double d2h(double r) const;

 private:
  int n_;
  double a_, c_, alpha_, q_;
};

/// Hamiltonian assembled from user callbacks.
class CallbackHamiltonian final : public Hamiltonian {
 public:
  using ValueFn = std::function<double(double, const Vector&)>;
  using GradientFn = std::function<Vector(double, const Vector&)>;
  using HessianFn = std::function<Matrix(double, const Vector&)>;

  CallbackHamiltonian(int n, ValueFn value, GradientFn gradient, HessianFn hessian, bool autonomous = false,
                      bool radial = false, std::string name = "callback");

  int n() const override { return n_; }
  double value(double t, const Vector& x) const override { return value_(t, x); }
  Vector gradient(double t, const Vector& x) const override { return gradient_(t, x); }
  Matrix hessian(double t, const Vector& x) const override { return hessian_(t, x); }
  bool autonomous() const override { return autonomous_; }
  bool radial() const override { return radial_; }
  std::string describe() const override { return name_; }

 private:
  int n_;
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
  bool autonomous_, radial_;
  std::string name_;
};

struct DerivativeCheck {
  double gradient_rel_error = 0.0;
  double hessian_rel_error = 0.0;
  double equivariance_violation = 0.0;
};

/// Central finite differences of H against H' and of H' against H'' at
/// `samples` pseudo-random points with |x| <= radius, plus the worst
/// |H(t + 1, P x) - H(t, x)|.
DerivativeCheck check_derivatives(const Hamiltonian& h, const SymplecticBoundary& boundary, int samples = 100,
                                  std::uint64_t seed = 1, double radius = 3.0);

}  // namespace maslovp
