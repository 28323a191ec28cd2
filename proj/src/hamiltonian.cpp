#include "maslovp/hamiltonian.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "maslovp/error.hpp"

namespace maslovp {

RadialHamiltonian::RadialHamiltonian(int n, double a, double c, double alpha, double q)
    : n_(n), a_(a), c_(c), alpha_(alpha), q_(q) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  if (c != 0.0 && !(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");
}

double RadialHamiltonian::dh(double r) const {
  return a_ + c_ * alpha_ * std::exp(-alpha_ * r) + 2.0 * q_ * r;
}

double RadialHamiltonian::d2h(double r) const {
  return -c_ * alpha_ * alpha_ * std::exp(-alpha_ * r) + 2.0 * q_;
}

double RadialHamiltonian::value(double, const Vector& x) const {
  const double r = x.squaredNorm();
  return a_ * r + c_ * (1.0 - std::exp(-alpha_ * r)) + q_ * r * r;
}

Vector RadialHamiltonian::gradient(double, const Vector& x) const {
  return 2.0 * dh(x.squaredNorm()) * x;
}

Matrix RadialHamiltonian::hessian(double, const Vector& x) const {
  const double r = x.squaredNorm();
  Matrix h = 4.0 * d2h(r) * (x * x.transpose());
  h.diagonal().array() += 2.0 * dh(r);
  return h;
}

std::string RadialHamiltonian::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "radial h(r) = " << a_ << " r + " << c_ << " (1 - exp(-" << alpha_ << " r)) + " << q_ << " r^2";
  return os.str();
}

CallbackHamiltonian::CallbackHamiltonian(int n, ValueFn value, GradientFn gradient, HessianFn hessian,
                                         bool autonomous, bool radial, std::string name)
    : n_(n),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      autonomous_(autonomous),
      radial_(radial),
      name_(std::move(name)) {}

DerivativeCheck check_derivatives(const Hamiltonian& h, const SymplecticBoundary& boundary, int samples,
                                  std::uint64_t seed, double radius) {
  DerivativeCheck out;
  const int d = 2 * h.n();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> time(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    Vector x(d);
    for (int i = 0; i < d; ++i) x(i) = unit(rng);
    x *= radius * std::abs(unit(rng)) / std::max(1.0, x.norm());
    const double t = time(rng);

    const Vector g = h.gradient(t, x);
    const Matrix hess = h.hessian(t, x);
    Vector g_fd(d);
    Matrix h_fd(d, d);
    for (int i = 0; i < d; ++i) {
      const double step = 1e-5 * std::max(1.0, std::abs(x(i)));
      Vector xp = x, xm = x;
      xp(i) += step;
      xm(i) -= step;
      g_fd(i) = (h.value(t, xp) - h.value(t, xm)) / (2.0 * step);
      h_fd.col(i) = (h.gradient(t, xp) - h.gradient(t, xm)) / (2.0 * step);
    }
    out.gradient_rel_error =
        std::max(out.gradient_rel_error, (g_fd - g).norm() / std::max(1.0, g.norm()));
    out.hessian_rel_error =
        std::max(out.hessian_rel_error, (h_fd - hess).norm() / std::max(1.0, hess.norm()));
    out.equivariance_violation =
        std::max(out.equivariance_violation, std::abs(h.value(t + 1.0, boundary.P() * x) - h.value(t, x)));
  }
  return out;
}

}  // namespace maslovp
