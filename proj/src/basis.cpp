#include "maslovp/basis.hpp"

#include <cmath>
#include <numbers>

#include "maslovp/error.hpp"

namespace maslovp {

WPBasis::WPBasis(const SymplecticBoundary& boundary, int m) : boundary_(boundary), n_(boundary.n()), m_(m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "truncation level m must be at least 1");
  const SpectrumResult s = sym_eig(boundary.generator_coefficient());
  mode_phases_ = s.eigenvalues;
  modes_ = s.eigenvectors;
  const int block = 2 * n_;
  a_eigenvalues_.resize(dim());
  for (int j = -m_; j <= m_; ++j) {
    for (int k = 0; k < block; ++k) {
      a_eigenvalues_((j + m_) * block + k) = 2.0 * std::numbers::pi * j + mode_phases_(k);
    }
  }
}

std::pair<int, int> WPBasis::sub_range(int sub_m) const {
  if (sub_m < 0 || sub_m > m_) throw Error(ErrorKind::InvalidArgument, "sub-truncation out of range");
  const int block = 2 * n_;
  return {(m_ - sub_m) * block, (2 * sub_m + 1) * block};
}

Vector WPBasis::evaluate(int index, double t) const {
  const double angle = 2.0 * std::numbers::pi * frequency(index) * t;
  const Vector v = modes_.col(mode(index));
  Vector jv(v.size());
  jv.head(n_) = -v.tail(n_);
  jv.tail(n_) = v.head(n_);
  return boundary_.gamma_P(t) * (std::cos(angle) * v + std::sin(angle) * jv);
}

void WPBasis::evaluate_all(double t, Matrix& out) const {
  const int block = 2 * n_;
  Matrix jmodes(block, block);
  jmodes.topRows(n_) = -modes_.bottomRows(n_);
  jmodes.bottomRows(n_) = modes_.topRows(n_);
  Matrix raw(block, dim());
  for (int j = -m_; j <= m_; ++j) {
    const double angle = 2.0 * std::numbers::pi * j * t;
    raw.middleCols((j + m_) * block, block) = std::cos(angle) * modes_ + std::sin(angle) * jmodes;
  }
  Matrix frame;
  boundary_.gamma_P_into(t, frame);
  out.noalias() = frame * raw;
}

WPBasis build_basis(const SymplecticBoundary& boundary, int m) { return WPBasis(boundary, m); }

Matrix assemble_A_form(const WPBasis& basis) { return basis.a_eigenvalues().asDiagonal(); }

namespace {

Matrix integrate(const WPBasis& basis, const std::function<void(double, Matrix&)>& weight, int points) {
  const Quadrature& q = gauss_legendre(points);
  const int d = basis.dim();
  Matrix form = Matrix::Zero(d, d);
  Matrix e, w, we;
  for (int i = 0; i < points; ++i) {
    basis.evaluate_all(q.nodes[i], e);
    weight(q.nodes[i], w);
    we.noalias() = w * e;
    form.noalias() += q.weights[i] * (e.transpose() * we);
  }
  return 0.5 * (form + form.transpose());
}

}  // namespace

FormAssembly assemble_weighted_form(const WPBasis& basis, const std::function<void(double, Matrix&)>& weight,
                                    const QuadratureOptions& options) {
  int points = options.points;
  Matrix coarse = integrate(basis, weight, points);
  while (2 * points <= options.max_points) {
    Matrix fine = integrate(basis, weight, 2 * points);
    const double err = max_abs(fine - coarse);
    if (err <= options.tol * std::max(1.0, max_abs(fine))) {
      return FormAssembly{std::move(fine), err, 2 * points};
    }
    coarse = std::move(fine);
    points *= 2;
  }
  throw Error(ErrorKind::QuadratureNotConverged, "form quadrature did not settle by " + std::to_string(points) + " points");
}

FormAssembly assemble_B_form(const WPBasis& basis, const CoefficientPath& b, const QuadratureOptions& options) {
  if (b.dim() != 2 * basis.n()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  if (options.points < 64) throw Error(ErrorKind::InvalidArgument, "at least 64 quadrature points required");
  if (const auto c = b.constant_value(); c && max_abs(*c - (*c)(0, 0) * Matrix::Identity(c->rows(), c->cols())) == 0.0) {
    // bI: the basis is L2-orthonormal
    return FormAssembly{(*c)(0, 0) * Matrix::Identity(basis.dim(), basis.dim()), 0.0, 0};
  }
  return assemble_weighted_form(basis, [&b](double t, Matrix& out) { b.eval(t, out); }, options);
}

Matrix basis_gram(const WPBasis& basis, int points) {
  const int d = 2 * basis.n();
  return integrate(basis, [d](double, Matrix& out) { out = Matrix::Identity(d, d); }, points);
}

}  // namespace maslovp
