#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "maslovp/model.hpp"

namespace maslovp {

/// Truncated spectral basis of W_P: e_{j,k}(t) = exp(t M1) exp(2 pi j t J) v_k
/// for |j| <= m, where v_k are orthonormal eigenvectors of -J M1. Every
/// element satisfies e(t + 1) = P e(t), the family is L2-orthonormal, and the
/// form <Ax, y> = int (-J x', y) is diagonal with entries 2 pi j + phi_k.
///
/// Basis functions are ordered in Fourier blocks j = -m, ..., m of size 2n,
/// so the truncation at m' <= m is the contiguous middle range returned by
/// sub_range(m').
class WPBasis {
 public:
  WPBasis(const SymplecticBoundary& boundary, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  int dim() const { return 2 * n_ * (2 * m_ + 1); }
  int frequency(int index) const { return index / (2 * n_) - m_; }
  int mode(int index) const { return index % (2 * n_); }

  /// Eigenvalues of -J M1 (ascending, each phase of M1 appears twice).
  const Vector& mode_phases() const { return mode_phases_; }
  const Matrix& mode_vectors() const { return modes_; }

  /// Spectrum of A on the span, in basis order.
  const Vector& a_eigenvalues() const { return a_eigenvalues_; }

  /// [offset, offset + size) of the truncation at level sub_m.
  std::pair<int, int> sub_range(int sub_m) const;

  Vector evaluate(int index, double t) const;
  /// 2n x dim matrix whose columns are the basis functions at t.
  void evaluate_all(double t, Matrix& out) const;

  const SymplecticBoundary& boundary() const { return boundary_; }

 private:
  SymplecticBoundary boundary_;
  int n_, m_;
  Vector mode_phases_;
  Matrix modes_;
  Vector a_eigenvalues_;
};

WPBasis build_basis(const SymplecticBoundary& boundary, int m);

/// <Ax, y> on the basis, assembled from the closed form (no quadrature).
Matrix assemble_A_form(const WPBasis& basis);

struct FormAssembly {
  Matrix form;
  double quadrature_error = 0.0;
  int quad_points = 0;
};

struct QuadratureOptions {
  int points = 256;
  int max_points = 8192;
  /// point-doubling difference must be below tol * max(1, ||form||_max)
  double tol = 1e-9;
};

/// int (W(t) e_i(t), e_j(t)) dt for a symmetric weight W, by Gauss-Legendre
/// with point doubling until the change is below tolerance.
FormAssembly assemble_weighted_form(const WPBasis& basis, const std::function<void(double, Matrix&)>& weight,
                                    const QuadratureOptions& options = {});

/// <Bx, y> = int (B(t) x, y) dt on the basis.
FormAssembly assemble_B_form(const WPBasis& basis, const CoefficientPath& b, const QuadratureOptions& options = {});

/// L2 Gram matrix of the basis (identity up to quadrature error).
Matrix basis_gram(const WPBasis& basis, int points = 256);

}  // namespace maslovp
