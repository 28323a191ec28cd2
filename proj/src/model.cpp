#include "maslovp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maslovp/error.hpp"

namespace maslovp {

// ---------------------------------------------------------------------------
// SymplecticBoundary

std::optional<int> detect_order(const Matrix& p, int max_order, double tol) {
  const Matrix id = Matrix::Identity(p.rows(), p.cols());
  Matrix power = p;
  for (int k = 1; k <= max_order; ++k) {
    if (max_abs(power - id) <= tol) return k;
    power = power * p;
  }
  return std::nullopt;
}

SymplecticBoundary::SymplecticBoundary(Matrix p, Matrix m1)
    : n_(static_cast<int>(p.rows() / 2)), p_(std::move(p)), m1_(std::move(m1)) {
  j_ = symplectic_J(n_);
  generator_ = RotationGenerator(m1_);
  order_ = detect_order(p_, 64, 1e-8);
  ker_dim_ = kernel_dimension(p_ - Matrix::Identity(2 * n_, 2 * n_), 1e-8).dim;
  const Vector& ph = generator_.phases();
  for (Eigen::Index i = 0; i < ph.size(); ++i) {
    if (std::abs(std::abs(ph(i)) - std::numbers::pi) < 1e-6) near_branch_cut_ = true;
  }
}

SymplecticBoundary SymplecticBoundary::rotation(int n, double theta) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  double principal = std::remainder(theta, 2.0 * std::numbers::pi);
  if (principal <= -std::numbers::pi + 1e-12) principal = std::numbers::pi;
  const Matrix j = symplectic_J(n);
  const Matrix id = Matrix::Identity(2 * n, 2 * n);
  Matrix p = std::cos(principal) * id + std::sin(principal) * j;
  return SymplecticBoundary(std::move(p), principal * j);
}

SymplecticBoundary SymplecticBoundary::validate(const Matrix& p, int max_order) {
  if (p.rows() != p.cols() || p.rows() == 0 || p.rows() % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, "boundary matrix must be square of positive even dimension");
  }
  if (!p.allFinite()) throw Error(ErrorKind::InvalidArgument, "boundary matrix has non-finite entries");
  const int n = static_cast<int>(p.rows() / 2);
  const Matrix j = symplectic_J(n);
  const Matrix id = Matrix::Identity(2 * n, 2 * n);
  const double orth = max_abs(p.transpose() * p - id);
  if (orth > 1e-10) throw Error(ErrorKind::NotOrthogonal, "||P^T P - I||_max = " + std::to_string(orth));
  const double sympl = max_abs(p.transpose() * j * p - j);
  if (sympl > 1e-10) throw Error(ErrorKind::NotSymplectic, "||P^T J P - J||_max = " + std::to_string(sympl));
  Matrix m1 = logm_unitary(p);
  const double recon = max_abs(expm(m1) - p);
  if (recon > 1e-8) throw Error(ErrorKind::LogFailed, "exp(M1) differs from P by " + std::to_string(recon));
  SymplecticBoundary out(p, std::move(m1));
  if (max_order != 64) out.order_ = detect_order(p, max_order, 1e-8);
  return out;
}

// ---------------------------------------------------------------------------
// Path sources

namespace {

class ConstantSource final : public PathSource {
 public:
  explicit ConstantSource(Matrix value) : value_(std::move(value)) {}
  int dim() const override { return static_cast<int>(value_.rows()); }
  std::string kind() const override { return "constant"; }
  void eval(double, Matrix& out) const override { out = value_; }
  const Matrix& value() const { return value_; }

 private:
  Matrix value_;
};

class TrigSource final : public PathSource {
 public:
  TrigSource(Matrix c0, std::vector<Matrix> cos_terms, std::vector<Matrix> sin_terms,
             std::optional<RotationGenerator> frame)
      : c0_(std::move(c0)), cos_(std::move(cos_terms)), sin_(std::move(sin_terms)), frame_(std::move(frame)) {}

  int dim() const override { return static_cast<int>(c0_.rows()); }
  std::string kind() const override { return "trig"; }

  void eval(double t, Matrix& out) const override {
    out = c0_;
    for (std::size_t k = 0; k < cos_.size(); ++k) {
      out.noalias() += std::cos(2.0 * std::numbers::pi * (k + 1) * t) * cos_[k];
    }
    for (std::size_t k = 0; k < sin_.size(); ++k) {
      out.noalias() += std::sin(2.0 * std::numbers::pi * (k + 1) * t) * sin_[k];
    }
    if (frame_ && !frame_->is_zero()) {
      Matrix f;
      frame_->exp_into(t, f);
      const Matrix tmp = f * out;
      out.noalias() = tmp * f.transpose();
    }
    out = 0.5 * (out + out.transpose()).eval();
  }

 private:
  Matrix c0_;
  std::vector<Matrix> cos_, sin_;
  std::optional<RotationGenerator> frame_;
};

class SampledSource final : public PathSource {
 public:
  explicit SampledSource(std::vector<Matrix> values) : values_(std::move(values)) {}
  int dim() const override { return static_cast<int>(values_.front().rows()); }
  std::string kind() const override { return "samples"; }
  bool intrinsic_on_line() const override { return false; }

  void eval(double t, Matrix& out) const override {
    const int last = static_cast<int>(values_.size()) - 1;
    if (last == 0) {
      out = values_[0];
      return;
    }
    t = std::clamp(t, 0.0, 1.0);
    const double x = t * last;
    int i = std::min(static_cast<int>(std::floor(x)), last - 1);
    if (last < 3) {
      const double w = x - i;
      out = (1.0 - w) * values_[i] + w * values_[i + 1];
      return;
    }
    // four-point stencil i-1 .. i+2, shifted inside [0, last]
    int first = std::clamp(i - 1, 0, last - 3);
    out.setZero(values_[0].rows(), values_[0].cols());
    for (int a = 0; a < 4; ++a) {
      double w = 1.0;
      for (int b = 0; b < 4; ++b) {
        if (b != a) w *= (x - (first + b)) / static_cast<double>(a - b);
      }
      out.noalias() += w * values_[first + a];
    }
  }

 private:
  std::vector<Matrix> values_;
};

class FunctionSource final : public PathSource {
 public:
  FunctionSource(int dim, std::function<Matrix(double)> fn, std::string kind)
      : dim_(dim), fn_(std::move(fn)), kind_(std::move(kind)) {}
  int dim() const override { return dim_; }
  std::string kind() const override { return kind_; }
  void eval(double t, Matrix& out) const override { out = fn_(t); }

 private:
  int dim_;
  std::function<Matrix(double)> fn_;
  std::string kind_;
};

void require_symmetric(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be square of positive even dimension");
  }
  if (asymmetry(m) > 1e-12 * std::max(1.0, max_abs(m))) {
    throw Error(ErrorKind::NotSymmetric, std::string(what) + " is not symmetric");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// CoefficientPath

CoefficientPath CoefficientPath::constant(const Matrix& value) {
  require_symmetric(value, "constant coefficient");
  CoefficientPath p;
  p.dim_ = static_cast<int>(value.rows());
  const Matrix sym = 0.5 * (value + value.transpose());
  p.terms_.push_back({1.0, std::make_shared<ConstantSource>(sym)});
  p.constant_ = sym;
  return p;
}

CoefficientPath CoefficientPath::scalar(int n, double b) {
  return constant(b * Matrix::Identity(2 * n, 2 * n));
}

CoefficientPath CoefficientPath::trig(const Matrix& c0, const std::vector<Matrix>& cos_terms,
                                      const std::vector<Matrix>& sin_terms, const SymplecticBoundary* frame) {
  require_symmetric(c0, "trig c0");
  for (const auto& m : cos_terms) {
    require_symmetric(m, "trig cos term");
    if (m.rows() != c0.rows()) throw Error(ErrorKind::InvalidArgument, "trig term dimension mismatch");
  }
  for (const auto& m : sin_terms) {
    require_symmetric(m, "trig sin term");
    if (m.rows() != c0.rows()) throw Error(ErrorKind::InvalidArgument, "trig term dimension mismatch");
  }
  std::optional<RotationGenerator> gen;
  if (frame) {
    if (frame->dim() != c0.rows()) throw Error(ErrorKind::InvalidArgument, "frame dimension mismatch");
    gen = RotationGenerator(frame->M1());
  }
  CoefficientPath p;
  p.dim_ = static_cast<int>(c0.rows());
  const bool is_constant = cos_terms.empty() && sin_terms.empty() && (!gen || gen->is_zero());
  p.terms_.push_back({1.0, std::make_shared<TrigSource>(c0, cos_terms, sin_terms, std::move(gen))});
  if (is_constant) p.constant_ = 0.5 * (c0 + c0.transpose());
  return p;
}

CoefficientPath CoefficientPath::samples(std::vector<Matrix> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "sampled path needs at least one sample");
  for (const auto& m : values) {
    require_symmetric(m, "sample");
    if (m.rows() != values.front().rows()) throw Error(ErrorKind::InvalidArgument, "sample dimension mismatch");
  }
  CoefficientPath p;
  p.dim_ = static_cast<int>(values.front().rows());
  p.terms_.push_back({1.0, std::make_shared<SampledSource>(std::move(values))});
  return p;
}

CoefficientPath CoefficientPath::function(int dim, std::function<Matrix(double)> fn, std::string kind) {
  if (dim <= 0 || dim % 2 != 0) throw Error(ErrorKind::InvalidArgument, "function path dimension must be even");
  CoefficientPath p;
  p.dim_ = dim;
  p.terms_.push_back({1.0, std::make_shared<FunctionSource>(dim, std::move(fn), std::move(kind))});
  return p;
}

std::string CoefficientPath::kind() const {
  if (terms_.size() == 1 && shift_ == 0.0 && terms_[0].weight == 1.0) return terms_[0].source->kind();
  if (constant_) return "constant";
  return "combination";
}

void CoefficientPath::eval(double t, Matrix& out) const {
  if (constant_) {
    out = *constant_;
    return;
  }
  if (terms_.size() == 1 && terms_[0].weight == 1.0) {
    terms_[0].source->eval(t, out);
  } else {
    out.setZero(dim_, dim_);
    Matrix tmp;
    for (const auto& term : terms_) {
      term.source->eval(t, tmp);
      out.noalias() += term.weight * tmp;
    }
  }
  if (shift_ != 0.0) out.diagonal().array() += shift_;
}

Matrix CoefficientPath::operator()(double t) const {
  Matrix out;
  eval(t, out);
  return out;
}

Matrix CoefficientPath::intrinsic(double t) const { return (*this)(t); }

bool CoefficientPath::intrinsic_on_line() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& term) { return term.source->intrinsic_on_line(); });
}

Matrix CoefficientPath::extended(double t, const SymplecticBoundary& boundary) const {
  const double k = std::floor(t);
  const Matrix base = (*this)(t - k);
  if (k == 0.0) return base;
  // B(t + k) = P^k B(t) P^{-k} for orthogonal P
  const Matrix& p = boundary.P();
  Matrix step = k > 0 ? p : Matrix(p.transpose());
  Matrix power = Matrix::Identity(p.rows(), p.cols());
  for (long i = 0; i < static_cast<long>(std::abs(k)); ++i) power = power * step;
  return power * base * power.transpose();
}

std::optional<Matrix> CoefficientPath::constant_value() const { return constant_; }

CoefficientPath CoefficientPath::shifted(double s) const {
  CoefficientPath p = *this;
  p.shift_ += s;
  if (p.constant_) p.constant_->diagonal().array() += s;
  return p;
}

CoefficientPath CoefficientPath::scaled(double w) const {
  CoefficientPath p = *this;
  for (auto& term : p.terms_) term.weight *= w;
  p.shift_ *= w;
  if (p.constant_) *p.constant_ *= w;
  return p;
}

CoefficientPath CoefficientPath::plus(const CoefficientPath& other) const {
  if (empty()) return other;
  if (other.empty()) return *this;
  if (other.dim_ != dim_) throw Error(ErrorKind::InvalidArgument, "path dimension mismatch");
  CoefficientPath p = *this;
  p.terms_.insert(p.terms_.end(), other.terms_.begin(), other.terms_.end());
  p.shift_ += other.shift_;
  if (constant_ && other.constant_) {
    p.constant_ = *constant_ + *other.constant_;
  } else {
    p.constant_.reset();
  }
  return p;
}

CoefficientPath CoefficientPath::lerp(const CoefficientPath& other, double s) const {
  return scaled(1.0 - s).plus(other.scaled(s));
}

// ---------------------------------------------------------------------------

EquivarianceReport check_equivariance(const SymplecticBoundary& boundary, const CoefficientPath& path, double tol) {
  if (path.dim() != boundary.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  EquivarianceReport report;
  const Matrix& p = boundary.P();
  const int count = path.intrinsic_on_line() ? 64 : 1;
  double scale = 1.0;
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / 64.0;
    const Matrix here = path(t);
    const Matrix next = path.intrinsic(t + 1.0);
    scale = std::max(scale, max_abs(here));
    report.max_violation = std::max(report.max_violation, max_abs(p.transpose() * next * p - here));
  }
  report.samples = count;
  report.pass = report.max_violation <= tol * scale;
  return report;
}

double min_ordering_margin(const CoefficientPath& lower, const CoefficientPath& upper, int grid) {
  if (lower.dim() != upper.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double t = grid == 1 ? 0.0 : static_cast<double>(i) / (grid - 1);
    margin = std::min(margin, min_eigenvalue(upper(t) - lower(t)));
  }
  return margin;
}

double max_J_commutator(const CoefficientPath& path, int grid) {
  const Matrix j = symplectic_J(path.n());
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double t = grid == 1 ? 0.0 : static_cast<double>(i) / (grid - 1);
    const Matrix b = path(t);
    worst = std::max(worst, max_abs(b * j - j * b));
  }
  return worst;
}

}  // namespace maslovp
