#include "cholspace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cholspace {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDiagonal: return "NonPositiveDiagonal";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::SingularTriangular: return "SingularTriangular";
    case ErrorCode::NonPositiveSpectrum: return "NonPositiveSpectrum";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::ZeroTheta: return "ZeroTheta";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::GyroDomainError: return "GyroDomainError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

double power(double x, double a) {
  if (a == 1.0) return x;
  if (a == 2.0) return x * x;
  if (a == -1.0) return 1.0 / x;
  if (a == 0.0) return 1.0;
  return std::exp(a * std::log(x));
}

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw GeometryError(ErrorCode::DimMismatch,
                        std::string(what) + " must be a non-empty square matrix");
  }
}

}  // namespace

// LowerTriangular ------------------------------------------------------------

LowerTriangular::LowerTriangular(const Matrix& m) {
  require_square(m, "lower-triangular input");
  m_ = m.triangularView<Eigen::Lower>();
}

LowerTriangular LowerTriangular::zero(Index n) { return LowerTriangular(Matrix::Zero(n, n)); }

LowerTriangular LowerTriangular::identity(Index n) {
  return LowerTriangular(Matrix::Identity(n, n));
}

LowerTriangular LowerTriangular::from_parts(const Matrix& lower, const Vector& diag) {
  require_square(lower, "strict-lower part");
  if (diag.size() != lower.rows()) {
    throw GeometryError(ErrorCode::DimMismatch, "diagonal length does not match matrix size");
  }
  Matrix m = lower.triangularView<Eigen::StrictlyLower>();
  m.diagonal() = diag;
  return LowerTriangular(m);
}

Matrix LowerTriangular::strict_lower() const { return m_.triangularView<Eigen::StrictlyLower>(); }

LowerTriangular LowerTriangular::operator+(const LowerTriangular& o) const {
  LowerTriangular r;
  r.m_ = m_ + o.m_;
  return r;
}

LowerTriangular LowerTriangular::operator-(const LowerTriangular& o) const {
  LowerTriangular r;
  r.m_ = m_ - o.m_;
  return r;
}

LowerTriangular LowerTriangular::operator*(double s) const {
  LowerTriangular r;
  r.m_ = s * m_;
  return r;
}

bool LowerTriangular::operator==(const LowerTriangular& o) const {
  return m_.rows() == o.m_.rows() && m_ == o.m_;
}

// CholeskyPoint --------------------------------------------------------------

CholeskyPoint::CholeskyPoint(LowerTriangular L, Mode mode) : L_(std::move(L)) {
  if (mode == Mode::Raw) return;
  for (Index i = 0; i < L_.n(); ++i) {
    const double d = L_(i, i);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw GeometryError(ErrorCode::NonPositiveDiagonal,
                          "Cholesky point diagonal entry " + std::to_string(i) + " = " +
                              std::to_string(d));
    }
  }
}

Matrix CholeskyPoint::gram() const {
  const Matrix& L = L_.matrix();
  Matrix p = L * L.transpose();
  return 0.5 * (p + p.transpose());
}

// PositiveDiag ---------------------------------------------------------------

PositiveDiag::PositiveDiag(Vector d) : d_(std::move(d)) {
  for (Index i = 0; i < d_.size(); ++i) {
    if (!(d_[i] > 0.0) || !std::isfinite(d_[i])) {
      throw GeometryError(ErrorCode::NonPositiveDiagonal,
                          "entry " + std::to_string(i) + " = " + std::to_string(d_[i]));
    }
  }
}

// SymTangent / SpdPoint ------------------------------------------------------

SymTangent::SymTangent(const Matrix& v) {
  require_square(v, "symmetric tangent");
  v_ = 0.5 * (v + v.transpose());
}

SpdPoint::SpdPoint(const Matrix& p) {
  require_square(p, "SPD input");
  p_ = 0.5 * (p + p.transpose());
  L_ = cholesky_factor(p_);
}

SpdPoint SpdPoint::from_factor(const CholeskyPoint& L) { return SpdPoint(L.gram(), L); }

// Free functions -------------------------------------------------------------

Matrix strict_lower(const Matrix& a) { return a.triangularView<Eigen::StrictlyLower>(); }

Matrix strict_upper(const Matrix& a) { return a.triangularView<Eigen::StrictlyUpper>(); }

Vector diag_of(const Matrix& a) { return a.diagonal(); }

PositiveDiag positive_diag_of(const Matrix& a) { return PositiveDiag(a.diagonal()); }

CholeskyPoint cholesky_factor(const Matrix& p) {
  require_square(p, "Cholesky input");
  Eigen::LLT<Matrix, Eigen::Lower> llt(p);
  if (llt.info() != Eigen::Success) {
    throw GeometryError(ErrorCode::NotPositiveDefinite, "Cholesky pivot <= 0");
  }
  Matrix L = llt.matrixL();
  if (!L.allFinite()) {
    throw GeometryError(ErrorCode::NotPositiveDefinite, "non-finite Cholesky factor");
  }
  for (Index i = 0; i < L.rows(); ++i) {
    if (!(L(i, i) > 0.0)) {
      throw GeometryError(ErrorCode::NotPositiveDefinite, "zero Cholesky pivot");
    }
  }
  return CholeskyPoint(LowerTriangular(L));
}

Matrix tri_solve(const LowerTriangular& L, const Matrix& B, Mode mode) {
  if (B.rows() != L.n()) {
    throw GeometryError(ErrorCode::DimMismatch, "tri_solve: row count mismatch");
  }
  if (mode == Mode::Checked) {
    for (Index i = 0; i < L.n(); ++i) {
      if (L(i, i) == 0.0) {
        throw GeometryError(ErrorCode::SingularTriangular,
                            "zero diagonal entry at " + std::to_string(i));
      }
    }
  }
  return L.matrix().triangularView<Eigen::Lower>().solve(B);
}

Matrix sym_matfun(const Matrix& s, const std::function<double(double)>& f) {
  require_square(s, "symmetric matrix function input");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (s + s.transpose()));
  const Matrix& U = eig.eigenvectors();
  Vector fl = eig.eigenvalues().unaryExpr(f);
  Matrix r = U * fl.asDiagonal() * U.transpose();
  return 0.5 * (r + r.transpose());
}

namespace {

void require_positive_spectrum(const Matrix& s, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (s + s.transpose()), Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw GeometryError(ErrorCode::NonPositiveSpectrum,
                        std::string(what) + " of a matrix with eigenvalue <= 0");
  }
}

}  // namespace

Matrix sym_log(const Matrix& s) {
  require_positive_spectrum(s, "logarithm");
  return sym_matfun(s, [](double x) { return std::log(x); });
}

Matrix sym_exp(const Matrix& s) {
  return sym_matfun(s, [](double x) { return std::exp(x); });
}

Matrix sym_pow(const Matrix& s, double a) {
  if (a != std::floor(a)) require_positive_spectrum(s, "fractional power");
  return sym_matfun(s, [a](double x) { return std::pow(x, a); });
}

Matrix sym_sqrt(const Matrix& s) { return sym_pow(s, 0.5); }

double determinant(const Matrix& a) {
  require_square(a, "determinant input");
  return a.partialPivLu().determinant();
}

double determinant(const SpdPoint& p) {
  const double prod = p.factor().diagonal().prod();
  return prod * prod;
}

double relative_error(const Matrix& a, const Matrix& b) {
  const double scale = std::max(a.norm(), b.norm());
  if (scale == 0.0) return 0.0;
  return (a - b).norm() / scale;
}

double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

}  // namespace cholspace
