#pragma once

// Dense small-matrix primitives: triangular storage, Cholesky factorization,
// triangular solves and eigendecomposition-based functions of symmetric
// matrices.

#include <functional>

#include <Eigen/Dense>

#include "cholspace/errors.hpp"

namespace cholspace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// x^a with the integer exponents {0, 1, 2, -1} done by multiplication and
/// everything else as exp(a * ln x). No domain checks: a negative base with a
/// fractional exponent yields NaN.
double power(double x, double a);

/// Lower-triangular matrix. Entries above the diagonal are identically zero.
class LowerTriangular {
 public:
  LowerTriangular() = default;

  /// Keeps the lower triangle (diagonal included) of `m`; m must be square.
  explicit LowerTriangular(const Matrix& m);

  static LowerTriangular zero(Index n);
  static LowerTriangular identity(Index n);
  /// Strict-lower part of `lower` plus `diag` on the diagonal.
  static LowerTriangular from_parts(const Matrix& lower, const Vector& diag);

  Index n() const { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }
  Vector diagonal() const { return m_.diagonal(); }
  Matrix strict_lower() const;

  LowerTriangular operator+(const LowerTriangular& o) const;
  LowerTriangular operator-(const LowerTriangular& o) const;
  LowerTriangular operator*(double s) const;
  bool operator==(const LowerTriangular& o) const;

 private:
  Matrix m_;
};

inline LowerTriangular operator*(double s, const LowerTriangular& x) { return x * s; }

/// Tangent vectors on the Cholesky manifold are arbitrary lower-triangular
/// matrices.
using LowerTriTangent = LowerTriangular;

/// Point of the Cholesky manifold: lower triangular with positive diagonal.
/// Raw-mode construction skips the diagonal check so the stability harness
/// can hold degenerate factors.
class CholeskyPoint {
 public:
  CholeskyPoint() = default;
  explicit CholeskyPoint(LowerTriangular L, Mode mode = Mode::Checked);

  static CholeskyPoint identity(Index n) { return CholeskyPoint(LowerTriangular::identity(n)); }

  Index n() const { return L_.n(); }
  const LowerTriangular& factor() const { return L_; }
  const Matrix& matrix() const { return L_.matrix(); }
  Vector diagonal() const { return L_.diagonal(); }
  /// L * L^T.
  Matrix gram() const;

  bool operator==(const CholeskyPoint& o) const { return L_ == o.L_; }

 private:
  LowerTriangular L_;
};

/// Diagonal matrix with strictly positive entries, stored as a vector.
class PositiveDiag {
 public:
  PositiveDiag() = default;
  explicit PositiveDiag(Vector d);
  static PositiveDiag identity(Index n) { return PositiveDiag(Vector::Ones(n)); }

  Index n() const { return d_.size(); }
  const Vector& values() const { return d_; }
  double operator[](Index i) const { return d_[i]; }

 private:
  Vector d_;
};

/// Symmetric tangent matrix; symmetrized as (A + A^T) / 2 on construction.
class SymTangent {
 public:
  SymTangent() = default;
  explicit SymTangent(const Matrix& v);

  Index n() const { return v_.rows(); }
  const Matrix& matrix() const { return v_; }

 private:
  Matrix v_;
};

/// Symmetric positive definite matrix with its Cholesky factor cached.
class SpdPoint {
 public:
  SpdPoint() = default;
  /// Symmetrizes, then factorizes; throws NotPositiveDefinite.
  explicit SpdPoint(const Matrix& p);
  /// P = L L^T.
  static SpdPoint from_factor(const CholeskyPoint& L);

  Index n() const { return p_.rows(); }
  const Matrix& matrix() const { return p_; }
  const CholeskyPoint& factor() const { return L_; }

 private:
  SpdPoint(Matrix p, CholeskyPoint L) : p_(std::move(p)), L_(std::move(L)) {}

  Matrix p_;
  CholeskyPoint L_;
};

// ---------------------------------------------------------------------------

Matrix strict_lower(const Matrix& a);
Matrix strict_upper(const Matrix& a);
/// Diagonal part as a vector, no checks.
Vector diag_of(const Matrix& a);
/// Diagonal part; throws NonPositiveDiagonal unless every entry is > 0.
PositiveDiag positive_diag_of(const Matrix& a);

/// Cholesky factor of a symmetric matrix (only the lower triangle is read).
/// Throws NotPositiveDefinite on a pivot <= 0 or a non-finite factor.
CholeskyPoint cholesky_factor(const Matrix& p);

/// Solves L X = B by forward substitution. Checked mode throws
/// SingularTriangular on a zero diagonal entry.
Matrix tri_solve(const LowerTriangular& L, const Matrix& B, Mode mode = Mode::Checked);

/// U f(Λ) U^T for symmetric S = U Λ U^T, symmetrized. No spectrum checks.
Matrix sym_matfun(const Matrix& s, const std::function<double(double)>& f);

Matrix sym_log(const Matrix& s);
Matrix sym_exp(const Matrix& s);
/// Matrix power; exponents other than integers need a positive spectrum.
Matrix sym_pow(const Matrix& s, double a);
Matrix sym_sqrt(const Matrix& s);

/// General determinant (partial-pivot LU).
double determinant(const Matrix& a);
/// det(P) as the squared product of the Cholesky diagonal.
double determinant(const SpdPoint& p);

/// ||A - B||_F / max(||A||_F, ||B||_F), zero when both vanish.
double relative_error(const Matrix& a, const Matrix& b);
double relative_error(double a, double b);

}  // namespace cholspace
