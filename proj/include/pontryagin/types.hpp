#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pontryagin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kDefaultTol = 1e-9;

/// Error codes raised by library operations. The CLI reports them by name.
enum class Errc {
  NotHermitian,
  NearSingular,
  DimensionMismatch,
  RankDeficientBasis,
  ConjugatePairSingularity,
  DomainViolation,
  SpectrumHit,
  SingularPGDenominator,
  ZeroNotInUpperHalfPlane,
  SingularD,
  InvalidSchurPart,
  NotUnimodular,
  DegeneratePrincipalSubspace,
  NoHermitianSolution,
  NotOnCurve,
  EmptyFiber,
  MultipleRoots,
  DegenerateDirection,
  NotIntoOutputFiber,
  FibersDontSpan,
  ZeroDenominator,
  SingularCurvePoint,
  ExternalPartMismatch,
  GammaChainMismatch,
  NotInvariant,
  DegenerateSubspace,
  NotInInputFiber,
  UnsupportedFormat,
  InvalidInput,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

/// Ordered list of columns; used for subspace bases and fibers.
using ColumnList = std::vector<Vector>;

Matrix columns_to_matrix(const ColumnList& cols, Eigen::Index rows);
ColumnList matrix_to_columns(const Matrix& m);

// Small numeric helpers shared across modules.
double spectral_norm(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol);
bool all_finite(const Matrix& m);
void require_square(const Matrix& m, const char* what);
void require_same_shape(const Matrix& a, const Matrix& b, const char* what);

/// Eigenvalues (ascending) and orthonormal eigenvectors of the Hermitian part of `h`.
struct HermitianEigen {
  Eigen::VectorXd values;
  Matrix vectors;
};
HermitianEigen hermitian_eigen(const Matrix& h);

/// Counts of eigenvalues above, below and inside the band |λ| ≤ band_tol·max|λ|.
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};
Inertia inertia(const Matrix& h, double band_tol);

/// Orthonormal basis (Euclidean) of the column span of `m`, rank decided by
/// column-pivoted QR with threshold tol·(largest diagonal of R).
Matrix orthonormal_range(const Matrix& m, double tol);

/// Orthonormal basis of the numerical null space: right singular vectors whose
/// singular value is ≤ tol·(largest singular value).
Matrix null_space(const Matrix& m, double tol);

}  // namespace pontryagin
