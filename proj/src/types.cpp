#include "pontryagin/types.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace pontryagin {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NearSingular: return "NearSingular";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::RankDeficientBasis: return "RankDeficientBasis";
    case Errc::ConjugatePairSingularity: return "ConjugatePairSingularity";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::SpectrumHit: return "SpectrumHit";
    case Errc::SingularPGDenominator: return "SingularPGDenominator";
    case Errc::ZeroNotInUpperHalfPlane: return "ZeroNotInUpperHalfPlane";
    case Errc::SingularD: return "SingularD";
    case Errc::InvalidSchurPart: return "InvalidSchurPart";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::DegeneratePrincipalSubspace: return "DegeneratePrincipalSubspace";
    case Errc::NoHermitianSolution: return "NoHermitianSolution";
    case Errc::NotOnCurve: return "NotOnCurve";
    case Errc::EmptyFiber: return "EmptyFiber";
    case Errc::MultipleRoots: return "MultipleRoots";
    case Errc::DegenerateDirection: return "DegenerateDirection";
    case Errc::NotIntoOutputFiber: return "NotIntoOutputFiber";
    case Errc::FibersDontSpan: return "FibersDontSpan";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::SingularCurvePoint: return "SingularCurvePoint";
    case Errc::ExternalPartMismatch: return "ExternalPartMismatch";
    case Errc::GammaChainMismatch: return "GammaChainMismatch";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::DegenerateSubspace: return "DegenerateSubspace";
    case Errc::NotInInputFiber: return "NotInInputFiber";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Matrix columns_to_matrix(const ColumnList& cols, Eigen::Index rows) {
  Matrix m(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error(Errc::DimensionMismatch, "column length differs from ambient dimension");
    m.col(static_cast<Eigen::Index>(j)) = cols[j];
  }
  return m;
}

ColumnList matrix_to_columns(const Matrix& m) {
  ColumnList out;
  out.reserve(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) out.emplace_back(m.col(j));
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= tol * scale;
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, std::string(what) + " must be square");
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, std::string(what) + ": shapes differ");
}

HermitianEigen hermitian_eigen(const Matrix& h) {
  require_square(h, "Hermitian matrix");
  if (h.rows() == 0) return {Eigen::VectorXd(0), Matrix(0, 0)};
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

Inertia inertia(const Matrix& h, double band_tol) {
  Inertia out;
  if (h.rows() == 0) return out;
  const auto eig = hermitian_eigen(h);
  const double scale = eig.values.cwiseAbs().maxCoeff();
  const double band = band_tol * scale;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    if (scale == 0.0 || std::abs(v) <= band) {
      ++out.zero;
    } else if (v < 0) {
      ++out.negative;
    } else {
      ++out.positive;
    }
  }
  return out;
}

Matrix orthonormal_range(const Matrix& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  const auto& r = qr.matrixR();
  const Eigen::Index k = std::min(m.rows(), m.cols());
  const double top = std::abs(r(0, 0));
  if (top == 0.0) return Matrix(m.rows(), 0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::abs(r(i, i)) > tol * top) ++rank;
  }
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), rank);
  return q;
}

Matrix null_space(const Matrix& m, double tol) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (top > 0.0 && s(i) > tol * top) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

}  // namespace pontryagin
