#include "pontryagin/indefinite.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace pontryagin {

IndefiniteSpace::IndefiniteSpace(Matrix gram, double tol) : gram_(std::move(gram)) {
  require_square(gram_, "Gram matrix");
  if (!all_finite(gram_)) throw Error(Errc::InvalidInput, "Gram matrix has non-finite entries");
  if (!is_hermitian(gram_, tol)) throw Error(Errc::NotHermitian, "Gram matrix is not Hermitian");
  gram_ = 0.5 * (gram_ + gram_.adjoint());
  if (gram_.rows() == 0) {
    gram_inv_ = Matrix(0, 0);
    return;
  }
  Eigen::JacobiSVD<Matrix> svd(gram_);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= tol * s(0)) throw Error(Errc::NearSingular, "Gram matrix is not invertible");
  gram_inv_ = gram_.inverse();
  neg_index_ = pontryagin::neg_index(gram_, tol);
}

IndefiniteSpace IndefiniteSpace::euclidean(Eigen::Index n) { return IndefiniteSpace(Matrix::Identity(n, n)); }

IndefiniteSpace IndefiniteSpace::signature(int positive, int negative) {
  Matrix g = Matrix::Zero(positive + negative, positive + negative);
  for (int i = 0; i < positive; ++i) g(i, i) = 1.0;
  for (int i = 0; i < negative; ++i) g(positive + i, positive + i) = -1.0;
  return IndefiniteSpace(g);
}

int neg_index(const Matrix& g, double tol) {
  require_square(g, "neg_index argument");
  if (!is_hermitian(g, tol)) throw Error(Errc::NotHermitian, "matrix is not Hermitian");
  if (g.rows() == 0) return 0;
  const auto in = inertia(g, tol);
  if (in.zero > 0) throw Error(Errc::NearSingular, "eigenvalue inside the zero band");
  return in.negative;
}

Matrix indefinite_adjoint(const Matrix& a, const IndefiniteSpace& domain, const IndefiniteSpace& codomain) {
  if (a.cols() != domain.dim() || a.rows() != codomain.dim())
    throw Error(Errc::DimensionMismatch, "operator shape does not match the spaces");
  return domain.gram_inverse() * a.adjoint() * codomain.gram();
}

OperatorClass classify_operator(const Matrix& a, const IndefiniteSpace& domain, const IndefiniteSpace& codomain,
                                double tol) {
  const Matrix adj = indefinite_adjoint(a, domain, codomain);
  OperatorClass out;
  out.isometry = (adj * a - Matrix::Identity(domain.dim(), domain.dim())).norm() <= tol;
  out.coisometry = (a * adj - Matrix::Identity(codomain.dim(), codomain.dim())).norm() <= tol;
  out.unitary = out.isometry && out.coisometry;
  const Matrix defect = domain.gram() - a.adjoint() * codomain.gram() * a;
  if (defect.rows() == 0) {
    out.contraction = true;
  } else {
    const auto eig = hermitian_eigen(defect);
    out.contraction = eig.values(0) >= -tol;
  }
  return out;
}

FundamentalDecomposition fundamental_decomposition(const IndefiniteSpace& space) {
  FundamentalDecomposition out;
  if (space.dim() == 0) return out;
  const auto eig = hermitian_eigen(space.gram());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) < 0) {
      out.basis_minus.emplace_back(eig.vectors.col(i));
    } else {
      out.basis_plus.emplace_back(eig.vectors.col(i));
    }
  }
  return out;
}

SubspaceStatus subspace_status(const IndefiniteSpace& space, const Matrix& basis, double tol) {
  if (basis.rows() != space.dim()) throw Error(Errc::DimensionMismatch, "basis rows differ from space dimension");
  SubspaceStatus out;
  if (basis.cols() == 0) {
    out.nondegenerate = true;
    out.restricted_gram = Matrix(0, 0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(basis);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0 || s(s.size() - 1) <= tol * s(0) || basis.cols() > basis.rows())
    throw Error(Errc::RankDeficientBasis, "basis columns are linearly dependent");

  out.restricted_gram = basis.adjoint() * space.gram() * basis;
  // Scale of the zero band: ambient Gram norm times the basis scale.
  const double scale = spectral_norm(space.gram()) * s(0) * s(0);
  const auto eig = hermitian_eigen(out.restricted_gram);
  const double smallest = eig.values.cwiseAbs().minCoeff();
  out.nondegenerate = smallest > tol * scale;
  int neg = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) < -tol * scale) ++neg;
  }
  out.neg_index = neg;
  return out;
}

SubspaceStatus subspace_status(const IndefiniteSpace& space, const ColumnList& basis, double tol) {
  return subspace_status(space, columns_to_matrix(basis, space.dim()), tol);
}

}  // namespace pontryagin

namespace pontryagin {

Matrix invariant_span(const std::vector<Matrix>& ops, const Matrix& start, double tol) {
  const Eigen::Index n = start.rows();
  std::vector<Matrix> scaled;
  for (const auto& op : ops) {
    if (op.rows() != n || op.cols() != n) throw Error(Errc::DimensionMismatch, "operator does not act on the space");
    const double nrm = spectral_norm(op);
    scaled.push_back(nrm > 0 ? Matrix(op / nrm) : op);
  }
  const double start_norm = start.size() ? spectral_norm(start) : 0.0;
  if (start_norm == 0.0) return Matrix(n, 0);
  Matrix q = orthonormal_range(start / start_norm, tol);
  for (Eigen::Index step = 0; step <= n; ++step) {
    Matrix grown(n, q.cols() * static_cast<Eigen::Index>(1 + scaled.size()));
    grown.leftCols(q.cols()) = q;
    for (std::size_t k = 0; k < scaled.size(); ++k)
      grown.middleCols(q.cols() * static_cast<Eigen::Index>(k + 1), q.cols()) = scaled[k] * q;
    Matrix next = orthonormal_range(grown, tol);
    if (next.cols() == q.cols()) return q;
    q = std::move(next);
  }
  return q;
}

}  // namespace pontryagin
