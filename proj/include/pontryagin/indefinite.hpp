#pragma once

#include "pontryagin/types.hpp"

namespace pontryagin {

/// Finite-dimensional Pontryagin space given by an invertible Hermitian Gram
/// matrix. [f, g] = g* · gram · f.
class IndefiniteSpace {
 public:
  IndefiniteSpace() = default;

  /// Validates the Gram matrix (Hermitian, invertible) and records its negative index.
  explicit IndefiniteSpace(Matrix gram, double tol = kDefaultTol);

  static IndefiniteSpace euclidean(Eigen::Index n);
  static IndefiniteSpace signature(int positive, int negative);

  const Matrix& gram() const noexcept { return gram_; }
  const Matrix& gram_inverse() const noexcept { return gram_inv_; }
  int neg_index() const noexcept { return neg_index_; }
  Eigen::Index dim() const noexcept { return gram_.rows(); }

  Complex inner(const Vector& f, const Vector& g) const { return g.dot(gram_ * f); }

 private:
  Matrix gram_;
  Matrix gram_inv_;
  int neg_index_ = 0;
};

/// Number of negative eigenvalues of a Hermitian matrix. Throws NotHermitian or
/// NearSingular when an eigenvalue lies within tol·max|λ| of zero.
int neg_index(const Matrix& g, double tol = kDefaultTol);

/// A^{[*]} = G_dom⁻¹ · A* · G_cod for A : domain → codomain.
Matrix indefinite_adjoint(const Matrix& a, const IndefiniteSpace& domain, const IndefiniteSpace& codomain);

struct OperatorClass {
  bool isometry = false;
  bool coisometry = false;
  bool unitary = false;
  bool contraction = false;
};

OperatorClass classify_operator(const Matrix& a, const IndefiniteSpace& domain, const IndefiniteSpace& codomain,
                                double tol = kDefaultTol);

struct FundamentalDecomposition {
  ColumnList basis_plus;
  ColumnList basis_minus;
};

/// Eigenvector split of the Gram matrix; the two families are Gram-orthogonal.
FundamentalDecomposition fundamental_decomposition(const IndefiniteSpace& space);

struct SubspaceStatus {
  bool nondegenerate = false;
  int neg_index = 0;
  /// B*·G·B, kept for callers that need it.
  Matrix restricted_gram;
};

SubspaceStatus subspace_status(const IndefiniteSpace& space, const ColumnList& basis, double tol = kDefaultTol);
SubspaceStatus subspace_status(const IndefiniteSpace& space, const Matrix& basis, double tol = kDefaultTol);

}  // namespace pontryagin

namespace pontryagin {

/// Orthonormal (Euclidean) basis of the smallest subspace containing the
/// columns of `start` and invariant under every operator in `ops`.
Matrix invariant_span(const std::vector<Matrix>& ops, const Matrix& start, double tol = kDefaultTol);

}  // namespace pontryagin
