#pragma once

#include "pontryagin/indefinite.hpp"
#include "pontryagin/kernels.hpp"

namespace pontryagin {

/// Single-operator colligation (A; P, Φ, E; σ). The outer space E carries the
/// Euclidean form in coordinates; σ appears explicitly wherever it is used.
struct Colligation {
  Matrix a;
  IndefiniteSpace state;
  Matrix phi;
  Matrix sigma;

  Eigen::Index state_dim() const noexcept { return a.rows(); }
  Eigen::Index outer_dim() const noexcept { return sigma.rows(); }

  /// Φ^{[*]} = G_P⁻¹ Φ*.
  Matrix phi_adjoint() const { return state.gram_inverse() * phi.adjoint(); }
  Matrix a_adjoint() const { return state.gram_inverse() * a.adjoint() * state.gram(); }

  void validate_shapes() const;
};

struct ResidualCheck {
  double residual = 0.0;
  bool pass = false;
};

/// ‖(A − A^{[*]})/i − Φ^{[*]}σΦ‖ relative to ‖A‖ + ‖Φ‖²‖σ‖.
ResidualCheck check_colligation(const Colligation& c, double tol = kDefaultTol);

/// S(z) = I − iΦ(A − zI)⁻¹Φ^{[*]}σ.
Matrix char_fn_eval(const Colligation& c, Complex z);

/// Characteristic function as a callable, for use with schur_kernel.
MatrixFunction char_fn(const Colligation& c);

struct PrincipalSubspace {
  Matrix basis;  // orthonormal columns (Euclidean)
  int neg_index = 0;
  bool nondegenerate = true;
  bool irreducible = false;
};

/// Span of Aⁿ Φ^{[*]}(E), n ≥ 0.
PrincipalSubspace principal_subspace(const Colligation& c, double tol = kDefaultTol);

/// Relative defect of S(w)*σS(z) − σ = −i(z − w̄) σΦ(wI − A)^{−[*]}(zI − A)⁻¹Φ^{[*]}σ.
double kernel_identity_residual(const Colligation& c, Complex z, Complex w);

/// Livšic coupling on the direct-sum state: characteristic function S₂·S₁.
Colligation couple_colligations(const Colligation& first, const Colligation& second, double tol = kDefaultTol);

/// Solves (M − zI) X = rhs, refusing when z is within the spectrum guard of M.
Matrix guarded_resolvent_solve(const Matrix& m, Complex z, const Matrix& rhs, double guard = 1e-12);

/// Block-diagonal direct sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

}  // namespace pontryagin
