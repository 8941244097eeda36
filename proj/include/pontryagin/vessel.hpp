#pragma once

#include <map>
#include <utility>

#include "pontryagin/colligation.hpp"

namespace pontryagin {

/// Commutative two-operator vessel (A₁, A₂; P, Φ, E; σ₁, σ₂, γ, γ̃).
struct Vessel {
  Matrix a1;
  Matrix a2;
  IndefiniteSpace state;
  Matrix phi;
  Matrix sigma1;
  Matrix sigma2;
  Matrix gamma;
  Matrix gamma_tilde;

  Eigen::Index state_dim() const noexcept { return a1.rows(); }
  Eigen::Index outer_dim() const noexcept { return sigma1.rows(); }

  Matrix adjoint(const Matrix& op) const { return state.gram_inverse() * op.adjoint() * state.gram(); }
  Matrix phi_adjoint() const { return state.gram_inverse() * phi.adjoint(); }

  void validate_shapes() const;

  /// The colligation (ξ₁A₁ + ξ₂A₂; P, Φ, E; ξ₁σ₁ + ξ₂σ₂).
  Colligation pencil_colligation(Complex xi1, Complex xi2) const;
};

enum class Side { Input, Output };

struct VesselCheck {
  double commutator = 0.0;
  double coll1 = 0.0;
  double coll2 = 0.0;
  double input = 0.0;
  double output = 0.0;
  double linkage = 0.0;
  bool pass = false;
  /// Both σ₁ and σ₂ singular: the curve may contain the line at infinity.
  bool singular_sigmas = false;

  double max_residual() const;
};

VesselCheck check_vessel(const Vessel& v, double tol = kDefaultTol);

/// Ä_k = α_{k1}A₁ + α_{k2}A₂, σ̈_k = α_{k1}σ₁ + α_{k2}σ₂; requires det α = 1.
Vessel alpha_transform(const Vessel& v, const Eigen::Matrix2d& alpha, double tol = kDefaultTol);

/// Polynomial Σ c_{ij} λ₁ⁱ λ₂ʲ.
class BivariatePoly {
 public:
  using Key = std::pair<int, int>;

  BivariatePoly() = default;
  explicit BivariatePoly(std::map<Key, Complex> coeffs) : coeffs_(std::move(coeffs)) {}

  const std::map<Key, Complex>& coeffs() const noexcept { return coeffs_; }
  Complex coeff(int i, int j) const;
  void set(int i, int j, Complex c);

  Complex operator()(Complex l1, Complex l2) const;
  BivariatePoly d_dl1() const;
  BivariatePoly d_dl2() const;
  int total_degree() const;
  double max_abs_coeff() const;

  /// Σ c_{ij} A₁ⁱ A₂ʲ for commuting A₁, A₂.
  Matrix evaluate(const Matrix& a1, const Matrix& a2) const;

  /// Largest coefficient difference relative to the larger coefficient magnitude.
  static double relative_distance(const BivariatePoly& p, const BivariatePoly& q);

 private:
  std::map<Key, Complex> coeffs_;
};

/// λ₁σ₂ − λ₂σ₁ + γ (input) or + γ̃ (output).
Matrix pencil(const Vessel& v, Complex l1, Complex l2, Side side);

/// det(λ₁σ₂ − λ₂σ₁ + γ_side), recovered by interpolation on a tensor grid.
BivariatePoly discriminant_polynomial(const Vessel& v, Side side);

struct JointPrincipalSubspace {
  Matrix basis;
  int neg_index = 0;
  bool nondegenerate = true;
  bool irreducible = false;
  /// max_k ‖(I − Π) A_k^{[*]} Π‖ with Π the Euclidean projector.
  double adjoint_invariance = 0.0;
};

JointPrincipalSubspace principal_subspace_joint(const Vessel& v, double tol = kDefaultTol);

/// ‖p(A₁, A₂) restricted to the principal subspace‖, relative.
double cayley_hamilton_residual(const Vessel& v, double tol = kDefaultTol);

/// Relative selfadjointness defect of A₁, A₂ restricted to the indefinite
/// orthogonal complement of the principal subspace.
double complement_selfadjoint_residual(const Vessel& v, double tol = kDefaultTol);

struct GammaSynthesis {
  Matrix gamma;
  Matrix gamma_tilde;
  double residual = 0.0;
  Vessel vessel;
};

/// Minimum-norm Hermitian γ with γΦ = σ₁ΦA₂^{[*]} − σ₂ΦA₁^{[*]}; γ̃ from the linkage condition.
GammaSynthesis construct_gammas(const Matrix& a1, const Matrix& a2, const Matrix& phi, const Matrix& sigma1,
                                const Matrix& sigma2, const IndefiniteSpace& state, double tol = kDefaultTol);

/// γ̃ − γ prescribed by the linkage condition: i(σ₁ΦΦ^{[*]}σ₂ − σ₂ΦΦ^{[*]}σ₁).
Matrix linkage_term(const Matrix& phi, const IndefiniteSpace& state, const Matrix& sigma1, const Matrix& sigma2);

}  // namespace pontryagin
