#pragma once

#include <optional>

#include "pontryagin/colligation.hpp"

namespace pontryagin {

/// State-space data F(z) = D + C(zI − A)⁻¹B with an explicit state Gram.
struct Realization {
  Matrix a;
  Matrix b;
  Matrix c;
  Matrix d;
  Matrix state_gram;

  Eigen::Index state_dim() const noexcept { return a.rows(); }
  Eigen::Index outer_dim() const noexcept { return d.rows(); }

  Matrix transfer(Complex z) const;
  void validate_shapes() const;

  /// Empty-state system with D = I_m.
  static Realization identity(Eigen::Index m);
};

/// Σ = (P S + Q)(P + Q S)⁻¹ with P = (I + J)/2, Q = (I − J)/2.
Matrix pg_transform(const Matrix& s, const Matrix& j);
/// S = (Q + P Σ)(P + Q Σ)⁻¹.
Matrix pg_inverse(const Matrix& sigma_val, const Matrix& j);

/// Realization of ∏ (I + (b_j(z) − 1) u_j u_j*) with b_j(z) = (z − w_j)/(z − w̄_j),
/// one negative-signature state per zero. Directions default to e₁.
Realization blaschke_realization(const std::vector<Complex>& zeros, Eigen::Index m = 1,
                                 const std::vector<Vector>& directions = {});

/// (A − BD⁻¹C, BD⁻¹, −D⁻¹C, D⁻¹).
Realization invert_realization(const Realization& r);

/// Transfer function r1(z)·r2(z); state Gram diag(G₁, G₂).
Realization cascade_product(const Realization& r1, const Realization& r2);

struct RealizationReport {
  double colligation_residual = 0.0;
  double real_line_defect = 0.0;   // max ‖S(x)*JS(x) − J‖ over real samples
  double transform_defect = 0.0;   // max ‖S(z) − pg_inverse(Σ(z))‖ over half-plane samples
  std::vector<double> real_samples;
  std::vector<Complex> half_plane_samples;
};

struct JUnitaryRealization {
  Colligation colligation;
  Realization sigma;  // realization of the Potapov–Ginzburg image Σ
  RealizationReport report;
};

/// Realizes S = pg_inverse(Blaschke(zeros)·Σ₀) as a colligation with σ = J and
/// state Gram diag(I, −I_{#zeros}).
JUnitaryRealization realize_junitary(const Realization& schur_part, const std::vector<Complex>& zeros,
                                     const Matrix& j, const std::vector<Vector>& directions = {},
                                     std::uint64_t seed = 0, double tol = kDefaultTol);

/// Checks B = iG⁻¹C*, A − A^{[*]} = iG⁻¹C*C, D = I over a positive state Gram.
double schur_part_residual(const Realization& r);

}  // namespace pontryagin
