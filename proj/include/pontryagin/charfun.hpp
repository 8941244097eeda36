#pragma once

#include <array>

#include "pontryagin/vessel.hpp"

namespace pontryagin {

/// Affine point (λ₁, λ₂) of the discriminant curve.
struct CurvePoint {
  Complex l1;
  Complex l2;

  CurvePoint conj() const { return {std::conj(l1), std::conj(l2)}; }
};

/// Real direction ξ = (ξ₁, ξ₂).
using Direction = std::array<double, 2>;

inline Complex dot(const Direction& xi, const CurvePoint& p) { return xi[0] * p.l1 + xi[1] * p.l2; }

struct Fiber {
  CurvePoint point;
  Side side = Side::Input;
  Matrix basis;  // orthonormal columns
};

/// Complete characteristic function W(ξ, z) = I − iΦ(ξ₁A₁ + ξ₂A₂ − z)⁻¹Φ^{[*]}(ξ₁σ₁ + ξ₂σ₂).
Matrix ccf_eval(const Vessel& v, Complex xi1, Complex xi2, Complex z);

/// W̃(ξ, z) = I − i(ξ₁σ₁ + ξ₂σ₂)Φ(ξ₁A₁ + ξ₂A₂ − z)⁻¹Φ^{[*]}.
Matrix ccf_tilde_eval(const Vessel& v, Complex xi1, Complex xi2, Complex z);

/// |λ₁|‖σ₂‖ + |λ₂|‖σ₁‖ + ‖γ_side‖: reference size for singular values of the pencil.
double pencil_scale(const Vessel& v, const CurvePoint& pt, Side side);

/// Numerical kernel of λ₁σ₂ − λ₂σ₁ + γ_side.
Fiber fiber(const Vessel& v, const CurvePoint& pt, Side side, double tol = kDefaultTol);

/// Affine points of the input curve on the line ξ₁λ₁ + ξ₂λ₂ = z.
std::vector<CurvePoint> line_intersections(const Vessel& v, double xi1, double xi2, Complex z,
                                           double tol = kDefaultTol);

struct JcfValue {
  Matrix matrix;        // coordinates: S(λ)·input_basis = output_basis·matrix
  Matrix input_basis;
  Matrix output_basis;
  double residual = 0.0;
};

/// Joint characteristic function S(λ) : E(λ) → Ẽ(λ), computed through W(ξ, ξ·λ).
JcfValue jcf_eval(const Vessel& v, const CurvePoint& pt, const Direction& probe, double tol = kDefaultTol);

struct RestorationResult {
  Matrix reconstructed;
  double defect = 0.0;
  /// Condition number of the concatenated input-fiber bases.
  double condition = 0.0;
  std::vector<CurvePoint> points;
};

/// Rebuilds W(ξ, z) from the JCF values at the line's curve points.
RestorationResult restoration(const Vessel& v, double xi1, double xi2, Complex z, double tol = kDefaultTol);

/// Hermitian pairing of fiber vectors u ∈ E(pt1) and w ∈ E(pt2) (or Ẽ, per side).
/// At conjugate points the tangent (∂p/∂λ₂, −∂p/∂λ₁) at pt1 fixes the denominator.
Complex fiber_pairing(const Vessel& v, const Vector& u, const CurvePoint& pt1, const Vector& w, const CurvePoint& pt2,
                      Side side, const Direction& xi, double tol = kDefaultTol);

/// Entry (h, j) = [S u_h, S u_j] − [u_h, u_j].
Matrix jcf_gram(const Vessel& v, const std::vector<CurvePoint>& points, const ColumnList& vectors,
                const Direction& xi, double tol = kDefaultTol);

/// Relative defect of (z₁σ₂ − z₂σ₁ + γ̃)W(1,0,z₁) = W̃(1,0,z₁)(z₁σ₂ − z₂σ₁ + γ).
double intertwining_residual(const Vessel& v, Complex z1, Complex z2);

/// |det W(1,0,z₁) − det W̃(1,0,z₁)| relative to |det W|.
double determinant_defect(const Vessel& v, Complex z1);

}  // namespace pontryagin
