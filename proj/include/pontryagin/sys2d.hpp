#pragma once

#include "pontryagin/charfun.hpp"

namespace pontryagin {

struct ZeroInputSample {
  Vector state;   // f = exp(i(t₁A₁ + t₂A₂))h
  Vector output;  // −iΦf
};

ZeroInputSample evolve_zero_input(const Vessel& v, const Vector& h, double t1, double t2);

/// Relative residual of σ₂∂v/∂t₁ − σ₁∂v/∂t₂ + iγ̃v = 0 with closed-form derivatives.
double output_pde_residual(const Vessel& v, const Vector& h, double t1, double t2);

/// |central difference of [f, f] in t_k − (−v*σ_k v)| / max(1, |v*σ_k v|). k ∈ {1, 2}.
double energy_balance_defect(const Vessel& v, const Vector& h, double t1, double t2, int k, double step = 1e-3);

/// ‖(A₁A₂ − A₂A₁)f‖ relative to ‖A₁‖‖A₂‖‖f‖.
double mixed_derivative_residual(const Vessel& v, const Vector& h, double t1, double t2);

struct PlaneWave {
  Vector output;
  Vector state;  // x̂ with (ξA − ξ·λ)x̂ = Φ^{[*]}(ξσ)û
  double input_residual = 0.0;
  double output_residual = 0.0;
  Direction probe{1.0, 0.0};
};

/// Response v̂ = S(λ)û to the input wave û·e^{i(t₁λ₁ + t₂λ₂)}.
PlaneWave plane_wave_response(const Vessel& v, const CurvePoint& pt, const Vector& u, double tol = kDefaultTol);

/// Integrates the time-domain system for the wave input along t₁ then t₂ from x̂
/// and compares the output with v̂·e^{i(t₁λ₁ + t₂λ₂)}, relative to the input and output wave sizes.
double plane_wave_time_residual(const Vessel& v, const CurvePoint& pt, const Vector& u, double t1, double t2,
                                double tol = kDefaultTol);

}  // namespace pontryagin
