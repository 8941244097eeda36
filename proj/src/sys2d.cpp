#include "pontryagin/sys2d.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace pontryagin {

namespace {

Matrix propagator(const Vessel& v, double t1, double t2) {
  const Matrix gen = kI * (t1 * v.a1 + t2 * v.a2);
  return gen.exp();
}

void require_state(const Vessel& v, const Vector& h) {
  v.validate_shapes();
  if (h.size() != v.state_dim()) throw Error(Errc::DimensionMismatch, "state vector has the wrong length");
}

}  // namespace

ZeroInputSample evolve_zero_input(const Vessel& v, const Vector& h, double t1, double t2) {
  require_state(v, h);
  ZeroInputSample out;
  out.state = v.state_dim() == 0 ? Vector(0) : Vector(propagator(v, t1, t2) * h);
  out.output = -kI * v.phi * out.state;
  return out;
}

double output_pde_residual(const Vessel& v, const Vector& h, double t1, double t2) {
  const ZeroInputSample s = evolve_zero_input(v, h, t1, t2);
  // ∂v/∂t_k = −iΦ(iA_k)f = ΦA_k f.
  const Vector d1 = v.phi * (v.a1 * s.state);
  const Vector d2 = v.phi * (v.a2 * s.state);
  const Vector r = v.sigma2 * d1 - v.sigma1 * d2 + kI * v.gamma_tilde * s.output;
  const double scale = spectral_norm(v.sigma2) * d1.norm() + spectral_norm(v.sigma1) * d2.norm() +
                       spectral_norm(v.gamma_tilde) * s.output.norm();
  return scale > 0.0 ? r.norm() / scale : r.norm();
}

double energy_balance_defect(const Vessel& v, const Vector& h, double t1, double t2, int k, double step) {
  if (k != 1 && k != 2) throw Error(Errc::InvalidInput, "direction index must be 1 or 2");
  const auto energy = [&](double s1, double s2) {
    const Vector f = evolve_zero_input(v, h, s1, s2).state;
    return v.state.inner(f, f).real();
  };
  const double e1 = k == 1 ? step : 0.0;
  const double e2 = k == 2 ? step : 0.0;
  const double fd = (8.0 * (energy(t1 + e1, t2 + e2) - energy(t1 - e1, t2 - e2)) -
                     (energy(t1 + 2 * e1, t2 + 2 * e2) - energy(t1 - 2 * e1, t2 - 2 * e2))) /
                    (12.0 * step);
  const Vector out = evolve_zero_input(v, h, t1, t2).output;
  const double exact = -out.dot((k == 1 ? v.sigma1 : v.sigma2) * out).real();
  return std::abs(fd - exact) / std::max(1.0, std::abs(exact));
}

double mixed_derivative_residual(const Vessel& v, const Vector& h, double t1, double t2) {
  const Vector f = evolve_zero_input(v, h, t1, t2).state;
  // ∂²f/∂t₁∂t₂ = (iA₁)(iA₂)f and the reverse order is (iA₂)(iA₁)f.
  const Vector r = -(v.a1 * (v.a2 * f)) + v.a2 * (v.a1 * f);
  const double scale = spectral_norm(v.a1) * spectral_norm(v.a2) * f.norm();
  return scale > 0.0 ? r.norm() / scale : r.norm();
}

PlaneWave plane_wave_response(const Vessel& v, const CurvePoint& pt, const Vector& u, double tol) {
  v.validate_shapes();
  if (u.size() != v.outer_dim()) throw Error(Errc::DimensionMismatch, "input vector has the wrong length");
  const Matrix l = pencil(v, pt.l1, pt.l2, Side::Input);
  const double scale = pencil_scale(v, pt, Side::Input);
  Eigen::JacobiSVD<Matrix> svd(l);
  const auto& s = svd.singularValues();
  if (s.size() > 0 && s(s.size() - 1) > std::sqrt(tol) * scale)
    throw Error(Errc::NotOnCurve, "point is not on the discriminant curve");

  PlaneWave out;
  out.input_residual = (l * u).norm() / (std::max(scale, 1e-300) * std::max(u.norm(), 1e-300));
  if (out.input_residual > tol) throw Error(Errc::NotInInputFiber, "input amplitude is not in the input fiber");

  const std::vector<Direction> probes{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, -1.0}, {2.0, 1.0}};
  for (const Direction& probe : probes) {
    const Matrix xa = probe[0] * v.a1 + probe[1] * v.a2;
    const Matrix xs = probe[0] * v.sigma1 + probe[1] * v.sigma2;
    try {
      out.state = guarded_resolvent_solve(xa, dot(probe, pt), v.phi_adjoint() * xs * u);
    } catch (const Error& e) {
      if (e.code() != Errc::SpectrumHit) throw;
      continue;
    }
    out.output = u - kI * v.phi * out.state;
    out.probe = probe;
    const Matrix lt = pencil(v, pt.l1, pt.l2, Side::Output);
    out.output_residual = (lt * out.output).norm() /
                          (std::max(pencil_scale(v, pt, Side::Output), 1e-300) * std::max(out.output.norm(), 1e-300));
    return out;
  }
  throw Error(Errc::SpectrumHit, "every probe direction meets the joint spectrum");
}

double plane_wave_time_residual(const Vessel& v, const CurvePoint& pt, const Vector& u, double t1, double t2,
                                double tol) {
  const PlaneWave wave = plane_wave_response(v, pt, u, tol);
  const Eigen::Index n = v.state_dim();
  const Eigen::Index m = v.outer_dim();
  // d/dt [x; w] = [[iA_k, −iΦ^{[*]}σ_k], [0, iλ_k]] [x; w] with w the input amplitude.
  const auto leg = [&](const Matrix& a, const Matrix& sigma, Complex lambda, double t, const Vector& x,
                       const Vector& w) {
    Matrix gen = Matrix::Zero(n + m, n + m);
    gen.topLeftCorner(n, n) = kI * a;
    gen.topRightCorner(n, m) = -kI * v.phi_adjoint() * sigma;
    gen.bottomRightCorner(m, m) = kI * lambda * Matrix::Identity(m, m);
    Vector y(n + m);
    y << x, w;
    return Vector((gen * t).exp() * y);
  };
  const Vector y1 = leg(v.a1, v.sigma1, pt.l1, t1, wave.state, u);
  const Vector y2 = leg(v.a2, v.sigma2, pt.l2, t2, y1.head(n), y1.tail(m));
  const Vector out = y2.tail(m) - kI * v.phi * y2.head(n);
  const Complex phase = std::exp(kI * (t1 * pt.l1 + t2 * pt.l2));
  const Vector expected = wave.output * phase;
  // S(λ) may vanish, so the input wave also sets the scale.
  const double scale = expected.norm() + u.norm() * std::abs(phase);
  return (out - expected).norm() / std::max(scale, 1e-300);
}

}  // namespace pontryagin
