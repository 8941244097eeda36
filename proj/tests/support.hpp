#pragma once

#include <cmath>
#include <optional>
#include <random>

#include "pontryagin/charfun.hpp"
#include "pontryagin/coupling.hpp"
#include "pontryagin/realization.hpp"

namespace testsupport {

using namespace pontryagin;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

inline Complex random_complex(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng), n(rng)};
}

inline Matrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c, double scale = 1.0) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = random_complex(rng, scale);
  return m;
}

inline Vector random_vector(Rng& rng, Eigen::Index n) { return random_matrix(rng, n, 1).col(0); }

inline Matrix random_unitary(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

inline Matrix random_hermitian(Rng& rng, Eigen::Index n) {
  const Matrix m = random_matrix(rng, n, n);
  return 0.5 * (m + m.adjoint());
}

/// U·diag(d)·U* with p eigenvalues in [0.5, 2] and q in [−2, −0.5].
inline Matrix random_hermitian_signature(Rng& rng, int p, int q) {
  const Eigen::Index n = p + q;
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < p; ++i) d(i, i) = uniform(rng, 0.5, 2.0);
  for (int i = 0; i < q; ++i) d(p + i, p + i) = -uniform(rng, 0.5, 2.0);
  const Matrix u = random_unitary(rng, n);
  return u * d * u.adjoint();
}

/// Hermitian unitary with signature (p, q).
inline Matrix random_j(Rng& rng, int p, int q) {
  const Eigen::Index n = p + q;
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = i < p ? 1.0 : -1.0;
  const Matrix u = random_unitary(rng, n);
  return u * d * u.adjoint();
}

inline Eigen::Matrix2d random_unimodular(Rng& rng) {
  Eigen::Matrix2d a;
  double x = 0.0;
  do {
    x = uniform(rng, -2.0, 2.0);
  } while (std::abs(x) < 0.3);
  const double b = uniform(rng, -2.0, 2.0);
  const double c = uniform(rng, -2.0, 2.0);
  a << x, b, c, (1.0 + b * c) / x;
  return a;
}

/// The one-dimensional example vessel.
inline Vessel example_vessel() {
  Matrix phi(2, 1);
  phi << 1.0, 1.0;
  Matrix s1 = Matrix::Zero(2, 2);
  s1(0, 0) = 1.0;
  Matrix s2 = Matrix::Zero(2, 2);
  s2(1, 1) = 1.0;
  Matrix g(2, 2);
  g << 0.0, -0.5 * kI, 0.5 * kI, -1.0;
  Matrix gt(2, 2);
  gt << 0.0, 0.5 * kI, -0.5 * kI, -1.0;
  return Vessel{Matrix::Constant(1, 1, Complex(1.0, 0.5)), Matrix::Constant(1, 1, Complex(0.0, 0.5)),
                IndefiniteSpace::euclidean(1), phi, s1, s2, g, gt};
}

/// One-dimensional vessel with Gram sign `sign` (±1) and window φ; γ by synthesis.
inline Vessel first_factor(Rng& rng, const Matrix& sigma1, const Matrix& sigma2, double sign) {
  const Eigen::Index m = sigma1.rows();
  const Matrix phi = random_matrix(rng, m, 1);
  const double s1 = (phi.adjoint() * sigma1 * phi)(0, 0).real();
  const double s2 = (phi.adjoint() * sigma2 * phi)(0, 0).real();
  const Matrix a1 = Matrix::Constant(1, 1, Complex(uniform(rng, -1.5, 1.5), s1 / (2.0 * sign)));
  const Matrix a2 = Matrix::Constant(1, 1, Complex(uniform(rng, -1.5, 1.5), s2 / (2.0 * sign)));
  return construct_gammas(a1, a2, phi, sigma1, sigma2, IndefiniteSpace(Matrix::Constant(1, 1, sign))).vessel;
}

/// One-dimensional vessel with γ = prev.γ̃, built from a non-real point of prev's output curve.
inline std::optional<Vessel> next_factor(Rng& rng, const Vessel& prev, std::optional<double> want_sign = {}) {
  Vessel tmp = prev;
  tmp.gamma = prev.gamma_tilde;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Complex mu1{uniform(rng, -1.5, 1.5), uniform(rng, 0.3, 1.5) * (uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0)};
    std::vector<CurvePoint> pts;
    try {
      pts = line_intersections(tmp, 1.0, 0.0, mu1);
    } catch (const Error&) {
      continue;
    }
    if (pts.empty()) continue;
    const CurvePoint mu = pts[static_cast<std::size_t>(rng() % pts.size())];
    if (std::abs(mu.l2) > 4.0) continue;
    Fiber f;
    try {
      f = fiber(tmp, mu, Side::Input);
    } catch (const Error&) {
      continue;
    }
    if (f.basis.cols() != 1) continue;
    const Vector u = f.basis.col(0);
    const double s1 = u.dot(prev.sigma1 * u).real();
    const double s2 = u.dot(prev.sigma2 * u).real();
    const bool use1 = std::abs(s1) >= std::abs(s2);
    const double s = use1 ? s1 : s2;
    if (std::abs(s) < 0.05) continue;
    const double r = (use1 ? mu.l1 : mu.l2).imag() / s;
    if (std::abs(r) < 0.05 || std::abs(r) > 20.0) continue;
    const double g = r > 0 ? -1.0 : 1.0;
    if (want_sign && *want_sign != g) continue;
    const Matrix phi = std::sqrt(2.0 * std::abs(r)) * u;
    const Matrix a1 = Matrix::Constant(1, 1, std::conj(mu.l1));
    const Matrix a2 = Matrix::Constant(1, 1, std::conj(mu.l2));
    const IndefiniteSpace st(Matrix::Constant(1, 1, g));
    const Matrix gt = prev.gamma_tilde + linkage_term(phi, st, prev.sigma1, prev.sigma2);
    return Vessel{a1, a2, st, phi, prev.sigma1, prev.sigma2, prev.gamma_tilde, gt};
  }
  return std::nullopt;
}

struct RandomVessel {
  Vessel vessel;
  std::vector<Vessel> factors;
  int kappa = 0;
};

/// Coupled chain of `factors` one-dimensional vessels on an m-dimensional outer space.
inline RandomVessel random_vessel(Rng& rng, Eigen::Index m, int factors) {
  for (;;) {
    const Matrix s1 = random_hermitian(rng, m);
    const Matrix s2 = random_hermitian(rng, m);
    const auto weak = [](const Matrix& s) { return hermitian_eigen(s).values.cwiseAbs().minCoeff() < 0.3; };
    if (weak(s1) || weak(s2)) continue;
    RandomVessel out;
    const double sign0 = uniform(rng, 0, 1) < 0.7 ? 1.0 : -1.0;
    out.factors.push_back(first_factor(rng, s1, s2, sign0));
    bool ok = true;
    while (static_cast<int>(out.factors.size()) < factors) {
      const auto next = next_factor(rng, out.factors.back());
      if (!next) {
        ok = false;
        break;
      }
      out.factors.push_back(*next);
    }
    if (!ok) continue;
    out.vessel = out.factors.front();
    for (std::size_t i = 1; i < out.factors.size(); ++i) out.vessel = couple(out.vessel, out.factors[i]);
    out.kappa = out.vessel.state.neg_index();
    return out;
  }
}

inline double rel_diff(const Matrix& a, const Matrix& b) {
  return spectral_norm(a - b) / std::max({spectral_norm(a), spectral_norm(b), 1e-300});
}

}  // namespace testsupport
