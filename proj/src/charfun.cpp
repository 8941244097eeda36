#include "pontryagin/charfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace pontryagin {

namespace {

Matrix xi_sigma(const Vessel& v, Complex xi1, Complex xi2) { return xi1 * v.sigma1 + xi2 * v.sigma2; }

Matrix xi_a(const Vessel& v, Complex xi1, Complex xi2) { return xi1 * v.a1 + xi2 * v.a2; }

// Evaluates Σ c_k s^k.
Complex horner(const std::vector<Complex>& c, Complex s) {
  Complex acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Complex horner_derivative(const std::vector<Complex>& c, Complex s) {
  Complex acc{};
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * s + static_cast<double>(k) * c[k];
  return acc;
}

std::vector<Complex> companion_roots(const std::vector<Complex>& c) {
  const auto n = static_cast<Eigen::Index>(c.size()) - 1;
  if (n <= 0) return {};
  Matrix comp = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) comp(0, j) = -c[static_cast<std::size_t>(n - 1 - j)] / c.back();
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Matrix> es(comp, false);
  std::vector<Complex> roots;
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex s = es.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      const Complex d = horner_derivative(c, s);
      if (d == Complex{}) break;
      const Complex step = horner(c, s) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      s -= step;
    }
    roots.push_back(s);
  }
  return roots;
}

}  // namespace

double pencil_scale(const Vessel& v, const CurvePoint& pt, Side side) {
  return std::abs(pt.l1) * spectral_norm(v.sigma2) + std::abs(pt.l2) * spectral_norm(v.sigma1) +
         spectral_norm(side == Side::Input ? v.gamma : v.gamma_tilde);
}

Matrix ccf_eval(const Vessel& v, Complex xi1, Complex xi2, Complex z) {
  v.validate_shapes();
  const Eigen::Index m = v.outer_dim();
  if (v.state_dim() == 0) return Matrix::Identity(m, m);
  const Matrix x = guarded_resolvent_solve(xi_a(v, xi1, xi2), z, v.phi_adjoint() * xi_sigma(v, xi1, xi2));
  return Matrix::Identity(m, m) - kI * v.phi * x;
}

Matrix ccf_tilde_eval(const Vessel& v, Complex xi1, Complex xi2, Complex z) {
  v.validate_shapes();
  const Eigen::Index m = v.outer_dim();
  if (v.state_dim() == 0) return Matrix::Identity(m, m);
  const Matrix x = guarded_resolvent_solve(xi_a(v, xi1, xi2), z, v.phi_adjoint());
  return Matrix::Identity(m, m) - kI * xi_sigma(v, xi1, xi2) * v.phi * x;
}

Fiber fiber(const Vessel& v, const CurvePoint& pt, Side side, double tol) {
  v.validate_shapes();
  Fiber out{pt, side, {}};
  const Matrix l = pencil(v, pt.l1, pt.l2, side);
  const Eigen::Index m = l.rows();
  if (m == 0) throw Error(Errc::EmptyFiber, "outer space is zero-dimensional");
  const double scale = pencil_scale(v, pt, side);
  if (scale == 0.0) {
    out.basis = Matrix::Identity(m, m);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(l, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(m - 1) > std::sqrt(tol) * scale) throw Error(Errc::NotOnCurve, "pencil is not singular at this point");
  Eigen::Index k = 0;
  while (k < m && s(m - 1 - k) <= tol * scale) ++k;
  if (k == 0) throw Error(Errc::EmptyFiber, "no singular value inside the tolerance band");
  out.basis = svd.matrixV().rightCols(k);
  return out;
}

std::vector<CurvePoint> line_intersections(const Vessel& v, double xi1, double xi2, Complex z, double tol) {
  v.validate_shapes();
  if (xi1 == 0.0 && xi2 == 0.0) throw Error(Errc::DegenerateDirection, "direction is zero");
  const bool by_l1 = xi2 != 0.0;
  const auto point_at = [&](Complex t) -> CurvePoint {
    if (by_l1) return {t, (z - xi1 * t) / xi2};
    return {z / xi1, t};
  };
  const auto m = static_cast<int>(v.outer_dim());
  if (m == 0) return {};

  // q(t) = p(point_at(t)) has degree ≤ m; sample on a circle and invert the DFT.
  const double radius = std::max(1.0, std::abs(z) / std::max(std::abs(xi1), std::abs(xi2)));
  const int k = m + 1;
  std::vector<Complex> values(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) {
    const Complex node = std::polar(1.0, 2.0 * std::numbers::pi * a / k);
    const CurvePoint p = point_at(radius * node);
    values[static_cast<std::size_t>(a)] = pencil(v, p.l1, p.l2, Side::Input).determinant();
  }
  std::vector<Complex> scaled(static_cast<std::size_t>(k));
  double cmax = 0.0;
  for (int j = 0; j < k; ++j) {
    Complex acc{};
    for (int a = 0; a < k; ++a)
      acc += values[static_cast<std::size_t>(a)] * std::polar(1.0, -2.0 * std::numbers::pi * a * j / k);
    scaled[static_cast<std::size_t>(j)] = acc / static_cast<double>(k);
    cmax = std::max(cmax, std::abs(scaled[static_cast<std::size_t>(j)]));
  }
  if (cmax == 0.0) throw Error(Errc::DegenerateDirection, "line lies inside the curve");
  while (scaled.size() > 1 && std::abs(scaled.back()) <= 1e-10 * cmax) scaled.pop_back();

  std::vector<CurvePoint> out;
  const std::vector<Complex> roots = companion_roots(scaled);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= 1e-6 * std::max(1.0, std::max(std::abs(roots[i]), std::abs(roots[j]))))
        throw Error(Errc::MultipleRoots, "line meets the curve at a repeated point");
  (void)tol;
  // Newton on det L(t) itself: det'/det = tr(L⁻¹ dL/dt).
  const Matrix dl = by_l1 ? Matrix(v.sigma2 + (xi1 / xi2) * v.sigma1) : Matrix(-v.sigma1);
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) sep = std::min(sep, radius * std::abs(roots[i] - roots[j]));
  for (const Complex s : roots) {
    Complex t = radius * s;
    for (int it = 0; it < 8; ++it) {
      const CurvePoint p = point_at(t);
      Eigen::PartialPivLU<Matrix> lu(pencil(v, p.l1, p.l2, Side::Input));
      const Complex ratio = lu.solve(dl).trace();
      if (!std::isfinite(std::abs(ratio)) || std::abs(ratio) == 0.0) break;
      const Complex step = 1.0 / ratio;
      if (std::abs(step) > 0.25 * sep || std::abs(step) > 1e-3 * std::max(1.0, std::abs(t))) break;
      t -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
    }
    out.push_back(point_at(t));
  }
  return out;
}

JcfValue jcf_eval(const Vessel& v, const CurvePoint& pt, const Direction& probe, double tol) {
  const Matrix w = ccf_eval(v, probe[0], probe[1], dot(probe, pt));
  JcfValue out;
  out.input_basis = fiber(v, pt, Side::Input, tol).basis;
  out.output_basis = fiber(v, pt, Side::Output, tol).basis;
  const Matrix y = w * out.input_basis;
  out.matrix = out.output_basis.adjoint() * y;
  out.residual = spectral_norm(y - out.output_basis * out.matrix) / std::max(spectral_norm(w), 1e-300);
  if (out.residual > tol) throw Error(Errc::NotIntoOutputFiber, "W does not map the input fiber into the output fiber");
  return out;
}

RestorationResult restoration(const Vessel& v, double xi1, double xi2, Complex z, double tol) {
  RestorationResult out;
  out.points = line_intersections(v, xi1, xi2, z, tol);
  const Eigen::Index m = v.outer_dim();

  // Probes other than ξ keep the reconstruction from being tautological.
  std::vector<Direction> probes{{-xi2, xi1}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, -1.0}, {2.0, 1.0}};
  std::vector<Matrix> inputs;
  std::vector<Matrix> images;
  Eigen::Index total = 0;
  for (const CurvePoint& p : out.points) {
    bool done = false;
    for (const Direction& probe : probes) {
      if (std::abs(probe[0] * xi2 - probe[1] * xi1) <= 1e-12 * (std::abs(xi1) + std::abs(xi2))) continue;
      try {
        const JcfValue s = jcf_eval(v, p, probe, tol);
        inputs.push_back(s.input_basis);
        images.push_back(s.output_basis * s.matrix);
        total += s.input_basis.cols();
        done = true;
        break;
      } catch (const Error& e) {
        if (e.code() != Errc::SpectrumHit) throw;
      }
    }
    if (!done) throw Error(Errc::SpectrumHit, "every probe direction meets the joint spectrum");
  }
  if (total != m) throw Error(Errc::FibersDontSpan, "input fibers along the line do not span the outer space");
  Matrix basis(m, m);
  Matrix image(m, m);
  Eigen::Index col = 0;
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    basis.middleCols(col, inputs[j].cols()) = inputs[j];
    image.middleCols(col, images[j].cols()) = images[j];
    col += inputs[j].cols();
  }
  Eigen::JacobiSVD<Matrix> svd(basis);
  const auto& s = svd.singularValues();
  if (m > 0 && s(m - 1) <= 1e-12 * s(0)) throw Error(Errc::FibersDontSpan, "input fibers are linearly dependent");
  out.condition = m > 0 ? s(0) / s(m - 1) : 1.0;
  out.reconstructed = image * basis.inverse();
  const Matrix w = ccf_eval(v, xi1, xi2, z);
  out.defect = spectral_norm(out.reconstructed - w) / std::max(spectral_norm(w), 1e-300);
  return out;
}

Complex fiber_pairing(const Vessel& v, const Vector& u, const CurvePoint& pt1, const Vector& w, const CurvePoint& pt2,
                      Side side, const Direction& xi, double tol) {
  const Complex num = kI * w.dot(xi_sigma(v, xi[0], xi[1]) * u);
  const double scale = std::max({1.0, std::abs(pt1.l1), std::abs(pt1.l2), std::abs(pt2.l1), std::abs(pt2.l2)});
  const CurvePoint c2 = pt2.conj();
  const bool conjugate = std::abs(pt1.l1 - c2.l1) + std::abs(pt1.l2 - c2.l2) <= 1e-8 * scale;
  Complex den;
  if (conjugate) {
    const BivariatePoly p = discriminant_polynomial(v, side);
    const Complex dp1 = p.d_dl1()(pt1.l1, pt1.l2);
    const Complex dp2 = p.d_dl2()(pt1.l1, pt1.l2);
    if (std::abs(dp1) + std::abs(dp2) <= tol * std::max(p.max_abs_coeff(), 1e-300))
      throw Error(Errc::SingularCurvePoint, "gradient of the discriminant vanishes");
    den = xi[0] * dp2 - xi[1] * dp1;
  } else {
    den = xi[0] * (pt1.l1 - c2.l1) + xi[1] * (pt1.l2 - c2.l2);
  }
  if (std::abs(den) <= tol * scale) throw Error(Errc::ZeroDenominator, "pairing denominator vanishes");
  return num / den;
}

Matrix jcf_gram(const Vessel& v, const std::vector<CurvePoint>& points, const ColumnList& vectors, const Direction& xi,
                double tol) {
  if (points.size() != vectors.size()) throw Error(Errc::DimensionMismatch, "one vector per curve point is required");
  const auto n = static_cast<Eigen::Index>(points.size());
  ColumnList images;
  for (Eigen::Index h = 0; h < n; ++h) {
    const CurvePoint& p = points[static_cast<std::size_t>(h)];
    images.push_back(ccf_eval(v, xi[0], xi[1], dot(xi, p)) * vectors[static_cast<std::size_t>(h)]);
  }
  Matrix g(n, n);
  for (Eigen::Index h = 0; h < n; ++h)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto hh = static_cast<std::size_t>(h);
      const auto jj = static_cast<std::size_t>(j);
      g(h, j) = fiber_pairing(v, images[hh], points[hh], images[jj], points[jj], Side::Output, xi, tol) -
                fiber_pairing(v, vectors[hh], points[hh], vectors[jj], points[jj], Side::Input, xi, tol);
    }
  return g;
}

double intertwining_residual(const Vessel& v, Complex z1, Complex z2) {
  const Matrix w = ccf_eval(v, 1.0, 0.0, z1);
  const Matrix wt = ccf_tilde_eval(v, 1.0, 0.0, z1);
  const Matrix l = pencil(v, z1, z2, Side::Input);
  const Matrix lt = pencil(v, z1, z2, Side::Output);
  const double scale = spectral_norm(lt) * spectral_norm(w) + spectral_norm(wt) * spectral_norm(l);
  const double defect = spectral_norm(lt * w - wt * l);
  return scale > 0.0 ? defect / scale : defect;
}

double determinant_defect(const Vessel& v, Complex z1) {
  const Complex d = ccf_eval(v, 1.0, 0.0, z1).determinant();
  const Complex dt = ccf_tilde_eval(v, 1.0, 0.0, z1).determinant();
  return std::abs(d - dt) / std::max(std::abs(d), 1e-300);
}

}  // namespace pontryagin
