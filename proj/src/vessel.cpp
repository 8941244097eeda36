#include "pontryagin/vessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace pontryagin {

namespace {

double rel(double defect, double scale) { return scale > 0.0 ? defect / scale : defect; }

}  // namespace

void Vessel::validate_shapes() const {
  require_square(a1, "A1");
  require_same_shape(a1, a2, "A1/A2");
  require_square(sigma1, "sigma1");
  require_same_shape(sigma1, sigma2, "sigma1/sigma2");
  require_same_shape(sigma1, gamma, "sigma/gamma");
  require_same_shape(sigma1, gamma_tilde, "sigma/gammaTilde");
  if (state.dim() != a1.rows()) throw Error(Errc::DimensionMismatch, "state Gram and A1 differ in size");
  if (phi.rows() != sigma1.rows() || phi.cols() != a1.rows())
    throw Error(Errc::DimensionMismatch, "phi must be (outer dim) x (state dim)");
}

Colligation Vessel::pencil_colligation(Complex xi1, Complex xi2) const {
  return Colligation{xi1 * a1 + xi2 * a2, state, phi, xi1 * sigma1 + xi2 * sigma2};
}

double VesselCheck::max_residual() const { return std::max({commutator, coll1, coll2, input, output, linkage}); }

VesselCheck check_vessel(const Vessel& v, double tol) {
  v.validate_shapes();
  VesselCheck out;
  const double n1 = spectral_norm(v.a1);
  const double n2 = spectral_norm(v.a2);
  const double np = spectral_norm(v.phi);
  const double s1 = spectral_norm(v.sigma1);
  const double s2 = spectral_norm(v.sigma2);
  const double g = spectral_norm(v.gamma);
  const double gt = spectral_norm(v.gamma_tilde);
  const double np_adj = spectral_norm(v.phi_adjoint());

  out.commutator = rel(spectral_norm(v.a1 * v.a2 - v.a2 * v.a1), n1 * n2);
  out.coll1 = check_colligation(Colligation{v.a1, v.state, v.phi, v.sigma1}, tol).residual;
  out.coll2 = check_colligation(Colligation{v.a2, v.state, v.phi, v.sigma2}, tol).residual;

  const Matrix a1_adj = v.adjoint(v.a1);
  const Matrix a2_adj = v.adjoint(v.a2);
  out.input = rel(spectral_norm(v.gamma * v.phi - (v.sigma1 * v.phi * a2_adj - v.sigma2 * v.phi * a1_adj)),
                  np * (g + s1 * spectral_norm(a2_adj) + s2 * spectral_norm(a1_adj)));
  out.output = rel(spectral_norm(v.gamma_tilde * v.phi - (v.sigma1 * v.phi * v.a2 - v.sigma2 * v.phi * v.a1)),
                   np * (gt + s1 * n2 + s2 * n1));
  out.linkage = rel(spectral_norm(v.gamma_tilde - v.gamma - linkage_term(v.phi, v.state, v.sigma1, v.sigma2)),
                    g + gt + 2.0 * s1 * s2 * np * np_adj);
  out.pass = out.max_residual() <= tol;

  if (v.outer_dim() > 0) {
    Eigen::JacobiSVD<Matrix> sv1(v.sigma1);
    Eigen::JacobiSVD<Matrix> sv2(v.sigma2);
    const auto sing = [tol](const Eigen::JacobiSVD<Matrix>& svd) {
      const auto& s = svd.singularValues();
      return s(0) == 0.0 || s(s.size() - 1) <= tol * s(0);
    };
    out.singular_sigmas = sing(sv1) && sing(sv2);
  }
  return out;
}

Matrix linkage_term(const Matrix& phi, const IndefiniteSpace& state, const Matrix& sigma1, const Matrix& sigma2) {
  const Matrix x = phi * state.gram_inverse() * phi.adjoint();
  return kI * (sigma1 * x * sigma2 - sigma2 * x * sigma1);
}

Vessel alpha_transform(const Vessel& v, const Eigen::Matrix2d& alpha, double tol) {
  v.validate_shapes();
  if (std::abs(alpha.determinant() - 1.0) > tol) throw Error(Errc::NotUnimodular, "det alpha must equal 1");
  Vessel out = v;
  out.a1 = alpha(0, 0) * v.a1 + alpha(0, 1) * v.a2;
  out.a2 = alpha(1, 0) * v.a1 + alpha(1, 1) * v.a2;
  out.sigma1 = alpha(0, 0) * v.sigma1 + alpha(0, 1) * v.sigma2;
  out.sigma2 = alpha(1, 0) * v.sigma1 + alpha(1, 1) * v.sigma2;
  return out;
}

// --- BivariatePoly ---------------------------------------------------------

Complex BivariatePoly::coeff(int i, int j) const {
  const auto it = coeffs_.find({i, j});
  return it == coeffs_.end() ? Complex{} : it->second;
}

void BivariatePoly::set(int i, int j, Complex c) {
  if (c == Complex{}) {
    coeffs_.erase({i, j});
  } else {
    coeffs_[{i, j}] = c;
  }
}

Complex BivariatePoly::operator()(Complex l1, Complex l2) const {
  Complex acc{};
  for (const auto& [k, c] : coeffs_) acc += c * std::pow(l1, k.first) * std::pow(l2, k.second);
  return acc;
}

BivariatePoly BivariatePoly::d_dl1() const {
  BivariatePoly out;
  for (const auto& [k, c] : coeffs_)
    if (k.first > 0) out.set(k.first - 1, k.second, c * static_cast<double>(k.first));
  return out;
}

BivariatePoly BivariatePoly::d_dl2() const {
  BivariatePoly out;
  for (const auto& [k, c] : coeffs_)
    if (k.second > 0) out.set(k.first, k.second - 1, c * static_cast<double>(k.second));
  return out;
}

int BivariatePoly::total_degree() const {
  int d = -1;
  for (const auto& [k, c] : coeffs_) d = std::max(d, k.first + k.second);
  return d;
}

double BivariatePoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Matrix BivariatePoly::evaluate(const Matrix& a1, const Matrix& a2) const {
  require_square(a1, "A1");
  require_same_shape(a1, a2, "A1/A2");
  const Eigen::Index n = a1.rows();
  int max1 = 0;
  int max2 = 0;
  for (const auto& [k, c] : coeffs_) {
    max1 = std::max(max1, k.first);
    max2 = std::max(max2, k.second);
  }
  std::vector<Matrix> p1{Matrix::Identity(n, n)};
  std::vector<Matrix> p2{Matrix::Identity(n, n)};
  for (int i = 1; i <= max1; ++i) p1.push_back(p1.back() * a1);
  for (int j = 1; j <= max2; ++j) p2.push_back(p2.back() * a2);
  Matrix acc = Matrix::Zero(n, n);
  for (const auto& [k, c] : coeffs_) acc += c * p1[k.first] * p2[k.second];
  return acc;
}

double BivariatePoly::relative_distance(const BivariatePoly& p, const BivariatePoly& q) {
  const double scale = std::max({p.max_abs_coeff(), q.max_abs_coeff(), 1e-300});
  double d = 0.0;
  for (const auto& [k, c] : p.coeffs_) d = std::max(d, std::abs(c - q.coeff(k.first, k.second)));
  for (const auto& [k, c] : q.coeffs_) d = std::max(d, std::abs(c - p.coeff(k.first, k.second)));
  return d / scale;
}

// --- discriminant ------------------------------------------------------------

Matrix pencil(const Vessel& v, Complex l1, Complex l2, Side side) {
  return l1 * v.sigma2 - l2 * v.sigma1 + (side == Side::Input ? v.gamma : v.gamma_tilde);
}

BivariatePoly discriminant_polynomial(const Vessel& v, Side side) {
  v.validate_shapes();
  const auto m = static_cast<int>(v.outer_dim());
  BivariatePoly out;
  if (m == 0) {
    out.set(0, 0, 1.0);
    return out;
  }
  // Tensor grid on the (m+1)-th roots of unity: the Vandermonde system is a 2D DFT.
  const int k = m + 1;
  std::vector<Complex> nodes(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) nodes[static_cast<std::size_t>(a)] = std::polar(1.0, 2.0 * std::numbers::pi * a / k);
  Matrix values(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      values(a, b) = pencil(v, nodes[static_cast<std::size_t>(a)], nodes[static_cast<std::size_t>(b)], side)
                         .determinant();
  Matrix coeffs = Matrix::Zero(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Complex acc{};
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          acc += values(a, b) * std::conj(std::pow(nodes[static_cast<std::size_t>(a)], i) *
                                          std::pow(nodes[static_cast<std::size_t>(b)], j));
      coeffs(i, j) = acc / static_cast<double>(k * k);
    }
  const double scale = coeffs.cwiseAbs().maxCoeff();
  const double chop = 1e-13 * scale;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Complex c = coeffs(i, j);
      if (i + j > m || std::abs(c) <= chop) continue;
      if (std::abs(c.real()) <= chop) c.real(0.0);
      if (std::abs(c.imag()) <= chop) c.imag(0.0);
      out.set(i, j, c);
    }
  return out;
}

// --- principal subspace --------------------------------------------------------

JointPrincipalSubspace principal_subspace_joint(const Vessel& v, double tol) {
  v.validate_shapes();
  JointPrincipalSubspace out;
  out.basis = invariant_span({v.a1, v.a2}, v.phi_adjoint(), tol);
  const auto status = subspace_status(v.state, out.basis, tol);
  out.nondegenerate = status.nondegenerate;
  out.neg_index = status.neg_index;
  out.irreducible = out.basis.cols() == v.state_dim() && v.state_dim() > 0;
  if (out.basis.cols() > 0) {
    const Eigen::Index n = v.state_dim();
    const Matrix proj = out.basis * out.basis.adjoint();
    const Matrix comp = Matrix::Identity(n, n) - proj;
    for (const Matrix* a : {&v.a1, &v.a2}) {
      const Matrix adj = v.adjoint(*a);
      const double scale = std::max(spectral_norm(adj), 1e-300);
      out.adjoint_invariance = std::max(out.adjoint_invariance, spectral_norm(comp * adj * proj) / scale);
    }
  }
  return out;
}

double cayley_hamilton_residual(const Vessel& v, double tol) {
  const auto ps = principal_subspace_joint(v, tol);
  if (ps.basis.cols() == 0) return 0.0;
  if (!ps.nondegenerate) throw Error(Errc::DegeneratePrincipalSubspace, "principal subspace is degenerate");
  const BivariatePoly p = discriminant_polynomial(v, Side::Input);
  const double n1 = spectral_norm(v.a1);
  const double n2 = spectral_norm(v.a2);
  double scale = 0.0;
  for (const auto& [k, c] : p.coeffs()) scale += std::abs(c) * std::pow(n1, k.first) * std::pow(n2, k.second);
  return rel(spectral_norm(p.evaluate(v.a1, v.a2) * ps.basis), scale);
}

double complement_selfadjoint_residual(const Vessel& v, double tol) {
  const auto ps = principal_subspace_joint(v, tol);
  const Eigen::Index n = v.state_dim();
  if (ps.basis.cols() == n) return 0.0;
  if (!ps.nondegenerate) throw Error(Errc::DegeneratePrincipalSubspace, "principal subspace is degenerate");
  // Indefinite orthogonal complement: kernel of B*·G.
  const Matrix comp = ps.basis.cols() == 0 ? Matrix(Matrix::Identity(n, n))
                                           : null_space(ps.basis.adjoint() * v.state.gram(), 1e-10);
  const Matrix g_c = comp.adjoint() * v.state.gram() * comp;
  double res = 0.0;
  for (const Matrix* a : {&v.a1, &v.a2}) {
    // A·C = C·X on the invariant complement.
    const Matrix x = comp.adjoint() * (*a) * comp;  // comp is orthonormal
    const Matrix x_adj = g_c.inverse() * x.adjoint() * g_c;
    res = std::max(res, rel(spectral_norm(x - x_adj), std::max(spectral_norm(*a), 1e-300)));
  }
  return res;
}

// --- gamma synthesis ---------------------------------------------------------

GammaSynthesis construct_gammas(const Matrix& a1, const Matrix& a2, const Matrix& phi, const Matrix& sigma1,
                                const Matrix& sigma2, const IndefiniteSpace& state, double tol) {
  const Eigen::Index m = sigma1.rows();
  const Eigen::Index n = a1.rows();
  GammaSynthesis out;
  out.vessel = Vessel{a1, a2, state, phi, sigma1, sigma2, Matrix::Zero(m, m), Matrix::Zero(m, m)};
  out.vessel.validate_shapes();

  const Matrix target = sigma1 * phi * out.vessel.adjoint(a2) - sigma2 * phi * out.vessel.adjoint(a1);

  // Orthonormal real basis of the Hermitian m×m matrices.
  std::vector<Matrix> basis;
  const double r2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < m; ++i) {
    Matrix h = Matrix::Zero(m, m);
    h(i, i) = 1.0;
    basis.push_back(h);
    for (Eigen::Index j = i + 1; j < m; ++j) {
      Matrix re = Matrix::Zero(m, m);
      re(i, j) = r2;
      re(j, i) = r2;
      basis.push_back(re);
      Matrix im = Matrix::Zero(m, m);
      im(i, j) = kI * r2;
      im(j, i) = -kI * r2;
      basis.push_back(im);
    }
  }
  const auto unknowns = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index eqs = 2 * m * n;
  RealMatrix lhs(eqs, unknowns);
  Eigen::VectorXd rhs(eqs);
  for (Eigen::Index k = 0; k < unknowns; ++k) {
    const Matrix img = basis[static_cast<std::size_t>(k)] * phi;
    for (Eigen::Index e = 0; e < m * n; ++e) {
      lhs(e, k) = img.data()[e].real();
      lhs(m * n + e, k) = img.data()[e].imag();
    }
  }
  for (Eigen::Index e = 0; e < m * n; ++e) {
    rhs(e) = target.data()[e].real();
    rhs(m * n + e) = target.data()[e].imag();
  }
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(unknowns);
  if (eqs > 0 && unknowns > 0) {
    Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(lhs);
    cod.setThreshold(1e-12);
    theta = cod.solve(rhs);
  }
  out.gamma = Matrix::Zero(m, m);
  for (Eigen::Index k = 0; k < unknowns; ++k) out.gamma += theta(k) * basis[static_cast<std::size_t>(k)];
  out.gamma = 0.5 * (out.gamma + out.gamma.adjoint());

  const double scale = std::max({spectral_norm(target), spectral_norm(out.gamma) * spectral_norm(phi), 1e-300});
  out.residual = spectral_norm(out.gamma * phi - target) / scale;
  if (target.norm() == 0.0) out.residual = spectral_norm(out.gamma * phi);
  if (out.residual > tol) throw Error(Errc::NoHermitianSolution, "no Hermitian gamma solves the input condition");

  out.gamma_tilde = out.gamma + linkage_term(phi, state, sigma1, sigma2);
  out.vessel.gamma = out.gamma;
  out.vessel.gamma_tilde = out.gamma_tilde;
  return out;
}

}  // namespace pontryagin
