#include "pontryagin/colligation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace pontryagin {

void Colligation::validate_shapes() const {
  require_square(a, "A");
  require_square(sigma, "sigma");
  if (state.dim() != a.rows()) throw Error(Errc::DimensionMismatch, "state Gram and A differ in size");
  if (phi.rows() != sigma.rows() || phi.cols() != a.rows())
    throw Error(Errc::DimensionMismatch, "phi must be (outer dim) x (state dim)");
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix guarded_resolvent_solve(const Matrix& m, Complex z, const Matrix& rhs, double guard) {
  const Eigen::Index n = m.rows();
  if (n == 0) return Matrix(0, rhs.cols());
  const Matrix shifted = m - z * Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smallest = svd.singularValues()(n - 1);
  const double scale = std::max(spectral_norm(m), 1.0);
  if (smallest <= guard * scale) throw Error(Errc::SpectrumHit, "point lies on the spectrum of the state operator");
  return svd.solve(rhs);
}

ResidualCheck check_colligation(const Colligation& c, double tol) {
  c.validate_shapes();
  const Matrix lhs = (c.a - c.a_adjoint()) / kI;
  const Matrix rhs = c.phi_adjoint() * c.sigma * c.phi;
  const double pn = spectral_norm(c.phi);
  const double scale = spectral_norm(c.a) + pn * pn * spectral_norm(c.sigma);
  ResidualCheck out;
  const double defect = spectral_norm(lhs - rhs);
  out.residual = scale > 0 ? defect / scale : defect;
  out.pass = out.residual <= tol;
  return out;
}

Matrix char_fn_eval(const Colligation& c, Complex z) {
  c.validate_shapes();
  const Eigen::Index m = c.outer_dim();
  if (c.state_dim() == 0) return Matrix::Identity(m, m);
  const Matrix x = guarded_resolvent_solve(c.a, z, c.phi_adjoint() * c.sigma);
  return Matrix::Identity(m, m) - kI * c.phi * x;
}

MatrixFunction char_fn(const Colligation& c) {
  return [c](Complex z) { return char_fn_eval(c, z); };
}

PrincipalSubspace principal_subspace(const Colligation& c, double tol) {
  c.validate_shapes();
  PrincipalSubspace out;
  out.basis = invariant_span({c.a}, c.phi_adjoint(), tol);
  const auto status = subspace_status(c.state, out.basis, tol);
  out.nondegenerate = status.nondegenerate;
  out.neg_index = status.neg_index;
  out.irreducible = out.basis.cols() == c.state_dim() && c.state_dim() > 0;
  return out;
}

double kernel_identity_residual(const Colligation& c, Complex z, Complex w) {
  c.validate_shapes();
  const Matrix sz = char_fn_eval(c, z);
  const Matrix sw = char_fn_eval(c, w);
  const Matrix lhs = sw.adjoint() * c.sigma * sz - c.sigma;
  if (c.state_dim() == 0) return lhs.norm();
  // (wI − A)^{−[*]} = G⁻¹ (w̄I − A*)⁻¹ G, and (zI − A)⁻¹ = −(A − zI)⁻¹.
  const Matrix right = -guarded_resolvent_solve(c.a, z, c.phi_adjoint() * c.sigma);
  const Matrix adj_res =
      c.state.gram_inverse() * (-guarded_resolvent_solve(c.a.adjoint(), std::conj(w), c.state.gram()));
  const Matrix rhs = -kI * (z - std::conj(w)) * c.sigma * c.phi * adj_res * right;
  const double scale = std::max({lhs.norm(), rhs.norm(), spectral_norm(c.sigma)});
  return scale > 0 ? (lhs - rhs).norm() / scale : 0.0;
}

Colligation couple_colligations(const Colligation& first, const Colligation& second, double tol) {
  first.validate_shapes();
  second.validate_shapes();
  if ((first.sigma - second.sigma).norm() > tol * std::max(1.0, first.sigma.norm()))
    throw Error(Errc::ExternalPartMismatch, "colligations do not share sigma");
  const Eigen::Index n1 = first.state_dim();
  const Eigen::Index n2 = second.state_dim();
  Colligation out;
  out.a = direct_sum(first.a, second.a);
  out.a.bottomLeftCorner(n2, n1) = kI * second.phi_adjoint() * first.sigma * first.phi;
  out.state = IndefiniteSpace(direct_sum(first.state.gram(), second.state.gram()));
  out.phi.resize(first.phi.rows(), n1 + n2);
  out.phi << first.phi, second.phi;
  out.sigma = first.sigma;
  return out;
}

}  // namespace pontryagin
