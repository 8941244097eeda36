#include "pontryagin/coupling.hpp"

#include <algorithm>

#include <Eigen/QR>

namespace pontryagin {

namespace {

double relative(const Matrix& a, const Matrix& b) {
  return spectral_norm(a - b) / std::max({spectral_norm(a), spectral_norm(b), 1.0});
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

Vessel trivial_vessel(const Matrix& sigma1, const Matrix& sigma2, const Matrix& gamma) {
  const Eigen::Index m = sigma1.rows();
  return Vessel{Matrix(0, 0), Matrix(0, 0), IndefiniteSpace(Matrix(0, 0)), Matrix(m, 0), sigma1, sigma2, gamma, gamma};
}

Vessel couple(const Vessel& v1, const Vessel& v2, double tol) {
  v1.validate_shapes();
  v2.validate_shapes();
  if (v1.outer_dim() != v2.outer_dim() || relative(v1.sigma1, v2.sigma1) > tol || relative(v1.sigma2, v2.sigma2) > tol)
    throw Error(Errc::ExternalPartMismatch, "vessels do not share sigma1 and sigma2");
  if (relative(v2.gamma, v1.gamma_tilde) > tol)
    throw Error(Errc::GammaChainMismatch, "gamma of the second vessel differs from gammaTilde of the first");

  const Colligation c1 = couple_colligations(Colligation{v1.a1, v1.state, v1.phi, v1.sigma1},
                                             Colligation{v2.a1, v2.state, v2.phi, v2.sigma1}, tol);
  const Colligation c2 = couple_colligations(Colligation{v1.a2, v1.state, v1.phi, v1.sigma2},
                                             Colligation{v2.a2, v2.state, v2.phi, v2.sigma2}, tol);
  return Vessel{c1.a, c2.a, c1.state, c1.phi, v1.sigma1, v1.sigma2, v1.gamma, v2.gamma_tilde};
}

Decomposition decompose(const Vessel& v, const Matrix& subspace_basis, double tol) {
  v.validate_shapes();
  const Eigen::Index n = v.state_dim();
  if (subspace_basis.rows() != n) throw Error(Errc::DimensionMismatch, "basis rows differ from state dimension");
  const Matrix& b = subspace_basis;
  const Eigen::Index k = b.cols();

  if (k > 0) {
    const Matrix q = orthonormal_range(b, tol);
    if (q.cols() != k) throw Error(Errc::RankDeficientBasis, "subspace basis is rank deficient");
    const Matrix off = Matrix::Identity(n, n) - q * q.adjoint();
    for (const Matrix* a : {&v.a1, &v.a2}) {
      const double scale = std::max(spectral_norm(*a), 1e-300) * spectral_norm(b);
      if (spectral_norm(off * (*a) * b) > tol * scale)
        throw Error(Errc::NotInvariant, "subspace is not invariant under A1 and A2");
    }
  }
  if (!subspace_status(v.state, b, tol).nondegenerate)
    throw Error(Errc::DegenerateSubspace, "subspace is degenerate in the state metric");

  // Complement: columns of I − Π, Π the G-orthogonal projector onto span(b).
  Matrix comp(n, n - k);
  if (k == 0) {
    comp = Matrix::Identity(n, n);
  } else if (k < n) {
    const Matrix& g = v.state.gram();
    const Matrix proj = b * (b.adjoint() * g * b).inverse() * b.adjoint() * g;
    const Matrix rest = Matrix::Identity(n, n) - proj;
    Eigen::ColPivHouseholderQR<Matrix> qr(rest);
    std::vector<Eigen::Index> picks;
    for (Eigen::Index i = 0; i < n - k; ++i) picks.push_back(qr.colsPermutation().indices()(i));
    std::sort(picks.begin(), picks.end());
    for (Eigen::Index i = 0; i < n - k; ++i) comp.col(i) = rest.col(picks[static_cast<std::size_t>(i)]);
  }

  Decomposition out;
  out.transform.resize(n, n);
  out.transform << comp, b;
  const Matrix& t = out.transform;
  const Matrix t_inv = t.inverse();
  const Matrix a1 = t_inv * v.a1 * t;
  const Matrix a2 = t_inv * v.a2 * t;
  const Matrix g = hermitian_part(t.adjoint() * v.state.gram() * t);
  const Matrix phi = v.phi * t;
  const Eigen::Index n1 = n - k;

  const IndefiniteSpace s1(g.topLeftCorner(n1, n1));
  const IndefiniteSpace s2(g.bottomRightCorner(k, k));
  const Matrix phi1 = phi.leftCols(n1);
  const Matrix link = v.gamma + linkage_term(phi1, s1, v.sigma1, v.sigma2);
  out.v1 = Vessel{a1.topLeftCorner(n1, n1), a2.topLeftCorner(n1, n1), s1, phi1,
                  v.sigma1, v.sigma2, v.gamma, link};
  out.v2 = Vessel{a1.bottomRightCorner(k, k), a2.bottomRightCorner(k, k), s2, phi.rightCols(k),
                  v.sigma1, v.sigma2, link, v.gamma_tilde};
  return out;
}

}  // namespace pontryagin
