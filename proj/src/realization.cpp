#include "pontryagin/realization.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SVD>

namespace pontryagin {

namespace {

Matrix checked_inverse(const Matrix& m, Errc code, const char* what) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return m;
  if (s(s.size() - 1) <= 1e-12 * std::max(1.0, s(0))) throw Error(code, what);
  return svd.solve(Matrix::Identity(m.rows(), m.cols()));
}

void require_signature(const Matrix& j) {
  require_square(j, "J");
  const Eigen::Index m = j.rows();
  if ((j - j.adjoint()).norm() > 1e-12 || (j * j - Matrix::Identity(m, m)).norm() > 1e-12)
    throw Error(Errc::InvalidInput, "J must be a selfadjoint unitary matrix");
}

}  // namespace

void Realization::validate_shapes() const {
  require_square(a, "A");
  require_square(d, "D");
  require_square(state_gram, "state Gram");
  const Eigen::Index n = a.rows();
  const Eigen::Index m = d.rows();
  if (b.rows() != n || b.cols() != m || c.rows() != m || c.cols() != n || state_gram.rows() != n)
    throw Error(Errc::DimensionMismatch, "realization blocks have inconsistent shapes");
}

Matrix Realization::transfer(Complex z) const {
  validate_shapes();
  if (state_dim() == 0) return d;
  return d - c * guarded_resolvent_solve(a, z, b);
}

Realization Realization::identity(Eigen::Index m) {
  return {Matrix(0, 0), Matrix(0, m), Matrix(m, 0), Matrix::Identity(m, m), Matrix(0, 0)};
}

Matrix pg_transform(const Matrix& s, const Matrix& j) {
  require_square(s, "S");
  require_same_shape(s, j, "pg_transform");
  const Eigen::Index m = s.rows();
  const Matrix p = (Matrix::Identity(m, m) + j) / 2.0;
  const Matrix q = (Matrix::Identity(m, m) - j) / 2.0;
  return (p * s + q) * checked_inverse(p + q * s, Errc::SingularPGDenominator, "P + QS is singular");
}

Matrix pg_inverse(const Matrix& sigma_val, const Matrix& j) {
  require_square(sigma_val, "Sigma");
  require_same_shape(sigma_val, j, "pg_inverse");
  const Eigen::Index m = sigma_val.rows();
  const Matrix p = (Matrix::Identity(m, m) + j) / 2.0;
  const Matrix q = (Matrix::Identity(m, m) - j) / 2.0;
  return (q + p * sigma_val) * checked_inverse(p + q * sigma_val, Errc::SingularPGDenominator, "P + QΣ is singular");
}

Realization blaschke_realization(const std::vector<Complex>& zeros, Eigen::Index m,
                                 const std::vector<Vector>& directions) {
  if (!directions.empty() && directions.size() != zeros.size())
    throw Error(Errc::DimensionMismatch, "one direction per zero is required");
  Realization out = Realization::identity(m);
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    const Complex w = zeros[k];
    if (!(w.imag() > 0.0)) throw Error(Errc::ZeroNotInUpperHalfPlane, "Blaschke zero must lie in C+");
    Vector u = Vector::Zero(m);
    if (directions.empty()) {
      u(0) = 1.0;
    } else {
      if (directions[k].size() != m) throw Error(Errc::DimensionMismatch, "direction has wrong length");
      const double nrm = directions[k].norm();
      if (nrm == 0.0) throw Error(Errc::InvalidInput, "direction must be nonzero");
      u = directions[k] / nrm;
    }
    // Colligation form with G = [−1], σ = I: C = t·u, B = iG⁻¹C* = −iC*, t² = 2 Im w.
    Realization factor;
    factor.a = Matrix::Constant(1, 1, std::conj(w));
    factor.c = std::sqrt(2.0 * w.imag()) * u;
    factor.b = -kI * factor.c.adjoint();
    factor.d = Matrix::Identity(m, m);
    factor.state_gram = Matrix::Constant(1, 1, -1.0);
    out = cascade_product(out, factor);
  }
  return out;
}

Realization invert_realization(const Realization& r) {
  r.validate_shapes();
  const Matrix dinv = checked_inverse(r.d, Errc::SingularD, "D is singular");
  Realization out;
  out.a = r.a - r.b * dinv * r.c;
  out.b = r.b * dinv;
  out.c = -dinv * r.c;
  out.d = dinv;
  out.state_gram = r.state_gram;
  return out;
}

Realization cascade_product(const Realization& r1, const Realization& r2) {
  r1.validate_shapes();
  r2.validate_shapes();
  if (r1.outer_dim() != r2.outer_dim()) throw Error(Errc::DimensionMismatch, "outer dimensions differ");
  const Eigen::Index n1 = r1.state_dim();
  const Eigen::Index n2 = r2.state_dim();
  const Eigen::Index m = r1.outer_dim();
  Realization out;
  out.a = direct_sum(r1.a, r2.a);
  out.a.topRightCorner(n1, n2) = r1.b * r2.c;
  out.b.resize(n1 + n2, m);
  out.b << r1.b * r2.d, r2.b;
  out.c.resize(m, n1 + n2);
  out.c << r1.c, r1.d * r2.c;
  out.d = r1.d * r2.d;
  out.state_gram = direct_sum(r1.state_gram, r2.state_gram);
  return out;
}

double schur_part_residual(const Realization& r) {
  r.validate_shapes();
  const Eigen::Index m = r.outer_dim();
  double res = (r.d - Matrix::Identity(m, m)).norm();
  if (r.state_dim() == 0) return res;
  const Matrix ginv = r.state_gram.inverse();
  const double scale = std::max({1.0, r.a.norm(), r.c.squaredNorm()});
  res = std::max(res, (r.b - kI * ginv * r.c.adjoint()).norm() / std::max(1.0, r.c.norm()));
  const Matrix a_adj = ginv * r.a.adjoint() * r.state_gram;
  res = std::max(res, (r.a - a_adj - kI * ginv * r.c.adjoint() * r.c).norm() / scale);
  return res;
}

JUnitaryRealization realize_junitary(const Realization& schur_part, const std::vector<Complex>& zeros,
                                     const Matrix& j, const std::vector<Vector>& directions, std::uint64_t seed,
                                     double tol) {
  schur_part.validate_shapes();
  require_signature(j);
  const Eigen::Index m = j.rows();
  if (schur_part.outer_dim() != m) throw Error(Errc::DimensionMismatch, "Schur part and J differ in size");
  if (schur_part.state_dim() > 0) {
    const auto eig = hermitian_eigen(schur_part.state_gram);
    if (!is_hermitian(schur_part.state_gram, tol) || eig.values(0) <= 0.0)
      throw Error(Errc::InvalidSchurPart, "Schur part must live on a Hilbert state space");
  }
  if (schur_part_residual(schur_part) > std::max(tol, 1e-10))
    throw Error(Errc::InvalidSchurPart, "Schur part violates B = iG⁻¹C*, A − A^[*] = iG⁻¹C*C, D = I");

  JUnitaryRealization out;
  out.sigma = cascade_product(schur_part, blaschke_realization(zeros, m, directions));

  const Matrix q = (Matrix::Identity(m, m) - j) / 2.0;
  Colligation& col = out.colligation;
  col.a = out.sigma.a - out.sigma.b * q * out.sigma.c;
  col.state = IndefiniteSpace(out.sigma.state_gram);
  col.phi = j * out.sigma.c;
  col.sigma = j;

  auto& rep = out.report;
  rep.colligation_residual = check_colligation(col, tol).residual;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-3.0, 3.0);
  std::uniform_real_distribution<double> im(0.1, 2.0);
  int attempts = 0;
  while (rep.real_samples.size() < 10 && attempts++ < 1000) {
    const double x = re(rng);
    try {
      const Matrix s = char_fn_eval(col, x);
      rep.real_line_defect = std::max(rep.real_line_defect, (s.adjoint() * j * s - j).norm());
      rep.real_samples.push_back(x);
    } catch (const Error& e) {
      if (e.code() != Errc::SpectrumHit) throw;
    }
  }
  attempts = 0;
  while (rep.half_plane_samples.size() < 15 && attempts++ < 1000) {
    const Complex z(re(rng), im(rng));
    try {
      const Matrix s = char_fn_eval(col, z);
      const Matrix via_pg = pg_inverse(out.sigma.transfer(z), j);
      rep.transform_defect = std::max(rep.transform_defect, (s - via_pg).norm() / std::max(1.0, s.norm()));
      rep.half_plane_samples.push_back(z);
    } catch (const Error& e) {
      if (e.code() != Errc::SpectrumHit) throw;
    }
  }
  return out;
}

}  // namespace pontryagin
