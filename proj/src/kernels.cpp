#include "pontryagin/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pontryagin {

namespace {

void validate_plan(const KernelEvaluator& k, const SamplePlan& plan, double tol) {
  if (plan.points.size() != plan.vectors.size())
    throw Error(Errc::DimensionMismatch, "plan has different numbers of points and vectors");
  for (std::size_t u = 0; u < plan.points.size(); ++u) {
    if (plan.vectors[u].size() != k.dim()) throw Error(Errc::DimensionMismatch, "plan vector has wrong length");
    if (!k.in_domain(plan.points[u])) throw Error(Errc::DomainViolation, "plan point outside kernel domain");
    if (!k.excludes_conjugate_pairs) continue;
    for (std::size_t v = 0; v < plan.points.size(); ++v) {
      const Complex z = plan.points[u];
      const Complex w = plan.points[v];
      if (std::abs(z - std::conj(w)) <= tol * std::max(1.0, std::abs(z)))
        throw Error(Errc::DomainViolation, "plan contains a conjugate pair");
    }
  }
}

}  // namespace

KernelEvaluator schur_kernel(MatrixFunction s_eval, const Matrix& sigma, double tol) {
  require_square(sigma, "sigma");
  if (!is_hermitian(sigma, tol)) throw Error(Errc::NotHermitian, "sigma is not Hermitian");
  const Matrix sigma_inv = sigma.inverse();
  KernelEvaluator k;
  k.metric = sigma;
  k.excludes_conjugate_pairs = true;
  k.eval = [s = std::move(s_eval), sigma, sigma_inv, tol](Complex z, Complex w) -> Matrix {
    const Complex denom = -kI * (z - std::conj(w));
    if (std::abs(denom) <= tol * std::max(1.0, std::abs(z)))
      throw Error(Errc::ConjugatePairSingularity, "kernel requested at z = conj(w)");
    const Matrix sz = s(z);
    const Matrix sw = z == w ? sz : s(w);
    return sigma_inv * (sw.adjoint() * sigma * sz - sigma) / denom;
  };
  return k;
}

KernelEvaluator zero_kernel(Eigen::Index m) {
  KernelEvaluator k;
  k.metric = Matrix::Identity(m, m);
  k.eval = [m](Complex, Complex) -> Matrix { return Matrix::Zero(m, m); };
  return k;
}

Matrix gram_matrix(const KernelEvaluator& k, const SamplePlan& plan, double tol) {
  validate_plan(k, plan, tol);
  const auto n = static_cast<Eigen::Index>(plan.points.size());
  Matrix g(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = u; v < n; ++v) {
      const Matrix kuv = k.eval(plan.points[u], plan.points[v]);
      const Complex entry = plan.vectors[v].dot(k.metric * kuv * plan.vectors[u]);
      g(u, v) = entry;
      if (v != u) g(v, u) = std::conj(entry);
    }
    g(u, u) = g(u, u).real();
  }
  return g;
}

SamplePlan random_plan(const Region& region, int points, Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(region.re_min, region.re_max);
  std::uniform_real_distribution<double> im(region.im_min, region.im_max);
  std::normal_distribution<double> gauss;
  SamplePlan plan;
  plan.seed = seed;
  for (int p = 0; p < points; ++p) {
    plan.points.emplace_back(re(rng), im(rng));
    Vector c(dim);
    for (Eigen::Index i = 0; i < dim; ++i) c(i) = Complex(gauss(rng), gauss(rng));
    const double nrm = c.norm();
    plan.vectors.push_back(nrm > 0 ? Vector(c / nrm) : c);
  }
  return plan;
}

int negative_count(const Matrix& hermitian, double tol) { return inertia(hermitian, tol).negative; }

NegSquaresEstimate estimate_neg_squares(const KernelEvaluator& k, int trials, int points_per_trial,
                                        const Region& region, std::uint64_t seed, double tol) {
  if (trials < 1 || points_per_trial < 1) throw Error(Errc::InvalidInput, "trials and points must be positive");
  if (region.im_min <= 0.0 || region.im_max < region.im_min || region.re_max < region.re_min)
    throw Error(Errc::DomainViolation, "sampling region must lie in the open upper half-plane");

  NegSquaresEstimate out;
  out.trials = trials;
  out.points = points_per_trial;
  const int half = std::max(1, points_per_trial / 2);
  int best_half = 0;
  int best = -1;
  // Each trial draws an independent plan; the half-size plan is its prefix.
  std::seed_seq base{seed};
  std::vector<std::uint64_t> trial_seeds(static_cast<std::size_t>(trials));
  {
    std::vector<std::uint32_t> raw(static_cast<std::size_t>(2 * trials));
    base.generate(raw.begin(), raw.end());
    for (int t = 0; t < trials; ++t)
      trial_seeds[static_cast<std::size_t>(t)] =
          (static_cast<std::uint64_t>(raw[2 * t]) << 32) | raw[2 * t + 1];
  }
  for (int t = 0; t < trials; ++t) {
    const SamplePlan plan = random_plan(region, points_per_trial, k.dim(), trial_seeds[static_cast<std::size_t>(t)]);
    const Matrix g = gram_matrix(k, plan, tol);
    const auto in = inertia(g, tol);
    if (in.negative > best) {
      best = in.negative;
      out.eigenvalues = g.rows() ? hermitian_eigen(g).values : Eigen::VectorXd(0);
    }
    const Matrix gh = g.topLeftCorner(half, half);
    best_half = std::max(best_half, inertia(gh, tol).negative);
  }
  out.estimate = std::max(best, 0);
  out.stabilized = best_half == out.estimate;
  return out;
}

KernelSplit split_hermitian(const Matrix& g, double tol) {
  require_square(g, "Gram matrix");
  KernelSplit out{Matrix::Zero(g.rows(), g.cols()), Matrix::Zero(g.rows(), g.cols())};
  if (g.rows() == 0) return out;
  const auto eig = hermitian_eigen(g);
  const double band = tol * eig.values.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lam = eig.values(i);
    const Vector v = eig.vectors.col(i);
    if (lam > band) {
      out.pos_part += lam * v * v.adjoint();
    } else if (lam < -band) {
      out.neg_part += (-lam) * v * v.adjoint();
    }
  }
  return out;
}

KernelSplit kernel_split(const KernelEvaluator& k, const SamplePlan& plan, double tol) {
  return split_hermitian(gram_matrix(k, plan, tol), tol);
}

}  // namespace pontryagin
