#pragma once

#include <cstdint>
#include <functional>

#include "pontryagin/types.hpp"

namespace pontryagin {

using MatrixFunction = std::function<Matrix(Complex)>;

/// Matrix-valued Hermitian kernel K(z, w) paired through `metric`:
/// the sampled Gram entry (u, v) is c_v* · metric · K(w_u, w_v) · c_u.
struct KernelEvaluator {
  std::function<Matrix(Complex, Complex)> eval;
  Matrix metric;
  std::function<bool(Complex)> in_domain = [](Complex) { return true; };
  /// True when pairs with z = conj(w) are singular (half-plane kernels).
  bool excludes_conjugate_pairs = false;

  Eigen::Index dim() const noexcept { return metric.rows(); }
};

struct SamplePlan {
  std::vector<Complex> points;
  ColumnList vectors;
  std::uint64_t seed = 0;
};

/// Axis-aligned rectangle [re_min, re_max] × [im_min, im_max].
struct Region {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = 0.1;
  double im_max = 2.0;
};

/// K(z, w) = σ⁻¹ (S(w)* σ S(z) − σ) / (−i (z − conj w)), paired with metric σ.
KernelEvaluator schur_kernel(MatrixFunction s_eval, const Matrix& sigma, double tol = kDefaultTol);

/// Kernel that is identically zero on m-dimensional outer space.
KernelEvaluator zero_kernel(Eigen::Index m);

Matrix gram_matrix(const KernelEvaluator& k, const SamplePlan& plan, double tol = kDefaultTol);

/// Random plan with points uniform in `region` and vectors uniform on the unit sphere.
SamplePlan random_plan(const Region& region, int points, Eigen::Index dim, std::uint64_t seed);

struct NegSquaresEstimate {
  int estimate = 0;
  bool stabilized = false;
  int trials = 0;
  int points = 0;
  /// Eigenvalues (ascending) of the sampled Gram matrix that realized the estimate.
  Eigen::VectorXd eigenvalues;
};

/// Lower bound for the number of negative squares: max over trials of the
/// negative count of sampled Gram matrices.
NegSquaresEstimate estimate_neg_squares(const KernelEvaluator& k, int trials, int points_per_trial,
                                        const Region& region = {}, std::uint64_t seed = 0,
                                        double tol = kDefaultTol);

/// Count of eigenvalues below −tol·max|λ|.
int negative_count(const Matrix& hermitian, double tol = kDefaultTol);

struct KernelSplit {
  Matrix pos_part;
  Matrix neg_part;
};

/// G = pos_part − neg_part with both parts positive semidefinite.
KernelSplit kernel_split(const KernelEvaluator& k, const SamplePlan& plan, double tol = kDefaultTol);
KernelSplit split_hermitian(const Matrix& g, double tol = kDefaultTol);

}  // namespace pontryagin
