#pragma once

#include "pontryagin/vessel.hpp"

namespace pontryagin {

/// Couples v1 (first block) with v2 (second block, invariant). Requires shared
/// σ₁, σ₂ and γ² = γ̃¹; the result has γ = γ¹, γ̃ = γ̃² and Gram diag(G¹, G²).
Vessel couple(const Vessel& v1, const Vessel& v2, double tol = kDefaultTol);

struct Decomposition {
  Vessel v1;  // on the indefinite orthogonal complement
  Vessel v2;  // on the invariant subspace
  /// Change of basis T = [complement | subspace]; v = couple(v1, v2) in these coordinates.
  Matrix transform;
};

/// Splits v along a nondegenerate subspace invariant under A₁ and A₂.
Decomposition decompose(const Vessel& v, const Matrix& subspace_basis, double tol = kDefaultTol);

/// Vessel with zero-dimensional state and γ = γ̃ = gamma.
Vessel trivial_vessel(const Matrix& sigma1, const Matrix& sigma2, const Matrix& gamma);

}  // namespace pontryagin
