#include <doctest.h>

#include "pontryagin/indefinite.hpp"
#include "support.hpp"

using namespace pontryagin;
using testsupport::Rng;

TEST_CASE("gram validation and negative index") {
  CHECK(IndefiniteSpace::signature(2, 1).neg_index() == 1);
  CHECK(IndefiniteSpace::euclidean(3).neg_index() == 0);

  Matrix bad(2, 2);
  bad << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(IndefiniteSpace{bad}, Error);
  try {
    IndefiniteSpace s(bad);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotHermitian);
  }

  Matrix singular(2, 2);
  singular << 1.0, 1.0, 1.0, 1.0;
  try {
    IndefiniteSpace s(singular);
    FAIL("expected NearSingular");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NearSingular);
  }
}

TEST_CASE("neg_index counts negative eigenvalues of random signatures") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int p = static_cast<int>(rng() % 4);
    const int q = static_cast<int>(rng() % 4);
    if (p + q == 0) continue;
    CHECK(neg_index(testsupport::random_hermitian_signature(rng, p, q)) == q);
  }
}

TEST_CASE("indefinite adjoint satisfies [Af, g] = [f, A^[*] g]") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const IndefiniteSpace dom(testsupport::random_hermitian_signature(rng, 2, 1));
    const IndefiniteSpace cod(testsupport::random_hermitian_signature(rng, 1, 1));
    const Matrix a = testsupport::random_matrix(rng, 2, 3);
    const Matrix adj = indefinite_adjoint(a, dom, cod);
    const Vector f = testsupport::random_vector(rng, 3);
    const Vector g = testsupport::random_vector(rng, 2);
    const Complex lhs = cod.inner(a * f, g);
    const Complex rhs = dom.inner(f, adj * g);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("hyperbolic rotation is unitary in the Minkowski plane") {
  const IndefiniteSpace s = IndefiniteSpace::signature(1, 1);
  const double t = 0.7;
  Matrix a(2, 2);
  a << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
  const auto cls = classify_operator(a, s, s);
  CHECK(cls.unitary);
  CHECK(cls.contraction);
  const auto euclid = classify_operator(a, IndefiniteSpace::euclidean(2), IndefiniteSpace::euclidean(2));
  CHECK_FALSE(euclid.unitary);
  CHECK_FALSE(euclid.contraction);
}

TEST_CASE("fundamental decomposition splits by sign") {
  Rng rng(3);
  const IndefiniteSpace s(testsupport::random_hermitian_signature(rng, 3, 2));
  const auto fd = fundamental_decomposition(s);
  CHECK(fd.basis_plus.size() == 3);
  CHECK(fd.basis_minus.size() == 2);
  for (const auto& p : fd.basis_plus) {
    CHECK(s.inner(p, p).real() > 0.0);
    for (const auto& m : fd.basis_minus) CHECK(std::abs(s.inner(p, m)) < 1e-12);
  }
}

TEST_CASE("subspace status detects neutral and rank deficient bases") {
  const IndefiniteSpace s = IndefiniteSpace::signature(1, 1);
  Matrix neutral(2, 1);
  neutral << 1.0, 1.0;
  CHECK_FALSE(subspace_status(s, neutral).nondegenerate);

  Matrix neg(2, 1);
  neg << 0.0, 1.0;
  const auto st = subspace_status(s, neg);
  CHECK(st.nondegenerate);
  CHECK(st.neg_index == 1);

  Matrix dup(2, 2);
  dup << 1.0, 2.0, 0.0, 0.0;
  try {
    subspace_status(s, dup);
    FAIL("expected RankDeficientBasis");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RankDeficientBasis);
  }
}

TEST_CASE("invariant span of a shift from the last coordinate is everything") {
  Matrix shift = Matrix::Zero(4, 4);
  for (int i = 0; i < 3; ++i) shift(i, i + 1) = 1.0;
  Matrix e = Matrix::Zero(4, 1);
  e(3, 0) = 1.0;
  CHECK(invariant_span({shift}, e).cols() == 4);
  Matrix e0 = Matrix::Zero(4, 1);
  e0(0, 0) = 1.0;
  CHECK(invariant_span({shift}, e0).cols() == 1);
  CHECK(invariant_span({shift}, Matrix::Zero(4, 1)).cols() == 0);
}
