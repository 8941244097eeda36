#include <doctest.h>

#include "pontryagin/kernels.hpp"
#include "pontryagin/realization.hpp"
#include "support.hpp"

using namespace pontryagin;
using testsupport::Rng;

namespace {

Complex b(Complex z, Complex w) { return (z - w) / (z - std::conj(w)); }

Matrix diag2(Complex a, Complex d) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = d;
  return m;
}

// Hilbert Schur part in colligation form: A = H + (i/2)C*C, B = iC*, D = I (G = I).
Realization random_schur_part(Rng& rng, Eigen::Index n, Eigen::Index m) {
  Realization r;
  r.c = testsupport::random_matrix(rng, m, n, 0.7);
  r.a = testsupport::random_hermitian(rng, n) + 0.5 * kI * r.c.adjoint() * r.c;
  r.b = kI * r.c.adjoint();
  r.d = Matrix::Identity(m, m);
  r.state_gram = Matrix::Identity(n, n);
  return r;
}

}  // namespace

TEST_CASE("Potapov-Ginzburg transform examples") {
  const Matrix s = diag2(2.0, 2.0);
  CHECK((pg_transform(s, Matrix::Identity(2, 2)) - s).norm() < 1e-15);
  CHECK((pg_transform(s, -Matrix::Identity(2, 2)) - diag2(0.5, 0.5)).norm() < 1e-15);
  CHECK((pg_transform(s, diag2(1.0, -1.0)) - diag2(2.0, 0.5)).norm() < 1e-15);
  CHECK((pg_inverse(s, Matrix::Identity(2, 2)) - s).norm() < 1e-15);
  CHECK((pg_inverse(s, -Matrix::Identity(2, 2)) - diag2(0.5, 0.5)).norm() < 1e-15);

  try {
    pg_transform(diag2(1.0, 0.0), diag2(1.0, -1.0));
    FAIL("expected SingularPGDenominator");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SingularPGDenominator);
  }
}

TEST_CASE("Potapov-Ginzburg round trip on random matrices") {
  Rng rng(31);
  Matrix j = Matrix::Identity(3, 3);
  j(2, 2) = -1.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix s = testsupport::random_matrix(rng, 3, 3);
    CHECK(testsupport::rel_diff(pg_inverse(pg_transform(s, j), j), s) < 1e-12);
  }
}

TEST_CASE("Blaschke realizations") {
  const Realization empty = blaschke_realization({});
  CHECK(empty.state_dim() == 0);
  CHECK(std::abs(empty.transfer(kI)(0, 0) - 1.0) < 1e-15);

  const Realization one = blaschke_realization({0.5 * kI});
  CHECK(std::abs(one.a(0, 0) - Complex(0.0, -0.5)) < 1e-15);
  CHECK(std::abs(std::norm(one.c(0, 0)) - 1.0) < 1e-15);
  CHECK(one.state_gram(0, 0).real() == -1.0);
  for (const Complex z : {Complex(1, 1), Complex(-2, 0.3), Complex(0, 3), Complex(0.5, -1), Complex(4, 2)})
    CHECK(std::abs(one.transfer(z)(0, 0) - b(z, 0.5 * kI)) < 1e-13);

  const Realization two = blaschke_realization({0.5 * kI, kI});
  CHECK(std::abs(two.transfer(2.0 * kI)(0, 0) - 0.2) < 1e-14);
  CHECK(neg_index(two.state_gram) == 2);

  try {
    blaschke_realization({Complex(1.0, -0.5)});
    FAIL("expected ZeroNotInUpperHalfPlane");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroNotInUpperHalfPlane);
  }
}

TEST_CASE("inversion and cascade") {
  const Realization one = blaschke_realization({0.5 * kI});
  CHECK(std::abs(invert_realization(one).transfer(2.0 * kI)(0, 0) - 5.0 / 3.0) < 1e-13);
  const Realization twice = invert_realization(invert_realization(one));
  for (const Complex z : {Complex(1, 1), Complex(-2, 0.3), Complex(0, 3)})
    CHECK(std::abs(twice.transfer(z)(0, 0) - one.transfer(z)(0, 0)) < 1e-12);

  const Realization same = cascade_product(one, Realization::identity(1));
  CHECK(std::abs(same.transfer(Complex(0.3, 2))(0, 0) - one.transfer(Complex(0.3, 2))(0, 0)) < 1e-15);

  const Realization prod = cascade_product(blaschke_realization({0.5 * kI}), blaschke_realization({kI}));
  CHECK(std::abs(prod.transfer(2.0 * kI)(0, 0) - 0.2) < 1e-14);

  Realization trivial = Realization::identity(1);
  trivial.a = Matrix::Constant(1, 1, 0.0);
  trivial.b = Matrix::Zero(1, 1);
  trivial.c = Matrix::Zero(1, 1);
  trivial.state_gram = Matrix::Identity(1, 1);
  const Realization inv = invert_realization(trivial);
  CHECK(std::abs(inv.transfer(kI)(0, 0) - 1.0) < 1e-15);

  Realization singular = trivial;
  singular.d = Matrix::Zero(1, 1);
  try {
    invert_realization(singular);
    FAIL("expected SingularD");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SingularD);
  }
}

TEST_CASE("J-unitary realization examples") {
  Realization schur;
  schur.a = Matrix::Constant(1, 1, 0.5 * kI);
  schur.c = Matrix::Constant(1, 1, 1.0);
  schur.b = Matrix::Constant(1, 1, kI);
  schur.d = Matrix::Identity(1, 1);
  schur.state_gram = Matrix::Identity(1, 1);
  const Matrix one = Matrix::Identity(1, 1);
  const auto r0 = realize_junitary(schur, {}, one);
  const Complex z(0.4, 1.3);
  CHECK(std::abs(char_fn_eval(r0.colligation, z)(0, 0) - (z + 0.5 * kI) / (z - 0.5 * kI)) < 1e-13);
  CHECK(r0.colligation.state.neg_index() == 0);

  const auto r1 = realize_junitary(Realization::identity(1), {0.5 * kI}, one);
  CHECK(std::abs(char_fn_eval(r1.colligation, 2.0 * kI)(0, 0) - 0.6) < 1e-13);
  CHECK(r1.colligation.state.neg_index() == 1);
  CHECK(r1.report.colligation_residual < 1e-12);

  Realization broken = schur;
  broken.b = Matrix::Constant(1, 1, 2.0 * kI);
  try {
    realize_junitary(broken, {}, one);
    FAIL("expected InvalidSchurPart");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidSchurPart);
  }
}

TEST_CASE("J-unitary realization with mixed signature") {
  Rng rng(12);
  const Matrix j = diag2(1.0, -1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const auto schur = random_schur_part(rng, 2, 2);
    CHECK(schur_part_residual(schur) < 1e-13);
    std::vector<Complex> zeros;
    const int kappa = trial % 3;
    for (int i = 0; i < kappa; ++i)
      zeros.emplace_back(testsupport::uniform(rng, -1, 1), testsupport::uniform(rng, 0.3, 1.5));
    std::vector<Vector> dirs;
    for (int i = 0; i < kappa; ++i) dirs.push_back(testsupport::random_vector(rng, 2));
    const auto r = realize_junitary(schur, zeros, j, dirs);
    CHECK(r.report.colligation_residual < 1e-10);
    CHECK(r.report.real_line_defect < 1e-9);
    CHECK(r.report.transform_defect < 1e-10);
    CHECK(r.report.real_samples.size() == 10);
    CHECK(r.colligation.state.neg_index() == kappa);
  }
}

TEST_CASE("Schur kernel of a realized function has kappa negative squares") {
  for (int kappa = 0; kappa <= 3; ++kappa) {
    std::vector<Complex> zeros;
    for (int i = 0; i < kappa; ++i) zeros.emplace_back(-1.0 + 0.8 * i, 0.4 + 0.3 * i);
    const auto r = realize_junitary(Realization::identity(1), zeros, Matrix::Identity(1, 1));
    const auto k = schur_kernel(char_fn(r.colligation), r.colligation.sigma);
    CHECK(estimate_neg_squares(k, 5, 30).estimate == kappa);
  }
}
