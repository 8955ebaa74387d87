#include <doctest.h>

#include <numbers>

#include "../support.hpp"

using namespace flagparam;

namespace {

Matrix random_b(Rng& rng, double radius, Index max_dim = 4) {
  return random_ball_matrix(fpt::draw(rng, 1, max_dim), fpt::draw(rng, 1, max_dim), rng, radius);
}

Matrix scalar(double v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return m;
}

}  // namespace

TEST_CASE("scalar branches and their Taylor switch") {
  for (double t : {0.0, 1e-12, 9.9e-9, 1.01e-8, 1e-4, 0.3, 2.0}) {
    const double s = std::sqrt(t);
    const double sinc_ref = t == 0.0 ? 1.0 : std::sin(s) / s;
    CHECK(std::abs(sinc_sqrt(t) - sinc_ref) <= 1e-15);
    // (cos s - 1)/t through the half-angle form, exact enough for small t.
    const double h = std::sin(0.5 * s);
    const double c_ref = t == 0.0 ? -0.5 : -2.0 * h * h / t;
    CHECK(std::abs(cos_sqrt_minus_one(t) - c_ref) <= 1e-15);
    if (t < 1.0) {
      const double a_ref = t == 0.0 ? 1.0 : std::asin(s) / s;
      CHECK(std::abs(arcsin_sqrt_ratio(t) - a_ref) <= 1e-15);
    }
  }
}

TEST_CASE("exp_K special cases") {
  CHECK((exp_K(OffDiagonalGenerator(Matrix::Zero(2, 3))).matrix() - Matrix::Identity(5, 5)).norm() ==
        0.0);
  const double theta = 0.9;
  const Matrix e = exp_K(OffDiagonalGenerator(scalar(theta))).matrix();
  CHECK(std::abs(e(0, 0) - std::cos(theta)) <= 1e-15);
  CHECK(std::abs(e(0, 1) - std::sin(theta)) <= 1e-15);
  CHECK(std::abs(e(1, 0) + std::sin(theta)) <= 1e-15);
  CHECK(std::abs(e(1, 1) - std::cos(theta)) <= 1e-15);
}

TEST_CASE("exp_K agrees with expm_reference and is unitary") {
  Rng rng(79);
  for (int i = 0; i < 200; ++i) {
    const OffDiagonalGenerator gen(random_b(rng, 2.0));
    CHECK((exp_K(gen).matrix() - expm_reference(gen.k_matrix())).norm() <= 1e-9);
  }
  for (int i = 0; i < 200; ++i) {
    const OffDiagonalGenerator gen(random_b(rng, 5.0));
    CHECK(unitarity_residual(exp_K(gen).matrix()) <= 1e-11);
  }
  // Rank-deficient B with tiny singular values exercises the Taylor branch.
  for (int i = 0; i < 20; ++i) {
    Matrix b = random_b(rng, 1e-5);
    const OffDiagonalGenerator gen(b);
    CHECK((exp_K(gen).matrix() - expm_reference(gen.k_matrix())).norm() <= 1e-12);
  }
}

TEST_CASE("B sinc(B*B) = sinc(BB*) B") {
  Rng rng(83);
  for (int i = 0; i < 200; ++i) {
    const Matrix b = random_b(rng, 2.0);
    const Matrix right = b * apply_spectral(b.adjoint() * b, sinc_sqrt);
    const Matrix left = apply_spectral(b * b.adjoint(), sinc_sqrt) * b;
    CHECK((right - left).norm() <= 1e-11);
    const Matrix block = exp_K(OffDiagonalGenerator(b)).matrix().topRightCorner(b.rows(), b.cols());
    CHECK((block - left).norm() <= 1e-11);
  }
}

TEST_CASE("log_to_ball and the principal range") {
  CHECK(log_to_ball(OffDiagonalGenerator(Matrix::Zero(2, 2))).x.matrix().norm() == 0.0);
  const BallFromGenerator half = log_to_ball(OffDiagonalGenerator(scalar(std::numbers::pi / 6)));
  CHECK(std::abs(half.x.matrix()(0, 0) - 0.5) <= 1e-15);
  CHECK(half.principal_range);
  Rng rng(89);
  for (int i = 0; i < 200; ++i) {
    const OffDiagonalGenerator gen(random_b(rng, 1.5));
    const BallFromGenerator x = log_to_ball(gen);
    CHECK(x.principal_range);
    CHECK((exp_K(gen).matrix() - W_of_X(x.x).matrix()).norm() <= 1e-10);
  }
  // Beyond pi/2 the cos block is no longer PSD and the identity fails.
  const OffDiagonalGenerator far(scalar(2.5));
  const BallFromGenerator x = log_to_ball(far);
  CHECK_FALSE(x.principal_range);
  CHECK((exp_K(far).matrix() - W_of_X(x.x).matrix()).norm() > 0.1);
}

TEST_CASE("ball_to_log inverts log_to_ball") {
  CHECK(ball_to_log(BallMatrix::zero(2, 1)).b().norm() == 0.0);
  CHECK(std::abs(ball_to_log(BallMatrix(scalar(0.5))).b()(0, 0) - std::numbers::pi / 6) <= 1e-15);
  Rng rng(97);
  for (int i = 0; i < 100; ++i) {
    const BallMatrix x(random_b(rng, 0.999));
    const OffDiagonalGenerator b = ball_to_log(x);
    CHECK(Eigen::JacobiSVD<Matrix>(b.b()).singularValues()(0) < std::numbers::pi / 2);
    CHECK((log_to_ball(b).x.matrix() - x.matrix()).norm() <= 1e-10);
  }
}

TEST_CASE("sqrt_I_minus_XXstar") {
  CHECK((sqrt_I_minus_XXstar(Matrix::Zero(3, 2)).matrix() - Matrix::Identity(3, 3)).norm() == 0.0);
  Rng rng(101);
  // ||x|| = 0.6 column vector against the rank-one formula.
  for (int i = 0; i < 20; ++i) {
    const Vector x = 0.6 * random_unit_vector(3, rng);
    const Matrix expected = Matrix::Identity(3, 3) +
                            ((std::sqrt(1.0 - 0.36) - 1.0) / 0.36) * (x * x.adjoint());
    CHECK((sqrt_I_minus_XXstar(x).matrix() - expected).norm() <= 1e-14);
  }
  for (int i = 0; i < 100; ++i) {
    const Matrix x = random_ball_matrix(5, 2, rng, 0.999);
    const Matrix oracle = fpt::oracle_sqrt(Matrix::Identity(5, 5) - x * x.adjoint());
    CHECK((sqrt_I_minus_XXstar(x).matrix() - oracle).norm() <= 1e-10);
  }
  try {
    sqrt_I_minus_XXstar(scalar(1.5));
    FAIL("expected NotPSD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPSD);
  }
}
