#include "flagparam/lie.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace flagparam {

namespace {

constexpr double kTaylorBelow = 1e-8;

}  // namespace

OffDiagonalGenerator::OffDiagonalGenerator(Matrix b) : b_(std::move(b)) {
  require_finite(b_, "OffDiagonalGenerator");
}

Matrix OffDiagonalGenerator::k_matrix() const {
  const Index n = k1() + k2();
  Matrix k = Matrix::Zero(n, n);
  k.topRightCorner(k1(), k2()) = b_;
  k.bottomLeftCorner(k2(), k1()) = -b_.adjoint();
  return k;
}

double sinc_sqrt(double t) {
  if (t < kTaylorBelow) return 1.0 - t / 6.0 + t * t / 120.0;
  const double s = std::sqrt(t);
  return std::sin(s) / s;
}

double cos_sqrt_minus_one(double t) {
  if (t < kTaylorBelow) return -0.5 + t / 24.0 - t * t / 720.0;
  // cos s - 1 = -2 sin^2(s/2) avoids the cancellation near 0.
  const double h = std::sin(0.5 * std::sqrt(t));
  return -2.0 * h * h / t;
}

double arcsin_sqrt_ratio(double t) {
  if (t < kTaylorBelow) return 1.0 + t / 6.0 + 3.0 * t * t / 40.0;
  const double s = std::sqrt(t);
  return std::asin(std::min(s, 1.0)) / s;
}

UnitaryMatrix exp_K(const OffDiagonalGenerator& gen) {
  const Matrix& b = gen.b();
  const Index k1 = gen.k1();
  const Index k2 = gen.k2();
  const Matrix btb = b.adjoint() * b;

  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (btb + btb.adjoint()));
  const Matrix& r = eig.eigenvectors();
  Eigen::VectorXd t = eig.eigenvalues().cwiseMax(0.0);
  Eigen::VectorXd cos_d(t.size()), sinc_d(t.size()), cm1_d(t.size());
  for (Index i = 0; i < t.size(); ++i) {
    cos_d(i) = std::cos(std::sqrt(t(i)));
    sinc_d(i) = sinc_sqrt(t(i));
    cm1_d(i) = cos_sqrt_minus_one(t(i));
  }
  const Matrix cos_small = r * cos_d.asDiagonal() * r.adjoint();
  const Matrix sinc = r * sinc_d.asDiagonal() * r.adjoint();
  // cos sqrt(BB*) = I + B (B*B)^{-1} (cos sqrt(B*B) - I) B*.
  const Matrix cos_large = Matrix::Identity(k1, k1) +
                           b * (r * cm1_d.asDiagonal() * r.adjoint()) * b.adjoint();

  Matrix e(k1 + k2, k1 + k2);
  e.topLeftCorner(k1, k1) = cos_large;
  e.topRightCorner(k1, k2) = b * sinc;
  e.bottomLeftCorner(k2, k1) = -sinc * b.adjoint();
  e.bottomRightCorner(k2, k2) = cos_small;
  return UnitaryMatrix(std::move(e));
}

BallFromGenerator log_to_ball(const OffDiagonalGenerator& gen) {
  const Matrix& b = gen.b();
  const Matrix x = b * apply_spectral(b.adjoint() * b, sinc_sqrt);
  const double top = Eigen::JacobiSVD<Matrix>(b).singularValues()(0);
  return {ClosedBallMatrix(x), top <= std::numbers::pi / 2};
}

OffDiagonalGenerator ball_to_log(const BallMatrix& x) {
  const Matrix& xm = x.matrix();
  return OffDiagonalGenerator(xm * apply_spectral(xm.adjoint() * xm, arcsin_sqrt_ratio));
}

HermitianMatrix sqrt_I_minus_XXstar(const Matrix& x, double psd_tol) {
  require_finite(x, "sqrt_I_minus_XXstar");
  const Matrix xtx = x.adjoint() * x;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (xtx + xtx.adjoint()));
  Eigen::VectorXd q = eig.eigenvalues();
  for (Index i = 0; i < q.size(); ++i) {
    const double t = std::max(q(i), 0.0);
    if (1.0 - t < -psd_tol) {
      fail(ErrorCode::NotPSD, "sqrt_I_minus_XXstar: X*X has eigenvalue " +
                                  std::to_string(t) + " > 1");
    }
    // ((1 - t)^{1/2} - 1) / t = -1 / (1 + (1 - t)^{1/2}), -1/2 at t = 0.
    q(i) = -1.0 / (1.0 + std::sqrt(std::max(1.0 - t, 0.0)));
  }
  const Matrix& r = eig.eigenvectors();
  const Matrix s = Matrix::Identity(x.rows(), x.rows()) +
                   x * (r * q.asDiagonal() * r.adjoint()) * x.adjoint();
  return HermitianMatrix(s, 1e-8);
}

}  // namespace flagparam
