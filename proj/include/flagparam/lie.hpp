#pragma once

#include "flagparam/grassmann.hpp"

namespace flagparam {

// B in M(k1, k2); K(B) = [[0, B], [-B*, 0]] is skew-Hermitian.
class OffDiagonalGenerator {
 public:
  explicit OffDiagonalGenerator(Matrix b);

  const Matrix& b() const noexcept { return b_; }
  Index k1() const noexcept { return b_.rows(); }
  Index k2() const noexcept { return b_.cols(); }
  Matrix k_matrix() const;

 private:
  Matrix b_;
};

// Entire functions of t = s^2 >= 0 used by the closed forms. Each switches
// to its Taylor polynomial below t = 1e-8.
double sinc_sqrt(double t);            // sin(sqrt t) / sqrt t
double cos_sqrt_minus_one(double t);   // (cos(sqrt t) - 1) / t
double arcsin_sqrt_ratio(double t);    // arcsin(sqrt t) / sqrt t, t in [0, 1)

// Applies f to the Hermitian PSD matrix A through its eigendecomposition.
template <typename F>
Matrix apply_spectral(const Matrix& a, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (a + a.adjoint()));
  Eigen::VectorXd w = eig.eigenvalues();
  for (Index i = 0; i < w.size(); ++i) w(i) = f(std::max(w(i), 0.0));
  return eig.eigenvectors() * w.asDiagonal() * eig.eigenvectors().adjoint();
}

// exp K(B) in closed form:
// [[cos sqrt(BB*), B sinc(B*B)], [-sinc(B*B) B*, cos sqrt(B*B)]], every
// block evaluated from the one eigendecomposition of B*B.
UnitaryMatrix exp_K(const OffDiagonalGenerator& gen);

struct BallFromGenerator {
  ClosedBallMatrix x;
  // False when some singular value of B exceeds pi/2; exp K(B) = W(X) then
  // fails because cos sqrt(B*B) is no longer PSD.
  bool principal_range;
};

// X = B sinc(B*B).
BallFromGenerator log_to_ball(const OffDiagonalGenerator& gen);

// B = X f(X*X) with f(t) = arcsin(sqrt t)/sqrt t; the inverse of log_to_ball
// on singular values in [0, pi/2).
OffDiagonalGenerator ball_to_log(const BallMatrix& x);

// (I - XX*)^{1/2} = I + X q(X*X) X* with q(t) = ((1 - t)^{1/2} - 1)/t,
// computed from the eigenproblem of X*X only.
HermitianMatrix sqrt_I_minus_XXstar(const Matrix& x,
                                    double psd_tol = kDefaultTolerances.psd);

}  // namespace flagparam
