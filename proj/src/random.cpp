#include "flagparam/random.hpp"

#include <cmath>

namespace flagparam {

Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

UnitaryMatrix haar_unitary(Index n, Rng& rng) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "haar_unitary: n must be >= 1");
  const Matrix g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1.0);
  }
  return UnitaryMatrix(std::move(q));
}

Matrix random_ball_matrix(Index rows, Index cols, Rng& rng, double radius,
                          bool on_boundary) {
  Matrix g = gaussian_matrix(rows, cols, rng);
  const double top = Eigen::JacobiSVD<Matrix>(g).singularValues()(0);
  const double target = on_boundary ? radius : radius * uniform(rng);
  return g * (target / top);
}

Vector random_unit_vector(Index dim, Rng& rng) {
  Vector v = gaussian_matrix(dim, 1, rng).col(0);
  return v / v.norm();
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace flagparam
