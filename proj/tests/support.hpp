#pragma once

// Reference implementations and random generators shared by the unit and
// acceptance tests. Oracles deliberately avoid the library's own code paths.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "flagparam/density.hpp"
#include "flagparam/lie.hpp"

namespace fpt {

using namespace flagparam;

inline Index draw(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

// Hermitian PSD square root through Eigen's operatorSqrt.
inline Matrix oracle_sqrt(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (a + a.adjoint()));
  Eigen::VectorXd w = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * w.asDiagonal() * eig.eigenvectors().adjoint();
}

inline Matrix oracle_inv_sqrt(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (a + a.adjoint()));
  Eigen::VectorXd w = eig.eigenvalues().cwiseSqrt().cwiseInverse();
  return eig.eigenvectors() * w.asDiagonal() * eig.eigenvectors().adjoint();
}

// W(X) with the two square roots taken independently.
inline Matrix oracle_W(const Matrix& x) {
  const Index r = x.rows();
  const Index c = x.cols();
  Matrix w(r + c, r + c);
  w.topLeftCorner(r, r) = oracle_sqrt(Matrix::Identity(r, r) - x * x.adjoint());
  w.topRightCorner(r, c) = x;
  w.bottomLeftCorner(c, r) = -x.adjoint();
  w.bottomRightCorner(c, c) = oracle_sqrt(Matrix::Identity(c, c) - x.adjoint() * x);
  return w;
}

// (I - x x*)^{1/2} = I + (x* x)^{-1} [(1 - x* x)^{1/2} - 1] x x* for a column x.
inline Matrix rank_one_sqrt(const Vector& x) {
  const Index d = x.size();
  const double t = x.squaredNorm();
  if (t == 0.0) return Matrix::Identity(d, d);
  return Matrix::Identity(d, d) + ((std::sqrt(1.0 - t) - 1.0) / t) * (x * x.adjoint());
}

// [[(I - xx*)^{1/2}, x], [-x*, (1 - x*x)^{1/2}]] from the rank-one formula.
inline Matrix rank_one_W(const Vector& x) {
  const Index d = x.size();
  Matrix w(d + 1, d + 1);
  w.topLeftCorner(d, d) = rank_one_sqrt(x);
  w.topRightCorner(d, 1) = x;
  w.bottomLeftCorner(1, d) = -x.adjoint();
  w(d, d) = std::sqrt(1.0 - x.squaredNorm());
  return w;
}

// Rows of m listed in `rows`.
inline Matrix take_rows(const Matrix& m, const std::vector<int>& rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

// Chart coordinate straight from the projector: with P' = U_sigma* P U_sigma,
// X = P'_tb (P'_bb)^{-1/2}.
inline Matrix oracle_chart_coordinate(const Matrix& p, const ChartIndex& sigma) {
  const Index n = sigma.n();
  const Index k = sigma.k();
  Matrix perm = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) perm(sigma(j), j) = 1.0;
  const Matrix q = perm.adjoint() * p * perm;
  return q.topRightCorner(n - k, k) * oracle_inv_sqrt(q.bottomRightCorner(k, k));
}

inline Matrix projector_of(const Matrix& frame) { return frame * frame.adjoint(); }

inline MultiplicityProfile random_profile(Index n, Rng& rng) {
  std::vector<int> ks;
  Index left = n;
  while (left > 0) {
    const Index k = draw(rng, 1, left);
    ks.push_back(static_cast<int>(k));
    left -= k;
  }
  return MultiplicityProfile(std::move(ks));
}

inline ChartIndex random_chart(Index n, Index k, Rng& rng) {
  std::vector<int> all(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = static_cast<int>(i);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(k));
  return ChartIndex::from_bottom_rows(n, all);
}

inline BlockDiagonalUnitary random_block_unitary(const MultiplicityProfile& p, Rng& rng) {
  std::vector<UnitaryMatrix> blocks;
  for (int k : p.ks()) blocks.push_back(haar_unitary(k, rng));
  return BlockDiagonalUnitary(p, std::move(blocks));
}

// Coordinates with ||X|| <= radius at every level. With identity charts these
// are exactly what decompose returns for the corresponding point.
inline FlagCoordinates random_interior_coords(const MultiplicityProfile& p, Rng& rng,
                                              double radius = 0.95,
                                              bool identity_charts = true) {
  std::vector<FlagLevel> levels;
  for (Index j = p.m() - 1; j >= 1; --j) {
    const Index size = p.leading_size(j);
    const Index k = p.k(j);
    levels.push_back({identity_charts ? ChartIndex::identity(size, k)
                                      : random_chart(size, k, rng),
                      BallMatrix(random_ball_matrix(size - k, k, rng, radius))});
  }
  return FlagCoordinates(p, std::move(levels));
}

// Max distance between coordinates, infinite if the charts differ.
inline double coords_distance(const FlagCoordinates& a, const FlagCoordinates& b) {
  if (!(a.profile() == b.profile()) || a.levels().size() != b.levels().size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.levels().size(); ++i) {
    if (!(a.levels()[i].chart == b.levels()[i].chart)) return INFINITY;
    worst = std::max(worst, (a.levels()[i].x.matrix() - b.levels()[i].x.matrix()).norm());
  }
  return worst;
}

}  // namespace fpt
