#include "flagparam/coset.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace flagparam {

namespace {

Matrix embed_top_left(const Matrix& block, Index n) {
  Matrix e = Matrix::Identity(n, n);
  e.topLeftCorner(block.rows(), block.cols()) = block;
  return e;
}

UnitaryMatrix chart_section(const FlagLevel& level) {
  return perm_unitary(level.chart) * W_of_X(level.x);
}

}  // namespace

MultiplicityProfile::MultiplicityProfile(std::vector<int> ks)
    : ks_(std::move(ks)) {
  if (ks_.empty()) {
    fail(ErrorCode::InvalidArgument, "MultiplicityProfile: empty profile");
  }
  for (int k : ks_) {
    if (k < 1) {
      fail(ErrorCode::InvalidArgument,
           "MultiplicityProfile: multiplicities must be >= 1");
    }
  }
  n_ = std::accumulate(ks_.begin(), ks_.end(), Index{0});
}

MultiplicityProfile MultiplicityProfile::nondegenerate(Index n) {
  return MultiplicityProfile(std::vector<int>(static_cast<std::size_t>(n), 1));
}

Index MultiplicityProfile::leading_size(Index j) const {
  return std::accumulate(ks_.begin(), ks_.begin() + j + 1, Index{0});
}

FlagCoordinates::FlagCoordinates(MultiplicityProfile profile,
                                 std::vector<FlagLevel> levels)
    : profile_(std::move(profile)), levels_(std::move(levels)) {
  const Index m = profile_.m();
  if (static_cast<Index>(levels_.size()) != m - 1) {
    fail(ErrorCode::ShapeMismatch,
         "FlagCoordinates: expected " + std::to_string(m - 1) + " levels, got " +
             std::to_string(levels_.size()));
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const Index j = m - 1 - static_cast<Index>(i);
    const Index size = profile_.leading_size(j);
    const Index k = profile_.k(j);
    const FlagLevel& lv = levels_[i];
    if (lv.x.rows() != size - k || lv.x.cols() != k || lv.chart.n() != size ||
        lv.chart.k() != k) {
      fail(ErrorCode::ShapeMismatch,
           "FlagCoordinates: level " + std::to_string(i) +
               " does not match the profile");
    }
  }
}

FlagCoordinates FlagCoordinates::zero(const MultiplicityProfile& profile) {
  std::vector<FlagLevel> levels;
  for (Index j = profile.m() - 1; j >= 1; --j) {
    const Index size = profile.leading_size(j);
    const Index k = profile.k(j);
    levels.push_back({ChartIndex::identity(size, k), BallMatrix::zero(size - k, k)});
  }
  return FlagCoordinates(profile, std::move(levels));
}

Index FlagCoordinates::real_parameter_count() const {
  Index total = 0;
  for (const FlagLevel& lv : levels_) total += lv.x.real_parameter_count();
  return total;
}

BlockDiagonalUnitary::BlockDiagonalUnitary(MultiplicityProfile profile,
                                           std::vector<UnitaryMatrix> blocks)
    : profile_(std::move(profile)), blocks_(std::move(blocks)) {
  if (static_cast<Index>(blocks_.size()) != profile_.m()) {
    fail(ErrorCode::ShapeMismatch, "BlockDiagonalUnitary: wrong block count");
  }
  for (Index j = 0; j < profile_.m(); ++j) {
    if (blocks_[static_cast<std::size_t>(j)].dim() != profile_.k(j)) {
      fail(ErrorCode::ShapeMismatch,
           "BlockDiagonalUnitary: block " + std::to_string(j) +
               " has the wrong size");
    }
  }
}

BlockDiagonalUnitary BlockDiagonalUnitary::identity(
    const MultiplicityProfile& profile) {
  std::vector<UnitaryMatrix> blocks;
  for (int k : profile.ks()) blocks.push_back(UnitaryMatrix::identity(k));
  return BlockDiagonalUnitary(profile, std::move(blocks));
}

UnitaryMatrix BlockDiagonalUnitary::matrix() const {
  const Index n = profile_.n();
  Matrix out = Matrix::Zero(n, n);
  Index offset = 0;
  for (const UnitaryMatrix& b : blocks_) {
    out.block(offset, offset, b.dim(), b.dim()) = b.matrix();
    offset += b.dim();
  }
  return UnitaryMatrix(std::move(out));
}

CosetDecomposition decompose(const UnitaryMatrix& g,
                             const MultiplicityProfile& profile,
                             const ChartSelection& sel) {
  if (g.dim() != profile.n()) {
    fail(ErrorCode::ShapeMismatch, "decompose: profile does not sum to dim g");
  }
  const Index m = profile.m();
  std::vector<FlagLevel> levels;
  std::vector<Matrix> h_blocks(static_cast<std::size_t>(m));
  Matrix current = g.matrix();
  for (Index j = m - 1; j >= 1; --j) {
    const Index size = current.rows();
    const Index k = profile.k(j);
    const Frame frame(current.rightCols(k));
    const ChartIndex sigma = chart_select(frame, sel);
    FlagLevel level{sigma, psi_sigma(frame, sigma, sel.rank_tol)};
    // iota^{-1} g_j = diag(g_{j-1}, h_j).
    const Matrix rest = chart_section(level).matrix().adjoint() * current;
    h_blocks[static_cast<std::size_t>(j)] = rest.bottomRightCorner(k, k);
    current = rest.topLeftCorner(size - k, size - k);
    levels.push_back(std::move(level));
  }
  h_blocks[0] = current;

  std::vector<UnitaryMatrix> blocks;
  blocks.reserve(h_blocks.size());
  for (Matrix& b : h_blocks) blocks.emplace_back(std::move(b));
  return {FlagCoordinates(profile, std::move(levels)),
          BlockDiagonalUnitary(profile, std::move(blocks))};
}

UnitaryMatrix reconstruct(const FlagCoordinates& coords,
                          const BlockDiagonalUnitary& h) {
  if (!(coords.profile() == h.profile())) {
    fail(ErrorCode::ShapeMismatch, "reconstruct: profiles differ");
  }
  const Index n = coords.profile().n();
  Matrix acc = Matrix::Identity(n, n);
  for (const FlagLevel& level : coords.levels()) {
    acc = acc * embed_top_left(chart_section(level).matrix(), n);
  }
  return UnitaryMatrix(acc * h.matrix().matrix());
}

UnitaryMatrix flag_section(const FlagCoordinates& coords) {
  return reconstruct(coords, BlockDiagonalUnitary::identity(coords.profile()));
}

ProjectiveSection grassmann_section_via_projective(const GrassmannPoint& p,
                                                   double rank_tol) {
  const Index n = p.n();
  const Index k = p.k();
  const Frame frame = p.frame();
  // Any g with pi(g) = P works; W(psi_e(P)) is at hand. OutOfChart when P
  // is not in Omega_e.
  const ChartIndex e = ChartIndex::identity(n, k);
  const Matrix g = W_of_X(psi_sigma(frame, e, rank_tol)).matrix();
  const Triangularization tri =
      lower_triangularize(g.bottomRightCorner(k, k), rank_tol);

  Matrix current = g;
  current.rightCols(k) = g.rightCols(k) * tri.unitary.matrix();

  std::vector<Vector> vectors;
  std::vector<Matrix> blocks;
  Matrix product = Matrix::Identity(n, n);
  for (Index i = 0; i < k; ++i) {
    const Index size = n - i;
    blocks.push_back(current.bottomRightCorner(k - i, k - i));
    Vector x = current.col(size - 1).head(size - 1);
    const Matrix w = W_of_X(ClosedBallMatrix(x)).matrix();
    product = product * embed_top_left(w, n);
    current = (w.adjoint() * current).topLeftCorner(size - 1, size - 1);
    vectors.push_back(std::move(x));
  }
  return {std::move(vectors), UnitaryMatrix(std::move(product)), tri.unitary,
          std::move(blocks), UnitaryMatrix(std::move(current))};
}

JarlskogLevel::JarlskogLevel(double theta_in, Vector zeta_in)
    : theta(theta_in), zeta(std::move(zeta_in)) {
  if (!(theta >= 0.0 && theta < std::numbers::pi / 2)) {
    fail(ErrorCode::InvalidArgument, "JarlskogLevel: theta outside [0, pi/2)");
  }
  if (zeta.size() < 1 || !(std::abs(zeta.norm() - 1.0) <= 1e-12)) {
    fail(ErrorCode::InvalidArgument, "JarlskogLevel: zeta is not a unit vector");
  }
}

Vector jarlskog_to_ball(const JarlskogLevel& level) {
  return std::sin(level.theta) * level.zeta;
}

JarlskogLevel ball_to_jarlskog(const Vector& x) {
  if (x.size() < 1) fail(ErrorCode::InvalidArgument, "ball_to_jarlskog: empty");
  require_finite(x, "ball_to_jarlskog");
  const double r = x.norm();
  if (!(r < 1.0)) {
    fail(ErrorCode::NotInBall, "ball_to_jarlskog: ||x|| >= 1");
  }
  if (r == 0.0) return JarlskogLevel(0.0, Vector::Unit(x.size(), 0));
  return JarlskogLevel(std::asin(r), x / r);
}

Matrix jarlskog_matrix(const JarlskogLevel& level) {
  const Index d = level.zeta.size();
  const double c = std::cos(level.theta);
  const double s = std::sin(level.theta);
  const Vector& z = level.zeta;
  Matrix v(d + 1, d + 1);
  v.topLeftCorner(d, d) = Matrix::Identity(d, d) - (1.0 - c) * z * z.adjoint();
  v.topRightCorner(d, 1) = s * z;
  v.bottomLeftCorner(1, d) = -s * z.adjoint();
  v(d, d) = c;
  return v;
}

Matrix ball_to_affine(const BallMatrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x.matrix(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = svd.singularValues();
  for (Index i = 0; i < s.size(); ++i) {
    s(i) = s(i) / std::sqrt((1.0 - s(i)) * (1.0 + s(i)));
  }
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
}

BallMatrix affine_to_ball(const Matrix& z) {
  require_finite(z, "affine_to_ball");
  Eigen::JacobiSVD<Matrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = svd.singularValues();
  for (Index i = 0; i < s.size(); ++i) s(i) = s(i) / std::sqrt(1.0 + s(i) * s(i));
  return BallMatrix(svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint());
}

}  // namespace flagparam
