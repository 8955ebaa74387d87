#include "flagparam/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace flagparam {

namespace {

double spectral_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(x).singularValues()(0);
}

Matrix select_rows(const Matrix& m, const std::vector<int>& rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Index>(i)) = m.row(rows[i]);
  }
  return out;
}

struct BallRoots {
  Matrix top;     // (I - XX*)^{1/2}
  Matrix bottom;  // (I - X*X)^{1/2}
};

BallRoots ball_roots(const Matrix& x, double psd_tol) {
  const Index p = x.rows();
  const Index q = x.cols();
  BallRoots out{Matrix::Identity(p, p), Matrix::Identity(q, q)};
  if (x.size() == 0) return out;
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::VectorXd shift(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    const double gap = (1.0 - s(i)) * (1.0 + s(i));
    if (gap < -psd_tol) {
      fail(ErrorCode::NotPSD, "W_of_X: singular value " + std::to_string(s(i)) +
                                  " outside the closed unit ball");
    }
    shift(i) = std::sqrt(std::max(gap, 0.0)) - 1.0;
  }
  const Matrix& l = svd.matrixU();
  const Matrix& r = svd.matrixV();
  out.top += l * shift.asDiagonal() * l.adjoint();
  out.bottom += r * shift.asDiagonal() * r.adjoint();
  return out;
}

void require_matching(const Frame& f, const ChartIndex& sigma) {
  if (f.n() != sigma.n() || f.k() != sigma.k()) {
    fail(ErrorCode::ShapeMismatch, "chart index does not match frame shape");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

BallMatrix::BallMatrix(Matrix x, double strict_margin) : x_(std::move(x)) {
  if (x_.size() > 0) require_finite(x_, "BallMatrix");
  const double norm = spectral_norm(x_);
  if (!(norm < 1.0 - strict_margin)) {
    fail(ErrorCode::NotInBall,
         "BallMatrix: ||X||_2 = " + std::to_string(norm) + " is not < 1");
  }
}

BallMatrix BallMatrix::from_chart(Matrix x) {
  if (x.size() > 0) require_finite(x, "BallMatrix");
  return BallMatrix(std::move(x), Trusted{});
}

BallMatrix BallMatrix::zero(Index rows, Index cols) {
  return BallMatrix(Matrix::Zero(rows, cols), Trusted{});
}

ClosedBallMatrix::ClosedBallMatrix(Matrix x, double tol) : x_(std::move(x)) {
  if (x_.size() > 0) require_finite(x_, "ClosedBallMatrix");
  const double norm = spectral_norm(x_);
  if (!(norm <= 1.0 + tol)) {
    fail(ErrorCode::NotInBall,
         "ClosedBallMatrix: ||X||_2 = " + std::to_string(norm) + " exceeds 1");
  }
}

ClosedBallMatrix::ClosedBallMatrix(const BallMatrix& x) : x_(x.matrix()) {}

Frame::Frame(Matrix m, double tol) : m_(std::move(m)) {
  require_finite(m_, "Frame");
  if (m_.cols() > m_.rows()) {
    fail(ErrorCode::ShapeMismatch, "Frame: more columns than rows");
  }
  const double r = unitarity_residual(m_);
  if (!(r <= tol)) {
    fail(ErrorCode::NotUnitary,
         "Frame: ||M*M - I||_F = " + std::to_string(r));
  }
}

GrassmannPoint::GrassmannPoint(const Matrix& projector, Index k, double tol)
    : p_(projector, tol), k_(k) {
  const Index n = p_.dim();
  if (k < 1 || k > n) {
    fail(ErrorCode::InvalidArgument, "GrassmannPoint: need 1 <= k <= n");
  }
  const Matrix& p = p_.matrix();
  const double idem = (p * p - p).norm();
  const double trace_err = std::abs(p.trace().real() - static_cast<double>(k));
  if (!(idem <= tol) || !(trace_err <= tol)) {
    fail(ErrorCode::InvalidArgument,
         "GrassmannPoint: not a rank-k projector (||P^2 - P||_F = " +
             std::to_string(idem) + ", |tr P - k| = " +
             std::to_string(trace_err) + ")");
  }
}

Frame GrassmannPoint::frame() const {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(p_.matrix());
  const Index n = p_.dim();
  return Frame(eig.eigenvectors().rightCols(k_), 1e-9 * static_cast<double>(n));
}

// ---------------------------------------------------------------------------

ChartIndex ChartIndex::identity(Index n, Index k) {
  if (k < 1 || k > n) {
    fail(ErrorCode::InvalidArgument, "ChartIndex: need 1 <= k <= n");
  }
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return ChartIndex(std::move(images), k);
}

ChartIndex ChartIndex::from_one_based(const std::vector<int>& images, Index k) {
  const Index n = static_cast<Index>(images.size());
  if (k < 1 || k > n) {
    fail(ErrorCode::InvalidArgument, "ChartIndex: need 1 <= k <= n");
  }
  std::vector<int> zero_based(images.size());
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const int v = images[i] - 1;
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      fail(ErrorCode::InvalidArgument, "ChartIndex: not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
    zero_based[i] = v;
  }
  const auto split = zero_based.begin() + (n - k);
  if (!std::is_sorted(zero_based.begin(), split) ||
      !std::is_sorted(split, zero_based.end())) {
    fail(ErrorCode::InvalidArgument,
         "ChartIndex: permutation is not made of two increasing runs");
  }
  return ChartIndex(std::move(zero_based), k);
}

ChartIndex ChartIndex::from_bottom_rows(Index n, std::vector<int> rows) {
  const Index k = static_cast<Index>(rows.size());
  if (k < 1 || k > n) {
    fail(ErrorCode::InvalidArgument, "ChartIndex: need 1 <= k <= n");
  }
  std::sort(rows.begin(), rows.end());
  std::vector<bool> bottom(static_cast<std::size_t>(n), false);
  for (int r : rows) {
    if (r < 0 || r >= n || bottom[static_cast<std::size_t>(r)]) {
      fail(ErrorCode::InvalidArgument, "ChartIndex: invalid bottom rows");
    }
    bottom[static_cast<std::size_t>(r)] = true;
  }
  std::vector<int> images;
  images.reserve(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    if (!bottom[static_cast<std::size_t>(r)]) images.push_back(r);
  }
  images.insert(images.end(), rows.begin(), rows.end());
  return ChartIndex(std::move(images), k);
}

std::vector<int> ChartIndex::one_based() const {
  std::vector<int> out(images_);
  for (int& v : out) ++v;
  return out;
}

std::vector<int> ChartIndex::top_rows() const {
  return {images_.begin(), images_.end() - k_};
}

std::vector<int> ChartIndex::bottom_rows() const {
  return {images_.end() - k_, images_.end()};
}

bool ChartIndex::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

std::vector<ChartIndex> enumerate_charts(Index n, Index k,
                                         ChartOrdering ordering) {
  if (k < 1 || k > n) {
    fail(ErrorCode::InvalidArgument, "enumerate_charts: need 1 <= k <= n");
  }
  std::vector<ChartIndex> out;
  // Walk all k-subsets of {0, ..., n-1} through a selection mask.
  std::vector<bool> mask(static_cast<std::size_t>(n), false);
  std::fill(mask.end() - k, mask.end(), true);
  do {
    std::vector<int> rows;
    for (int r = 0; r < n; ++r) {
      if (mask[static_cast<std::size_t>(r)]) rows.push_back(r);
    }
    out.push_back(ChartIndex::from_bottom_rows(n, std::move(rows)));
  } while (std::next_permutation(mask.begin(), mask.end()));

  if (ordering == ChartOrdering::Lexicographic) {
    std::sort(out.begin(), out.end(), [](const ChartIndex& a, const ChartIndex& b) {
      return a.images() < b.images();
    });
  } else {
    std::sort(out.begin(), out.end(), [](const ChartIndex& a, const ChartIndex& b) {
      auto ra = a.bottom_rows();
      auto rb = b.bottom_rows();
      return std::lexicographical_compare(rb.rbegin(), rb.rend(), ra.rbegin(),
                                          ra.rend());
    });
  }
  return out;
}

UnitaryMatrix perm_unitary(const ChartIndex& sigma) {
  const Index n = sigma.n();
  Matrix u = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) u(sigma(j), j) = 1.0;
  return UnitaryMatrix(std::move(u));
}

UnitaryMatrix W_of_X(const ClosedBallMatrix& x, double psd_tol) {
  const Matrix& xm = x.matrix();
  const Index p = xm.rows();
  const Index q = xm.cols();
  const BallRoots roots = ball_roots(xm, psd_tol);
  Matrix w(p + q, p + q);
  w.topLeftCorner(p, p) = roots.top;
  w.topRightCorner(p, q) = xm;
  w.bottomLeftCorner(q, p) = -xm.adjoint();
  w.bottomRightCorner(q, q) = roots.bottom;
  return UnitaryMatrix(std::move(w));
}

Frame pi1(const UnitaryMatrix& g, Index k) {
  if (k < 1 || k > g.dim()) {
    fail(ErrorCode::InvalidArgument, "pi1: need 1 <= k <= n");
  }
  return Frame(g.matrix().rightCols(k));
}

GrassmannPoint pi2(const Frame& f) {
  const Matrix& m = f.matrix();
  return GrassmannPoint(m * m.adjoint(), f.k());
}

double chart_margin(const Frame& f, const ChartIndex& sigma) {
  require_matching(f, sigma);
  const Matrix y = select_rows(f.matrix(), sigma.bottom_rows());
  return Eigen::JacobiSVD<Matrix>(y).singularValues().minCoeff();
}

BallMatrix psi_sigma(const Frame& f, const ChartIndex& sigma, double rank_tol) {
  require_matching(f, sigma);
  const Matrix x_sigma = select_rows(f.matrix(), sigma.top_rows());
  const Matrix y_sigma = select_rows(f.matrix(), sigma.bottom_rows());
  try {
    // Y* = U |Y*| gives Y U = |Y*|, the positive representative.
    const PolarFactors polar = polar_unitary(y_sigma, rank_tol);
    return BallMatrix::from_chart(x_sigma * polar.unitary.matrix());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularInput) throw;
    fail(ErrorCode::OutOfChart, std::string("psi_sigma: ") + e.what());
  }
}

BallMatrix psi_sigma(const GrassmannPoint& p, const ChartIndex& sigma,
                     double rank_tol) {
  return psi_sigma(p.frame(), sigma, rank_tol);
}

GrassmannPoint kappa_sigma(const BallMatrix& x, const ChartIndex& sigma) {
  const Index p = x.rows();
  const Index q = x.cols();
  if (sigma.n() != p + q || sigma.k() != q) {
    fail(ErrorCode::ShapeMismatch, "kappa_sigma: chart does not match X");
  }
  const BallRoots roots = ball_roots(x.matrix(), kDefaultTolerances.psd);
  Matrix f(p + q, q);
  f.topRows(p) = x.matrix();
  f.bottomRows(q) = roots.bottom;
  const Matrix moved = perm_unitary(sigma).matrix() * f;
  return GrassmannPoint(moved * moved.adjoint(), q);
}

ChartIndex chart_select(const Frame& f, const ChartSelection& sel) {
  // ||X||_2^2 = 1 - sigma_min(Y)^2 for the chart coordinate X.
  const double m = sel.boundary_margin;
  const double min_sq = m * (2.0 - m);
  for (const ChartIndex& sigma : enumerate_charts(f.n(), f.k(), sel.ordering)) {
    const double s = chart_margin(f, sigma);
    if (s > sel.rank_tol && s * s > min_sq) return sigma;
  }
  fail(ErrorCode::NoChart, "chart_select: no chart contains the point");
}

ChartIndex chart_select(const GrassmannPoint& p, const ChartSelection& sel) {
  return chart_select(p.frame(), sel);
}

UnitaryMatrix local_section(const Frame& f, const ChartIndex& sigma,
                            double rank_tol) {
  const BallMatrix x = psi_sigma(f, sigma, rank_tol);
  return perm_unitary(sigma) * W_of_X(x);
}

UnitaryMatrix local_section(const GrassmannPoint& p, const ChartIndex& sigma,
                            double rank_tol) {
  return local_section(p.frame(), sigma, rank_tol);
}

UnitaryMatrix global_section(const GrassmannPoint& p,
                             const ChartSelection& sel) {
  const Frame f = p.frame();
  return local_section(f, chart_select(f, sel), sel.rank_tol);
}

}  // namespace flagparam
