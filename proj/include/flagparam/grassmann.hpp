#pragma once

#include <vector>

#include "flagparam/numeric.hpp"

namespace flagparam {

// X with ||X||_2 < 1 - strict_margin (open ball B(n-k, k)).
class BallMatrix {
 public:
  explicit BallMatrix(Matrix x, double strict_margin = 0.0);

  // For coordinates produced by a chart map, whose interior membership is
  // already certified by sigma_min(Y) > rank_tol. The norm can round to 1.0
  // even then, so no check is made here beyond finiteness.
  static BallMatrix from_chart(Matrix x);

  static BallMatrix zero(Index rows, Index cols);

  const Matrix& matrix() const noexcept { return x_; }
  Index rows() const noexcept { return x_.rows(); }
  Index cols() const noexcept { return x_.cols(); }

  // 2 k (n - k): the real dimension of G(k, C^n).
  Index real_parameter_count() const noexcept { return 2 * x_.size(); }

 private:
  struct Trusted {};
  BallMatrix(Matrix x, Trusted) : x_(std::move(x)) {}
  Matrix x_;
};

// X with ||X||_2 <= 1 + tol (closed ball).
class ClosedBallMatrix {
 public:
  explicit ClosedBallMatrix(Matrix x, double tol = kDefaultTolerances.unitary);
  ClosedBallMatrix(const BallMatrix& x);  // NOLINT: every open-ball point qualifies

  const Matrix& matrix() const noexcept { return x_; }

 private:
  Matrix x_;
};

// n x k matrix with orthonormal columns.
class Frame {
 public:
  explicit Frame(Matrix m, double tol = kDefaultTolerances.unitary);

  const Matrix& matrix() const noexcept { return m_; }
  Index n() const noexcept { return m_.rows(); }
  Index k() const noexcept { return m_.cols(); }

 private:
  Matrix m_;
};

// A k-dimensional subspace of C^n stored as its orthogonal projector.
class GrassmannPoint {
 public:
  GrassmannPoint(const Matrix& projector, Index k,
                 double tol = kDefaultTolerances.psd);

  const Matrix& projector() const noexcept { return p_.matrix(); }
  Index n() const noexcept { return p_.dim(); }
  Index k() const noexcept { return k_; }

  // Orthonormal basis of the range: eigenvectors of the k largest
  // eigenvalues, in the eigensolver's (deterministic) order.
  Frame frame() const;

 private:
  HermitianMatrix p_;
  Index k_;
};

// A permutation sigma in S_{k,n}: sigma(1) < ... < sigma(n-k) and
// sigma(n-k+1) < ... < sigma(n). Stored 0-based.
class ChartIndex {
 public:
  static ChartIndex identity(Index n, Index k);
  // `images` lists sigma(1), ..., sigma(n) with 1-based values.
  static ChartIndex from_one_based(const std::vector<int>& images, Index k);
  // The chart whose block Y_sigma consists of the given rows (0-based).
  static ChartIndex from_bottom_rows(Index n, std::vector<int> rows);

  Index n() const noexcept { return static_cast<Index>(images_.size()); }
  Index k() const noexcept { return k_; }
  // 0-based sigma(j) for 0-based j.
  int operator()(Index j) const { return images_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& images() const noexcept { return images_; }
  std::vector<int> one_based() const;
  std::vector<int> top_rows() const;
  std::vector<int> bottom_rows() const;
  bool is_identity() const noexcept;

  friend bool operator==(const ChartIndex&, const ChartIndex&) = default;

 private:
  ChartIndex(std::vector<int> images, Index k)
      : images_(std::move(images)), k_(k) {}
  std::vector<int> images_;
  Index k_;
};

enum class ChartOrdering {
  // sigma_1 < sigma_2 < ... in the lexicographic order of (sigma(1), ...,
  // sigma(n)); the first chart is the identity.
  Lexicographic,
  // Bottom row sets compared by their largest row, then the next largest,
  // larger first. For k = 1 this is the order j = n, n-1, ..., 1 and agrees
  // with Lexicographic.
  LastIndexFirst,
};

// All of S_{k,n} in the requested priority order.
std::vector<ChartIndex> enumerate_charts(Index n, Index k,
                                         ChartOrdering ordering);

// Permutation matrix with U e_j = e_{sigma(j)}.
UnitaryMatrix perm_unitary(const ChartIndex& sigma);

// W(X) = [[(I - XX*)^{1/2}, X], [-X*, (I - X*X)^{1/2}]]. Both square roots
// come from one SVD of X, so the blocks share a spectral basis.
UnitaryMatrix W_of_X(const ClosedBallMatrix& x,
                     double psd_tol = kDefaultTolerances.psd);

// Last k columns of g.
Frame pi1(const UnitaryMatrix& g, Index k);

// Projector onto span F.
GrassmannPoint pi2(const Frame& f);

// Smallest singular value of the sigma-block Y_sigma of the frame.
double chart_margin(const Frame& f, const ChartIndex& sigma);

BallMatrix psi_sigma(const Frame& f, const ChartIndex& sigma,
                     double rank_tol = kDefaultTolerances.rank);
BallMatrix psi_sigma(const GrassmannPoint& p, const ChartIndex& sigma,
                     double rank_tol = kDefaultTolerances.rank);

GrassmannPoint kappa_sigma(const BallMatrix& x, const ChartIndex& sigma);

struct ChartSelection {
  // A chart is accepted when sigma_min(Y_sigma) > rank_tol and the resulting
  // coordinate satisfies ||X||_2 < 1 - boundary_margin.
  ChartOrdering ordering = ChartOrdering::Lexicographic;
  double rank_tol = kDefaultTolerances.rank;
  double boundary_margin = 0.0;
};

ChartIndex chart_select(const Frame& f, const ChartSelection& sel = {});
ChartIndex chart_select(const GrassmannPoint& p,
                        const ChartSelection& sel = {});

// U_sigma W(psi_sigma(.)).
UnitaryMatrix local_section(const Frame& f, const ChartIndex& sigma,
                            double rank_tol = kDefaultTolerances.rank);
UnitaryMatrix local_section(const GrassmannPoint& p, const ChartIndex& sigma,
                            double rank_tol = kDefaultTolerances.rank);

UnitaryMatrix global_section(const GrassmannPoint& p,
                             const ChartSelection& sel = {});

}  // namespace flagparam
