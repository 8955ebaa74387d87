#pragma once

#include <vector>

#include "flagparam/grassmann.hpp"

namespace flagparam {

// Degeneracy pattern (k_1, ..., k_m), every k_j >= 1.
class MultiplicityProfile {
 public:
  explicit MultiplicityProfile(std::vector<int> ks);

  static MultiplicityProfile nondegenerate(Index n);

  const std::vector<int>& ks() const noexcept { return ks_; }
  Index n() const noexcept { return n_; }
  Index m() const noexcept { return static_cast<Index>(ks_.size()); }
  Index k(Index j) const { return ks_[static_cast<std::size_t>(j)]; }
  // k_1 + ... + k_{j+1} for 0-based j: the size of the unitary at level j.
  Index leading_size(Index j) const;

  friend bool operator==(const MultiplicityProfile&,
                         const MultiplicityProfile&) = default;

 private:
  std::vector<int> ks_;
  Index n_ = 0;
};

// One peeled level: the Grassmann point z_j in G(k_j, C^{k_1+...+k_j}),
// written in the chart that was used for it.
struct FlagLevel {
  ChartIndex chart;
  BallMatrix x;
};

// Coordinates of a point of U(n)/(U(k_1) x ... x U(k_m)). `levels` runs from
// the outermost level (j = m) down to j = 2, so levels.size() == m - 1 and
// the X at position i has shape (n_j - k_j) x k_j with j = m - i.
class FlagCoordinates {
 public:
  FlagCoordinates(MultiplicityProfile profile, std::vector<FlagLevel> levels);

  // Every X = 0 in the identity chart.
  static FlagCoordinates zero(const MultiplicityProfile& profile);

  const MultiplicityProfile& profile() const noexcept { return profile_; }
  const std::vector<FlagLevel>& levels() const noexcept { return levels_; }

  // 2 sum_{i<j} k_i k_j.
  Index real_parameter_count() const;

 private:
  MultiplicityProfile profile_;
  std::vector<FlagLevel> levels_;
};

// h in U(k_1) x ... x U(k_m).
class BlockDiagonalUnitary {
 public:
  BlockDiagonalUnitary(MultiplicityProfile profile,
                       std::vector<UnitaryMatrix> blocks);

  static BlockDiagonalUnitary identity(const MultiplicityProfile& profile);

  const MultiplicityProfile& profile() const noexcept { return profile_; }
  const std::vector<UnitaryMatrix>& blocks() const noexcept { return blocks_; }
  UnitaryMatrix matrix() const;

 private:
  MultiplicityProfile profile_;
  std::vector<UnitaryMatrix> blocks_;
};

struct CosetDecomposition {
  FlagCoordinates coords;
  BlockDiagonalUnitary h;
};

// Peels g = iota_m(z_m) diag(iota_{m-1}(z_{m-1}), I) ... h level by level,
// choosing each chart with chart_select.
CosetDecomposition decompose(const UnitaryMatrix& g,
                             const MultiplicityProfile& profile,
                             const ChartSelection& sel = {});

// The product of embedded sections times diag(h_1, ..., h_m).
UnitaryMatrix reconstruct(const FlagCoordinates& coords,
                          const BlockDiagonalUnitary& h);

// reconstruct(coords, identity): a section of U(n) over the flag manifold.
UnitaryMatrix flag_section(const FlagCoordinates& coords);

// Section over Omega_e in G(k, C^n) assembled from k projective factors.
struct ProjectiveSection {
  // vectors[i] lies in B(n - i - 1); entries n-k .. n-i-2 (0-based) vanish.
  std::vector<Vector> vectors;
  // W(x_0) diag(W(x_1), I_1) ... diag(W(x_{k-1}), I_{k-1}).
  UnitaryMatrix product;
  // U in U(k) that made the bottom k x k block lower triangular.
  UnitaryMatrix triangularizer;
  // The bottom (k-i) x (k-i) triangular block before peeling step i.
  std::vector<Matrix> triangular_blocks;
  // g_{n-k}: what is left after the k peels.
  UnitaryMatrix remainder;
};

ProjectiveSection grassmann_section_via_projective(
    const GrassmannPoint& p, double rank_tol = kDefaultTolerances.rank);

// Angle/direction form of a projective ball vector: x = sin(theta) zeta.
struct JarlskogLevel {
  double theta = 0.0;  // in [0, pi/2)
  Vector zeta;         // unit vector

  JarlskogLevel(double theta, Vector zeta);
};

Vector jarlskog_to_ball(const JarlskogLevel& level);
// zeta = e_1 when x = 0.
JarlskogLevel ball_to_jarlskog(const Vector& x);

// [[I - (1 - cos t)|z><z|, sin t |z>], [-sin t <z|, cos t]].
Matrix jarlskog_matrix(const JarlskogLevel& level);

// Z = X (I - X*X)^{-1/2} and its inverse X = Z (Z*Z + I)^{-1/2}.
Matrix ball_to_affine(const BallMatrix& x);
BallMatrix affine_to_ball(const Matrix& z);

}  // namespace flagparam
