#pragma once

#include <vector>

#include "flagparam/coset.hpp"
#include "flagparam/random.hpp"

namespace flagparam {

// lambda_1 > ... > lambda_m >= 0 with sum_j k_j lambda_j = 1.
class Spectrum {
 public:
  Spectrum(MultiplicityProfile profile, std::vector<double> lambdas,
           double gap_tol = kDefaultTolerances.gap);

  const MultiplicityProfile& profile() const noexcept { return profile_; }
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }
  // D_n(lambda) = diag(lambda_1 I_{k_1}, ..., lambda_m I_{k_m}).
  Eigen::VectorXd diagonal() const;

 private:
  MultiplicityProfile profile_;
  std::vector<double> lambdas_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& rho,
                         const Tolerances& tol = kDefaultTolerances);

  const Matrix& matrix() const noexcept { return rho_.matrix(); }
  Index n() const noexcept { return rho_.dim(); }

 private:
  HermitianMatrix rho_;
};

struct DensityParameters {
  Spectrum spectrum;
  FlagCoordinates coords;

  DensityParameters(Spectrum spectrum, FlagCoordinates coords);
};

// U D_n(lambda) U* with U = flag_section(coords).
DensityMatrix parametrize(const DensityParameters& params);

// Eigendecomposition, clustering of eigenvalues whose consecutive gaps are
// <= gap_tol, then decompose of the eigenvector unitary. GapAmbiguity when a
// gap lies in (gap_tol, 10 gap_tol).
DensityParameters deparametrize(const DensityMatrix& rho,
                                const Tolerances& tol = kDefaultTolerances);

// (m - 1) + 2 sum_{i<j} k_i k_j.
Index parameter_count(const MultiplicityProfile& profile);

// Uniform on the ordered simplex, redrawn until every gap is >= min_gap.
Spectrum sample_spectrum(const MultiplicityProfile& profile, Rng& rng,
                         double min_gap = 1e-3);

// Spectrum from sample_spectrum, coordinates of a Haar-random unitary.
DensityParameters sample_parameters(const MultiplicityProfile& profile,
                                    Rng& rng);

}  // namespace flagparam
