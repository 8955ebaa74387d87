#include "flagparam/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace flagparam {

Spectrum::Spectrum(MultiplicityProfile profile, std::vector<double> lambdas,
                   double gap_tol)
    : profile_(std::move(profile)), lambdas_(std::move(lambdas)) {
  if (static_cast<Index>(lambdas_.size()) != profile_.m()) {
    fail(ErrorCode::ShapeMismatch, "Spectrum: " + std::to_string(lambdas_.size()) +
                                       " eigenvalues for " +
                                       std::to_string(profile_.m()) + " blocks");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < lambdas_.size(); ++j) {
    if (!std::isfinite(lambdas_[j])) {
      fail(ErrorCode::NonFinite, "Spectrum: non-finite eigenvalue");
    }
    if (j > 0 && !(lambdas_[j - 1] - lambdas_[j] > gap_tol)) {
      fail(ErrorCode::InvalidArgument,
           "Spectrum: eigenvalues must decrease by more than gap_tol");
    }
    total += profile_.k(static_cast<Index>(j)) * lambdas_[j];
  }
  if (lambdas_.back() < 0.0) {
    fail(ErrorCode::NotDensity, "Spectrum: negative eigenvalue");
  }
  if (!(std::abs(total - 1.0) <= 1e-12)) {
    fail(ErrorCode::NotDensity, "Spectrum: sum k_j lambda_j != 1");
  }
}

Eigen::VectorXd Spectrum::diagonal() const {
  Eigen::VectorXd d(profile_.n());
  Index offset = 0;
  for (Index j = 0; j < profile_.m(); ++j) {
    d.segment(offset, profile_.k(j)).setConstant(lambdas_[static_cast<std::size_t>(j)]);
    offset += profile_.k(j);
  }
  return d;
}

DensityMatrix::DensityMatrix(const Matrix& rho, const Tolerances& tol)
    : rho_(rho, tol.hermitian) {
  const Matrix& r = rho_.matrix();
  const double trace = r.trace().real();
  if (!(std::abs(trace - 1.0) <= 1e-12)) {
    fail(ErrorCode::NotDensity, "DensityMatrix: trace is " + std::to_string(trace));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(r, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues()(0) < -tol.psd) {
    fail(ErrorCode::NotDensity, "DensityMatrix: negative eigenvalue " +
                                    std::to_string(eig.eigenvalues()(0)));
  }
}

DensityParameters::DensityParameters(Spectrum spectrum_in,
                                     FlagCoordinates coords_in)
    : spectrum(std::move(spectrum_in)), coords(std::move(coords_in)) {
  if (!(spectrum.profile() == coords.profile())) {
    fail(ErrorCode::ShapeMismatch,
         "DensityParameters: spectrum and coordinates use different profiles");
  }
}

DensityMatrix parametrize(const DensityParameters& params) {
  const Matrix u = flag_section(params.coords).matrix();
  const Matrix rho =
      u * params.spectrum.diagonal().cast<Complex>().asDiagonal() * u.adjoint();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

DensityParameters deparametrize(const DensityMatrix& rho, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix());
  const Index n = rho.n();
  // The solver sorts ascending; reverse for lambda_1 largest.
  Eigen::VectorXd w = eig.eigenvalues().reverse();
  Matrix v = eig.eigenvectors().rowwise().reverse();

  std::vector<int> ks{1};
  std::vector<double> sums{w(0)};
  for (Index i = 1; i < n; ++i) {
    const double gap = w(i - 1) - w(i);
    if (gap > tol.gap && gap < 10.0 * tol.gap) {
      fail(ErrorCode::GapAmbiguity,
           "deparametrize: eigenvalue gap " + std::to_string(gap) +
               " lies between gap_tol and 10 gap_tol");
    }
    if (gap <= tol.gap) {
      ++ks.back();
      sums.back() += w(i);
    } else {
      ks.push_back(1);
      sums.push_back(w(i));
    }
  }
  const MultiplicityProfile profile(ks);
  std::vector<double> lambdas(sums.size());
  double total = 0.0;
  for (std::size_t j = 0; j < sums.size(); ++j) {
    lambdas[j] = std::max(sums[j] / ks[j], 0.0);
    total += ks[j] * lambdas[j];
  }
  for (double& l : lambdas) l /= total;

  ChartSelection sel;
  sel.rank_tol = tol.rank;
  sel.boundary_margin = tol.rank;
  CosetDecomposition dec = decompose(UnitaryMatrix(std::move(v), tol.unitary), profile, sel);
  return {Spectrum(profile, std::move(lambdas), tol.gap), std::move(dec.coords)};
}

Index parameter_count(const MultiplicityProfile& profile) {
  Index flag = 0;
  for (Index i = 0; i < profile.m(); ++i) {
    for (Index j = i + 1; j < profile.m(); ++j) flag += profile.k(i) * profile.k(j);
  }
  return (profile.m() - 1) + 2 * flag;
}

Spectrum sample_spectrum(const MultiplicityProfile& profile, Rng& rng,
                         double min_gap) {
  const Index m = profile.m();
  if (m == 1) return Spectrum(profile, {1.0 / static_cast<double>(profile.n())});
  // lambda_j = c_j + ... + c_m with c >= 0 turns sum_j k_j lambda_j = 1 into
  // sum_i n_i c_i = 1, n_i = k_1 + ... + k_i. Uniform weights y_i = n_i c_i
  // on the standard simplex give the uniform law on the ordered simplex.
  std::exponential_distribution<double> expo(1.0);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<double> y(static_cast<std::size_t>(m));
    for (double& e : y) e = expo(rng);
    const double s = std::accumulate(y.begin(), y.end(), 0.0);
    std::vector<double> c(y.size());
    bool ok = true;
    for (Index i = 0; i < m; ++i) {
      c[static_cast<std::size_t>(i)] =
          y[static_cast<std::size_t>(i)] / s / static_cast<double>(profile.leading_size(i));
      if (i < m - 1 && c[static_cast<std::size_t>(i)] < min_gap) ok = false;
    }
    if (!ok) continue;
    std::vector<double> lambdas(c.size());
    double acc = 0.0;
    for (Index i = m - 1; i >= 0; --i) {
      acc += c[static_cast<std::size_t>(i)];
      lambdas[static_cast<std::size_t>(i)] = acc;
    }
    double total = 0.0;
    for (Index j = 0; j < m; ++j) total += profile.k(j) * lambdas[static_cast<std::size_t>(j)];
    for (double& l : lambdas) l /= total;
    return Spectrum(profile, std::move(lambdas));
  }
  fail(ErrorCode::InvalidArgument,
       "sample_spectrum: no spectrum with the requested gaps after 10000 draws");
}

DensityParameters sample_parameters(const MultiplicityProfile& profile, Rng& rng) {
  Spectrum spectrum = sample_spectrum(profile, rng);
  CosetDecomposition dec = decompose(haar_unitary(profile.n(), rng), profile);
  return {std::move(spectrum), std::move(dec.coords)};
}

}  // namespace flagparam
