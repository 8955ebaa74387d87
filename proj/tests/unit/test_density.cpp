#include <doctest.h>

#include "../support.hpp"

using namespace flagparam;

namespace {

Matrix diag_rho(const std::vector<double>& d) {
  Matrix m = Matrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
  return m;
}

double eig_min(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

}  // namespace

TEST_CASE("Spectrum validation") {
  const MultiplicityProfile p({3, 1});
  CHECK_NOTHROW(Spectrum(p, {0.3, 0.1}));
  CHECK_THROWS_AS(Spectrum(p, {0.1, 0.7}), Error);        // not descending
  CHECK_THROWS_AS(Spectrum(p, {0.3, 0.1, 0.0}), Error);   // wrong length
  CHECK_THROWS_AS(Spectrum(p, {0.3, 0.2}), Error);        // trace 1.1
  CHECK_THROWS_AS(Spectrum(p, {0.34, -0.02}), Error);     // negative
  CHECK(Spectrum(p, {0.3, 0.1}).diagonal()(2) == 0.3);
}

TEST_CASE("DensityMatrix validation") {
  CHECK_NOTHROW(DensityMatrix(diag_rho({0.5, 0.5})));
  CHECK_THROWS_AS(DensityMatrix(diag_rho({0.6, 0.5})), Error);
  CHECK_THROWS_AS(DensityMatrix(diag_rho({1.1, -0.1})), Error);
  Matrix a = diag_rho({0.5, 0.5});
  a(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{a}, Error);
}

TEST_CASE("parameter_count") {
  CHECK(parameter_count(MultiplicityProfile({4})) == 0);
  CHECK(parameter_count(MultiplicityProfile({3, 1})) == 7);
  CHECK(parameter_count(MultiplicityProfile({2, 2})) == 9);
  for (Index n = 1; n <= 8; ++n) {
    CHECK(parameter_count(MultiplicityProfile::nondegenerate(n)) == n * n - 1);
  }
}

TEST_CASE("parametrize with zero coordinates is D(lambda)") {
  const MultiplicityProfile p({2, 1, 1});
  const Spectrum s(p, {0.3, 0.25, 0.15});
  const DensityMatrix rho = parametrize({s, FlagCoordinates::zero(p)});
  CHECK(rho.matrix() == diag_rho({0.3, 0.3, 0.25, 0.15}));
}

TEST_CASE("parametrize output is a density matrix and section independent") {
  Rng rng(103);
  for (int i = 0; i < 200; ++i) {
    const MultiplicityProfile p = fpt::random_profile(fpt::draw(rng, 1, 7), rng);
    const DensityParameters params = sample_parameters(p, rng);
    const Matrix rho = parametrize(params).matrix();
    CHECK(hermiticity_residual(rho) == 0.0);
    CHECK(eig_min(rho) >= -1e-10);
    CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-12);
    const Matrix u = flag_section(params.coords).matrix();
    const Matrix uh = u * fpt::random_block_unitary(p, rng).matrix().matrix();
    const Matrix d = params.spectrum.diagonal().cast<Complex>().asDiagonal();
    CHECK((uh * d * uh.adjoint() - rho).norm() <= 1e-12);
  }
}

TEST_CASE("(3,1) parametrization matches the rank-one closed form") {
  Rng rng(107);
  const MultiplicityProfile p({3, 1});
  for (int i = 0; i < 50; ++i) {
    const Vector x = random_ball_matrix(3, 1, rng, 0.99).col(0);
    const Spectrum s = sample_spectrum(p, rng);
    const Matrix u = fpt::rank_one_W(x);
    const Matrix d = s.diagonal().cast<Complex>().asDiagonal();
    const FlagCoordinates c(p, {{ChartIndex::identity(4, 1), BallMatrix(x)}});
    CHECK((parametrize({s, c}).matrix() - u * d * u.adjoint()).norm() <= 1e-11);
  }
}

TEST_CASE("deparametrize of the maximally mixed state") {
  for (Index n = 1; n <= 6; ++n) {
    const DensityParameters p =
        deparametrize(DensityMatrix(Matrix::Identity(n, n) / static_cast<double>(n)));
    CHECK(p.spectrum.profile().ks() == std::vector<int>{static_cast<int>(n)});
    CHECK(std::abs(p.spectrum.lambdas()[0] - 1.0 / static_cast<double>(n)) <= 1e-15);
    CHECK(p.coords.levels().empty());
  }
}

TEST_CASE("deparametrize of diag(mu, lambda) from two unitaries") {
  const double lambda = 0.7;
  const double mu = 0.3;
  const DensityParameters direct = deparametrize(DensityMatrix(diag_rho({mu, lambda})));
  CHECK(direct.spectrum.profile().ks() == std::vector<int>{1, 1});
  CHECK(std::abs(direct.spectrum.lambdas()[0] - lambda) <= 1e-15);
  CHECK(std::abs(direct.spectrum.lambdas()[1] - mu) <= 1e-15);
  for (double phi : {0.0, 0.4, 1.1, 3.0}) {
    Matrix g(2, 2);
    g << 0.0, std::exp(Complex(0.0, phi)), -std::exp(Complex(0.0, -phi)), 0.0;
    const Matrix rho = g * diag_rho({lambda, mu}) * g.adjoint();
    const DensityParameters p = deparametrize(DensityMatrix(rho));
    CHECK(fpt::coords_distance(p.coords, direct.coords) <= 1e-15);
    CHECK(p.coords.levels()[0].chart.one_based() == std::vector<int>{2, 1});
  }
}

TEST_CASE("deparametrize round trips") {
  Rng rng(109);
  for (Index n : {2, 4, 6}) {
    for (int i = 0; i < 60; ++i) {
      const MultiplicityProfile p = fpt::random_profile(n, rng);
      // rho-level.
      const DensityMatrix rho = parametrize(sample_parameters(p, rng));
      const DensityParameters back = deparametrize(rho);
      CHECK(back.spectrum.profile() == p);
      CHECK((parametrize(back).matrix() - rho.matrix()).norm() <= 1e-10);
      // Parameter level, interior coordinates.
      const DensityParameters params(sample_spectrum(p, rng), fpt::random_interior_coords(p, rng));
      const DensityParameters again = deparametrize(parametrize(params));
      CHECK(fpt::coords_distance(again.coords, params.coords) <= 1e-9);
      for (std::size_t j = 0; j < p.ks().size(); ++j) {
        CHECK(std::abs(again.spectrum.lambdas()[j] - params.spectrum.lambdas()[j]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("deparametrize is spectrum invariant under unitary conjugation") {
  Rng rng(113);
  for (int i = 0; i < 50; ++i) {
    const MultiplicityProfile p = fpt::random_profile(fpt::draw(rng, 2, 6), rng);
    const DensityMatrix rho = parametrize(sample_parameters(p, rng));
    const Matrix v = haar_unitary(p.n(), rng).matrix();
    const Matrix moved = v * rho.matrix() * v.adjoint();
    const DensityParameters a = deparametrize(rho);
    const DensityParameters b = deparametrize(DensityMatrix(0.5 * (moved + moved.adjoint())));
    REQUIRE(a.spectrum.profile() == b.spectrum.profile());
    for (std::size_t j = 0; j < a.spectrum.lambdas().size(); ++j) {
      CHECK(std::abs(a.spectrum.lambdas()[j] - b.spectrum.lambdas()[j]) <= 1e-10);
    }
  }
}

TEST_CASE("eigenbasis choice inside a degenerate block does not change coords") {
  Rng rng(127);
  const MultiplicityProfile p({2, 2});
  for (int i = 0; i < 30; ++i) {
    const DensityParameters params = sample_parameters(p, rng);
    const Matrix u = flag_section(params.coords).matrix();
    const Matrix uh = u * fpt::random_block_unitary(p, rng).matrix().matrix();
    const Matrix d = params.spectrum.diagonal().cast<Complex>().asDiagonal();
    const DensityParameters a = deparametrize(DensityMatrix(u * d * u.adjoint()));
    const Matrix rho2 = uh * d * uh.adjoint();
    const DensityParameters b = deparametrize(DensityMatrix(0.5 * (rho2 + rho2.adjoint())));
    CHECK(fpt::coords_distance(a.coords, b.coords) <= 1e-10);
  }
}

TEST_CASE("gap clustering and the ambiguity band") {
  const double tol = kDefaultTolerances.gap;
  // Gap below tol: one cluster.
  const DensityParameters merged = deparametrize(DensityMatrix(diag_rho({0.5 + 0.2 * tol, 0.5 - 0.2 * tol})));
  CHECK(merged.spectrum.profile().ks() == std::vector<int>{2});
  // Gap 5 tol: ambiguous.
  try {
    deparametrize(DensityMatrix(diag_rho({0.5 + 2.5 * tol, 0.5 - 2.5 * tol})));
    FAIL("expected GapAmbiguity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GapAmbiguity);
  }
  // Gap 20 tol: two clusters.
  const DensityParameters split = deparametrize(DensityMatrix(diag_rho({0.5 + 10 * tol, 0.5 - 10 * tol})));
  CHECK(split.spectrum.profile().ks() == std::vector<int>{1, 1});
  // A looser tolerance merges it again.
  Tolerances loose;
  loose.gap = 1e-3;
  CHECK(deparametrize(DensityMatrix(diag_rho({0.5 + 10 * tol, 0.5 - 10 * tol})), loose)
            .spectrum.profile()
            .ks() == std::vector<int>{2});
}

TEST_CASE("sample_spectrum respects the ordered simplex and gaps") {
  Rng rng(131);
  for (int i = 0; i < 300; ++i) {
    const MultiplicityProfile p = fpt::random_profile(fpt::draw(rng, 1, 8), rng);
    const Spectrum s = sample_spectrum(p, rng);
    double total = 0.0;
    for (std::size_t j = 0; j < s.lambdas().size(); ++j) {
      total += p.ks()[j] * s.lambdas()[j];
      if (j > 0) CHECK(s.lambdas()[j - 1] - s.lambdas()[j] >= 1e-3 - 1e-15);
      CHECK(s.lambdas()[j] >= 0.0);
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
  Rng a(5), b(5);
  CHECK(sample_spectrum(MultiplicityProfile({2, 1, 1}), a).lambdas() ==
        sample_spectrum(MultiplicityProfile({2, 1, 1}), b).lambdas());
  Rng c(1);
  CHECK(sample_spectrum(MultiplicityProfile({3}), c).lambdas() == std::vector<double>{1.0 / 3.0});
}
