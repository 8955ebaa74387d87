#include "flagparam/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "flagparam/density.hpp"
#include "flagparam/lie.hpp"

namespace flagparam {

namespace {

using Sample = std::function<double(Rng&)>;

PropertyResult measure(std::string suite, std::string name, int samples,
                       double tol, std::uint64_t seed, const Sample& f) {
  Rng rng(seed);
  double worst = 0.0;
  bool finite = true;
  for (int i = 0; i < samples; ++i) {
    const double r = f(rng);
    if (!std::isfinite(r)) finite = false;
    worst = std::max(worst, r);
  }
  return {std::move(suite), std::move(name), samples, worst, tol,
          finite && worst <= tol};
}

Index draw(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

ChartIndex random_chart(Index n, Index k, Rng& rng) {
  const std::vector<ChartIndex> charts = enumerate_charts(n, k, ChartOrdering::Lexicographic);
  return charts[static_cast<std::size_t>(draw(rng, 0, static_cast<Index>(charts.size()) - 1))];
}

MultiplicityProfile random_profile(Index n, Rng& rng) {
  std::vector<int> ks;
  Index left = n;
  while (left > 0) {
    const Index k = draw(rng, 1, left);
    ks.push_back(static_cast<int>(k));
    left -= k;
  }
  return MultiplicityProfile(std::move(ks));
}

BlockDiagonalUnitary random_block_unitary(const MultiplicityProfile& p, Rng& rng) {
  std::vector<UnitaryMatrix> blocks;
  for (int k : p.ks()) blocks.push_back(haar_unitary(k, rng));
  return BlockDiagonalUnitary(p, std::move(blocks));
}

double coords_distance(const FlagCoordinates& a, const FlagCoordinates& b) {
  if (!(a.profile() == b.profile())) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.levels().size(); ++i) {
    if (!(a.levels()[i].chart == b.levels()[i].chart)) return INFINITY;
    worst = std::max(worst, (a.levels()[i].x.matrix() - b.levels()[i].x.matrix()).norm());
  }
  return worst;
}

Matrix left_sinc(const Matrix& b) {
  return apply_spectral(b * b.adjoint(), sinc_sqrt) * b;
}

void unitarity(std::vector<PropertyResult>& out) {
  out.push_back(measure("unitarity", "W(X) on the closed ball", 300, 1e-12, 101, [](Rng& rng) {
    const Index n = draw(rng, 2, 8);
    const Index k = draw(rng, 1, n - 1);
    const bool edge = uniform(rng) < 0.2;
    const Matrix x = random_ball_matrix(n - k, k, rng, 1.0, edge);
    return unitarity_residual(W_of_X(ClosedBallMatrix(x)).matrix());
  }));
  out.push_back(measure("unitarity", "exp_K(B), ||B|| <= 5", 200, 1e-11, 102, [](Rng& rng) {
    const Matrix b = random_ball_matrix(draw(rng, 1, 4), draw(rng, 1, 4), rng, 5.0);
    return unitarity_residual(exp_K(OffDiagonalGenerator(b)).matrix());
  }));
  out.push_back(measure("unitarity", "flag_section", 100, 1e-12, 103, [](Rng& rng) {
    const MultiplicityProfile p = random_profile(draw(rng, 2, 7), rng);
    const DensityParameters params = sample_parameters(p, rng);
    return unitarity_residual(flag_section(params.coords).matrix());
  }));
}

void roundtrip(std::vector<PropertyResult>& out) {
  out.push_back(measure("roundtrip", "psi o kappa", 200, 1e-10, 201, [](Rng& rng) {
    const Index n = draw(rng, 2, 6);
    const Index k = draw(rng, 1, n - 1);
    const ChartIndex sigma = random_chart(n, k, rng);
    const BallMatrix x(random_ball_matrix(n - k, k, rng, 0.95));
    return (psi_sigma(kappa_sigma(x, sigma), sigma).matrix() - x.matrix()).norm();
  }));
  out.push_back(measure("roundtrip", "kappa o psi", 200, 1e-10, 202, [](Rng& rng) {
    const Index n = draw(rng, 2, 6);
    const Index k = draw(rng, 1, n - 1);
    const GrassmannPoint p = pi2(pi1(haar_unitary(n, rng), k));
    const ChartIndex sigma = chart_select(p);
    return (kappa_sigma(psi_sigma(p, sigma), sigma).projector() - p.projector()).norm();
  }));
  out.push_back(measure("roundtrip", "reconstruct o decompose", 100, 1e-10, 203, [](Rng& rng) {
    const MultiplicityProfile p = random_profile(draw(rng, 1, 7), rng);
    const UnitaryMatrix g = haar_unitary(p.n(), rng);
    const CosetDecomposition d = decompose(g, p);
    return (reconstruct(d.coords, d.h).matrix() - g.matrix()).norm();
  }));
  out.push_back(measure("roundtrip", "coset invariance", 100, 1e-10, 204, [](Rng& rng) {
    const MultiplicityProfile p = random_profile(draw(rng, 2, 6), rng);
    const UnitaryMatrix g = haar_unitary(p.n(), rng);
    const UnitaryMatrix gv = g * random_block_unitary(p, rng).matrix();
    return coords_distance(decompose(g, p).coords, decompose(gv, p).coords);
  }));
  out.push_back(measure("roundtrip", "density rho-level", 100, 1e-10, 205, [](Rng& rng) {
    const MultiplicityProfile p = random_profile(draw(rng, 1, 6), rng);
    const DensityMatrix rho = parametrize(sample_parameters(p, rng));
    return (parametrize(deparametrize(rho)).matrix() - rho.matrix()).norm();
  }));
  out.push_back(measure("roundtrip", "density parameter-level", 100, 1e-9, 206, [](Rng& rng) {
    const MultiplicityProfile p = random_profile(draw(rng, 2, 6), rng);
    const Spectrum s = sample_spectrum(p, rng);
    // Interior coordinates: shrink every X of a Haar sample so ||X|| <= 0.95.
    const FlagCoordinates raw = decompose(haar_unitary(p.n(), rng), p).coords;
    std::vector<FlagLevel> levels;
    for (const FlagLevel& lv : raw.levels()) {
      levels.push_back({lv.chart, BallMatrix(lv.x.matrix() * (0.95 * uniform(rng)))});
    }
    const DensityParameters params(s, FlagCoordinates(p, std::move(levels)));
    const DensityParameters back = deparametrize(parametrize(params));
    double lam = 0.0;
    if (!(back.spectrum.profile() == p)) return double(INFINITY);
    for (std::size_t j = 0; j < s.lambdas().size(); ++j) {
      lam = std::max(lam, std::abs(back.spectrum.lambdas()[j] - s.lambdas()[j]));
    }
    return std::max(lam, coords_distance(back.coords, params.coords));
  }));
  out.push_back(measure("roundtrip", "affine chart", 100, 1e-10, 207, [](Rng& rng) {
    const BallMatrix x(random_ball_matrix(draw(rng, 1, 4), draw(rng, 1, 4), rng, 0.95));
    return (affine_to_ball(ball_to_affine(x)).matrix() - x.matrix()).norm();
  }));
}

void sections(std::vector<PropertyResult>& out) {
  out.push_back(measure("sections", "pi o global_section", 200, 1e-10, 301, [](Rng& rng) {
    const Index n = draw(rng, 2, 7);
    const Index k = draw(rng, 1, n - 1);
    const GrassmannPoint p = pi2(pi1(haar_unitary(n, rng), k));
    const Frame f = pi1(global_section(p), k);
    return (pi2(f).projector() - p.projector()).norm();
  }));
  out.push_back(measure("sections", "projective product spans P", 100, 1e-10, 302, [](Rng& rng) {
    const Index n = draw(rng, 3, 7);
    const Index k = draw(rng, 1, n - 1);
    const GrassmannPoint p = kappa_sigma(BallMatrix(random_ball_matrix(n - k, k, rng, 0.95)),
                                         ChartIndex::identity(n, k));
    const ProjectiveSection s = grassmann_section_via_projective(p);
    return (pi2(pi1(s.product, k)).projector() - p.projector()).norm();
  }));
  out.push_back(measure("sections", "projective structural zeros", 100, 1e-12, 303, [](Rng& rng) {
    const Index n = draw(rng, 3, 7);
    const Index k = draw(rng, 1, n - 1);
    const GrassmannPoint p = kappa_sigma(BallMatrix(random_ball_matrix(n - k, k, rng, 0.95)),
                                         ChartIndex::identity(n, k));
    const ProjectiveSection s = grassmann_section_via_projective(p);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.vectors.size(); ++i) {
      const Vector& x = s.vectors[i];
      for (Index r = n - k; r < x.size(); ++r) worst = std::max(worst, std::abs(x(r)));
      const Matrix& t = s.triangular_blocks[i];
      for (Index r = 0; r < t.rows(); ++r) {
        for (Index c = r + 1; c < t.cols(); ++c) worst = std::max(worst, std::abs(t(r, c)));
      }
    }
    return worst;
  }));
  out.push_back(measure("sections", "density section independence", 100, 1e-12, 304, [](Rng& rng) {
    const MultiplicityProfile p = random_profile(draw(rng, 2, 6), rng);
    const DensityParameters params = sample_parameters(p, rng);
    const Matrix u = flag_section(params.coords).matrix();
    const Matrix uh = u * random_block_unitary(p, rng).matrix().matrix();
    const Matrix d = params.spectrum.diagonal().cast<Complex>().asDiagonal();
    return (u * d * u.adjoint() - uh * d * uh.adjoint()).norm();
  }));
}

void lie(std::vector<PropertyResult>& out) {
  out.push_back(measure("lie", "exp_K vs expm_reference", 200, 1e-9, 401, [](Rng& rng) {
    const OffDiagonalGenerator gen(random_ball_matrix(draw(rng, 1, 4), draw(rng, 1, 4), rng, 2.0));
    return (exp_K(gen).matrix() - expm_reference(gen.k_matrix())).norm();
  }));
  out.push_back(measure("lie", "exp_K = W(log_to_ball) on the principal range", 200, 1e-10, 402,
                        [](Rng& rng) {
    const OffDiagonalGenerator gen(random_ball_matrix(draw(rng, 1, 4), draw(rng, 1, 4), rng, 1.5));
    const BallFromGenerator x = log_to_ball(gen);
    return (exp_K(gen).matrix() - W_of_X(x.x).matrix()).norm();
  }));
  out.push_back(measure("lie", "log_to_ball o ball_to_log", 200, 1e-10, 403, [](Rng& rng) {
    const BallMatrix x(random_ball_matrix(draw(rng, 1, 4), draw(rng, 1, 4), rng, 0.99));
    return (log_to_ball(ball_to_log(x)).x.matrix() - x.matrix()).norm();
  }));
  out.push_back(measure("lie", "B sinc(B*B) = sinc(BB*) B", 200, 1e-11, 404, [](Rng& rng) {
    const OffDiagonalGenerator gen(random_ball_matrix(draw(rng, 1, 4), draw(rng, 1, 4), rng, 2.0));
    const Matrix right = exp_K(gen).matrix().topRightCorner(gen.k1(), gen.k2());
    return (right - left_sinc(gen.b())).norm();
  }));
  out.push_back(measure("lie", "sqrt(I - XX*) vs hermitian_sqrt", 200, 1e-10, 405, [](Rng& rng) {
    const Index k2 = draw(rng, 1, 3);
    const Matrix x = random_ball_matrix(draw(rng, k2, 5), k2, rng, 0.99);
    const Matrix i_xx = Matrix::Identity(x.rows(), x.rows()) - x * x.adjoint();
    return (sqrt_I_minus_XXstar(x).matrix() - hermitian_sqrt(HermitianMatrix(i_xx, 1e-12)).matrix())
        .norm();
  }));
}

void jarlskog(std::vector<PropertyResult>& out) {
  out.push_back(measure("jarlskog", "W(sin t z) = V(t, z) entrywise", 200, 1e-12, 501, [](Rng& rng) {
    const JarlskogLevel lv(uniform(rng, 0.0, std::numbers::pi / 2), random_unit_vector(draw(rng, 1, 6), rng));
    const Matrix w = W_of_X(ClosedBallMatrix(jarlskog_to_ball(lv))).matrix();
    return (w - jarlskog_matrix(lv)).cwiseAbs().maxCoeff();
  }));
  out.push_back(measure("jarlskog", "ball_to_jarlskog o jarlskog_to_ball", 200, 1e-12, 502,
                        [](Rng& rng) {
    const Vector x = random_ball_matrix(draw(rng, 1, 6), 1, rng, 0.99).col(0);
    return (jarlskog_to_ball(ball_to_jarlskog(x)) - x).norm();
  }));
}

}  // namespace

const std::vector<std::string>& verification_suites() {
  static const std::vector<std::string> names{"unitarity", "roundtrip", "sections", "lie",
                                              "jarlskog", "all"};
  return names;
}

std::vector<PropertyResult> run_verification(std::string_view suite) {
  std::vector<PropertyResult> out;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "unitarity") { unitarity(out); known = true; }
  if (all || suite == "roundtrip") { roundtrip(out); known = true; }
  if (all || suite == "sections") { sections(out); known = true; }
  if (all || suite == "lie") { lie(out); known = true; }
  if (all || suite == "jarlskog") { jarlskog(out); known = true; }
  if (!known) {
    fail(ErrorCode::InvalidArgument, "unknown suite \"" + std::string(suite) + "\"");
  }
  return out;
}

nlohmann::json verification_report(std::string_view suite,
                                   const std::vector<PropertyResult>& results) {
  nlohmann::json props = nlohmann::json::array();
  bool pass = true;
  for (const PropertyResult& r : results) {
    pass = pass && r.pass;
    props.push_back({{"suite", r.suite},
                     {"name", r.name},
                     {"samples", r.samples},
                     {"max_residual", std::isfinite(r.max_residual)
                                          ? nlohmann::json(r.max_residual)
                                          : nlohmann::json("inf")},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass}});
  }
  return {{"suite", std::string(suite)}, {"pass", pass}, {"properties", std::move(props)}};
}

}  // namespace flagparam
