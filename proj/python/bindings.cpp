#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flagparam/density.hpp"
#include "flagparam/lie.hpp"
#include "flagparam/verify.hpp"

namespace py = pybind11;
using namespace flagparam;

namespace {

MultiplicityProfile to_profile(const std::vector<int>& ks) { return MultiplicityProfile(ks); }

ChartIndex to_chart(const std::vector<int>& images, Index k) {
  return ChartIndex::from_one_based(images, k);
}

py::list levels_out(const FlagCoordinates& c) {
  py::list out;
  for (const FlagLevel& lv : c.levels()) {
    out.append(py::make_tuple(lv.chart.one_based(), Matrix(lv.x.matrix())));
  }
  return out;
}

FlagCoordinates levels_in(const MultiplicityProfile& p,
                          const std::vector<std::pair<std::vector<int>, Matrix>>& levels) {
  std::vector<FlagLevel> out;
  for (const auto& [chart, x] : levels) {
    out.push_back({to_chart(chart, x.cols()), BallMatrix(x)});
  }
  return FlagCoordinates(p, std::move(out));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grassmann charts, coset decomposition and density-matrix parametrization";

  static py::exception<Error> exc(m, "FlagparamError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("haar_unitary", [](Index n, std::uint64_t seed) { return haar_unitary(n, seed).matrix(); },
        py::arg("n"), py::arg("seed"));
  m.def("w_of_x", [](const Matrix& x) { return W_of_X(ClosedBallMatrix(x)).matrix(); }, py::arg("x"));
  m.def("psi_sigma",
        [](const Matrix& p, Index k, const std::vector<int>& chart) {
          return Matrix(psi_sigma(GrassmannPoint(p, k), to_chart(chart, k)).matrix());
        },
        py::arg("projector"), py::arg("k"), py::arg("chart"));
  m.def("kappa_sigma",
        [](const Matrix& x, const std::vector<int>& chart) {
          return Matrix(kappa_sigma(BallMatrix(x), to_chart(chart, x.cols())).projector());
        },
        py::arg("x"), py::arg("chart"));
  m.def("chart_select",
        [](const Matrix& p, Index k) { return chart_select(GrassmannPoint(p, k)).one_based(); },
        py::arg("projector"), py::arg("k"));

  m.def("decompose",
        [](const Matrix& g, const std::vector<int>& profile) {
          const CosetDecomposition d = decompose(UnitaryMatrix(g), to_profile(profile));
          std::vector<Matrix> blocks;
          for (const UnitaryMatrix& b : d.h.blocks()) blocks.push_back(b.matrix());
          return py::make_tuple(levels_out(d.coords), blocks);
        },
        py::arg("g"), py::arg("profile"));
  m.def("reconstruct",
        [](const std::vector<int>& profile,
           const std::vector<std::pair<std::vector<int>, Matrix>>& levels,
           const std::vector<Matrix>& h_blocks) {
          const MultiplicityProfile p = to_profile(profile);
          std::vector<UnitaryMatrix> blocks;
          for (const Matrix& b : h_blocks) blocks.emplace_back(b);
          return reconstruct(levels_in(p, levels), BlockDiagonalUnitary(p, std::move(blocks))).matrix();
        },
        py::arg("profile"), py::arg("levels"), py::arg("h_blocks"));

  m.def("exp_k", [](const Matrix& b) { return exp_K(OffDiagonalGenerator(b)).matrix(); }, py::arg("b"));
  m.def("log_to_ball",
        [](const Matrix& b) {
          const BallFromGenerator r = log_to_ball(OffDiagonalGenerator(b));
          return py::make_tuple(Matrix(r.x.matrix()), r.principal_range);
        },
        py::arg("b"));
  m.def("ball_to_log", [](const Matrix& x) { return ball_to_log(BallMatrix(x)).b(); }, py::arg("x"));
  m.def("sqrt_i_minus_xxstar", [](const Matrix& x) { return sqrt_I_minus_XXstar(x).matrix(); },
        py::arg("x"));
  m.def("expm_reference", &expm_reference, py::arg("a"));

  m.def("jarlskog_matrix",
        [](double theta, const Vector& zeta) { return jarlskog_matrix(JarlskogLevel(theta, zeta)); },
        py::arg("theta"), py::arg("zeta"));
  m.def("ball_to_jarlskog",
        [](const Vector& x) {
          const JarlskogLevel lv = ball_to_jarlskog(x);
          return py::make_tuple(lv.theta, lv.zeta);
        },
        py::arg("x"));

  m.def("parametrize",
        [](const std::vector<int>& profile, const std::vector<double>& lambdas,
           const std::vector<std::pair<std::vector<int>, Matrix>>& levels) {
          const MultiplicityProfile p = to_profile(profile);
          return parametrize(DensityParameters(Spectrum(p, lambdas), levels_in(p, levels))).matrix();
        },
        py::arg("profile"), py::arg("lambdas"), py::arg("levels"));
  m.def("deparametrize",
        [](const Matrix& rho, double gap_tol) {
          Tolerances tol;
          tol.gap = gap_tol;
          const DensityParameters d = deparametrize(DensityMatrix(rho, tol), tol);
          return py::make_tuple(d.spectrum.profile().ks(), d.spectrum.lambdas(), levels_out(d.coords));
        },
        py::arg("rho"), py::arg("gap_tol") = kDefaultTolerances.gap);
  m.def("parameter_count", [](const std::vector<int>& profile) { return parameter_count(to_profile(profile)); },
        py::arg("profile"));

  m.def("run_verification",
        [](const std::string& suite) {
          py::list out;
          for (const PropertyResult& r : run_verification(suite)) {
            py::dict d;
            d["suite"] = r.suite;
            d["name"] = r.name;
            d["samples"] = r.samples;
            d["max_residual"] = r.max_residual;
            d["tolerance"] = r.tolerance;
            d["pass"] = r.pass;
            out.append(d);
          }
          return out;
        },
        py::arg("suite") = "all");
}
