#include "flagparam/serialize.hpp"

#include <cmath>

namespace flagparam::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw SchemaError("SCHEMA", what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field \"") + key + "\"");
  return *it;
}

Index count_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    schema(std::string("\"") + key + "\" must be a non-negative integer");
  }
  return static_cast<Index>(v.get<long long>());
}

Eigen::MatrixXd real_grid(const Json& v, Index rows, Index cols, const char* key) {
  if (!v.is_array() || static_cast<Index>(v.size()) != rows) {
    schema(std::string("\"") + key + "\" must have `rows` rows");
  }
  Eigen::MatrixXd out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = v[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      schema(std::string("\"") + key + "\" must have `cols` columns");
    }
    for (Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number()) schema(std::string("\"") + key + "\" entries must be numbers");
      out(r, c) = e.get<double>();
      if (!std::isfinite(out(r, c))) {
        throw SchemaError("NON_FINITE", "matrix entries must be finite");
      }
    }
  }
  return out;
}

Json real_rows(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  return Json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"re", real_rows(m.real())},
              {"im", real_rows(m.imag())}};
}

Matrix matrix_from_json(const Json& j) {
  const Index rows = count_field(j, "rows");
  const Index cols = count_field(j, "cols");
  if (rows < 1 || cols < 1) schema("matrix must be at least 1 x 1");
  const Eigen::MatrixXd re = real_grid(field(j, "re"), rows, cols, "re");
  const Eigen::MatrixXd im = real_grid(field(j, "im"), rows, cols, "im");
  Matrix m(rows, cols);
  m.real() = re;
  m.imag() = im;
  return m;
}

Json profile_to_json(const MultiplicityProfile& p) { return Json(p.ks()); }

MultiplicityProfile profile_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) schema("\"profile\" must be a non-empty array");
  std::vector<int> ks;
  for (const Json& e : j) {
    if (!e.is_number_integer() || e.get<long long>() < 1) {
      schema("\"profile\" entries must be positive integers");
    }
    ks.push_back(e.get<int>());
  }
  return MultiplicityProfile(std::move(ks));
}

Json level_to_json(const FlagLevel& level) {
  return Json{{"chart", level.chart.one_based()}, {"X", matrix_to_json(level.x.matrix())}};
}

FlagLevel level_from_json(const Json& j) {
  const Json& chart = field(j, "chart");
  if (!chart.is_array()) schema("\"chart\" must be an array");
  std::vector<int> images;
  for (const Json& e : chart) {
    if (!e.is_number_integer()) schema("\"chart\" entries must be integers");
    images.push_back(e.get<int>());
  }
  Matrix x = matrix_from_json(field(j, "X"));
  try {
    ChartIndex sigma = ChartIndex::from_one_based(images, x.cols());
    return {std::move(sigma), BallMatrix(std::move(x))};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotInBall) throw SchemaError("NOT_BALL", e.what());
    throw SchemaError("BAD_CHART", e.what());
  }
}

Json params_to_json(const DensityParameters& params) {
  Json levels = Json::array();
  for (const FlagLevel& lv : params.coords.levels()) levels.push_back(level_to_json(lv));
  return Json{{"n", params.spectrum.profile().n()},
              {"profile", profile_to_json(params.spectrum.profile())},
              {"lambdas", params.spectrum.lambdas()},
              {"levels", std::move(levels)}};
}

DensityParameters params_from_json(const Json& j, const Tolerances& tol) {
  MultiplicityProfile profile = profile_from_json(field(j, "profile"));
  if (j.contains("n") && count_field(j, "n") != profile.n()) {
    throw SchemaError("PROFILE_SUM", "profile sums to " + std::to_string(profile.n()) +
                                         ", not n = " +
                                         std::to_string(count_field(j, "n")));
  }
  const Json& lj = field(j, "lambdas");
  if (!lj.is_array()) schema("\"lambdas\" must be an array");
  std::vector<double> lambdas;
  for (const Json& e : lj) {
    if (!e.is_number()) schema("\"lambdas\" entries must be numbers");
    lambdas.push_back(e.get<double>());
  }
  const Json& levels_json = field(j, "levels");
  if (!levels_json.is_array()) schema("\"levels\" must be an array");
  std::vector<FlagLevel> levels;
  for (const Json& e : levels_json) levels.push_back(level_from_json(e));
  Spectrum spectrum(profile, std::move(lambdas), tol.gap);
  return {std::move(spectrum), FlagCoordinates(profile, std::move(levels))};
}

Json decomposition_to_json(const CosetDecomposition& dec) {
  Json levels = Json::array();
  for (const FlagLevel& lv : dec.coords.levels()) levels.push_back(level_to_json(lv));
  Json blocks = Json::array();
  for (const UnitaryMatrix& b : dec.h.blocks()) blocks.push_back(matrix_to_json(b.matrix()));
  return Json{{"profile", profile_to_json(dec.coords.profile())},
              {"levels", std::move(levels)},
              {"h_blocks", std::move(blocks)}};
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("PARSE_ERROR", e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace flagparam::io
