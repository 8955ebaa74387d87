#pragma once

#include <string>

#include <json.hpp>

#include "flagparam/density.hpp"

namespace flagparam::io {

using Json = nlohmann::json;

// Raised for documents that do not match the expected shape. `code` is the
// machine-readable identifier reported by the CLI (e.g. "PROFILE_SUM").
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// {"rows", "cols", "re", "im"}, row-major 2-D arrays.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json profile_to_json(const MultiplicityProfile& p);
MultiplicityProfile profile_from_json(const Json& j);

// {"chart": [sigma(1), ..., sigma(n)] (1-based), "X": MatrixJSON}
Json level_to_json(const FlagLevel& level);
FlagLevel level_from_json(const Json& j);

// {"n", "profile", "lambdas", "levels"}; "n" is optional on input.
Json params_to_json(const DensityParameters& params);
DensityParameters params_from_json(const Json& j,
                                   const Tolerances& tol = kDefaultTolerances);

// {"profile", "levels", "h_blocks"}
Json decomposition_to_json(const CosetDecomposition& dec);

Json parse(const std::string& text);
std::string dump(const Json& j);

}  // namespace flagparam::io
