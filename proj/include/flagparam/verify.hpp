#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace flagparam {

struct PropertyResult {
  std::string suite;
  std::string name;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Suites: unitarity, roundtrip, sections, lie, jarlskog, all. Every suite
// draws from fixed seeds. InvalidArgument for an unknown name.
std::vector<PropertyResult> run_verification(std::string_view suite);

const std::vector<std::string>& verification_suites();

nlohmann::json verification_report(std::string_view suite,
                                   const std::vector<PropertyResult>& results);

}  // namespace flagparam
