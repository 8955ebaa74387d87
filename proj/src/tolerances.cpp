#include "flagparam/tolerances.hpp"

#include <string>

#include "flagparam/errors.hpp"

namespace flagparam {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_positive(std::string_view key, std::string_view text) {
  std::string buf(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(buf, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != buf.size() || !(v > 0.0)) {
    fail(ErrorCode::InvalidArgument,
         "tolerance '" + std::string(key) + "' needs a positive number, got '" +
             buf + "'");
  }
  return v;
}

}  // namespace

Tolerances parse_tolerances(std::string_view text, Tolerances base) {
  Tolerances out = base;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{}
                                           : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::InvalidArgument,
           "tolerance entry '" + std::string(item) + "' is not key=value");
    }
    const std::string_view key = trim(item.substr(0, eq));
    const double value = parse_positive(key, trim(item.substr(eq + 1)));
    if (key == "unitary") {
      out.unitary = value;
    } else if (key == "hermitian") {
      out.hermitian = value;
    } else if (key == "psd") {
      out.psd = value;
    } else if (key == "rank") {
      out.rank = value;
    } else if (key == "gap") {
      out.gap = value;
    } else {
      fail(ErrorCode::InvalidArgument,
           "unknown tolerance key '" + std::string(key) + "'");
    }
  }
  return out;
}

}  // namespace flagparam
