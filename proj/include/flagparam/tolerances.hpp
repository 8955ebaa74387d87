#pragma once

#include <string_view>

namespace flagparam {

// Absolute thresholds shared by every module. Functions take a Tolerances
// value so tests can tighten or loosen individual entries.
struct Tolerances {
  double unitary = 1e-10;    // ||U*U - I||_F accepted as unitary
  double hermitian = 1e-12;  // ||A - A*||_F accepted as Hermitian
  double psd = 1e-10;        // eigenvalues in [-psd, 0) are clamped to 0
  double rank = 1e-8;        // sigma_min threshold for chart membership
  double gap = 1e-6;         // eigenvalue clustering threshold
};

inline constexpr Tolerances kDefaultTolerances{};

// Parses "key=value,key=value" with keys unitary, hermitian, psd, rank, gap,
// starting from `base`. Throws Error(InvalidArgument) on malformed input.
Tolerances parse_tolerances(std::string_view text,
                            Tolerances base = kDefaultTolerances);

}  // namespace flagparam
