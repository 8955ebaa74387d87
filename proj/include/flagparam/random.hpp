#pragma once

#include <random>
#include <vector>

#include "flagparam/numeric.hpp"

namespace flagparam {

using Rng = std::mt19937_64;

// Entries are independent with real and imaginary parts ~ N(0, 1/2).
Matrix gaussian_matrix(Index rows, Index cols, Rng& rng);

UnitaryMatrix haar_unitary(Index n, Rng& rng);

// Random X with ||X||_2 = radius * u, u ~ U(0, 1) (or exactly `radius` when
// on_boundary is set). Directions come from a Gaussian matrix.
Matrix random_ball_matrix(Index rows, Index cols, Rng& rng,
                          double radius = 1.0, bool on_boundary = false);

// Unit vector in C^dim.
Vector random_unit_vector(Index dim, Rng& rng);

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);

}  // namespace flagparam
