#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "flagparam/errors.hpp"
#include "flagparam/tolerances.hpp"

namespace flagparam {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

bool all_finite(const Matrix& m);

// Throws NonFinite if any entry is NaN or Inf, InvalidArgument if empty.
void require_finite(const Matrix& m, std::string_view what);

// Square complex matrix with ||M*M - I||_F <= tol, checked at construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix m, double tol = kDefaultTolerances.unitary);

  static UnitaryMatrix identity(Index n);

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  UnitaryMatrix adjoint() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& a,
                                 const UnitaryMatrix& b);

 private:
  struct Trusted {};
  UnitaryMatrix(Matrix m, Trusted) : m_(std::move(m)) {}
  Matrix m_;
};

// Square complex matrix with ||M - M*||_F <= tol. The stored matrix is
// symmetrized, so it is exactly Hermitian.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m,
                           double tol = kDefaultTolerances.hermitian);

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

double unitarity_residual(const Matrix& u);
double hermiticity_residual(const Matrix& a);

// Square root of a PSD Hermitian matrix through its eigendecomposition.
// Eigenvalues in [-psd_tol, 0) are clamped to zero; anything lower is NotPSD.
HermitianMatrix hermitian_sqrt(const HermitianMatrix& a,
                               double psd_tol = kDefaultTolerances.psd);

struct PolarFactors {
  UnitaryMatrix unitary;    // U with Y* = U P, equivalently Y = P U*
  HermitianMatrix modulus;  // P = |Y*| = (Y Y*)^{1/2}
};

// Polar decomposition of Y* computed from the SVD Y* = V S W*:
// U = V W*, P = W S W*. SingularInput if sigma_min(Y) <= rank_tol.
PolarFactors polar_unitary(const Matrix& y,
                           double rank_tol = kDefaultTolerances.rank);

struct Triangularization {
  UnitaryMatrix unitary;  // U with Y U = T
  Matrix lower;           // T lower triangular, real positive diagonal
};

// Gram-Schmidt on the rows y_1..y_k of Y: u_j = x_j/|x_j| with
// x_j = y_j - sum_{i<j} (y_j, u_i) u_i, U = (u_1^*, ..., u_k^*).
// SingularInput if some |x_j| <= rank_tol.
Triangularization lower_triangularize(
    const Matrix& y, double rank_tol = kDefaultTolerances.rank);

// Matrix exponential by scaling and squaring of a truncated Taylor series.
Matrix expm_reference(const Matrix& a);

// Haar-distributed unitary: QR of a standard complex Gaussian matrix with
// the phases of diag(R) absorbed into Q.
UnitaryMatrix haar_unitary(Index n, std::uint64_t seed);

}  // namespace flagparam
