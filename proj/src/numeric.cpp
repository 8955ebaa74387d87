#include "flagparam/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flagparam/random.hpp"

namespace flagparam {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotInBall: return "NotInBall";
    case ErrorCode::NotDensity: return "NotDensity";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::SingularInput: return "SingularInput";
    case ErrorCode::OutOfChart: return "OutOfChart";
    case ErrorCode::NoChart: return "NoChart";
    case ErrorCode::GapAmbiguity: return "GapAmbiguity";
  }
  return "Unknown";
}

bool all_finite(const Matrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

void require_finite(const Matrix& m, std::string_view what) {
  if (m.rows() < 1 || m.cols() < 1) {
    fail(ErrorCode::InvalidArgument, std::string(what) + ": empty matrix");
  }
  if (!all_finite(m)) {
    fail(ErrorCode::NonFinite, std::string(what) + ": non-finite entry");
  }
}

double unitarity_residual(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

double hermiticity_residual(const Matrix& a) {
  return (a - a.adjoint()).norm();
}

UnitaryMatrix::UnitaryMatrix(Matrix m, double tol) : m_(std::move(m)) {
  require_finite(m_, "UnitaryMatrix");
  if (m_.rows() != m_.cols()) {
    fail(ErrorCode::ShapeMismatch, "UnitaryMatrix: matrix is not square");
  }
  const double r = unitarity_residual(m_);
  if (!(r <= tol)) {
    fail(ErrorCode::NotUnitary,
         "UnitaryMatrix: ||U*U - I||_F = " + std::to_string(r));
  }
}

UnitaryMatrix UnitaryMatrix::identity(Index n) {
  return UnitaryMatrix(Matrix::Identity(n, n), Trusted{});
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(Matrix(m_.adjoint()), Trusted{});
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) {
    fail(ErrorCode::ShapeMismatch, "UnitaryMatrix product: size mismatch");
  }
  return UnitaryMatrix(Matrix(a.m_ * b.m_), UnitaryMatrix::Trusted{});
}

HermitianMatrix::HermitianMatrix(const Matrix& m, double tol) {
  require_finite(m, "HermitianMatrix");
  if (m.rows() != m.cols()) {
    fail(ErrorCode::ShapeMismatch, "HermitianMatrix: matrix is not square");
  }
  const double r = hermiticity_residual(m);
  if (!(r <= tol)) {
    fail(ErrorCode::NotHermitian,
         "HermitianMatrix: ||A - A*||_F = " + std::to_string(r));
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix hermitian_sqrt(const HermitianMatrix& a, double psd_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a.matrix());
  Eigen::VectorXd w = eig.eigenvalues();
  if (w.minCoeff() < -psd_tol) {
    fail(ErrorCode::NotPSD, "hermitian_sqrt: eigenvalue " +
                                std::to_string(w.minCoeff()) + " below -psd_tol");
  }
  w = w.cwiseMax(0.0).cwiseSqrt();
  const Matrix& v = eig.eigenvectors();
  return HermitianMatrix(v * w.asDiagonal() * v.adjoint(), 1e-8);
}

PolarFactors polar_unitary(const Matrix& y, double rank_tol) {
  require_finite(y, "polar_unitary");
  if (y.rows() != y.cols()) {
    fail(ErrorCode::ShapeMismatch, "polar_unitary: matrix is not square");
  }
  const Matrix ys = y.adjoint();
  Eigen::JacobiSVD<Matrix> svd(ys, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (!(s.minCoeff() > rank_tol)) {
    fail(ErrorCode::SingularInput,
         "polar_unitary: sigma_min = " + std::to_string(s.minCoeff()));
  }
  const Matrix& v = svd.matrixU();
  const Matrix& w = svd.matrixV();
  Matrix u = v * w.adjoint();
  Matrix p = w * s.asDiagonal() * w.adjoint();
  return {UnitaryMatrix(std::move(u)), HermitianMatrix(p, 1e-8)};
}

Triangularization lower_triangularize(const Matrix& y, double rank_tol) {
  require_finite(y, "lower_triangularize");
  if (y.rows() != y.cols()) {
    fail(ErrorCode::ShapeMismatch, "lower_triangularize: matrix is not square");
  }
  const Index k = y.rows();
  // Rows of `u_rows` are u_1..u_k. The row inner product is
  // (z, z') = sum_j z_j conj(z'_j) = z * z'^*.
  Matrix u_rows(k, k);
  Matrix t = Matrix::Zero(k, k);
  for (Index j = 0; j < k; ++j) {
    Eigen::RowVectorXcd x = y.row(j);
    // Two Gram-Schmidt passes; the second removes what roundoff left behind.
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < j; ++i) {
        const Complex proj = (x * u_rows.row(i).adjoint())(0, 0);
        x -= proj * u_rows.row(i);
      }
    }
    const double norm = x.norm();
    if (!(norm > rank_tol)) {
      fail(ErrorCode::SingularInput,
           "lower_triangularize: |x_" + std::to_string(j + 1) +
               "| = " + std::to_string(norm));
    }
    u_rows.row(j) = x / norm;
    for (Index i = 0; i < j; ++i) {
      t(j, i) = (y.row(j) * u_rows.row(i).adjoint())(0, 0);
    }
    t(j, j) = norm;
  }
  return {UnitaryMatrix(Matrix(u_rows.adjoint())), std::move(t)};
}

Matrix expm_reference(const Matrix& a) {
  require_finite(a, "expm_reference");
  if (a.rows() != a.cols()) {
    fail(ErrorCode::ShapeMismatch, "expm_reference: matrix is not square");
  }
  const Index n = a.rows();
  // Scale so ||A / 2^s||_1 <= 1/2, then sum Taylor terms to convergence.
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  }
  const Matrix scaled = a / std::ldexp(1.0, squarings);
  Matrix sum = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int j = 1; j <= 40; ++j) {
    term = term * scaled / static_cast<double>(j);
    sum += term;
    if (term.norm() <= 1e-18 * sum.norm()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

UnitaryMatrix haar_unitary(Index n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(n, rng);
}

}  // namespace flagparam
