#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tcljc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

// ---- error types -----------------------------------------------------------

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateGamma : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StepSizeUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RankDeficiencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- basic algebra ---------------------------------------------------------

/// Kronecker product. Composite index convention: row = i_a * b.rows() + i_b,
/// i.e. the left (atom) factor is the slow index.
Matrix kron(const Matrix& a, const Matrix& b);

/// Row-stacking vectorization: v[i*d + j] = rho(i, j), so that
/// vectorize(A rho B) = kron(A, B^T) * vectorize(rho).
Vector vectorize(const Matrix& rho);

/// Exact inverse of vectorize. The input length must be a perfect square.
Matrix devectorize(const Vector& v);

/// Superoperator for rho -> A rho.
Matrix left_mult(const Matrix& a);
/// Superoperator for rho -> rho A.
Matrix right_mult(const Matrix& a);
/// Superoperator for rho -> A rho B.
Matrix sandwich(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& m);

inline void require(bool cond, const char* what) {
  if (!cond) throw DimensionError(what);
}

}  // namespace tcljc
