#include "tcljc/matrix.hpp"

namespace tcljc {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector vectorize(const Matrix& rho) {
  require(rho.rows() == rho.cols(), "vectorize: square input required");
  const Eigen::Index d = rho.rows();
  Vector v(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) v[i * d + j] = rho(i, j);
  return v;
}

Matrix devectorize(const Vector& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
  require(d * d == v.size(), "devectorize: length is not a perfect square");
  Matrix rho(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) rho(i, j) = v[i * d + j];
  return rho;
}

Matrix left_mult(const Matrix& a) {
  return kron(a, Matrix::Identity(a.rows(), a.cols()));
}

Matrix right_mult(const Matrix& a) {
  return kron(Matrix::Identity(a.rows(), a.cols()), a.transpose());
}

Matrix sandwich(const Matrix& a, const Matrix& b) { return kron(a, b.transpose()); }

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex c = m(i, j);
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
  return true;
}

}  // namespace tcljc
