#include "tcljc/operators.hpp"

#include <cmath>

namespace tcljc {

FockConfig FockConfig::auto_for(Complex z, double guard) {
  const double az = std::abs(z);
  return FockConfig(int(std::ceil(az * az + 6.0 * az + 10.0)), guard);
}

Matrix annihilation_op(const FockConfig& fock) {
  const int d = fock.boson_dim();
  Matrix b = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(double(n));
  return b;
}

std::pair<Matrix, Matrix> atom_ops() {
  Matrix sm = Matrix::Zero(2, 2);
  sm(0, 1) = 1.0;  // sigma^- |1> = |0>
  return {sm.adjoint(), sm};
}

CoherentState coherent_state(Complex z, const FockConfig& fock) {
  const int d = fock.boson_dim();
  Vector v(d);
  // amplitudes e^{-|z|^2/2} z^n / sqrt(n!), built recursively
  Complex amp = std::exp(-std::norm(z) / 2.0);
  for (int n = 0; n < d; ++n) {
    v[n] = amp;
    amp *= z / std::sqrt(double(n + 1));
  }
  const double kept = v.squaredNorm();
  const double tail = std::max(0.0, 1.0 - kept);
  if (tail > fock.occupancy_guard)
    throw TruncationError("coherent_state: truncated tail weight " + std::to_string(tail) +
                          " exceeds occupancy guard");
  v /= std::sqrt(kept);
  return {v, tail};
}

Matrix partial_trace_boson(const Matrix& rho_full, const FockConfig& fock) {
  const int nb = fock.boson_dim();
  require(rho_full.rows() == 2 * nb && rho_full.cols() == 2 * nb,
          "partial_trace_boson: dimension mismatch");
  Matrix red = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int n = 0; n < nb; ++n) red(i, j) += rho_full(i * nb + n, j * nb + n);
  return red;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff();
}

}  // namespace tcljc
