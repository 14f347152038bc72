#pragma once

#include "tcljc/matrix.hpp"

namespace tcljc {

/// Truncated Fock-space configuration. `cutoff` is the highest retained
/// level, so the boson space has dimension cutoff + 1.
struct FockConfig {
  int cutoff;
  double occupancy_guard = 1e-10;

  FockConfig(int cutoff_, double guard = 1e-10) : cutoff(cutoff_), occupancy_guard(guard) {
    if (cutoff < 1) throw DimensionError("FockConfig: cutoff >= 1 required");
  }

  int boson_dim() const { return cutoff + 1; }
  int full_dim() const { return 2 * (cutoff + 1); }

  /// cutoff = ceil(|z|^2 + 6|z| + 10): Poisson mean plus six standard
  /// deviations, padded.
  static FockConfig auto_for(Complex z, double guard = 1e-10);
};

/// b with entries b(n-1, n) = sqrt(n).
Matrix annihilation_op(const FockConfig& fock);

/// (sigma^+, sigma^-), basis |0> = ground, |1> = excited.
std::pair<Matrix, Matrix> atom_ops();

struct CoherentState {
  Vector amplitudes;   // renormalized after truncation
  double tail_weight;  // discarded pre-normalization weight
};

/// Truncated coherent state. Throws TruncationError if the discarded tail
/// exceeds the occupancy guard.
CoherentState coherent_state(Complex z, const FockConfig& fock);

/// Trace over the boson factor of a 2(N_F+1)-dimensional state; atom index
/// is the slow one.
Matrix partial_trace_boson(const Matrix& rho_full, const FockConfig& fock);

/// Hermitian-within-tolerance, unit-trace density matrix carrier.
struct DensityMatrix {
  Matrix m;

  explicit DensityMatrix(Matrix mat) : m(std::move(mat)) {
    require(m.rows() == m.cols(), "DensityMatrix: square required");
  }
  double trace_deviation() const { return std::abs(m.trace() - Complex(1.0)); }
  double hermiticity_deviation() const {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
  }
  double min_eigenvalue() const;
};

}  // namespace tcljc
