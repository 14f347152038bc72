#pragma once

#include <string>

#include "tcljc/operators.hpp"

namespace tcljc {

struct ModelParams {
  double omega_a = 1.3;
  double omega_c = 1.0;
  double gamma = 0.4;
  Complex g = 0.2;
  Complex z = 1.0;
  double lambda = 0.05;

  double delta_omega() const { return omega_a - omega_c; }
  Complex Gamma() const { return Complex(gamma / 2.0, -delta_omega()); }
  double gamma_abs2() const {
    return delta_omega() * delta_omega() + gamma * gamma / 4.0;
  }
  void require_nondegenerate() const {
    if (std::abs(Gamma()) < 1e-12)
      throw DegenerateGamma("|Gamma| < 1e-12: gamma > 0 or detuning required");
  }
};

/// Dense matrix acting on row-stacked vectorized density matrices.
struct SuperOperator {
  int dim;  // underlying Hilbert dimension D; matrix is D^2 x D^2
  Matrix m;
  std::string label;

  SuperOperator(int d, Matrix mat, std::string lbl = {})
      : dim(d), m(std::move(mat)), label(std::move(lbl)) {
    require(m.rows() == Eigen::Index(d) * d && m.cols() == m.rows(),
            "SuperOperator: matrix must be D^2 x D^2");
  }
};

/// 4x4 linear map on vectorized 2x2 atom density matrices.
struct ReducedMap {
  Matrix4 m = Matrix4::Zero();
  double time = 0.0;  // +infinity encodes the t -> inf evaluation mode
  int order = 0;

  Matrix2 apply(const Matrix2& rho) const {
    Eigen::Vector4cd v;
    v << rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1);
    Eigen::Vector4cd w = m * v;
    Matrix2 out;
    out << w[0], w[1], w[2], w[3];
    return out;
  }
};

struct FreeGenerator {
  SuperOperator full;    // L0 on the composite space
  Matrix atom;           // 4x4 factor L0_A
  Matrix boson;          // N_B^2 x N_B^2 factor L0_B
};

/// L0 = -i[H_A + H_B, .] + gamma (b . b^dag - 1/2 {b^dag b, .}), assembled
/// via the vectorization sandwich identity, plus its exact tensor factors.
FreeGenerator build_L0(const ModelParams& p, const FockConfig& fock);

/// L = -i[g sigma^+ b + conj(g) sigma^- b^dag, .]; the lambda factor is
/// applied at use sites, never here.
SuperOperator build_L_int(const ModelParams& p, const FockConfig& fock);

enum class InteractionMethod { conjugation, heisenberg };

/// Interaction-picture generator L(t) = e^{-L0 t} L e^{L0 t}, either by
/// direct expm conjugation or from the closed-form Heisenberg solutions of
/// the doubled boson operators. Conjugation grows like e^{gamma t} and is
/// refused past t*gamma = 8.
SuperOperator interaction_L_t(const ModelParams& p, const FockConfig& fock, double t,
                              InteractionMethod method);

/// Reduce a full-space superoperator through the coherent-state projector:
/// M vec(rho_A) = vec( tr_B[ op (rho_A (x) |z><z|) ] ).
ReducedMap projector_apply(const SuperOperator& op, const ModelParams& p,
                           const FockConfig& fock);

/// Closed-form pseudoinverse X1 with [L0, X1] = L (away from the
/// truncation edge).
SuperOperator build_X1(const ModelParams& p, const FockConfig& fock);

struct CommutatorSolution {
  SuperOperator x;
  double relative_residual;
};

/// Least-squares minimum-norm solve of [L0, X] = rhs via the Kronecker
/// system (I (x) L0 - L0^T (x) I). Dense O(D^6); intended for small cutoffs.
/// Throws RankDeficiencyError if the relative residual exceeds 1e-6.
CommutatorSolution solve_commutator(const SuperOperator& l0, const SuperOperator& rhs);

/// Entrywise mask that zeroes superoperator rows/columns touching the top
/// two Fock levels, where truncation breaks b/b^dag identities.
Matrix truncation_safe_mask(const FockConfig& fock);

// ---- fast application path -------------------------------------------------

/// Applies L0 and L to D x D matrices without forming D^2 x D^2 operators.
class LiouvilleAction {
 public:
  LiouvilleAction(const ModelParams& p, const FockConfig& fock);

  int dim() const { return d_; }
  /// out = -i[H0, x] + gamma (b x b^dag - 1/2 {b^dag b, x})
  void apply_L0(const Matrix& x, Matrix& out) const;
  /// out += -i[H_I, x]
  void add_L(const Matrix& x, Matrix& out) const;

  const Matrix& hamiltonian_free() const { return h0_; }
  const Matrix& hamiltonian_int() const { return hi_; }
  const Matrix& b_full() const { return b_; }

 private:
  int d_;
  double gamma_;
  Matrix h0_, hi_, b_, bd_, nb_;  // nb_ = b^dag b
};

}  // namespace tcljc
