#include "tcljc/model.hpp"

#include "tcljc/expm.hpp"

namespace tcljc {
namespace {

const Complex kI(0.0, 1.0);

Matrix commutator_super(const Matrix& h) {
  return -kI * (left_mult(h) - right_mult(h));
}

Matrix dissipator_super(const Matrix& jump, double rate) {
  const Matrix jdj = jump.adjoint() * jump;
  return rate * (sandwich(jump, jump.adjoint()) - 0.5 * left_mult(jdj) - 0.5 * right_mult(jdj));
}

struct Ops {
  Matrix sp, sm, b, bd, i2, ib;
  Matrix SP, SM, B, BD;  // embedded in the composite space, atom factor first

  explicit Ops(const FockConfig& fock) {
    std::tie(sp, sm) = atom_ops();
    b = annihilation_op(fock);
    bd = b.adjoint();
    i2 = Matrix::Identity(2, 2);
    ib = Matrix::Identity(fock.boson_dim(), fock.boson_dim());
    SP = kron(sp, ib);
    SM = kron(sm, ib);
    B = kron(i2, b);
    BD = kron(i2, bd);
  }
};

}  // namespace

FreeGenerator build_L0(const ModelParams& p, const FockConfig& fock) {
  const Ops o(fock);
  const Matrix ha = p.omega_a * o.sp * o.sm;
  const Matrix hb = p.omega_c * o.bd * o.b;
  const Matrix h0 = kron(ha, o.ib) + kron(o.i2, hb);
  Matrix full = commutator_super(h0) + dissipator_super(o.B, p.gamma);
  Matrix atom = commutator_super(ha);
  Matrix boson = commutator_super(hb) + dissipator_super(o.b, p.gamma);
  return {SuperOperator(fock.full_dim(), std::move(full), "L0"), std::move(atom),
          std::move(boson)};
}

SuperOperator build_L_int(const ModelParams& p, const FockConfig& fock) {
  const Ops o(fock);
  const Matrix hi = p.g * o.SP * o.B + std::conj(p.g) * o.SM * o.BD;
  return SuperOperator(fock.full_dim(), commutator_super(hi), "L");
}

SuperOperator interaction_L_t(const ModelParams& p, const FockConfig& fock, double t,
                              InteractionMethod method) {
  if (method == InteractionMethod::conjugation) {
    if (t * p.gamma > 8.0)
      throw ConditioningError("interaction_L_t: t*gamma beyond conditioning bound 8");
    const FreeGenerator l0 = build_L0(p, fock);
    const SuperOperator l = build_L_int(p, fock);
    Matrix m = expm(-t * l0.full.m) * l.m * expm(t * l0.full.m);
    return SuperOperator(fock.full_dim(), std::move(m), "L(t) conjugation");
  }

  // Heisenberg closed forms. In the row-stacking convention the paper's
  // doubled operators read: b_l = (b .), b_l^dag = (b^dag .),
  // b_r = (. b^dag), b_r^dag = (. b); sigma_r^+ = (. sigma^-),
  // sigma_r^- = (. sigma^+).
  const Ops o(fock);
  const double dw = p.delta_omega(), gam = p.gamma;
  const Complex half(gam / 2.0, 0.0);
  const Complex edn = std::exp(-(half - kI * dw) * t);   // e^{-(g/2 - i dw) t}
  const Complex edp = std::exp(-(half + kI * dw) * t);   // e^{-(g/2 + i dw) t}
  const Complex eun = std::exp((half - kI * dw) * t);    // e^{+(g/2 - i dw) t}
  const Complex eup = std::exp((half + kI * dw) * t);    // e^{+(g/2 + i dw) t}
  const Complex depl = 1.0 - std::exp(gam * t);

  const Matrix bl = left_mult(o.B);
  const Matrix bld = left_mult(o.BD);
  const Matrix br = right_mult(o.BD);
  const Matrix brd = right_mult(o.B);

  const Matrix Bl = edn * bl;
  const Matrix Br = edp * br;
  const Matrix Bld = eun * bld + edp * depl * br;
  const Matrix Brd = eup * brd + edn * depl * bl;

  const Matrix sl_p = left_mult(o.SP);
  const Matrix sl_m = left_mult(o.SM);
  const Matrix sr_p = right_mult(o.SM);
  const Matrix sr_m = right_mult(o.SP);

  Matrix m = -kI * p.g * sl_p * Bl - kI * std::conj(p.g) * sl_m * Bld +
             kI * std::conj(p.g) * sr_p * Br + kI * p.g * sr_m * Brd;
  return SuperOperator(fock.full_dim(), std::move(m), "L(t) heisenberg");
}

ReducedMap projector_apply(const SuperOperator& op, const ModelParams& p,
                           const FockConfig& fock) {
  require(op.dim == fock.full_dim(), "projector_apply: dimension mismatch");
  const CoherentState cs = coherent_state(p.z, fock);
  const Matrix rho_b = cs.amplitudes * cs.amplitudes.adjoint();
  ReducedMap red;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix rho_a = Matrix::Zero(2, 2);
      rho_a(i, j) = 1.0;
      const Vector in = vectorize(kron(rho_a, rho_b));
      const Matrix out = partial_trace_boson(devectorize(op.m * in), fock);
      const int col = i * 2 + j;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) red.m(r * 2 + c, col) = out(r, c);
    }
  return red;
}

SuperOperator build_X1(const ModelParams& p, const FockConfig& fock) {
  p.require_nondegenerate();
  const Ops o(fock);
  const Complex G = p.Gamma();
  const Complex Gc = std::conj(G);
  const double gam = p.gamma;
  const Complex g = p.g, gc = std::conj(p.g);
  const int d = fock.full_dim();
  const Matrix id = Matrix::Identity(d, d);

  Matrix m = (-kI * g / G) * sandwich(o.SP * o.B, id);
  m += (-kI * gc / (-G)) * (sandwich(o.SM * o.BD, id) - (gam / Gc) * sandwich(o.SM, o.BD));
  m += (kI * g / (-Gc)) * (sandwich(id, o.SP * o.B) - (gam / G) * sandwich(o.B, o.SP));
  m += (kI * gc / Gc) * sandwich(id, o.SM * o.BD);
  return SuperOperator(d, std::move(m), "X1");
}

Matrix truncation_safe_mask(const FockConfig& fock) {
  const int nb = fock.boson_dim();
  const int d = fock.full_dim();
  Vector keep = Vector::Ones(d);
  for (int a = 0; a < 2; ++a)
    for (int n = nb - 2; n < nb; ++n) keep[a * nb + n] = 0.0;
  Vector vkeep(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) vkeep[i * d + j] = keep[i] * keep[j];
  return vkeep * vkeep.transpose();
}

CommutatorSolution solve_commutator(const SuperOperator& l0, const SuperOperator& rhs) {
  require(l0.m.rows() == rhs.m.rows(), "solve_commutator: dimension mismatch");
  const Eigen::Index n = l0.m.rows();
  const Matrix in = Matrix::Identity(n, n);
  // vec_rm(L0 X - X L0) = (L0 (x) I - I (x) L0^T) vec_rm(X)
  Matrix big = kron(l0.m, in) - kron(in, l0.m.transpose());
  Vector b = vectorize(rhs.m);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(big);
  Vector x = cod.solve(b);
  const double bnorm = b.norm();
  const double resid = bnorm > 0 ? (big * x - b).norm() / bnorm : (big * x).norm();
  if (resid > 1e-6)
    throw RankDeficiencyError("solve_commutator: relative residual " + std::to_string(resid));
  return {SuperOperator(l0.dim, devectorize(x), "X (least squares)"), resid};
}

LiouvilleAction::LiouvilleAction(const ModelParams& p, const FockConfig& fock)
    : d_(fock.full_dim()), gamma_(p.gamma) {
  const Ops o(fock);
  h0_ = kron(p.omega_a * o.sp * o.sm, o.ib) + kron(o.i2, p.omega_c * o.bd * o.b);
  hi_ = p.g * o.SP * o.B + std::conj(p.g) * o.SM * o.BD;
  b_ = o.B;
  bd_ = o.BD;
  nb_ = o.BD * o.B;
}

void LiouvilleAction::apply_L0(const Matrix& x, Matrix& out) const {
  out.noalias() = -kI * (h0_ * x);
  out.noalias() += kI * (x * h0_);
  out.noalias() += gamma_ * (b_ * x * bd_);
  out.noalias() -= (gamma_ / 2.0) * (nb_ * x);
  out.noalias() -= (gamma_ / 2.0) * (x * nb_);
}

void LiouvilleAction::add_L(const Matrix& x, Matrix& out) const {
  out.noalias() += -kI * (hi_ * x);
  out.noalias() += kI * (x * hi_);
}

}  // namespace tcljc
