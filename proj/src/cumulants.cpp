#include "tcljc/cumulants.hpp"

#include <cmath>

namespace tcljc {

namespace {

Matrix4 commutator_map(const Matrix2& h) {
  // -i[h, .] on row-stacked vec
  Matrix m = Complex(0, -1) * (left_mult(h) - right_mult(h));
  return Matrix4(m);
}

Matrix4 dissipator_map(const Matrix2& j) {
  Matrix2 jdj = j.adjoint() * j;
  Matrix m = sandwich(j, j.adjoint()) - 0.5 * left_mult(jdj) - 0.5 * right_mult(jdj);
  return Matrix4(m);
}

Matrix2 sigma_plus() {
  auto [sp, sm] = atom_ops();
  return Matrix2(sp);
}

Matrix2 sigma_minus() {
  auto [sp, sm] = atom_ops();
  return Matrix2(sm);
}

Matrix2 excited_projector() { return sigma_plus() * sigma_minus(); }

}  // namespace

Matrix4 GkslLikeForm::reassemble() const {
  Matrix4 m = commutator_map(hamiltonian);
  for (const auto& [rate, jump] : dissipator_terms) m += rate * dissipator_map(jump);
  return m;
}

ReducedMap k0(const ModelParams& p) {
  ReducedMap out;
  out.order = 0;
  out.m = commutator_map(Matrix2(p.omega_a * excited_projector()));
  return out;
}

ReducedMap k1(const ModelParams& p, double t) {
  Complex c = p.g * p.z * std::exp(-p.gamma * t / 2.0) *
              std::exp(Complex(0, -p.omega_c * t));
  Matrix2 h = c * sigma_plus() + std::conj(c) * sigma_minus();
  ReducedMap out;
  out.order = 1;
  out.time = t;
  out.m = commutator_map(h);
  return out;
}

std::pair<double, double> f2_phi2(const ModelParams& p, double t) {
  if (std::isinf(t)) return {0.0, 0.0};
  const double dw = p.delta_omega();
  const double env = std::exp(-p.gamma * t / 2.0);
  double f2 = env * (2.0 * dw * std::sin(dw * t) - p.gamma * std::cos(dw * t));
  double phi2 = env * (-2.0 * dw * std::cos(dw * t) - p.gamma * std::sin(dw * t));
  return {f2, phi2};
}

GkslLikeForm k2_form(const ModelParams& p, double t) {
  p.require_nondegenerate();
  const double g2 = std::norm(p.g);
  const double G2 = p.gamma_abs2();
  auto [f2, phi2] = f2_phi2(p, t);
  GkslLikeForm form;
  form.hamiltonian = (g2 / (2.0 * G2)) * (2.0 * p.delta_omega() + phi2) * excited_projector();
  form.dissipator_terms.emplace_back((g2 / G2) * (p.gamma + f2), sigma_minus());
  return form;
}

ReducedMap k2(const ModelParams& p, double t) {
  ReducedMap out;
  out.order = 2;
  out.time = t;
  out.m = k2_form(p, t).reassemble();
  return out;
}

std::pair<double, double> a3(const ModelParams& p, double t) {
  p.require_nondegenerate();
  const Complex G = p.Gamma();
  const Complex eGt = std::exp(-G * t);
  // The remaining prefactor is i * g|g|^2 z: the extra i relative to the
  // obvious guess is required for agreement with the numerically computed
  // third-order generator (moment-engine cross-check).
  Complex a = Complex(0, 1) * p.g * std::norm(p.g) * p.z *
              std::exp(Complex(0, -p.omega_a * t)) * eGt * (1.0 - G * t - eGt) / (G * G);
  double mod = std::abs(a);
  double psi = mod < 1e-300 ? 0.0 : std::arg(a);
  return {mod, psi};
}

GkslLikeForm k3_form(const ModelParams& p, double t) {
  auto [mod, psi] = a3(p, t);
  const Complex eip = std::exp(Complex(0, psi));
  const Matrix2 sp = sigma_plus(), sm = sigma_minus(), pe = excited_projector();
  GkslLikeForm form;
  form.hamiltonian = mod * (Complex(0, 1) * eip * sp - Complex(0, 1) * std::conj(eip) * sm);
  const double r = std::sqrt(mod);
  // Both jumps carry e^{+i psi}; with opposite phases the pair fails to
  // reassemble into the commutator-plus-sandwich form (checked numerically).
  form.dissipator_terms.emplace_back(-1.0, Matrix2(r * (sm - eip * pe)));
  form.dissipator_terms.emplace_back(+1.0, Matrix2(r * (sm + eip * pe)));
  return form;
}

ReducedMap k3(const ModelParams& p, double t) {
  auto [mod, psi] = a3(p, t);
  const Complex eip = std::exp(Complex(0, psi));
  const Matrix2 sp = sigma_plus(), sm = sigma_minus(), pe = excited_projector();
  Matrix2 h = mod * (Complex(0, 1) * eip * sp - Complex(0, 1) * std::conj(eip) * sm);
  Matrix extra = 2.0 * mod *
                 (eip * sandwich(pe, sp) + std::conj(eip) * sandwich(sm, pe));
  ReducedMap out;
  out.order = 3;
  out.time = t;
  out.m = commutator_map(h) + Matrix4(extra);
  return out;
}

GkslLikeForm k4_infinity_form(const ModelParams& p) {
  p.require_nondegenerate();
  const double g4 = std::norm(p.g) * std::norm(p.g);
  const double G2 = p.gamma_abs2();
  const double G6 = G2 * G2 * G2;
  const double dw = p.delta_omega();
  GkslLikeForm form;
  form.hamiltonian =
      g4 * dw * (p.gamma * p.gamma - G2) / G6 * excited_projector();
  // Signed rate: negative at high detuning. Stored as-is, no square root.
  const double r4 = g4 * p.gamma * (G2 - 4.0 * dw * dw) / G6;
  form.dissipator_terms.emplace_back(r4, sigma_minus());
  return form;
}

ReducedMap k4_infinity(const ModelParams& p) {
  ReducedMap out;
  out.order = 4;
  out.time = kInfiniteTime;
  out.m = k4_infinity_form(p).reassemble();
  return out;
}

ReducedMap k1_interaction(const ModelParams& p, double t) {
  Complex c = p.g * p.z * std::exp(-p.Gamma() * t);
  Matrix2 h = c * sigma_plus() + std::conj(c) * sigma_minus();
  ReducedMap out;
  out.order = 1;
  out.time = t;
  out.m = commutator_map(h);
  return out;
}

ReducedMap renormalizer(const ModelParams& p) {
  p.require_nondegenerate();
  if (p.gamma <= 0.0)
    throw DegenerateGamma("renormalizer: gamma > 0 required for convergence");
  // R = I + lambda * int_0^inf K1^I dt = I - i lambda [g z / Gamma sigma+ + h.c., .].
  // (Expanding 1/Gamma gives conj(Gamma)/|Gamma|^2; published statements of
  // this operator sometimes carry the conjugation on the wrong factor, which
  // fails the quadrature cross-check.)
  Complex c = p.lambda * p.g * p.z / p.Gamma();
  Matrix2 h = c * sigma_plus() + std::conj(c) * sigma_minus();
  ReducedMap out;
  out.order = 1;
  out.time = kInfiniteTime;
  out.m = Matrix4::Identity() + commutator_map(h);
  return out;
}

double rho11_closed_form(const ModelParams& p, const Matrix2& rho_tilde_0, double t) {
  if (p.gamma <= 0.0)
    throw DegenerateGamma("rho11_closed_form: gamma > 0 required");
  const double G2 = p.gamma_abs2();
  const double decay = std::exp(-std::norm(p.g) * p.gamma * t / G2);
  const double jump = p.lambda * (2.0 * p.delta_omega() / G2) *
                      std::real(p.g * p.z * rho_tilde_0(1, 0));
  return decay * (1.0 + jump);
}

}  // namespace tcljc
