#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "tcljc/model.hpp"

namespace tcljc {

/// Hamiltonian + signed-rate jump decomposition of a reduced generator.
/// Rates are signed reals: GKSL-like, not GKSL — negative rates are data.
struct GkslLikeForm {
  Matrix2 hamiltonian = Matrix2::Zero();
  std::vector<std::pair<double, Matrix2>> dissipator_terms;  // (rate, jump)

  /// -i[H, .] + sum rate (J . J^dag - 1/2 {J^dag J, .}) as a 4x4 map.
  Matrix4 reassemble() const;
};

constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

// K0 rho = -i[omega_A sigma^+ sigma^-, rho]
ReducedMap k0(const ModelParams& p);

// K1(t) = -i e^{-gamma t/2} [g z e^{-i omega_c t} sigma^+ + h.c., .]
ReducedMap k1(const ModelParams& p, double t);

// time-dependent parts of K2
std::pair<double, double> f2_phi2(const ModelParams& p, double t);

ReducedMap k2(const ModelParams& p, double t);                 // t = kInfiniteTime for the limit
GkslLikeForm k2_form(const ModelParams& p, double t);

/// Complex K3 coefficient, oracle-validated phase convention (the printed
/// prefactor carries an extra factor i; see the commit history of the
/// numeric cross-check tests). Returns (modulus, phase); phase := 0 when
/// the modulus underflows below 1e-300.
std::pair<double, double> a3(const ModelParams& p, double t);

ReducedMap k3(const ModelParams& p, double t);
GkslLikeForm k3_form(const ModelParams& p, double t);

ReducedMap k4_infinity(const ModelParams& p);
GkslLikeForm k4_infinity_form(const ModelParams& p);

// interaction-frame K1: e^{-[K0,.] t} K1(t) = -i[g z e^{-Gamma t} sigma^+ + h.c., .]
ReducedMap k1_interaction(const ModelParams& p, double t);

/// R = I + lambda * integral_0^inf K1^I(t') dt' in closed form.
ReducedMap renormalizer(const ModelParams& p);

/// rho~_11(t) = e^{-|g|^2 gamma t / |Gamma|^2} (1 + lambda (2 dw/|Gamma|^2) Re(g z rho~_10(0)))
double rho11_closed_form(const ModelParams& p, const Matrix2& rho_tilde_0, double t);

}  // namespace tcljc
