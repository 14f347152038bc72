#pragma once

#include <vector>

#include "tcljc/model.hpp"
#include "tcljc/ode.hpp"

namespace tcljc {

/// One term of the cumulant composition sum: K_n picks up
/// sign * Odot_{k0} O0^-1 O_{k1} O0^-1 ... O_{kq} O0^-1.
struct Composition {
  int q = 0;                // number of trailing parts
  std::vector<int> parts;   // (k0, k1, ..., kq), k0 >= 0, k_j >= 1 for j >= 1
  int sign = 1;             // (-1)^q
};

/// All compositions of n with k0 >= 0 and k_j >= 1 (j >= 1). Interior zeros
/// are excluded: they would insert O_0 O_0^-1 factors and overcount against
/// the low-order generators written out by hand. 2^n terms.
std::vector<Composition> enumerate_compositions(int n);

/// Projected moments O_k(t) and derivatives Odot_k(t) on a shared grid,
/// one 4x4 reduced map per (time, order).
///
/// Computed without ever forming a full D^2 x D^2 superoperator: the columns
/// w_k = e^{L0 t} F_k vec(rho_ij (x) |z><z|) obey the constant-coefficient
/// stack  dw_k/dt = L0 w_k + L w_{k-1}  (since e^{L0 t} L(t) = L e^{L0 t}),
/// which stays bounded at arbitrary t*gamma. O_k traces out the boson;
/// Odot_k uses the product rule on the same stack, never finite differences.
struct MomentFamily {
  int order_max = 0;
  TimeGrid grid;
  std::vector<std::vector<ReducedMap>> O;     // [time][order]
  std::vector<std::vector<ReducedMap>> Odot;  // [time][order]
};

MomentFamily compute_moments(const ModelParams& p, const FockConfig& fock,
                             const TimeGrid& grid, int order_max,
                             const OdeOptions& opts = {});

/// Literal realization of the moment recursion on full-space superoperators,
/// dF_k/dt = L(t) F_{k-1}, F_0 = I. Dense in D^2; small cutoffs only. Kept as
/// the cross-check for the column-stack path above.
struct FullMomentFamily {
  int order_max = 0;
  TimeGrid grid;
  std::vector<std::vector<SuperOperator>> F;  // [time][order], order 0..order_max
};

FullMomentFamily compute_F(const ModelParams& p, const FockConfig& fock,
                           const TimeGrid& grid, int order_max,
                           InteractionMethod method = InteractionMethod::heisenberg,
                           const OdeOptions& opts = {});

/// O_k / Odot_k from a FullMomentFamily via expm(L0 t) F_k and the product
/// rule; the expm conjugation limits this to modest t*gamma.
MomentFamily project_moments(const FullMomentFamily& fam, const ModelParams& p,
                             const FockConfig& fock);

/// expm(-L0_A t): the exact inverse of O_0(t) on the projector range.
ReducedMap o0_inverse(const ModelParams& p, double t);

/// Composition sum for K_n given per-order 4x4 maps and O_0^{-1}.
Matrix4 composition_sum(int n, const std::vector<Matrix4>& o,
                        const std::vector<Matrix4>& odot, const Matrix4& o0inv);

/// K_n at grid point `time_index`, assembled from the composition sum.
ReducedMap numeric_cumulant(int n, int time_index, const MomentFamily& fam,
                            const ModelParams& p);

}  // namespace tcljc
