#pragma once

#include <string>
#include <vector>

#include "tcljc/cumulants.hpp"
#include "tcljc/moments.hpp"

namespace tcljc {

struct PointDiagnostics {
  double trace = 1.0;
  double min_eigenvalue = 0.0;
  double top_fock = 0.0;  // NaN when no boson space is in play
};

struct Trajectory {
  TimeGrid grid;
  std::vector<Matrix2> states;  // reduced 2x2 at each grid point
  std::vector<PointDiagnostics> diagnostics;
  std::string method;
};

Matrix2 ground_state();
Matrix2 excited_state();
Matrix2 plus_state();

/// Throws std::invalid_argument unless rho is Hermitian (1e-10), unit trace
/// (1e-10) and PSD (eigenvalues >= -1e-10).
void require_density_matrix(const Matrix2& rho);

/// Full-system states under L0 + lambda*L from rho_a0 (x) |z><z|. The
/// brute-force oracle behind every comparison. Enforces the top-Fock
/// occupancy guard at each grid point.
std::vector<Matrix> exact_full_states(const ModelParams& p, const FockConfig& fock,
                                      const Matrix2& rho_a0, const TimeGrid& grid,
                                      const OdeOptions& opts = {});

Trajectory propagate_exact(const ModelParams& p, const FockConfig& fock,
                           const Matrix2& rho_a0, const TimeGrid& grid,
                           const OdeOptions& opts = {});

enum class CumulantSource { analytic, numeric };

/// Reduced TCL propagation: d rho/dt = sum_{n=0..order} lambda^n K_n(t) rho.
/// source=analytic uses the closed forms (K4(t) replaced by K4(inf) at
/// order 4); source=numeric co-integrates the moment stack and assembles
/// K_n(t) on the fly, so it needs a Fock configuration.
Trajectory propagate_tcl(const ModelParams& p, const Matrix2& rho_a0,
                         const TimeGrid& grid, int order, CumulantSource source,
                         const FockConfig* fock = nullptr,
                         const OdeOptions& opts = {});

/// rho~(t) = expm(lambda^2 K2(inf) t) R rho(0) on physical time.
/// with_renormalizer=false drops R (the unmatched Markov solution).
Matrix2 matched_markov_solution(const ModelParams& p, const Matrix2& rho_a0,
                                double t, bool with_renormalizer = true);

Trajectory matched_markov_trajectory(const ModelParams& p, const Matrix2& rho_a0,
                                     const TimeGrid& grid,
                                     bool with_renormalizer = true);

struct ErrorSeries {
  TimeGrid grid;
  std::vector<double> trace_distance;
  double max_error = 0.0;
  double t_of_max = 0.0;
  double terminal_error = 0.0;
};

/// Per-point trace distance 1/2 ||rhoA - rhoB||_1 between two trajectories
/// on the same grid.
ErrorSeries compare(const Trajectory& a, const Trajectory& b);

struct ScalingRow {
  int order = 0;
  std::vector<double> lambdas;
  std::vector<double> max_errors;  // vs exact, same lambda
  double slope = 0.0;              // fitted d log(err) / d log(lambda)
};

/// Max TCL-vs-exact error per (order, lambda) plus a log-log slope fit.
/// Expected slope is order + 1.
std::vector<ScalingRow> order_scaling_report(const ModelParams& p, const FockConfig& fock,
                                             const Matrix2& rho_a0, const TimeGrid& grid,
                                             const std::vector<int>& orders,
                                             const std::vector<double>& lambdas,
                                             int jobs = 1);

}  // namespace tcljc
