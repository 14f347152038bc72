#pragma once

#include <functional>
#include <vector>

#include "tcljc/matrix.hpp"

namespace tcljc {

/// Strictly increasing sample times starting at 0.
struct TimeGrid {
  std::vector<double> points;

  static TimeGrid uniform(double t_max, std::size_t n_points);
  double t_max() const { return points.back(); }
  void validate() const;
};

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
};

/// Right-hand side: out = f(t, y). `out` is preallocated to y.size().
using OdeRhs = std::function<void(double, const Vector&, Vector&)>;

/// Adaptive Dormand-Prince 5(4) pair. Integrates y' = f(t, y) from t=0 and
/// returns the solution at every grid point (steps are clamped to land on
/// them exactly, so sampling is interpolation-free and deterministic).
/// Throws StepSizeUnderflow if the controller drives h below 1e-14 * t_max.
std::vector<Vector> integrate_ode(const OdeRhs& f, const Vector& y0, const TimeGrid& grid,
                                  const OdeOptions& opts = {});

}  // namespace tcljc
