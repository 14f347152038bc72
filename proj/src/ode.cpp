#include "tcljc/ode.hpp"

#include <algorithm>
#include <cmath>

namespace tcljc {

TimeGrid TimeGrid::uniform(double t_max, std::size_t n_points) {
  require(t_max > 0 && n_points >= 2, "TimeGrid: t_max > 0 and n_points >= 2 required");
  TimeGrid g;
  g.points.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i)
    g.points[i] = t_max * double(i) / double(n_points - 1);
  return g;
}

void TimeGrid::validate() const {
  require(points.size() >= 1, "TimeGrid: empty");
  require(points.front() >= 0, "TimeGrid: negative start");
  for (std::size_t i = 1; i < points.size(); ++i)
    require(points[i] > points[i - 1], "TimeGrid: not strictly increasing");
}

namespace {

// Dormand-Prince coefficients.
const double c2 = 1. / 5, c3 = 3. / 10, c4 = 4. / 5, c5 = 8. / 9;
const double a21 = 1. / 5;
const double a31 = 3. / 40, a32 = 9. / 40;
const double a41 = 44. / 45, a42 = -56. / 15, a43 = 32. / 9;
const double a51 = 19372. / 6561, a52 = -25360. / 2187, a53 = 64448. / 6561, a54 = -212. / 729;
const double a61 = 9017. / 3168, a62 = -355. / 33, a63 = 46732. / 5247, a64 = 49. / 176,
             a65 = -5103. / 18656;
const double b1 = 35. / 384, b3 = 500. / 1113, b4 = 125. / 192, b5 = -2187. / 6784,
             b6 = 11. / 84;
// 4th-order error weights (b - b*).
const double e1 = 71. / 57600, e3 = -71. / 16695, e4 = 71. / 1920, e5 = -17253. / 339200,
             e6 = 22. / 525, e7 = -1. / 40;

}  // namespace

std::vector<Vector> integrate_ode(const OdeRhs& f, const Vector& y0, const TimeGrid& grid,
                                  const OdeOptions& opts) {
  grid.validate();
  const double t_end = grid.points.back();
  const double h_min = 1e-14 * std::max(t_end, 1.0);
  const auto n = y0.size();

  std::vector<Vector> out;
  out.reserve(grid.points.size());

  Vector y = y0;
  Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
  double t = 0.0;
  std::size_t gi = 0;
  if (grid.points[0] == 0.0) {
    out.push_back(y);
    ++gi;
  }

  f(t, y, k1);
  double h = std::min(1e-3 * std::max(t_end, 1.0), t_end);

  while (gi < grid.points.size()) {
    const double t_target = grid.points[gi];
    double hs = h;
    bool clamped = false;
    if (t + hs >= t_target) {
      hs = t_target - t;
      clamped = true;
    }
    if (hs < h_min) throw StepSizeUnderflow("integrate_ode: step size underflow");

    ytmp = y + hs * (a21 * k1);
    f(t + c2 * hs, ytmp, k2);
    ytmp = y + hs * (a31 * k1 + a32 * k2);
    f(t + c3 * hs, ytmp, k3);
    ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * hs, ytmp, k4);
    ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * hs, ytmp, k5);
    ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + hs, ytmp, k6);
    ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(t + hs, ynew, k7);  // FSAL
    err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err_norm = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc =
          opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double e = std::abs(err[i]) / sc;
      err_norm += e * e;
    }
    err_norm = std::sqrt(err_norm / double(n));

    const double fac =
        std::clamp(0.9 * std::pow(std::max(err_norm, 1e-10), -0.2), 0.2, 5.0);
    if (err_norm <= 1.0) {
      t += hs;
      y.swap(ynew);
      k1.swap(k7);
      if (clamped) {
        out.push_back(y);
        ++gi;
        // keep the controller step, not the clamped remainder
        h = std::max(h, hs * fac);
      } else {
        h = hs * fac;
      }
    } else {
      h = hs * fac;
    }
  }
  return out;
}

}  // namespace tcljc
