#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tcljc/dynamics.hpp"
#include "tcljc/expm.hpp"

using namespace tcljc;

namespace {

ModelParams default_params() {
  ModelParams p;
  p.omega_a = 1.3;
  p.omega_c = 1.0;
  p.gamma = 0.4;
  p.g = 0.2;
  p.z = 1.0;
  p.lambda = 0.05;
  return p;
}

}  // namespace

TEST_CASE("initial-state helpers and density-matrix gate") {
  CHECK(ground_state()(0, 0) == Complex(1.0));
  CHECK(excited_state()(1, 1) == Complex(1.0));
  CHECK(std::abs(plus_state()(0, 1) - Complex(0.5)) < 1e-15);
  Matrix2 bad = Matrix2::Identity();  // trace 2
  CHECK_THROWS_AS(require_density_matrix(bad), std::invalid_argument);
  Matrix2 neg;
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(require_density_matrix(neg), std::invalid_argument);
}

TEST_CASE("exact propagation: decoupled limit") {
  ModelParams p = default_params();
  p.lambda = 0.0;
  FockConfig f(14);  // top-level occupancy for |z|=1 sits below the guard here
  TimeGrid grid = TimeGrid::uniform(2.0, 21);
  Matrix2 rho0;
  rho0 << 0.7, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.3;
  auto traj = propagate_exact(p, f, rho0, grid);
  REQUIRE(traj.states.size() == grid.points.size());
  CHECK(traj.method == "exact");
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    double t = grid.points[i];
    CHECK(std::abs(traj.states[i](1, 1) - rho0(1, 1)) < 1e-8);
    Complex want01 = rho0(0, 1) * std::exp(Complex(0, p.omega_a * t));
    CHECK(std::abs(traj.states[i](0, 1) - want01) < 1e-8);
    CHECK(std::abs(traj.diagnostics[i].trace - 1.0) < 1e-10);
    CHECK(traj.diagnostics[i].min_eigenvalue > -1e-9);
  }
}

TEST_CASE("exact propagation: vacuum Rabi oscillation") {
  ModelParams p;
  p.omega_a = 1.0;
  p.omega_c = 1.0;  // resonant
  p.gamma = 0.0;
  p.g = 0.3;
  p.z = 0.0;
  p.lambda = 0.25;
  FockConfig f(4);
  TimeGrid grid = TimeGrid::uniform(6.0, 31);
  auto traj = propagate_exact(p, f, excited_state(), grid);
  double geff = p.lambda * std::abs(p.g);
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    double want = std::cos(geff * grid.points[i]) * std::cos(geff * grid.points[i]);
    CHECK(std::abs(traj.states[i](1, 1).real() - want) < 1e-8);
  }
}

TEST_CASE("exact propagation flags truncation breakdown") {
  ModelParams p = default_params();
  p.z = 3.0;
  FockConfig f(3, 1e-10);  // far too small for |z| = 3
  TimeGrid grid = TimeGrid::uniform(1.0, 5);
  CHECK_THROWS_AS(propagate_exact(p, f, ground_state(), grid), TruncationError);
}

TEST_CASE("TCL propagation: hygiene and analytic/numeric source agreement") {
  ModelParams p = default_params();
  TimeGrid grid = TimeGrid::uniform(3.0 / p.gamma, 41);
  auto a2 = propagate_tcl(p, plus_state(), grid, 2, CumulantSource::analytic);
  CHECK(a2.method == "tcl(order=2,source=analytic)");
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    CHECK(std::abs(a2.states[i].trace() - 1.0) < 1e-10);
    CHECK((a2.states[i] - a2.states[i].adjoint().eval()).norm() < 1e-10);
  }

  FockConfig f(12, 1e-8);
  auto n2 = propagate_tcl(p, plus_state(), grid, 2, CumulantSource::numeric, &f);
  auto err = compare(a2, n2);
  CHECK(err.max_error < 1e-5);

  auto a3t = propagate_tcl(p, plus_state(), grid, 3, CumulantSource::analytic);
  auto n3 = propagate_tcl(p, plus_state(), grid, 3, CumulantSource::numeric, &f);
  CHECK(compare(a3t, n3).max_error < 1e-5);
}

TEST_CASE("TCL error hierarchy against the exact oracle") {
  ModelParams p = default_params();
  FockConfig f = FockConfig::auto_for(p.z);
  TimeGrid grid = TimeGrid::uniform(3.0 / p.gamma, 41);
  auto exact = propagate_exact(p, f, plus_state(), grid);
  auto t2 = propagate_tcl(p, plus_state(), grid, 2, CumulantSource::analytic);
  auto t3 = propagate_tcl(p, plus_state(), grid, 3, CumulantSource::analytic);
  double e2 = compare(exact, t2).max_error;
  double e3 = compare(exact, t3).max_error;
  CHECK(e2 < 0.05);
  CHECK(e3 < e2);
}

TEST_CASE("matched Markov solution and the closed-form population") {
  ModelParams p = default_params();
  Matrix2 rho0 = excited_state();
  // without the renormalizer the solution is the bare semigroup
  for (double t : {0.0, 1.5, 6.0}) {
    Matrix2 want = devectorize(
        Vector(expm(Matrix(p.lambda * p.lambda * k2(p, kInfiniteTime).m * t)) *
               vectorize(Matrix(rho0))));
    CHECK((matched_markov_solution(p, rho0, t, false) - Matrix2(want)).norm() < 1e-12);
  }

  // the generator carries lambda^2 on physical time; the printed closed form
  // lives on the rescaled clock, so feed it lambda^2 * t
  for (double t : {0.0, 2.0, 7.0}) {
    Matrix2 sol = matched_markov_solution(p, rho0, t);
    CHECK(std::abs(sol(1, 1).real() -
                   rho11_closed_form(p, rho0, p.lambda * p.lambda * t)) < 1e-10);
    CHECK(std::abs(sol.trace() - 1.0) < 1e-12);
  }
}

TEST_CASE("polishing: initial jump and terminal-error improvement") {
  ModelParams p = default_params();
  Matrix2 rho0 = plus_state();
  double want_jump = p.lambda * (2.0 * p.delta_omega() / p.gamma_abs2()) *
                     (p.g * p.z * rho0(1, 0)).real();
  Matrix2 at0 = matched_markov_solution(p, rho0, 0.0);
  CHECK(std::abs((at0(1, 1) - rho0(1, 1)).real() - want_jump) < 1e-10);

  FockConfig f = FockConfig::auto_for(p.z);
  double t_end = 3.0 / p.gamma;
  TimeGrid grid = TimeGrid::uniform(t_end, 61);
  auto exact = propagate_exact(p, f, rho0, grid);
  double p11_exact = exact.states.back()(1, 1).real();
  double with_r = matched_markov_solution(p, rho0, t_end, true)(1, 1).real();
  double without_r = matched_markov_solution(p, rho0, t_end, false)(1, 1).real();
  CHECK(std::abs(with_r - p11_exact) < std::abs(without_r - p11_exact));
}

TEST_CASE("trajectory comparison metric") {
  ModelParams p = default_params();
  TimeGrid grid = TimeGrid::uniform(1.0, 5);
  auto t2 = propagate_tcl(p, plus_state(), grid, 2, CumulantSource::analytic);
  auto self = compare(t2, t2);
  CHECK(self.max_error == 0.0);
  CHECK(self.terminal_error == 0.0);

  Trajectory a = t2, b = t2;
  for (auto& s : a.states) s = ground_state();
  for (auto& s : b.states) s = excited_state();
  auto d = compare(a, b);
  for (double e : d.trace_distance) CHECK(e == doctest::Approx(1.0).epsilon(1e-14));

  Trajectory short_grid = t2;
  short_grid.grid = TimeGrid::uniform(2.0, 5);
  CHECK_THROWS(compare(t2, short_grid));
}

TEST_CASE("order-scaling slopes") {
  ModelParams p = default_params();
  FockConfig f = FockConfig::auto_for(p.z);
  TimeGrid grid = TimeGrid::uniform(3.0 / p.gamma, 41);
  auto rows = order_scaling_report(p, f, plus_state(), grid, {1, 2},
                                   {0.1, 0.05, 0.025}, 4);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].order == 1);
  CHECK(std::abs(rows[0].slope - 2.0) < 0.5);
  CHECK(rows[1].order == 2);
  CHECK(std::abs(rows[1].slope - 3.0) < 0.5);
  // halving lambda shrinks the error monotonically
  for (const auto& r : rows)
    for (std::size_t i = 1; i < r.max_errors.size(); ++i)
      CHECK(r.max_errors[i] < r.max_errors[i - 1]);
}
