#include "tcljc/dynamics.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "tcljc/expm.hpp"

namespace tcljc {

namespace {

using RowMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Vector4cd vec4(const Matrix2& rho) {
  Eigen::Vector4cd v;
  v << rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1);
  return v;
}

Matrix2 unvec4(const Eigen::Vector4cd& v) {
  Matrix2 m;
  m << v[0], v[1], v[2], v[3];
  return m;
}

double min_eig2(const Matrix2& rho) {
  Matrix2 h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix2> es(h);
  return es.eigenvalues().minCoeff();
}

double top_fock_occupancy(const Matrix& rho_full, const FockConfig& fock) {
  const int nb = fock.boson_dim();
  double occ = 0.0;
  for (int a = 0; a < 2; ++a) occ += std::real(rho_full(a * nb + nb - 1, a * nb + nb - 1));
  return occ;
}

PointDiagnostics reduced_diagnostics(const Matrix2& rho) {
  PointDiagnostics d;
  d.trace = std::real(rho.trace());
  d.min_eigenvalue = min_eig2(rho);
  d.top_fock = std::numeric_limits<double>::quiet_NaN();
  return d;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Matrix2 ground_state() {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = 1.0;
  return m;
}

Matrix2 excited_state() {
  Matrix2 m = Matrix2::Zero();
  m(1, 1) = 1.0;
  return m;
}

Matrix2 plus_state() { return Matrix2::Constant(0.5); }

void require_density_matrix(const Matrix2& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("initial state must be Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-10)
    throw std::invalid_argument("initial state must have unit trace");
  if (min_eig2(rho) < -1e-10)
    throw std::invalid_argument("initial state must be positive semidefinite");
}

std::vector<Matrix> exact_full_states(const ModelParams& p, const FockConfig& fock,
                                      const Matrix2& rho_a0, const TimeGrid& grid,
                                      const OdeOptions& opts) {
  require_density_matrix(rho_a0);
  grid.validate();
  const int D = fock.full_dim();
  const int d2 = D * D;
  ModelParams scaled = p;
  scaled.g *= p.lambda;  // full-model coupling is lambda*g
  LiouvilleAction act(scaled, fock);
  CoherentState cs = coherent_state(p.z, fock);
  Matrix rho_b = cs.amplitudes * cs.amplitudes.adjoint();

  Vector y0(d2);
  Eigen::Map<RowMat>(y0.data(), D, D) = kron(rho_a0, rho_b);
  Matrix x(D, D), out(D, D);
  OdeRhs rhs = [&](double, const Vector& y, Vector& dy) {
    x = Eigen::Map<const RowMat>(y.data(), D, D);
    act.apply_L0(x, out);
    act.add_L(x, out);
    Eigen::Map<RowMat>(dy.data(), D, D) = out;
  };
  std::vector<Vector> sol = integrate_ode(rhs, y0, grid, opts);

  std::vector<Matrix> states;
  states.reserve(sol.size());
  for (std::size_t m = 0; m < sol.size(); ++m) {
    Matrix full = Eigen::Map<const RowMat>(sol[m].data(), D, D);
    double occ = top_fock_occupancy(full, fock);
    if (occ > fock.occupancy_guard)
      throw TruncationError("exact propagation: top Fock level occupancy " +
                            std::to_string(occ) + " exceeds guard at t = " +
                            std::to_string(grid.points[m]));
    states.push_back(std::move(full));
  }
  return states;
}

Trajectory propagate_exact(const ModelParams& p, const FockConfig& fock,
                           const Matrix2& rho_a0, const TimeGrid& grid,
                           const OdeOptions& opts) {
  std::vector<Matrix> full = exact_full_states(p, fock, rho_a0, grid, opts);
  Trajectory tr;
  tr.grid = grid;
  tr.method = "exact";
  tr.states.reserve(full.size());
  tr.diagnostics.reserve(full.size());
  for (const Matrix& f : full) {
    Matrix2 red = partial_trace_boson(f, fock);
    PointDiagnostics d;
    d.trace = std::real(f.trace());
    d.min_eigenvalue = min_eig2(red);
    d.top_fock = top_fock_occupancy(f, fock);
    tr.states.push_back(red);
    tr.diagnostics.push_back(d);
  }
  return tr;
}

Trajectory propagate_tcl(const ModelParams& p, const Matrix2& rho_a0,
                         const TimeGrid& grid, int order, CumulantSource source,
                         const FockConfig* fock, const OdeOptions& opts) {
  require_density_matrix(rho_a0);
  grid.validate();
  require(order >= 1 && order <= 4, "propagate_tcl: order in {1,2,3,4}");
  const Matrix4 k0m = k0(p).m;
  const double l1 = p.lambda;
  const double l2 = l1 * l1, l3 = l2 * l1, l4 = l2 * l2;

  Trajectory tr;
  tr.grid = grid;

  if (source == CumulantSource::analytic) {
    tr.method = "tcl(order=" + std::to_string(order) + ",source=analytic" +
                (order >= 4 ? ",k4=infinity)" : ")");
    const Matrix4 k4m = order >= 4 ? k4_infinity(p).m : Matrix4::Zero();
    OdeRhs rhs = [&](double t, const Vector& y, Vector& dy) {
      Matrix4 gen = k0m + l1 * k1(p, t).m;
      if (order >= 2) gen += l2 * k2(p, t).m;
      if (order >= 3) gen += l3 * k3(p, t).m;
      if (order >= 4) gen += l4 * k4m;
      Eigen::Map<Eigen::Vector4cd>(dy.data()) =
          gen * Eigen::Map<const Eigen::Vector4cd>(y.data());
    };
    Vector y0(4);
    Eigen::Map<Eigen::Vector4cd>(y0.data()) = vec4(rho_a0);
    for (const Vector& y : integrate_ode(rhs, y0, grid, opts)) {
      Matrix2 rho = unvec4(Eigen::Map<const Eigen::Vector4cd>(y.data()));
      tr.states.push_back(rho);
      tr.diagnostics.push_back(reduced_diagnostics(rho));
    }
    return tr;
  }

  // Numeric source: co-integrate the moment column stack with rho so K_n(t)
  // is available at every internal step, not just at grid points.
  require(fock != nullptr, "propagate_tcl: numeric source needs a Fock configuration");
  tr.method = "tcl(order=" + std::to_string(order) + ",source=numeric)";
  const int D = fock->full_dim();
  const int d2 = D * D;
  const int n_ord = order + 1;
  LiouvilleAction act(p, *fock);
  CoherentState cs = coherent_state(p.z, *fock);
  Matrix rho_b = cs.amplitudes * cs.amplitudes.adjoint();

  auto offset = [&](int k, int c) { return (k * 4 + c) * d2; };
  const int rho_off = n_ord * 4 * d2;
  Vector y0 = Vector::Zero(rho_off + 4);
  Matrix e_ij = Matrix::Zero(2, 2);
  for (int c = 0; c < 4; ++c) {
    e_ij.setZero();
    e_ij(c / 2, c % 2) = 1.0;
    Eigen::Map<RowMat>(y0.data() + offset(0, c), D, D) = kron(e_ij, rho_b);
  }
  Eigen::Map<Eigen::Vector4cd>(y0.data() + rho_off) = vec4(rho_a0);

  Matrix x(D, D), xprev(D, D), out(D, D);
  std::vector<Matrix4> o(n_ord), odot(n_ord);
  OdeRhs rhs = [&](double t, const Vector& y, Vector& dy) {
    for (int c = 0; c < 4; ++c) {
      for (int k = 0; k < n_ord; ++k) {
        x = Eigen::Map<const RowMat>(y.data() + offset(k, c), D, D);
        act.apply_L0(x, out);
        if (k > 0) {
          xprev = Eigen::Map<const RowMat>(y.data() + offset(k - 1, c), D, D);
          act.add_L(xprev, out);
        }
        Eigen::Map<RowMat>(dy.data() + offset(k, c), D, D) = out;
        Matrix2 red_o = partial_trace_boson(x, *fock);
        Matrix2 red_odot = partial_trace_boson(out, *fock);
        o[k].col(c) = vec4(red_o);
        odot[k].col(c) = vec4(red_odot);
      }
    }
    const Matrix4 o0inv = o0_inverse(p, t).m;
    Matrix4 gen = k0m;
    double ln = 1.0;
    for (int n = 1; n <= order; ++n) {
      ln *= p.lambda;
      gen += ln * composition_sum(n, o, odot, o0inv);
    }
    Eigen::Map<Eigen::Vector4cd>(dy.data() + rho_off) =
        gen * Eigen::Map<const Eigen::Vector4cd>(y.data() + rho_off);
  };

  for (const Vector& y : integrate_ode(rhs, y0, grid, opts)) {
    Matrix2 rho = unvec4(Eigen::Map<const Eigen::Vector4cd>(y.data() + rho_off));
    tr.states.push_back(rho);
    tr.diagnostics.push_back(reduced_diagnostics(rho));
  }
  return tr;
}

Matrix2 matched_markov_solution(const ModelParams& p, const Matrix2& rho_a0,
                                double t, bool with_renormalizer) {
  require_density_matrix(rho_a0);
  Matrix4 r = with_renormalizer ? renormalizer(p).m : Matrix4(Matrix4::Identity());
  Matrix gen = p.lambda * p.lambda * k2(p, kInfiniteTime).m;
  Matrix4 prop = Matrix4(expm(Matrix(gen * t)));
  return unvec4(Eigen::Vector4cd(prop * (r * vec4(rho_a0))));
}

Trajectory matched_markov_trajectory(const ModelParams& p, const Matrix2& rho_a0,
                                     const TimeGrid& grid, bool with_renormalizer) {
  grid.validate();
  Trajectory tr;
  tr.grid = grid;
  tr.method = with_renormalizer ? "matched" : "matched(no-renormalizer)";
  for (double t : grid.points) {
    Matrix2 rho = matched_markov_solution(p, rho_a0, t, with_renormalizer);
    tr.states.push_back(rho);
    tr.diagnostics.push_back(reduced_diagnostics(rho));
  }
  return tr;
}

ErrorSeries compare(const Trajectory& a, const Trajectory& b) {
  if (a.grid.points.size() != b.grid.points.size())
    throw DimensionError("compare: trajectories on different grids");
  for (std::size_t i = 0; i < a.grid.points.size(); ++i)
    if (std::abs(a.grid.points[i] - b.grid.points[i]) > 1e-12)
      throw DimensionError("compare: trajectories on different grids");

  ErrorSeries es;
  es.grid = a.grid;
  es.trace_distance.reserve(a.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    Matrix2 diff = a.states[i] - b.states[i];
    Eigen::JacobiSVD<Matrix2> svd(diff);
    double td = 0.5 * svd.singularValues().sum();
    es.trace_distance.push_back(td);
    if (td >= es.max_error) {
      es.max_error = td;
      es.t_of_max = a.grid.points[i];
    }
  }
  es.terminal_error = es.trace_distance.back();
  return es;
}

std::vector<ScalingRow> order_scaling_report(const ModelParams& p, const FockConfig& fock,
                                             const Matrix2& rho_a0, const TimeGrid& grid,
                                             const std::vector<int>& orders,
                                             const std::vector<double>& lambdas,
                                             int jobs) {
  require(lambdas.size() >= 2, "order_scaling_report: need >= 2 lambda values");
  struct Cell {
    int order;
    double lambda;
    double max_error = 0.0;
  };
  std::vector<Cell> cells;
  for (int n : orders)
    for (double l : lambdas) cells.push_back({n, l, 0.0});

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cells.size());
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        ModelParams q = p;
        q.lambda = cells[i].lambda;
        Trajectory ex = propagate_exact(q, fock, rho_a0, grid);
        Trajectory tcl = propagate_tcl(q, rho_a0, grid, cells[i].order,
                                       CumulantSource::analytic);
        cells[i].max_error = compare(ex, tcl).max_error;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(jobs, int(cells.size())));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<ScalingRow> rows;
  for (int n : orders) {
    ScalingRow row;
    row.order = n;
    std::vector<double> lx, ly;
    for (const Cell& c : cells)
      if (c.order == n) {
        row.lambdas.push_back(c.lambda);
        row.max_errors.push_back(c.max_error);
        lx.push_back(std::log(c.lambda));
        ly.push_back(std::log(c.max_error));
      }
    row.slope = fit_slope(lx, ly);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tcljc
