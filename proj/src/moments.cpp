#include "tcljc/moments.hpp"

#include <cmath>

#include "tcljc/expm.hpp"

namespace tcljc {

namespace {

using RowMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Matrix4 atom_free_generator(const ModelParams& p) {
  auto [sp, sm] = atom_ops();
  Matrix pe = sp * sm;
  Matrix m = Complex(0, -1) * p.omega_a * (left_mult(pe) - right_mult(pe));
  return Matrix4(m);
}

void set_column(Matrix4& m, int c, const Matrix& rho_a) {
  m(0, c) = rho_a(0, 0);
  m(1, c) = rho_a(0, 1);
  m(2, c) = rho_a(1, 0);
  m(3, c) = rho_a(1, 1);
}

}  // namespace

std::vector<Composition> enumerate_compositions(int n) {
  require(n >= 1 && n <= 6, "enumerate_compositions: 1 <= n <= 6");
  std::vector<Composition> out;
  // head k0 in 0..n, tail = compositions of n - k0 into positive parts
  std::vector<int> tail;
  auto emit = [&](int k0) {
    Composition c;
    c.parts.reserve(tail.size() + 1);
    c.parts.push_back(k0);
    c.parts.insert(c.parts.end(), tail.begin(), tail.end());
    c.q = static_cast<int>(tail.size());
    c.sign = c.q % 2 == 0 ? 1 : -1;
    out.push_back(std::move(c));
  };
  auto rec = [&](auto&& self, int k0, int rest) -> void {
    if (rest == 0) {
      emit(k0);
      return;
    }
    for (int part = 1; part <= rest; ++part) {
      tail.push_back(part);
      self(self, k0, rest - part);
      tail.pop_back();
    }
  };
  for (int k0 = 0; k0 <= n; ++k0) rec(rec, k0, n - k0);
  return out;
}

MomentFamily compute_moments(const ModelParams& p, const FockConfig& fock,
                             const TimeGrid& grid, int order_max,
                             const OdeOptions& opts) {
  require(order_max >= 1, "compute_moments: order_max >= 1");
  grid.validate();
  const int D = fock.full_dim();
  const int d2 = D * D;
  const int n_ord = order_max + 1;
  LiouvilleAction act(p, fock);
  CoherentState cs = coherent_state(p.z, fock);
  Matrix rho_b = cs.amplitudes * cs.amplitudes.adjoint();

  // State: w_k for k = 0..order_max, 4 columns each (one per atomic basis
  // matrix unit), stored as row-stacked D x D blocks.
  auto offset = [&](int k, int c) { return (k * 4 + c) * d2; };
  Vector y0 = Vector::Zero(n_ord * 4 * d2);
  Matrix e_ij = Matrix::Zero(2, 2);
  for (int c = 0; c < 4; ++c) {
    e_ij.setZero();
    e_ij(c / 2, c % 2) = 1.0;
    Matrix full = kron(e_ij, rho_b);
    Eigen::Map<RowMat>(y0.data() + offset(0, c), D, D) = full;
  }

  Matrix x(D, D), xprev(D, D), out(D, D);
  OdeRhs rhs = [&](double, const Vector& y, Vector& dy) {
    for (int c = 0; c < 4; ++c) {
      for (int k = 0; k < n_ord; ++k) {
        x = Eigen::Map<const RowMat>(y.data() + offset(k, c), D, D);
        act.apply_L0(x, out);
        if (k > 0) {
          xprev = Eigen::Map<const RowMat>(y.data() + offset(k - 1, c), D, D);
          act.add_L(xprev, out);
        }
        Eigen::Map<RowMat>(dy.data() + offset(k, c), D, D) = out;
      }
    }
  };

  std::vector<Vector> sol = integrate_ode(rhs, y0, grid, opts);

  MomentFamily fam;
  fam.order_max = order_max;
  fam.grid = grid;
  fam.O.resize(grid.points.size());
  fam.Odot.resize(grid.points.size());
  for (std::size_t m = 0; m < grid.points.size(); ++m) {
    fam.O[m].resize(n_ord);
    fam.Odot[m].resize(n_ord);
    const Vector& y = sol[m];
    for (int k = 0; k < n_ord; ++k) {
      ReducedMap o, odot;
      o.order = odot.order = k;
      o.time = odot.time = grid.points[m];
      for (int c = 0; c < 4; ++c) {
        x = Eigen::Map<const RowMat>(y.data() + offset(k, c), D, D);
        set_column(o.m, c, partial_trace_boson(x, fock));
        act.apply_L0(x, out);
        if (k > 0) {
          xprev = Eigen::Map<const RowMat>(y.data() + offset(k - 1, c), D, D);
          act.add_L(xprev, out);
        }
        set_column(odot.m, c, partial_trace_boson(out, fock));
      }
      fam.O[m][k] = std::move(o);
      fam.Odot[m][k] = std::move(odot);
    }
  }
  return fam;
}

FullMomentFamily compute_F(const ModelParams& p, const FockConfig& fock,
                           const TimeGrid& grid, int order_max,
                           InteractionMethod method, const OdeOptions& opts) {
  require(order_max >= 1, "compute_F: order_max >= 1");
  grid.validate();
  const int D = fock.full_dim();
  const int d2 = D * D;
  const Eigen::Index blk = Eigen::Index(d2) * d2;

  // State: F_1..F_order_max flattened; F_0 = I never varies.
  Vector y0 = Vector::Zero(order_max * blk);
  Matrix f_prev(d2, d2);
  OdeRhs rhs = [&](double t, const Vector& y, Vector& dy) {
    Matrix lt = interaction_L_t(p, fock, t, method).m;
    for (int k = 1; k <= order_max; ++k) {
      if (k == 1)
        f_prev.setIdentity(d2, d2);
      else
        f_prev = Eigen::Map<const Matrix>(y.data() + (k - 2) * blk, d2, d2);
      Eigen::Map<Matrix>(dy.data() + (k - 1) * blk, d2, d2) = lt * f_prev;
    }
  };

  std::vector<Vector> sol = integrate_ode(rhs, y0, grid, opts);

  FullMomentFamily fam;
  fam.order_max = order_max;
  fam.grid = grid;
  fam.F.resize(grid.points.size());
  for (std::size_t m = 0; m < grid.points.size(); ++m) {
    fam.F[m].reserve(order_max + 1);
    fam.F[m].emplace_back(D, Matrix(Matrix::Identity(d2, d2)), "F0");
    for (int k = 1; k <= order_max; ++k) {
      Matrix fk = Eigen::Map<const Matrix>(sol[m].data() + (k - 1) * blk, d2, d2);
      fam.F[m].emplace_back(D, std::move(fk), "F" + std::to_string(k));
    }
  }
  return fam;
}

MomentFamily project_moments(const FullMomentFamily& fam, const ModelParams& p,
                             const FockConfig& fock) {
  const int D = fock.full_dim();
  FreeGenerator l0 = build_L0(p, fock);
  MomentFamily out;
  out.order_max = fam.order_max;
  out.grid = fam.grid;
  out.O.resize(fam.grid.points.size());
  out.Odot.resize(fam.grid.points.size());
  for (std::size_t m = 0; m < fam.grid.points.size(); ++m) {
    const double t = fam.grid.points[m];
    Matrix e_l0t = expm(Matrix(l0.full.m * t));
    Matrix lt = interaction_L_t(p, fock, t, InteractionMethod::heisenberg).m;
    out.O[m].resize(fam.order_max + 1);
    out.Odot[m].resize(fam.order_max + 1);
    for (int k = 0; k <= fam.order_max; ++k) {
      Matrix ef = e_l0t * fam.F[m][k].m;
      ReducedMap o = projector_apply(SuperOperator(D, ef), p, fock);
      o.order = k;
      o.time = t;
      Matrix efdot = l0.full.m * ef;
      if (k > 0) efdot += e_l0t * (lt * fam.F[m][k - 1].m);
      ReducedMap odot = projector_apply(SuperOperator(D, std::move(efdot)), p, fock);
      odot.order = k;
      odot.time = t;
      out.O[m][k] = std::move(o);
      out.Odot[m][k] = std::move(odot);
    }
  }
  return out;
}

ReducedMap o0_inverse(const ModelParams& p, double t) {
  Matrix gen = atom_free_generator(p);
  ReducedMap out;
  out.order = 0;
  out.time = t;
  out.m = Matrix4(expm(Matrix(-gen * t)));
  return out;
}

Matrix4 composition_sum(int n, const std::vector<Matrix4>& o,
                        const std::vector<Matrix4>& odot, const Matrix4& o0inv) {
  require(static_cast<int>(o.size()) > n && static_cast<int>(odot.size()) > n,
          "composition_sum: families too short for requested order");
  Matrix4 sum = Matrix4::Zero();
  for (const Composition& c : enumerate_compositions(n)) {
    Matrix4 term = odot[c.parts[0]] * o0inv;
    for (std::size_t j = 1; j < c.parts.size(); ++j)
      term = term * o[c.parts[j]] * o0inv;
    sum += double(c.sign) * term;
  }
  return sum;
}

ReducedMap numeric_cumulant(int n, int time_index, const MomentFamily& fam,
                            const ModelParams& p) {
  require(n >= 1 && n <= fam.order_max, "numeric_cumulant: need 1 <= n <= order_max");
  require(time_index >= 0 &&
              time_index < static_cast<int>(fam.grid.points.size()),
          "numeric_cumulant: time index out of range");
  const double t = fam.grid.points[time_index];
  const Matrix4 o0inv = o0_inverse(p, t).m;
  std::vector<Matrix4> o, odot;
  for (int k = 0; k <= fam.order_max; ++k) {
    o.push_back(fam.O[time_index][k].m);
    odot.push_back(fam.Odot[time_index][k].m);
  }
  ReducedMap out;
  out.order = n;
  out.time = t;
  out.m = composition_sum(n, o, odot, o0inv);
  return out;
}

}  // namespace tcljc
