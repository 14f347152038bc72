#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tcljc/cumulants.hpp"
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

Eigen::RowVector4cd trace_functional() {
  Eigen::RowVector4cd tr;
  tr << 1.0, 0.0, 0.0, 1.0;
  return tr;
}

Matrix2 random_hermitian2(std::mt19937& rng) {
  auto u = [&rng] { return 2.0 * (rng() / 4294967296.0) - 1.0; };
  Matrix2 m;
  m << Complex(u(), u()), Complex(u(), u()), Complex(u(), u()), Complex(u(), u());
  return (m + m.adjoint().eval()) / 2.0;
}

}  // namespace

TEST_CASE("zeroth order: free atomic rotation") {
  ModelParams p = default_params();
  p.omega_a = 0.0;
  CHECK(k0(p).m.cwiseAbs().maxCoeff() == 0.0);

  p = default_params();
  ReducedMap k = k0(p);
  Matrix2 diag;
  diag << 0.37, 0, 0, 0.63;
  CHECK(k.apply(diag).cwiseAbs().maxCoeff() < 1e-15);

  Eigen::ComplexEigenSolver<Matrix4> es(k.m);
  // generator eigenvalues: {0, 0, +i w_A, -i w_A}
  std::vector<double> imag;
  for (int i = 0; i < 4; ++i) imag.push_back(es.eigenvalues()(i).imag());
  std::sort(imag.begin(), imag.end());
  CHECK(imag[0] == doctest::Approx(-p.omega_a).epsilon(1e-12));
  CHECK(imag[3] == doctest::Approx(p.omega_a).epsilon(1e-12));
}

TEST_CASE("first cumulant: drive shape and envelope") {
  ModelParams p = default_params();
  ModelParams pz = p;
  pz.z = 0.0;
  for (double t : {0.0, 0.7, 3.1}) CHECK(k1(pz, t).m.norm() == 0.0);

  auto [sp, sm] = atom_ops();
  Matrix h = p.g * p.z * sp + std::conj(p.g * p.z) * sm;
  Matrix want = Complex(0, -1) * (left_mult(h) - right_mult(h));
  CHECK((k1(p, 0.0).m - Matrix4(want)).cwiseAbs().maxCoeff() < 1e-14);

  p.gamma = 0.5;
  double r = k1(p, 3.0).m.norm() / k1(p, 1.0).m.norm();
  CHECK(r == doctest::Approx(std::exp(-p.gamma)).epsilon(1e-12));
}

TEST_CASE("second-order rate functions") {
  ModelParams p = default_params();
  auto [f0, ph0] = f2_phi2(p, 0.0);
  CHECK(f0 == doctest::Approx(-p.gamma).epsilon(1e-14));
  CHECK(ph0 == doctest::Approx(-2.0 * p.delta_omega()).epsilon(1e-14));

  auto [fl, phl] = f2_phi2(p, 200.0 / p.gamma);
  CHECK(std::abs(fl) < 1e-12);
  CHECK(std::abs(phl) < 1e-12);

  ModelParams q = p;
  q.gamma = 0.0;
  q.omega_a = 1.0;
  q.omega_c = 0.0;
  auto [fq, phq] = f2_phi2(q, M_PI / 2.0);
  CHECK(fq == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(phq) < 1e-12);
}

TEST_CASE("second cumulant: boundary values and Markov limit") {
  ModelParams p = default_params();
  CHECK(k2(p, 0.0).m.cwiseAbs().maxCoeff() < 1e-14);

  ReducedMap inf = k2(p, kInfiniteTime);
  double rate = p.gamma * std::norm(p.g) / p.gamma_abs2();
  // population column: d/dt rho11 = -rate * rho11
  Eigen::Vector4cd excited;
  excited << 0, 0, 0, 1;
  Eigen::Vector4cd out = inf.m * excited;
  CHECK(std::abs(out(3) + rate) < 1e-14);
  CHECK(std::abs(out(0) - rate) < 1e-14);

  GkslLikeForm form = k2_form(p, kInfiniteTime);
  CHECK((form.reassemble() - inf.m).cwiseAbs().maxCoeff() < 1e-12);
  REQUIRE(form.dissipator_terms.size() == 1);
  CHECK(form.dissipator_terms[0].first == doctest::Approx(rate).epsilon(1e-12));

  // finite-t round trip too
  GkslLikeForm ft = k2_form(p, 1.3);
  CHECK((ft.reassemble() - k2(p, 1.3).m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("non-Markovian rate witness") {
  ModelParams hi = default_params();
  hi.gamma = 0.05;
  hi.omega_a = 1.0;
  hi.omega_c = 0.0;
  double lo_min = 1e9;
  for (int i = 0; i <= 4000; ++i) {
    double t = 20.0 * i / 4000.0;
    lo_min = std::min(lo_min, hi.gamma + f2_phi2(hi, t).first);
  }
  CHECK(lo_min < 0.0);

  ModelParams mk = default_params();
  mk.gamma = 2.0;
  mk.omega_a = 0.1;
  mk.omega_c = 0.0;
  double mk_min = 1e9;
  for (int i = 0; i <= 4000; ++i) {
    double t = 20.0 * i / 4000.0;
    mk_min = std::min(mk_min, mk.gamma + f2_phi2(mk, t).first);
  }
  CHECK(mk_min >= 0.0);
}

TEST_CASE("third cumulant: coefficient, form equivalence, boundaries") {
  ModelParams p = default_params();
  CHECK(a3(p, 0.0).first < 1e-14);
  CHECK(a3(p, 80.0 / p.gamma).first < 1e-12);
  ModelParams pz = p;
  pz.z = 0.0;
  CHECK(a3(pz, 1.0).first == 0.0);

  ModelParams q;
  q.gamma = 0.3;
  q.omega_a = 0.2;
  q.omega_c = 0.0;
  q.g = 0.1;
  q.z = 2.0;
  GkslLikeForm form = k3_form(q, 1.7);
  CHECK((form.reassemble() - k3(q, 1.7).m).cwiseAbs().maxCoeff() < 1e-12);
  REQUIRE(form.dissipator_terms.size() == 2);
  CHECK(form.dissipator_terms[0].first == doctest::Approx(-1.0));
  CHECK(form.dissipator_terms[1].first == doctest::Approx(1.0));

  CHECK((trace_functional() * k3(q, 1.7).m).norm() < 1e-13);
  CHECK(k3(p, 0.0).m.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("fourth-order asymptote: signed rate retained") {
  ModelParams p = default_params();
  p.omega_a = p.omega_c;  // zero detuning
  GkslLikeForm f0 = k4_infinity_form(p);
  CHECK(f0.hamiltonian.norm() < 1e-15);
  REQUIRE(f0.dissipator_terms.size() == 1);
  double want = 16.0 * std::pow(std::abs(p.g), 4) / std::pow(p.gamma, 3);
  CHECK(f0.dissipator_terms[0].first == doctest::Approx(want).epsilon(1e-12));

  ModelParams hd = default_params();
  hd.gamma = 0.1;
  hd.omega_a = 1.0;
  hd.omega_c = 0.0;
  CHECK(k4_infinity_form(hd).dissipator_terms[0].first < 0.0);
  CHECK((k4_infinity_form(hd).reassemble() - k4_infinity(hd).m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trace annihilation and Hermiticity preservation at every order") {
  ModelParams p = default_params();
  std::mt19937 rng(23);
  for (double t : {0.3, 1.1, 4.0}) {
    for (const ReducedMap& k : {k0(p), k1(p, t), k2(p, t), k3(p, t), k4_infinity(p)}) {
      CHECK((trace_functional() * k.m).norm() < 1e-12);
      Matrix2 rho = random_hermitian2(rng);
      Matrix2 out = k.apply(rho);
      CHECK((out - out.adjoint().eval()).norm() < 1e-12);
    }
  }
}

TEST_CASE("long-time envelope of the transient cumulants") {
  ModelParams p = default_params();
  Matrix4 k2inf = k2(p, kInfiniteTime).m;
  double prev_c = -1.0;
  for (double t : {2.0, 4.0, 8.0, 16.0}) {
    double c2 = (k2(p, t).m - k2inf).norm() / std::exp(-p.gamma * t / 2.0);
    double c3 = k3(p, t).m.norm() / std::exp(-p.gamma * t / 2.0);
    CHECK(c2 < 10.0);
    CHECK(c3 < 10.0);
    (void)prev_c;
  }
}

TEST_CASE("interaction-frame first cumulant") {
  ModelParams p = default_params();
  double t = 2.0;
  Matrix4 conj = expm(-k0(p).m * t) * k1(p, t).m * expm(k0(p).m * t);
  CHECK((k1_interaction(p, t).m - Matrix4(conj)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((k1_interaction(p, 0.0).m - k1(p, 0.0).m).cwiseAbs().maxCoeff() == 0.0);
  ModelParams pz = p;
  pz.z = 0.0;
  CHECK(k1_interaction(pz, 1.0).m.norm() == 0.0);
}

TEST_CASE("initial-condition renormalizer") {
  ModelParams p = default_params();
  ModelParams p0 = p;
  p0.lambda = 0.0;
  CHECK((renormalizer(p0).m - Matrix4::Identity()).norm() < 1e-15);
  ModelParams pz = p;
  pz.z = 0.0;
  CHECK((renormalizer(pz).m - Matrix4::Identity()).norm() < 1e-15);

  std::mt19937 rng(41);
  Matrix2 rho = random_hermitian2(rng);
  rho += 2.0 * Matrix2::Identity();
  rho /= rho.trace().real();
  ReducedMap r = renormalizer(p);
  Matrix2 out = r.apply(rho);
  CHECK(std::abs(out.trace() - 1.0) < 1e-13);
  CHECK((out - out.adjoint().eval()).norm() < 1e-13);

  // quadrature oracle for the correction integral (composite Simpson)
  ModelParams q = default_params();
  q.gamma = 0.4;
  q.omega_a = 1.3;
  q.omega_c = 1.0;
  q.g = 0.2;
  q.z = 1.5;
  Matrix4 integral = Matrix4::Zero();
  const int n = 20000;
  const double tmax = 200.0;
  const double h = tmax / n;
  for (int i = 0; i <= n; ++i) {
    double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    integral += w * k1_interaction(q, i * h).m;
  }
  integral *= h / 3.0;
  Matrix4 want = Matrix4::Identity() + q.lambda * integral;
  CHECK((renormalizer(q).m - want).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("closed-form excited population") {
  ModelParams p = default_params();
  Matrix2 rho0 = Matrix2::Zero();
  rho0(1, 1) = 1.0;
  double rate = std::norm(p.g) * p.gamma / p.gamma_abs2();
  for (double t : {0.0, 1.0, 5.0})
    CHECK(rho11_closed_form(p, rho0, t) == doctest::Approx(std::exp(-rate * t)).epsilon(1e-14));

  Matrix2 rhoc;
  rhoc << 0.5, Complex(0.3, 0.1), Complex(0.3, -0.1), 0.5;
  double jump = p.lambda * (2.0 * p.delta_omega() / p.gamma_abs2()) *
                (p.g * p.z * rhoc(1, 0)).real();
  CHECK(rho11_closed_form(p, rhoc, 0.0) == doctest::Approx(1.0 + jump).epsilon(1e-14));
}
