#include "tcljc.h"

#include <cstring>
#include <string>

#include "tcljc/run.hpp"
#include "tcljc/version.hpp"

using namespace tcljc;

namespace {

thread_local std::string g_last_error;

tcljc_status classify(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e))
    return TCLJC_ERR_CONFIG;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return TCLJC_ERR_VALIDATION;
  return TCLJC_ERR_NUMERICAL;
}

tcljc_status fail(const std::exception& e) {
  g_last_error = e.what();
  return classify(e);
}

Matrix2 unpack_state(const double rho[8]) {
  Matrix2 m;
  m(0, 0) = Complex(rho[0], rho[1]);
  m(0, 1) = Complex(rho[2], rho[3]);
  m(1, 0) = Complex(rho[4], rho[5]);
  m(1, 1) = Complex(rho[6], rho[7]);
  return m;
}

void pack_state(const Matrix2& m, double rho[8]) {
  rho[0] = m(0, 0).real();
  rho[1] = m(0, 0).imag();
  rho[2] = m(0, 1).real();
  rho[3] = m(0, 1).imag();
  rho[4] = m(1, 0).real();
  rho[5] = m(1, 0).imag();
  rho[6] = m(1, 1).real();
  rho[7] = m(1, 1).imag();
}

ModelParams unpack_params(const tcljc_params* p) {
  ModelParams m;
  m.omega_a = p->omega_a;
  m.omega_c = p->omega_c;
  m.gamma = p->gamma;
  m.g = Complex(p->g_re, p->g_im);
  m.z = Complex(p->z_re, p->z_im);
  m.lambda = p->lambda;
  return m;
}

}  // namespace

struct tcljc_trajectory {
  Trajectory tr;
};

extern "C" {

const char* tcljc_version(void) { return kVersion; }

const char* tcljc_last_error(void) { return g_last_error.c_str(); }

void tcljc_params_default(tcljc_params* out) {
  ModelParams m;
  out->omega_a = m.omega_a;
  out->omega_c = m.omega_c;
  out->gamma = m.gamma;
  out->g_re = m.g.real();
  out->g_im = m.g.imag();
  out->z_re = m.z.real();
  out->z_im = m.z.imag();
  out->lambda = m.lambda;
}

int tcljc_auto_cutoff(double z_re, double z_im) {
  return FockConfig::auto_for(Complex(z_re, z_im)).cutoff;
}

tcljc_status tcljc_simulate_exact(const tcljc_params* params, int fock_cutoff,
                                  const double rho0[8], double t_max, int n_points,
                                  tcljc_trajectory** out) {
  try {
    ModelParams p = unpack_params(params);
    FockConfig fock = fock_cutoff > 0 ? FockConfig(fock_cutoff)
                                      : FockConfig::auto_for(p.z);
    TimeGrid grid = TimeGrid::uniform(t_max, std::size_t(n_points));
    auto* h = new tcljc_trajectory{propagate_exact(p, fock, unpack_state(rho0), grid)};
    *out = h;
    return TCLJC_OK;
  } catch (const std::exception& e) {
    *out = nullptr;
    return fail(e);
  }
}

tcljc_status tcljc_simulate_tcl(const tcljc_params* params, int order,
                                int source_numeric, int fock_cutoff,
                                const double rho0[8], double t_max, int n_points,
                                tcljc_trajectory** out) {
  try {
    ModelParams p = unpack_params(params);
    TimeGrid grid = TimeGrid::uniform(t_max, std::size_t(n_points));
    CumulantSource src =
        source_numeric ? CumulantSource::numeric : CumulantSource::analytic;
    Trajectory tr;
    if (src == CumulantSource::numeric) {
      FockConfig fock = fock_cutoff > 0 ? FockConfig(fock_cutoff)
                                        : FockConfig::auto_for(p.z);
      tr = propagate_tcl(p, unpack_state(rho0), grid, order, src, &fock);
    } else {
      tr = propagate_tcl(p, unpack_state(rho0), grid, order, src);
    }
    *out = new tcljc_trajectory{std::move(tr)};
    return TCLJC_OK;
  } catch (const std::exception& e) {
    *out = nullptr;
    return fail(e);
  }
}

size_t tcljc_trajectory_length(const tcljc_trajectory* tr) {
  return tr ? tr->tr.states.size() : 0;
}

tcljc_status tcljc_trajectory_point(const tcljc_trajectory* tr, size_t i,
                                    double* t, double rho[8]) {
  if (!tr || i >= tr->tr.states.size()) {
    g_last_error = "trajectory index out of range";
    return TCLJC_ERR_VALIDATION;
  }
  *t = tr->tr.grid.points[i];
  pack_state(tr->tr.states[i], rho);
  return TCLJC_OK;
}

void tcljc_trajectory_free(tcljc_trajectory* tr) { delete tr; }

tcljc_status tcljc_matched_solution(const tcljc_params* params, const double rho0[8],
                                    double t, int with_renormalizer,
                                    double rho_out[8]) {
  try {
    Matrix2 out = matched_markov_solution(unpack_params(params), unpack_state(rho0),
                                          t, with_renormalizer != 0);
    pack_state(out, rho_out);
    return TCLJC_OK;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

int tcljc_run(const char* subcommand, const char* config_path, const char* out_dir,
              int jobs, int order_override, const char* source_override) {
  std::string diagnosis;
  try {
    RunConfig cfg = load_config_file(config_path ? config_path : "");
    if (out_dir && *out_dir) cfg.out_dir = out_dir;
    if (order_override != 0) {
      if (order_override < 1 || order_override > 4)
        throw ValidationError("--order must lie in {1,2,3,4}");
      cfg.order = order_override;
    }
    if (source_override && *source_override) {
      std::string s = source_override;
      if (s == "analytic") cfg.source = CumulantSource::analytic;
      else if (s == "numeric") cfg.source = CumulantSource::numeric;
      else throw ValidationError("--source must be analytic|numeric");
    }
    int code = run_subcommand(cfg, subcommand ? subcommand : "", std::max(1, jobs),
                              diagnosis);
    g_last_error = diagnosis;
    return code;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return classify(e);
  }
}

}  // extern "C"
