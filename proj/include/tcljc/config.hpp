#pragma once

#include <optional>
#include <string>

#include "tcljc/dynamics.hpp"

namespace tcljc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class InitialStateKind { ground, excited, plus, explicit_matrix };

struct RunConfig {
  ModelParams model;

  // numerics
  bool cutoff_auto = true;
  int fock_cutoff = 0;  // resolved value (also when auto)
  double t_max = 0.0;   // resolved; defaults to 3/gamma
  int n_points = 301;
  OdeOptions ode;

  // task
  int order = 2;
  CumulantSource source = CumulantSource::analytic;
  InitialStateKind initial_state = InitialStateKind::excited;
  Matrix2 explicit_state = Matrix2::Zero();
  std::vector<double> lambda_list = {0.1, 0.05, 0.025};

  // output
  std::string out_dir = "out";
  bool emit_plot_script = false;

  Matrix2 initial_density() const;
  FockConfig fock() const { return FockConfig(fock_cutoff); }
  TimeGrid grid() const { return TimeGrid::uniform(t_max, std::size_t(n_points)); }

  /// Canonical key = value rendering of every resolved field, one per line.
  /// Identical configs render byte-identically (determinism contract).
  std::string canonical() const;
};

/// Strict INI-style parser: sections [model] [numerics] [task] [output],
/// "key = value" lines, '#'/';' comments. Unknown sections or keys are hard
/// errors; all ranges validated; fock_cutoff = auto resolved immediately.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

}  // namespace tcljc
