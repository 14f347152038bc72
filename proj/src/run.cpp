#include "tcljc/run.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include "tcljc/csv.hpp"
#include "tcljc/moments.hpp"
#include "tcljc/validate.hpp"

namespace tcljc {

namespace {

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void emit_plot_script(const RunConfig& cfg, const std::string& name,
                      const std::vector<std::string>& csvs) {
  if (!cfg.emit_plot_script || csvs.empty()) return;
  std::ostringstream os;
  os << "# gnuplot script for the " << name << " outputs\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel 't'\n";
  os << "plot ";
  for (std::size_t i = 0; i < csvs.size(); ++i) {
    if (i) os << ", ";
    os << "'" << csvs[i] << "' using 1:2 with lines";
  }
  os << "\n";
  write_text_file(join(cfg.out_dir, name + ".gp"), os.str());
}

void do_simulate_exact(const RunConfig& cfg) {
  Trajectory tr = propagate_exact(cfg.model, cfg.fock(), cfg.initial_density(),
                                  cfg.grid(), cfg.ode);
  write_trajectory_csv(join(cfg.out_dir, "trajectory_exact.csv"), cfg, tr);
  emit_plot_script(cfg, "simulate-exact", {"trajectory_exact.csv"});
}

void do_simulate_tcl(const RunConfig& cfg) {
  FockConfig fock = cfg.fock();
  Trajectory tr = propagate_tcl(cfg.model, cfg.initial_density(), cfg.grid(),
                                cfg.order, cfg.source, &fock, cfg.ode);
  write_trajectory_csv(join(cfg.out_dir, "trajectory_tcl.csv"), cfg, tr);
  emit_plot_script(cfg, "simulate-tcl", {"trajectory_tcl.csv"});
}

void do_compare(const RunConfig& cfg) {
  FockConfig fock = cfg.fock();
  Trajectory ex = propagate_exact(cfg.model, fock, cfg.initial_density(),
                                  cfg.grid(), cfg.ode);
  Trajectory tcl = propagate_tcl(cfg.model, cfg.initial_density(), cfg.grid(),
                                 cfg.order, cfg.source, &fock, cfg.ode);
  ErrorSeries es = compare(ex, tcl);
  write_trajectory_csv(join(cfg.out_dir, "trajectory_exact.csv"), cfg, ex);
  write_trajectory_csv(join(cfg.out_dir, "trajectory_tcl.csv"), cfg, tcl);
  write_comparison_csv(join(cfg.out_dir, "comparison.csv"), cfg, es);
  emit_plot_script(cfg, "compare", {"comparison.csv"});
}

void do_cumulant_table(const RunConfig& cfg) {
  TimeGrid grid = cfg.grid();
  MomentFamily fam =
      compute_moments(cfg.model, cfg.fock(), grid, cfg.order, cfg.ode);
  std::ostringstream os;
  os << csv_header(cfg);
  os << "t,order,row,col,analytic_re,analytic_im,numeric_re,numeric_im\n";
  for (std::size_t m = 0; m < grid.points.size(); ++m) {
    double t = grid.points[m];
    for (int n = 1; n <= cfg.order; ++n) {
      Matrix4 analytic;
      switch (n) {
        case 1: analytic = k1(cfg.model, t).m; break;
        case 2: analytic = k2(cfg.model, t).m; break;
        case 3: analytic = k3(cfg.model, t).m; break;
        default: analytic = k4_infinity(cfg.model).m; break;  // asymptote only
      }
      Matrix4 numeric = numeric_cumulant(n, int(m), fam, cfg.model).m;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          os << csv_double(t) << "," << n << "," << r << "," << c << ","
             << csv_double(analytic(r, c).real()) << ","
             << csv_double(analytic(r, c).imag()) << ","
             << csv_double(numeric(r, c).real()) << ","
             << csv_double(numeric(r, c).imag()) << "\n";
    }
  }
  write_text_file(join(cfg.out_dir, "cumulant_table.csv"), os.str());
}

void do_polish_demo(const RunConfig& cfg) {
  TimeGrid grid = cfg.grid();
  Matrix2 rho0 = cfg.initial_density();
  Trajectory ex = propagate_exact(cfg.model, cfg.fock(), rho0, grid, cfg.ode);
  Trajectory with_r = matched_markov_trajectory(cfg.model, rho0, grid, true);
  Trajectory without_r = matched_markov_trajectory(cfg.model, rho0, grid, false);
  std::ostringstream os;
  os << csv_header(cfg);
  os << "t,exact_rho11,matched_rho11,unmatched_rho11,err_matched,err_unmatched\n";
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    double e = std::real(ex.states[i](1, 1));
    double wm = std::real(with_r.states[i](1, 1));
    double wo = std::real(without_r.states[i](1, 1));
    os << csv_double(grid.points[i]) << "," << csv_double(e) << ","
       << csv_double(wm) << "," << csv_double(wo) << ","
       << csv_double(std::abs(wm - e)) << "," << csv_double(std::abs(wo - e))
       << "\n";
  }
  write_text_file(join(cfg.out_dir, "polish_demo.csv"), os.str());
  emit_plot_script(cfg, "polish-demo", {"polish_demo.csv"});
}

void do_scaling(const RunConfig& cfg, int jobs) {
  // error-scaling protocol window is [0, 3/gamma]
  TimeGrid grid = TimeGrid::uniform(3.0 / cfg.model.gamma, std::size_t(cfg.n_points));
  std::vector<ScalingRow> rows =
      order_scaling_report(cfg.model, cfg.fock(), cfg.initial_density(), grid,
                           {1, 2, 3}, cfg.lambda_list, jobs);
  write_scaling_csv(join(cfg.out_dir, "scaling.csv"), cfg, rows);
}

int do_validate(const RunConfig& cfg, int jobs, std::string& diagnosis) {
  std::vector<CheckResult> results = run_validation_suite(cfg, jobs);
  std::string report = render_validation_report(results);
  write_text_file(join(cfg.out_dir, "validate_report.csv"), report);
  std::cout << report;
  if (all_passed(results)) return 0;
  diagnosis = "validation suite reported failures (see validate_report.csv)";
  return 1;
}

}  // namespace

int run_subcommand(const RunConfig& cfg, const std::string& name, int jobs,
                   std::string& diagnosis) {
  try {
    std::filesystem::create_directories(cfg.out_dir);
    if (name == "simulate-exact") do_simulate_exact(cfg);
    else if (name == "simulate-tcl") do_simulate_tcl(cfg);
    else if (name == "compare") do_compare(cfg);
    else if (name == "cumulant-table") do_cumulant_table(cfg);
    else if (name == "polish-demo") do_polish_demo(cfg);
    else if (name == "scaling") do_scaling(cfg, jobs);
    else if (name == "validate") return do_validate(cfg, jobs, diagnosis);
    else {
      diagnosis = "unknown subcommand: " + name;
      return 2;
    }
    return 0;
  } catch (const ParseError& e) {
    diagnosis = std::string("config error: ") + e.what();
    return 2;
  } catch (const ValidationError& e) {
    diagnosis = std::string("config error: ") + e.what();
    return 2;
  } catch (const std::invalid_argument& e) {
    diagnosis = std::string("validation failure: ") + e.what();
    return 1;
  } catch (const TruncationError& e) {
    diagnosis = std::string("numerical failure: ") + e.what();
    return 3;
  } catch (const ConditioningError& e) {
    diagnosis = std::string("numerical failure: ") + e.what();
    return 3;
  } catch (const StepSizeUnderflow& e) {
    diagnosis = std::string("numerical failure: ") + e.what();
    return 3;
  } catch (const OverflowError& e) {
    diagnosis = std::string("numerical failure: ") + e.what();
    return 3;
  } catch (const DegenerateGamma& e) {
    diagnosis = std::string("numerical failure: ") + e.what();
    return 3;
  } catch (const RankDeficiencyError& e) {
    diagnosis = std::string("numerical failure: ") + e.what();
    return 3;
  } catch (const NumericalError& e) {
    diagnosis = std::string("numerical failure: ") + e.what();
    return 3;
  } catch (const DimensionError& e) {
    diagnosis = std::string("config error: ") + e.what();
    return 2;
  } catch (const std::exception& e) {
    diagnosis = std::string("numerical failure: ") + e.what();
    return 3;
  }
}

}  // namespace tcljc
