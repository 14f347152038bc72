#include "tcljc/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tcljc/version.hpp"

namespace tcljc {

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header(const RunConfig& cfg) {
  std::ostringstream os;
  os << "# tcljc " << kVersion << "\n";
  os << "# fock_cutoff " << cfg.fock_cutoff << "\n";
  std::istringstream conf(cfg.canonical());
  std::string line;
  while (std::getline(conf, line)) os << "# config: " << line << "\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_trajectory_csv(const std::string& path, const RunConfig& cfg,
                          const Trajectory& tr) {
  std::ostringstream os;
  os << csv_header(cfg);
  os << "# method " << tr.method << "\n";
  const bool exact = tr.method == "exact";
  os << "t,rho00_re,rho01_re,rho01_im,rho11_re,trace_dev";
  if (exact) os << ",min_eig,top_fock_pop";
  os << "\n";
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    const Matrix2& r = tr.states[i];
    const PointDiagnostics& d = tr.diagnostics[i];
    os << csv_double(tr.grid.points[i]) << "," << csv_double(r(0, 0).real()) << ","
       << csv_double(r(0, 1).real()) << "," << csv_double(r(0, 1).imag()) << ","
       << csv_double(r(1, 1).real()) << "," << csv_double(std::abs(d.trace - 1.0));
    if (exact)
      os << "," << csv_double(d.min_eigenvalue) << "," << csv_double(d.top_fock);
    os << "\n";
  }
  write_text_file(path, os.str());
}

void write_comparison_csv(const std::string& path, const RunConfig& cfg,
                          const ErrorSeries& es) {
  std::ostringstream os;
  os << csv_header(cfg);
  os << "# max_error " << csv_double(es.max_error) << " at t "
     << csv_double(es.t_of_max) << "\n";
  os << "# terminal_error " << csv_double(es.terminal_error) << "\n";
  os << "t,trace_distance\n";
  for (std::size_t i = 0; i < es.trace_distance.size(); ++i)
    os << csv_double(es.grid.points[i]) << "," << csv_double(es.trace_distance[i])
       << "\n";
  write_text_file(path, os.str());
}

void write_scaling_csv(const std::string& path, const RunConfig& cfg,
                       const std::vector<ScalingRow>& rows) {
  std::ostringstream os;
  os << csv_header(cfg);
  os << "order,lambda,max_error,fitted_slope\n";
  for (const ScalingRow& row : rows)
    for (std::size_t i = 0; i < row.lambdas.size(); ++i)
      os << row.order << "," << csv_double(row.lambdas[i]) << ","
         << csv_double(row.max_errors[i]) << "," << csv_double(row.slope) << "\n";
  write_text_file(path, os.str());
}

}  // namespace tcljc
