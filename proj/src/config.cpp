#include "tcljc/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace tcljc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double d;
  try {
    d = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ValidationError("key '" + key + "': cannot parse number '" + value + "'");
  }
  if (pos != value.size())
    throw ValidationError("key '" + key + "': trailing junk in '" + value + "'");
  if (!std::isfinite(d))
    throw ValidationError("key '" + key + "': value must be finite");
  return d;
}

int parse_int(const std::string& key, const std::string& value) {
  double d = parse_double(key, value);
  int i = int(std::lround(d));
  if (double(i) != d)
    throw ValidationError("key '" + key + "': integer required, got '" + value + "'");
  return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ValidationError("key '" + key + "': boolean required, got '" + value + "'");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Matrix2 RunConfig::initial_density() const {
  switch (initial_state) {
    case InitialStateKind::ground: return ground_state();
    case InitialStateKind::excited: return excited_state();
    case InitialStateKind::plus: return plus_state();
    case InitialStateKind::explicit_matrix: return explicit_state;
  }
  return excited_state();
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "[model]\n"
     << "omega_a = " << fmt(model.omega_a) << "\n"
     << "omega_c = " << fmt(model.omega_c) << "\n"
     << "gamma = " << fmt(model.gamma) << "\n"
     << "g_re = " << fmt(model.g.real()) << "\n"
     << "g_im = " << fmt(model.g.imag()) << "\n"
     << "z_re = " << fmt(model.z.real()) << "\n"
     << "z_im = " << fmt(model.z.imag()) << "\n"
     << "lambda = " << fmt(model.lambda) << "\n"
     << "[numerics]\n"
     << "fock_cutoff = " << fock_cutoff << (cutoff_auto ? " # auto" : "") << "\n"
     << "t_max = " << fmt(t_max) << "\n"
     << "n_points = " << n_points << "\n"
     << "ode_rel_tol = " << fmt(ode.rel_tol) << "\n"
     << "ode_abs_tol = " << fmt(ode.abs_tol) << "\n"
     << "[task]\n"
     << "order = " << order << "\n"
     << "source = " << (source == CumulantSource::analytic ? "analytic" : "numeric") << "\n";
  os << "initial_state = ";
  switch (initial_state) {
    case InitialStateKind::ground: os << "ground"; break;
    case InitialStateKind::excited: os << "excited"; break;
    case InitialStateKind::plus: os << "plus"; break;
    case InitialStateKind::explicit_matrix:
      os << "explicit " << fmt(explicit_state(0, 0).real()) << " "
         << fmt(explicit_state(0, 1).real()) << " " << fmt(explicit_state(0, 1).imag())
         << " " << fmt(explicit_state(1, 1).real());
      break;
  }
  os << "\nlambda_list =";
  for (double l : lambda_list) os << " " << fmt(l);
  os << "\n[output]\n"
     << "directory = " << out_dir << "\n"
     << "emit_plot_script = " << (emit_plot_script ? "true" : "false") << "\n";
  return os.str();
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  bool t_max_set = false;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  // explicit-state components, only valid with initial_state = explicit
  std::map<std::string, double> rho0;

  while (std::getline(in, line)) {
    ++lineno;
    std::size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "model" && section != "numerics" && section != "task" &&
          section != "output")
        throw ValidationError("line " + std::to_string(lineno) + ": unknown section [" +
                              section + "]");
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError("line " + std::to_string(lineno) + ": empty key or value");
    if (section.empty())
      throw ParseError("line " + std::to_string(lineno) + ": key before any section");

    if (section == "model") {
      if (key == "omega_a") cfg.model.omega_a = parse_double(key, value);
      else if (key == "omega_c") cfg.model.omega_c = parse_double(key, value);
      else if (key == "gamma") cfg.model.gamma = parse_double(key, value);
      else if (key == "g_re") cfg.model.g = Complex(parse_double(key, value), cfg.model.g.imag());
      else if (key == "g_im") cfg.model.g = Complex(cfg.model.g.real(), parse_double(key, value));
      else if (key == "z_re") cfg.model.z = Complex(parse_double(key, value), cfg.model.z.imag());
      else if (key == "z_im") cfg.model.z = Complex(cfg.model.z.real(), parse_double(key, value));
      else if (key == "lambda") cfg.model.lambda = parse_double(key, value);
      else throw ValidationError("unknown key '" + key + "' in [model]");
    } else if (section == "numerics") {
      if (key == "fock_cutoff") {
        if (value == "auto") {
          cfg.cutoff_auto = true;
        } else {
          cfg.cutoff_auto = false;
          cfg.fock_cutoff = parse_int(key, value);
        }
      } else if (key == "t_max") {
        cfg.t_max = parse_double(key, value);
        t_max_set = true;
      } else if (key == "n_points") cfg.n_points = parse_int(key, value);
      else if (key == "ode_rel_tol") cfg.ode.rel_tol = parse_double(key, value);
      else if (key == "ode_abs_tol") cfg.ode.abs_tol = parse_double(key, value);
      else throw ValidationError("unknown key '" + key + "' in [numerics]");
    } else if (section == "task") {
      if (key == "order") cfg.order = parse_int(key, value);
      else if (key == "source") {
        if (value == "analytic") cfg.source = CumulantSource::analytic;
        else if (value == "numeric") cfg.source = CumulantSource::numeric;
        else throw ValidationError("key 'source': expected analytic|numeric");
      } else if (key == "initial_state") {
        if (value == "ground") cfg.initial_state = InitialStateKind::ground;
        else if (value == "excited") cfg.initial_state = InitialStateKind::excited;
        else if (value == "plus") cfg.initial_state = InitialStateKind::plus;
        else if (value == "explicit") cfg.initial_state = InitialStateKind::explicit_matrix;
        else throw ValidationError("key 'initial_state': expected ground|excited|plus|explicit");
      } else if (key == "rho00_re" || key == "rho01_re" || key == "rho01_im" ||
                 key == "rho11_re") {
        rho0[key] = parse_double(key, value);
      } else if (key == "lambda_list") {
        cfg.lambda_list.clear();
        std::istringstream ls(value);
        std::string item;
        while (std::getline(ls, item, ',')) {
          item = trim(item);
          if (!item.empty()) cfg.lambda_list.push_back(parse_double(key, item));
        }
        if (cfg.lambda_list.empty())
          throw ValidationError("key 'lambda_list': at least one value required");
      } else throw ValidationError("unknown key '" + key + "' in [task]");
    } else {  // output
      if (key == "directory") cfg.out_dir = value;
      else if (key == "emit_plot_script") cfg.emit_plot_script = parse_bool(key, value);
      else throw ValidationError("unknown key '" + key + "' in [output]");
    }
  }

  // range checks
  auto bad = [](const std::string& k, const std::string& why) {
    throw ValidationError("key '" + k + "': " + why);
  };
  if (cfg.model.gamma < 0) bad("gamma", "must be >= 0");
  if (cfg.model.lambda < 0 || cfg.model.lambda >= 1) bad("lambda", "must lie in [0, 1)");
  if (cfg.n_points < 2) bad("n_points", "must be >= 2");
  if (cfg.ode.rel_tol <= 0 || cfg.ode.abs_tol <= 0)
    bad("ode_rel_tol/ode_abs_tol", "must be > 0");
  if (cfg.order < 1 || cfg.order > 4) bad("order", "must lie in {1,2,3,4}");
  if (!cfg.cutoff_auto && cfg.fock_cutoff < 1) bad("fock_cutoff", "must be >= 1 or auto");

  if (cfg.cutoff_auto) cfg.fock_cutoff = FockConfig::auto_for(cfg.model.z).cutoff;
  if (!t_max_set) {
    if (cfg.model.gamma <= 0) bad("t_max", "required when gamma = 0 (no 3/gamma default)");
    cfg.t_max = 3.0 / cfg.model.gamma;
  }
  if (cfg.t_max <= 0) bad("t_max", "must be > 0");

  if (cfg.initial_state == InitialStateKind::explicit_matrix) {
    for (const char* k : {"rho00_re", "rho01_re", "rho01_im", "rho11_re"})
      if (!rho0.count(k)) bad(k, "required for initial_state = explicit");
    cfg.explicit_state(0, 0) = rho0["rho00_re"];
    cfg.explicit_state(0, 1) = Complex(rho0["rho01_re"], rho0["rho01_im"]);
    cfg.explicit_state(1, 0) = Complex(rho0["rho01_re"], -rho0["rho01_im"]);
    cfg.explicit_state(1, 1) = rho0["rho11_re"];
  } else if (!rho0.empty()) {
    bad(rho0.begin()->first, "only valid with initial_state = explicit");
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace tcljc
