// crofton-lab: config file parsing
#include "crofton/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "crofton/errors.hpp"

namespace crofton {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_positive(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    if (!(d > 0.0)) throw ConfigError(key + " must be positive, got " + v);
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
  }
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
  }
}

long parse_count(const std::string& key, const std::string& v) {
  double d = parse_positive(key, v);
  if (d != std::floor(d)) throw ConfigError(key + " must be an integer, got " + v);
  return static_cast<long>(d);
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "metric.rho") cfg.rho = value;
  else if (key == "metric.grid_n") cfg.grid_n = int(parse_count(key, value));
  else if (key == "solver.tol") cfg.tol = parse_positive(key, value);
  else if (key == "solver.max_length") cfg.max_length = parse_real(key, value);
  else if (key == "solver.max_segment_length")
    cfg.max_segment_length = parse_positive(key, value);
  else if (key == "gamma.samples") cfg.samples = parse_count(key, value);
  else if (key == "gamma.n_s") cfg.n_s = int(parse_count(key, value));
  else if (key == "gamma.n_u") cfg.n_u = int(parse_count(key, value));
  else if (key == "gamma.seed")
    cfg.seed = static_cast<std::uint64_t>(parse_count(key, value));
  else if (key == "crofton.tau") cfg.tau = value;
  else if (key == "shoot.s") cfg.shoot_s = parse_real(key, value);
  else if (key == "shoot.theta") cfg.shoot_theta = parse_real(key, value);
  else if (key == "output.dir") cfg.out_dir = value;
  else if (key == "output.format") cfg.out_format = value;
  else if (key == "tolerance.vol_gamma") cfg.tol_vol_gamma = parse_positive(key, value);
  else if (key == "tolerance.santalo") cfg.tol_santalo = parse_positive(key, value);
  else if (key == "tolerance.crofton") cfg.tol_crofton = parse_positive(key, value);
  else if (key == "tolerance.proposition")
    cfg.tol_proposition = parse_positive(key, value);
  else if (key == "tolerance.deficit") cfg.tol_deficit = parse_positive(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    apply_config_entry(cfg, key, value);
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (cfg.rho.empty()) throw ConfigError("metric.rho must not be empty");
  if (cfg.grid_n < 64) throw ConfigError("metric.grid_n must be >= 64");
  if (cfg.samples < 1) throw ConfigError("gamma.samples must be >= 1");
  if (cfg.n_s < 8 || cfg.n_u < 8)
    throw ConfigError("gamma.n_s and gamma.n_u must be >= 8");
  if (cfg.max_length < 0.0)
    throw ConfigError("solver.max_length must be >= 0 (0 = auto)");
  if (cfg.out_format != "json" && cfg.out_format != "csv" &&
      cfg.out_format != "both")
    throw ConfigError("output.format must be json, csv or both");
}

Polyline tau_from_config(const RunConfig& cfg) {
  std::istringstream in(cfg.tau);
  std::string head;
  in >> head;
  if (head == "circle") {
    std::string spec;
    in >> spec;
    if (spec.rfind("r=", 0) != 0)
      throw ConfigError("crofton.tau: expected 'circle r=<val>'");
    double r = parse_positive("crofton.tau radius", spec.substr(2));
    if (r > 1.0) throw ConfigError("crofton.tau: circle radius must be <= 1");
    return circle_polyline(r, 2048);
  }
  if (head == "polyline") {
    Polyline pts;
    std::string tok;
    while (in >> tok) {
      std::size_t comma = tok.find(',');
      if (comma == std::string::npos)
        throw ConfigError("crofton.tau: polyline vertices are 'x,y' pairs");
      Vec2 p{parse_real("tau vertex x", tok.substr(0, comma)),
             parse_real("tau vertex y", tok.substr(comma + 1))};
      if (norm(p) > 1.0 + 1e-12)
        throw ConfigError("crofton.tau: vertex outside the closed unit disc");
      pts.push_back(p);
    }
    if (pts.size() < 2)
      throw ConfigError("crofton.tau: polyline needs >= 2 vertices");
    return pts;
  }
  throw ConfigError("crofton.tau: expected 'circle r=<val>' or 'polyline ...'");
}

}  // namespace crofton
