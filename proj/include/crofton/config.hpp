// crofton-lab: run configuration (file + flag overrides)
#pragma once

#include <cstdint>
#include <string>

#include "crofton/geom.hpp"

namespace crofton {

struct RunConfig {
  // metric
  std::string rho = "1";
  int grid_n = 256;

  // solver
  double tol = 1e-9;
  double max_length = 0.0;  // 0 = auto
  double max_segment_length = 1e-2;

  // gamma
  long samples = 2000;
  int n_s = 256;
  int n_u = 128;
  std::uint64_t seed = 42;

  // crofton test curve: "circle r=<val>" or "polyline x,y x,y ..."
  std::string tau = "circle r=0.5";

  // shoot
  double shoot_s = 0.0;
  double shoot_theta = 0.0;

  // output
  std::string out_dir = "out";
  std::string out_format = "both";  // json | csv | both

  // pass/fail thresholds on rel_err (MC reports also pass within 3 stderr)
  double tol_vol_gamma = 1e-9;
  double tol_santalo = 5e-3;
  double tol_crofton = 2e-2;
  double tol_proposition = 1.5e-2;
  double tol_deficit = 1e-2;
};

// Parses the dotted key/value file format:
//   metric.rho = 2/(1+x^2+y^2)
//   gamma.seed = 42
// Lines starting with '#' and blank lines are skipped. Unknown keys and
// non-positive numeric values are ConfigErrors.
RunConfig parse_config_file(const std::string& path);

// Applies "key = value" text to an existing config (shared by the file
// parser and flag overrides).
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value);

// Validates ranges (positivity, format names); throws ConfigError.
void validate(const RunConfig& cfg);

// Builds tau from the config string; throws ConfigError when it leaves the
// closed unit disc or cannot be parsed.
Polyline tau_from_config(const RunConfig& cfg);

}  // namespace crofton
