#pragma once

#include <map>
#include <string>
#include <vector>

#include "ftstab/types.hpp"

namespace ftstab::app {

/// Flat key=value configuration; unknown keys are rejected. Every effective
/// parameter, defaults included, is echoed to `<out.dir>/resolved-config`.
struct Config {
  double L = 1.0;
  int n = 256;
  int N = 32;
  double T = -1.0;  // negative: command-specific default (L or 2L)
  std::string kernel_type = "zero";  // zero | constant | counterexample | file
  Complex kernel_c{1.0, 0.0};
  double kernel_a0 = 1.0;
  int kernel_N = 1;
  std::string kernel_file;
  std::string u0_type = "zero";  // zero | sine | harmonic | file
  std::string u0_file;
  double tol_fattorini = 1e-3;
  double tol_invert = 1e-6;
  std::string out_dir = "out";
  std::string sim_variant = "dirichlet";  // dirichlet | periodic
  int sweep_levels = 2;
};

Config parse_config(const std::string& path);
Config parse_config_text(const std::string& text);

/// Exit status contract: 0 success, 1 config/IO error, 2 not controllable,
/// 3 degenerate spectrum, 4 singular transform.
enum ExitCode {
  kOk = 0,
  kConfigOrIo = 1,
  kNotControllable = 2,
  kDegenerate = 3,
  kSingular = 4,
};

/// Runs one subcommand (`simulate`, `spectrum`, `fattorini`, `synthesize`,
/// `closed-loop`, `convergence`) against a config file and writes artifact
/// CSVs into out.dir. Diagnostic messages go to `log`.
int run(const std::string& command, const std::string& config_path, std::string& log);

}  // namespace ftstab::app
