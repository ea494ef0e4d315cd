#include "ftstab/app.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ftstab/closed_loop.hpp"
#include "ftstab/csv.hpp"
#include "ftstab/feedback.hpp"
#include "ftstab/grid.hpp"
#include "ftstab/kernel.hpp"
#include "ftstab/kernel_synthesis.hpp"
#include "ftstab/moments.hpp"
#include "ftstab/spectral.hpp"
#include "ftstab/transport.hpp"

namespace ftstab::app {

namespace {

namespace fs = std::filesystem;

Complex parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return Complex(std::stod(s), 0.0);
  return Complex(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

void apply_key(Config& c, const std::string& key, const std::string& value) {
  try {
    if (key == "L") c.L = std::stod(value);
    else if (key == "n") c.n = std::stoi(value);
    else if (key == "N") c.N = std::stoi(value);
    else if (key == "T") c.T = std::stod(value);
    else if (key == "kernel.type") c.kernel_type = value;
    else if (key == "kernel.c") c.kernel_c = parse_complex(value);
    else if (key == "kernel.a0") c.kernel_a0 = std::stod(value);
    else if (key == "kernel.N") c.kernel_N = std::stoi(value);
    else if (key == "kernel.file") c.kernel_file = value;
    else if (key == "u0.type") c.u0_type = value;
    else if (key == "u0.file") c.u0_file = value;
    else if (key == "tol.fattorini") c.tol_fattorini = std::stod(value);
    else if (key == "tol.invert") c.tol_invert = std::stod(value);
    else if (key == "out.dir") c.out_dir = value;
    else if (key == "sim.variant") c.sim_variant = value;
    else if (key == "sweep.levels") c.sweep_levels = std::stoi(value);
    else throw ConfigError("unknown config key: " + key);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("bad value for key " + key + ": " + value);
  }
}

void validate(const Config& c) {
  if (c.L <= 0) throw ConfigError("L must be positive");
  if (c.n < 2) throw ConfigError("n must be at least 2");
  if (c.N < 1) throw ConfigError("N must be at least 1");
  if (c.kernel_type != "zero" && c.kernel_type != "constant" &&
      c.kernel_type != "counterexample" && c.kernel_type != "file") {
    throw ConfigError("unknown kernel.type: " + c.kernel_type);
  }
  if (c.u0_type != "zero" && c.u0_type != "sine" && c.u0_type != "harmonic" &&
      c.u0_type != "file") {
    throw ConfigError("unknown u0.type: " + c.u0_type);
  }
  if (c.sim_variant != "dirichlet" && c.sim_variant != "periodic") {
    throw ConfigError("unknown sim.variant: " + c.sim_variant);
  }
  if (c.sweep_levels < 1) throw ConfigError("sweep.levels must be at least 1");
}

std::string fmt_complex(Complex z) {
  return csv::num(z.real()) + "," + csv::num(z.imag());
}

void echo_resolved(const Config& c, double effective_T, const fs::path& dir) {
  std::ofstream out(dir / "resolved-config", std::ios::binary);
  out << "L=" << csv::num(c.L) << "\n"
      << "N=" << c.N << "\n"
      << "T=" << csv::num(effective_T) << "\n"
      << "kernel.N=" << c.kernel_N << "\n"
      << "kernel.a0=" << csv::num(c.kernel_a0) << "\n"
      << "kernel.c=" << fmt_complex(c.kernel_c) << "\n"
      << "kernel.file=" << c.kernel_file << "\n"
      << "kernel.type=" << c.kernel_type << "\n"
      << "n=" << c.n << "\n"
      << "out.dir=" << c.out_dir << "\n"
      << "sim.variant=" << c.sim_variant << "\n"
      << "sweep.levels=" << c.sweep_levels << "\n"
      << "tol.fattorini=" << csv::num(c.tol_fattorini) << "\n"
      << "tol.invert=" << csv::num(c.tol_invert) << "\n"
      << "u0.file=" << c.u0_file << "\n"
      << "u0.type=" << c.u0_type << "\n";
}

KernelFunction kernel_from(const Config& c) {
  if (c.kernel_type == "zero") return KernelFunction::zero();
  if (c.kernel_type == "constant") return KernelFunction::constant(c.kernel_c);
  if (c.kernel_type == "counterexample") {
    return fattorini_counterexample(c.kernel_a0, c.kernel_N, c.L);
  }
  if (c.kernel_file.empty()) throw ConfigError("kernel.type=file needs kernel.file");
  return load_tabulated_kernel(c.kernel_file);
}

Vec u0_from(const Config& c, const GridSpec& grid) {
  Vec u0 = Vec::Zero(grid.size());
  if (c.u0_type == "sine") {
    for (int i = 0; i < grid.size(); ++i) {
      u0(i) = std::sin(std::numbers::pi * grid.nodes(i) / grid.L);
    }
  } else if (c.u0_type == "harmonic") {
    for (int i = 0; i < grid.size(); ++i) {
      u0(i) = std::sin(2.0 * std::numbers::pi * grid.nodes(i) / grid.L);
    }
  } else if (c.u0_type == "file") {
    if (c.u0_file.empty()) throw ConfigError("u0.type=file needs u0.file");
    const auto rows = csv::read(c.u0_file, {"i", "re", "im"});
    if (int(rows.size()) != grid.size()) throw ConfigError("u0 file does not match n");
    for (const auto& r : rows) {
      const int i = int(r[0]);
      if (i < 0 || i >= grid.size()) throw ConfigError("u0 file index out of range");
      u0(i) = Complex(r[1], r[2]);
    }
  }
  return u0;
}

int run_simulate(const Config& c, const fs::path& dir) {
  const GridSpec grid = make_grid(c.L, c.n);
  const double T = c.T > 0 ? c.T : grid.L;
  const SampledKernel sk = sample_kernel(kernel_from(c), grid);
  const Vec u0 = u0_from(c, grid);
  const int M = int(std::lround(T / grid.h));
  const ControlSignal U = zero_control(grid, M);
  const StateTrajectory traj = c.sim_variant == "periodic"
                                   ? simulate_periodic(sk, u0, U, T, grid)
                                   : simulate_dirichlet(sk, u0, U, T, grid);
  export_trajectory_csv(traj, (dir / "trajectory.csv").string());
  echo_resolved(c, T, dir);
  return kOk;
}

int run_spectrum(const Config& c, const fs::path& dir) {
  const GridSpec grid = make_grid(c.L, c.n);
  const SampledKernel sk = sample_kernel(kernel_from(c), grid);
  const auto pairs = spectrum(sk, grid, c.N);
  csv::Writer out((dir / "eigenpairs.csv").string());
  out.header("k,re_lambda,im_lambda,re_b,im_b,residual");
  for (const auto& p : pairs) {
    out.row_prefixed(p.k, {p.lambda.real(), p.lambda.imag(), p.b.real(), p.b.imag(),
                           eigen_residual(p, sk, grid)});
  }
  echo_resolved(c, c.T > 0 ? c.T : grid.L, dir);
  return kOk;
}

int run_fattorini(const Config& c, const fs::path& dir) {
  const GridSpec grid = make_grid(c.L, c.n);
  const SampledKernel sk = sample_kernel(kernel_from(c), grid);
  const FattoriniVerdict v = fattorini_check(sk, grid, c.tol_fattorini);
  export_verdict_csv(v, (dir / "fattorini.csv").string());
  echo_resolved(c, c.T > 0 ? c.T : grid.L, dir);
  return kOk;
}

int run_synthesize(const Config& c, const fs::path& dir) {
  const GridSpec grid = make_grid(c.L, c.n);
  const SampledKernel sk = sample_kernel(kernel_from(c), grid);
  const SynthesizedKernel kst = synthesize_kernel(sk, grid, c.N, c.tol_fattorini);
  export_kernel_csv(kst, (dir / "kernel.csv").string(), (dir / "kernel-meta.csv").string());
  const FeedbackSolution fb = feedback_kernel_h(kst, grid);
  const FredholmOp op = assemble_K(kst.kstar, grid, true);
  export_feedback_csv(fb.law, op.sigma_min(), (dir / "feedback.csv").string());
  echo_resolved(c, c.T > 0 ? c.T : grid.L, dir);
  return kOk;
}

MetricReport closed_loop_level(const Config& c, int n, int N, double T,
                               const fs::path& dir, bool export_files) {
  const GridSpec grid = make_grid(c.L, n);
  const SampledKernel sk = sample_kernel(kernel_from(c), grid);
  const SynthesizedKernel kst = synthesize_kernel(sk, grid, N, c.tol_fattorini);
  const FredholmOp op = assemble_K(kst.kstar, grid, true);
  if (!invertibility(op, c.tol_invert * (1.0 + op.op_norm())).invertible) {
    throw SingularTransformError("closed-loop: Id - K is numerically singular");
  }
  const FeedbackSolution fb = feedback_kernel_h(kst, grid);
  const Vec u0 = u0_from(c, grid);
  const StateTrajectory traj = simulate_closed_loop(sk, u0, fb.law, T, grid);

  MetricReport row;
  row.n = n;
  row.N = N;
  row.metric = stabilization_metric(traj, grid.L);
  row.sigma_min = op.sigma_min();
  row.pde_residual = kst.diagnostics.pde_residual;

  if (export_files) {
    export_trajectory_csv(traj, (dir / "trajectory.csv").string());
    export_kernel_csv(kst, (dir / "kernel.csv").string(), (dir / "kernel-meta.csv").string());
    export_feedback_csv(fb.law, row.sigma_min, (dir / "feedback.csv").string());
  }
  return row;
}

int run_closed_loop(const Config& c, const fs::path& dir) {
  const double T = c.T > 0 ? c.T : 2.0 * c.L;
  const MetricReport row = closed_loop_level(c, c.n, c.N, T, dir, true);
  export_metrics_csv({row}, (dir / "metrics.csv").string());
  echo_resolved(c, T, dir);
  return kOk;
}

int run_convergence(const Config& c, const fs::path& dir) {
  const double T = c.T > 0 ? c.T : 2.0 * c.L;
  std::vector<MetricReport> rows;
  int n = c.n, N = c.N;
  for (int level = 0; level < c.sweep_levels; ++level) {
    rows.push_back(closed_loop_level(c, n, N, T, dir, false));
    n *= 2;
    N *= 2;
  }
  export_metrics_csv(rows, (dir / "metrics.csv").string());
  echo_resolved(c, T, dir);
  return kOk;
}

}  // namespace

Config parse_config_text(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    apply_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  validate(c);
  return c;
}

Config parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

int run(const std::string& command, const std::string& config_path, std::string& log) {
  try {
    const Config c = parse_config(config_path);
    const fs::path dir(c.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create out.dir: " + c.out_dir);

    if (command == "simulate") return run_simulate(c, dir);
    if (command == "spectrum") return run_spectrum(c, dir);
    if (command == "fattorini") return run_fattorini(c, dir);
    if (command == "synthesize") return run_synthesize(c, dir);
    if (command == "closed-loop") return run_closed_loop(c, dir);
    if (command == "convergence") return run_convergence(c, dir);
    log += "unknown command: " + command + "\n";
    return kConfigOrIo;
  } catch (const NotControllableError& e) {
    log += std::string("not controllable: ") + e.what() + "\n";
    return kNotControllable;
  } catch (const DegenerateSpectrumError& e) {
    log += std::string("degenerate spectrum: ") + e.what() + "\n";
    return kDegenerate;
  } catch (const SingularTransformError& e) {
    log += std::string("singular transform: ") + e.what() + "\n";
    return kSingular;
  } catch (const std::exception& e) {
    log += std::string("error: ") + e.what() + "\n";
    return kConfigOrIo;
  }
}

}  // namespace ftstab::app
