#include "ftstab/kernel_synthesis.hpp"

#include <cmath>

#include "ftstab/csv.hpp"
#include "ftstab/moments.hpp"
#include "ftstab/spectral.hpp"

namespace ftstab {

Mat characteristics_solve(const Mat& f, const Vec& V, const Vec& v0, const GridSpec& grid) {
  const int n = grid.n;
  if (f.rows() != n + 1 || f.cols() != n + 1 || V.size() != n + 1 || v0.size() != n + 1) {
    throw std::invalid_argument("characteristics_solve: dimension mismatch");
  }
  const double h = grid.h;
  Mat v(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const int d = j - i;
      // Trapezoid of f along s -> (s, s+d) between s-indices a and b.
      auto line_integral = [&](int a, int b) -> Complex {
        if (b <= a) return {};
        Complex acc = 0.5 * (f(a, a + d) + f(b, b + d));
        for (int s = a + 1; s < b; ++s) acc += f(s, s + d);
        return acc * h;
      };
      if (d > 0) {
        v(i, j) = V(n - d) - line_integral(i, n - d);  // V(L + x - y)
      } else {
        v(i, j) = v0(n + d) - line_integral(i, n);     // v0(L + y - x)
      }
    }
  }
  return v;
}

StateTrajectory free_solution_p(const SampledKernel& g, const GridSpec& grid) {
  const int n = grid.n;
  SourceTerm src;
  src.values.resize(n + 1, n + 1);
  for (int m = 0; m <= n; ++m) {
    src.values.row(m) = -g.G.col(n - m).transpose();  // s(t_m, y) = -g(y, L - t_m)
  }
  return simulate_dirichlet(g, Vec::Zero(n + 1), zero_control(grid, n), grid.L, grid, src);
}

namespace {

StateTrajectory add(const StateTrajectory& a, const StateTrajectory& b, Complex scale_b) {
  StateTrajectory out = a;
  for (size_t m = 0; m < out.states.size(); ++m) out.states[m] += scale_b * b.states[m];
  return out;
}

}  // namespace

SynthesizedKernel synthesize_kernel(const SampledKernel& g, const GridSpec& grid, int N,
                                    double fattorini_tol) {
  if (!g.x_only()) {
    throw std::invalid_argument("synthesize_kernel: kernel must be x-only");
  }
  const FattoriniVerdict verdict = fattorini_check(g, grid, fattorini_tol);
  if (verdict.status == FattoriniStatus::DegenerateLambda0) {
    throw DegenerateSpectrumError("synthesize_kernel: degenerate lambda_0");
  }
  if (verdict.status == FattoriniStatus::Fails) {
    throw NotControllableError("synthesize_kernel: Fattorini criterion fails", verdict.fails_at);
  }

  const int n = grid.n;
  const double L = grid.L;

  // Free run, then a linear-in-time auxiliary boundary chosen so that the
  // steering target -p(L,.) has matching ends: the periodic moment step
  // otherwise sees a wrap discontinuity it can only resolve at rate 1/sqrt(N).
  StateTrajectory p0 = free_solution_p(g, grid);
  ControlSignal ramp{grid.nodes.cast<Complex>() / L, grid};
  StateTrajectory pr = simulate_dirichlet(g, Vec::Zero(n + 1), ramp, L, grid);
  const Complex mis0 = p0.final_state()(0) - p0.final_state()(n);
  const Complex mis1 = pr.final_state()(0) - pr.final_state()(n);
  const Complex amp = -mis0 / mis1;
  StateTrajectory p = add(p0, pr, amp);

  const Vec target = -p.final_state();

  // Steering 0 -> target through the periodic group: back-simulate the
  // target, null-control that preimage by moments, and rerun forward.
  StateTrajectory back = simulate_periodic_reverse(g, target, L, grid);
  const Vec u0m = -back.final_state();
  const std::vector<EigenPair> pairs = spectrum(g, grid, N);
  const MomentProblem mp = moment_targets(u0m, pairs, grid);
  const ControlSignal Ut = solve_moments(mp);
  StateTrajectory utot = simulate_periodic(g, Vec::Zero(n + 1), Ut, L, grid);

  ControlSignal Udir = trace_at_zero(utot);
  Udir.samples += Ut.samples;
  StateTrajectory q = simulate_dirichlet(g, Vec::Zero(n + 1), Udir, L, grid);

  StateTrajectory hhat = add(p, q, 1.0);

  SynthesizedKernel out;
  out.grid = grid;
  out.kstar.resize(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    out.kstar.row(i) = hhat.states[size_t(n - i)].conjugate().transpose();
  }
  Vec Ux(n + 1);
  for (int i = 0; i <= n; ++i) Ux(i) = out.kstar(i, n);
  out.U = {std::move(Ux), grid};

  // Diagonal traces: the marched field carries the T+ side on the diagonal;
  // the T- side is recovered by extrapolation from below.
  out.diag_plus = out.kstar.diagonal();
  out.diag_minus.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    out.diag_minus(i) = (i >= 2) ? 2.0 * out.kstar(i, i - 1) - out.kstar(i, i - 2)
                                 : out.kstar.diagonal()(i);
  }

  out.diagnostics = kernel_residual(out, g, grid);
  return out;
}

KernelDiagnostics kernel_residual(const SynthesizedKernel& sk, const SampledKernel& g,
                                  const GridSpec& grid) {
  const int n = grid.n;
  const double h = grid.h;
  if (sk.kstar.rows() != n + 1 || g.G.rows() != n + 1) {
    throw std::invalid_argument("kernel_residual: dimension mismatch");
  }
  const QuadratureRule rule = make_quadrature(grid);
  const RVec& w = rule.weights;
  const Mat& ks = sk.kstar;

  KernelDiagnostics diag;
  diag.bc0_defect = l2_norm_interior(ks.row(0).transpose(), rule);
  diag.bcL_defect = l2_norm(ks.row(n).transpose(), rule);

  // Row integrals Int conj(g(y,s)) k*(x,s) ds == (k* W G^H)(x,y), then a
  // half-cell correction at s = x where k* jumps to its T- limit.
  Mat I = ks * w.cast<Complex>().asDiagonal() * g.G.adjoint();
  Vec corr(n + 1);
  for (int i = 0; i <= n; ++i) {
    const Complex below = (i >= 2) ? 2.0 * ks(i, i - 1) - ks(i, i - 2) : ks(i, i);
    corr(i) = (h / 2.0) * (below - ks(i, i));
  }
  I += corr.asDiagonal() * g.G.adjoint();

  auto dx = [&](int i, int j) -> Complex {  // d/dx within the triangle of (i,j)
    if (i > j) {
      if (i >= j + 3 && i >= 2) return (3.0 * ks(i, j) - 4.0 * ks(i - 1, j) + ks(i - 2, j)) / (2.0 * h);
      return (ks(i, j) - ks(i - 1, j)) / h;
    }
    if (i + 2 <= j - 1) return (-3.0 * ks(i, j) + 4.0 * ks(i + 1, j) - ks(i + 2, j)) / (2.0 * h);
    return (ks(i + 1, j) - ks(i, j)) / h;
  };
  auto dy = [&](int i, int j) -> Complex {
    if (i > j) {
      if (j + 2 <= i - 1) return (-3.0 * ks(i, j) + 4.0 * ks(i, j + 1) - ks(i, j + 2)) / (2.0 * h);
      return (ks(i, j + 1) - ks(i, j)) / h;
    }
    if (j >= i + 3 && j >= 2) return (3.0 * ks(i, j) - 4.0 * ks(i, j - 1) + ks(i, j - 2)) / (2.0 * h);
    return (ks(i, j) - ks(i, j - 1)) / h;
  };

  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (std::abs(i - j) <= 1) continue;  // the field may jump across x = y
      const Complex r = dx(i, j) + dy(i, j) + I(i, j) - std::conj(g.G(j, i));
      acc += w(i) * w(j) * std::norm(r);
    }
  }
  diag.pde_residual = std::sqrt(acc);
  return diag;
}

void export_kernel_csv(const SynthesizedKernel& sk, const std::string& kernel_path,
                       const std::string& sidecar_path) {
  {
    csv::Writer out(kernel_path);
    out.header("i,j,re,im");
    for (int i = 0; i < sk.kstar.rows(); ++i) {
      for (int j = 0; j < sk.kstar.cols(); ++j) {
        out.raw(std::to_string(i) + "," + std::to_string(j) + "," +
                csv::num(sk.kstar(i, j).real()) + "," + csv::num(sk.kstar(i, j).imag()));
      }
    }
  }
  csv::Writer side(sidecar_path);
  side.header("i,re_u,im_u");
  for (int i = 0; i < sk.U.samples.size(); ++i) {
    side.row_prefixed(i, {sk.U.samples(i).real(), sk.U.samples(i).imag()});
  }
  side.raw("# pde_residual=" + csv::num(sk.diagnostics.pde_residual) +
           " bc0_defect=" + csv::num(sk.diagnostics.bc0_defect) +
           " bcL_defect=" + csv::num(sk.diagnostics.bcL_defect));
}

}  // namespace ftstab
