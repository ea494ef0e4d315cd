#include "ftstab/transport.hpp"

#include <cmath>

#include "ftstab/csv.hpp"

namespace ftstab {

namespace {

int step_count(double T, const GridSpec& grid, const char* who) {
  const double ratio = T / grid.h;
  const int M = int(std::lround(ratio));
  if (M < 1 || std::abs(ratio - M) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument(std::string(who) + ": horizon is not a step multiple");
  }
  return M;
}

void check_state(const Vec& u0, const GridSpec& grid, const char* who) {
  if (u0.size() != grid.size()) {
    throw std::invalid_argument(std::string(who) + ": state length mismatch");
  }
}

void check_control(const ControlSignal& U, int M, const char* who) {
  if (U.samples.size() != M + 1) {
    throw std::invalid_argument(std::string(who) + ": control length mismatch");
  }
}

}  // namespace

namespace detail {

StateTrajectory march(const SampledKernel& sk, const Vec& u0, int steps,
                      Complex corner_seed,
                      const std::function<Complex(int, const Vec&, const Vec&)>& close,
                      const Mat* src) {
  const GridSpec& grid = sk.grid;
  const int n = grid.n;
  const double h = grid.h;
  if (src && (src->rows() != steps + 1 || src->cols() != n + 1)) {
    throw std::invalid_argument("march: source dimensions mismatch");
  }

  const QuadratureRule rule = make_quadrature(grid);
  Mat Kw = sk.G * rule.weights.cast<Complex>().asDiagonal();

  const Complex below_corner = u0(n);  // one-sided limit from the u0 side
  Vec u = u0;
  u(n) = corner_seed;

  // Integral term with the half-cell correction at the critical
  // characteristic's node js = n - m, which carries the inflow-side limit.
  auto forcing = [&](const Vec& state, int m) -> Vec {
    Vec F = Kw * state;
    if (src) F += src->row(m).transpose();
    const int js = n - m;
    if (js >= 1 && js <= n) {
      Complex below;
      if (js == n) {
        below = below_corner;
      } else if (js >= 2) {
        below = 2.0 * state(js - 1) - state(js - 2);
      } else {
        below = state(js - 1);
      }
      F += sk.G.col(js) * (h / 2.0) * (below - state(js));
    }
    return F;
  };

  StateTrajectory traj;
  traj.grid = grid;
  traj.horizon = steps * h;
  traj.states.reserve(steps + 1);
  traj.states.push_back(u0);

  Vec pred(n + 1), next(n + 1);
  for (int m = 0; m < steps; ++m) {
    const Vec F = forcing(u, m);
    pred.head(n) = u.tail(n) + h * F.tail(n);
    pred(n) = u(n) + h * F(n);
    const Vec Ft = forcing(pred, m + 1);
    next.head(n) = u.tail(n) + (h / 2.0) * (F.tail(n) + Ft.head(n));
    next(n) = close(m + 1, next, pred);
    u = next;
    traj.states.push_back(u);
  }
  return traj;
}

}  // namespace detail

ControlSignal zero_control(const GridSpec& grid, int steps) {
  return {Vec::Zero(steps + 1), grid};
}

StateTrajectory simulate_dirichlet(const SampledKernel& sk, const Vec& u0,
                                   const ControlSignal& U, double T,
                                   const GridSpec& grid,
                                   const std::optional<SourceTerm>& src) {
  const int M = step_count(T, grid, "simulate_dirichlet");
  check_state(u0, grid, "simulate_dirichlet");
  check_control(U, M, "simulate_dirichlet");
  const Vec& s = U.samples;
  return detail::march(
      sk, u0, M, s(0),
      [&s](int m1, const Vec&, const Vec&) { return s(m1); },
      src ? &src->values : nullptr);
}

StateTrajectory simulate_periodic(const SampledKernel& sk, const Vec& u0,
                                  const ControlSignal& Ut, double T,
                                  const GridSpec& grid) {
  const int M = step_count(T, grid, "simulate_periodic");
  check_state(u0, grid, "simulate_periodic");
  check_control(Ut, M, "simulate_periodic");
  const Vec& s = Ut.samples;
  return detail::march(
      sk, u0, M, u0(0) + s(0),
      [&s](int m1, const Vec& corr, const Vec&) { return corr(0) + s(m1); },
      nullptr);
}

StateTrajectory simulate_periodic_reverse(const SampledKernel& sk, const Vec& vT,
                                          double T, const GridSpec& grid) {
  const int M = step_count(T, grid, "simulate_periodic_reverse");
  check_state(vT, grid, "simulate_periodic_reverse");
  const int n = grid.n;
  const double h = grid.h;
  const QuadratureRule rule = make_quadrature(grid);
  Mat Kw = sk.G * rule.weights.cast<Complex>().asDiagonal();

  StateTrajectory traj;
  traj.grid = grid;
  traj.horizon = T;
  traj.states.reserve(M + 1);
  traj.states.push_back(vT);

  // v(s,.) = u(T-s,.) solves v_s + v_x = -G v with zero periodic jump;
  // right-moving march, closure v(s,0) = v(s,L).
  Vec v = vT, pred(n + 1), next(n + 1);
  for (int m = 0; m < M; ++m) {
    const Vec F = -(Kw * v);
    pred.tail(n) = v.head(n) + h * F.head(n);
    pred(0) = v(0) + h * F(0);
    const Vec Ft = -(Kw * pred);
    next.tail(n) = v.head(n) + (h / 2.0) * (F.head(n) + Ft.tail(n));
    next(0) = next(n);
    v = next;
    traj.states.push_back(v);
  }
  return traj;
}

ControlSignal trace_at_zero(const StateTrajectory& traj) {
  Vec t(traj.states.size());
  for (size_t m = 0; m < traj.states.size(); ++m) t(m) = traj.states[m](0);
  return {std::move(t), traj.grid};
}

std::pair<ControlSignal, StateTrajectory> dirichlet_from_periodic(
    const SampledKernel& sk, const Vec& u0, const ControlSignal& Ut, double T,
    const GridSpec& grid) {
  StateTrajectory traj = simulate_periodic(sk, u0, Ut, T, grid);
  ControlSignal U = trace_at_zero(traj);
  U.samples += Ut.samples;
  return {std::move(U), std::move(traj)};
}

void export_trajectory_csv(const StateTrajectory& traj, const std::string& path) {
  csv::Writer out(path);
  out.header("t,x,re,im");
  const GridSpec& g = traj.grid;
  for (int m = 0; m <= traj.steps(); ++m) {
    const double t = m * g.h;
    for (int i = 0; i < g.size(); ++i) {
      out.row({t, g.nodes(i), traj.states[m](i).real(), traj.states[m](i).imag()});
    }
  }
}

}  // namespace ftstab
