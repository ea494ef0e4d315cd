#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ftstab/grid.hpp"
#include "ftstab/kernel.hpp"
#include "ftstab/types.hpp"

namespace ftstab {

/// Boundary-control samples U_m at step times t_m = m*h, m = 0..M.
struct ControlSignal {
  Vec samples;
  GridSpec grid;

  int steps() const { return int(samples.size()) - 1; }
};

/// Time-indexed state vectors of one PDE run; states[m] ~ u(t_m, .).
struct StateTrajectory {
  std::vector<Vec> states;
  GridSpec grid;
  double horizon = 0.0;

  int steps() const { return int(states.size()) - 1; }
  const Vec& initial() const { return states.front(); }
  const Vec& final_state() const { return states.back(); }
};

/// Sampled source term s(t_m, x_i); row m holds the slice at time t_m.
struct SourceTerm {
  Mat values;  // (M+1) x (n+1)
};

ControlSignal zero_control(const GridSpec& grid, int steps);

/// Dirichlet-control run of  u_t - u_x = Int g(x,y) u(y) dy + s,  u(t,L) = U(t).
///
/// Characteristic marching with dt = h and one predictor-corrector pass:
///   F^m_j   = quad_y(G(j,.) u^m) + s(t_m, x_j)
///   pred_i  = u^m_{i+1} + h F^m_{i+1}            (i < n; pred_n extrapolated)
///   u^{m+1}_i = u^m_{i+1} + (h/2)(F^m_{i+1} + F~^{m+1}_i)
/// The node chain lying on the critical characteristic x + t = L carries the
/// inflow-side one-sided limit, and the quadrature of the integral term
/// corrects the half-cell below that chain (states may jump across it when
/// the control is incompatible with the initial data at the corner).
StateTrajectory simulate_dirichlet(const SampledKernel& sk, const Vec& u0,
                                   const ControlSignal& U, double T,
                                   const GridSpec& grid,
                                   const std::optional<SourceTerm>& src = std::nullopt);

/// Periodic-jump variant: boundary closure u^{m+1}_n = u^{m+1}_0 + U~_{m+1}.
StateTrajectory simulate_periodic(const SampledKernel& sk, const Vec& u0,
                                  const ControlSignal& Ut, double T,
                                  const GridSpec& grid);

/// Reverse periodic march (right-moving characteristics, zero jump): the
/// discrete inverse of the free periodic evolution over the same horizon.
StateTrajectory simulate_periodic_reverse(const SampledKernel& sk, const Vec& vT,
                                          double T, const GridSpec& grid);

/// Boundary trace m -> states[m][0].
ControlSignal trace_at_zero(const StateTrajectory& traj);

/// Runs the periodic system and returns the Dirichlet control
/// U(t) = u~(t,0) + U~(t) together with the periodic trajectory; a Dirichlet
/// re-run with this U and u0 = u~0 reproduces the trajectory node-for-node.
std::pair<ControlSignal, StateTrajectory> dirichlet_from_periodic(
    const SampledKernel& sk, const Vec& u0, const ControlSignal& Ut, double T,
    const GridSpec& grid);

/// Trajectory export: header `t,x,re,im`, rows ordered by (m, i).
void export_trajectory_csv(const StateTrajectory& traj, const std::string& path);

namespace detail {
/// Shared marching core. The closure receives (m+1, corrected interior,
/// predictor) and returns the node-n value; `corner_seed` is the inflow-side
/// limit used in place of u0(L) by the internal march.
StateTrajectory march(const SampledKernel& sk, const Vec& u0, int steps,
                      Complex corner_seed,
                      const std::function<Complex(int, const Vec&, const Vec&)>& close,
                      const Mat* src);
}  // namespace detail

}  // namespace ftstab
