#pragma once

#include <string>

#include "ftstab/feedback.hpp"
#include "ftstab/grid.hpp"
#include "ftstab/transport.hpp"
#include "ftstab/types.hpp"

namespace ftstab {

/// Feedback run u(t,L) = Gamma u(t): the boundary value is predicted from the
/// extrapolated new state and corrected once through the fixed point (the
/// self-coupling weight gamma_n is O(h), so one pass is second order).
StateTrajectory simulate_closed_loop(const SampledKernel& g, const Vec& u0,
                                     const FeedbackLaw& law, double T, const GridSpec& grid);

/// max over t_m in [L, T] of ||u(t_m,.)|| / ||u0||, with the interior-limit
/// norm at the boundary node. Requires horizon >= L + h.
double stabilization_metric(const StateTrajectory& traj, double L);

/// Evolves w0 = (Id-K)^{-1} u0 by the target system (pure transport, zero
/// boundary) and returns max_m ||(Id-K) w(t_m) - u(t_m)|| / ||u0|| over
/// t in [0, L], where u is the closed-loop run for the same u0.
double transform_consistency(const SampledKernel& g, const SynthesizedKernel& kstar,
                             const Vec& u0, const GridSpec& grid);

/// Metric report row: `n,N,metric,sigma_min,pde_residual`.
struct MetricReport {
  int n = 0;
  int N = 0;
  double metric = 0.0;
  double sigma_min = 0.0;
  double pde_residual = 0.0;
};

void export_metrics_csv(const std::vector<MetricReport>& rows, const std::string& path);

}  // namespace ftstab
