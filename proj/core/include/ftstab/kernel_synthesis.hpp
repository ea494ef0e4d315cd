#pragma once

#include <string>

#include "ftstab/grid.hpp"
#include "ftstab/kernel.hpp"
#include "ftstab/transport.hpp"
#include "ftstab/types.hpp"

namespace ftstab {

struct KernelDiagnostics {
  double pde_residual = 0.0;
  double bc0_defect = 0.0;  // ||k*(0,.)||, interior-limit norm
  double bcL_defect = 0.0;  // ||k*(L,.)||, zero by construction
};

/// Backstepping kernel k*(x,y) on the grid (x = row, y = column) with its
/// boundary data U(x) = k*(x,L) and the two one-sided diagonal traces.
struct SynthesizedKernel {
  Mat kstar;
  ControlSignal U;
  Vec diag_minus;  // limit from T- (x > y)
  Vec diag_plus;   // limit from T+ (x < y)
  GridSpec grid;
  KernelDiagnostics diagnostics;
};

/// Closed-form characteristics solution of  v_x + v_y = f  on the square,
/// with v(x,L) = V(x) and v(L,y) = v0(y); f integrated by trapezoid along
/// the diagonal characteristic s -> (s, s + y - x). On the diagonal the
/// T- branch applies.
Mat characteristics_solve(const Mat& f, const Vec& V, const Vec& v0, const GridSpec& grid);

/// Free solution of the source-driven equation: Dirichlet run with zero data,
/// zero control and source s(t,y) = -g(y, L-t).
StateTrajectory free_solution_p(const SampledKernel& g, const GridSpec& grid);

/// Constructs k* for an x-only kernel via the controlled auxiliary problem:
/// free run p, steering control for q through the periodic moment machinery,
/// assembly h^ = p + q, and the time reversal k*(x,y) = conj(h^(L-x, y)).
/// `N` is the moment truncation order. Throws NotControllableError when the
/// spectral criterion fails and DegenerateSpectrumError on lambda_0 collision.
SynthesizedKernel synthesize_kernel(const SampledKernel& g, const GridSpec& grid, int N,
                                    double fattorini_tol = 1e-3);

/// Diagnostics of the kernel equation
///   k*_x + k*_y + Int conj(g(y,s)) k*(x,s) ds - conj(g(y,x)) = 0:
/// second-order one-sided differences within each triangle, skipping the two
/// node-diagonals adjacent to x = y; the row integral corrects the half-cell
/// below the diagonal with the T- trace (the field jumps across x = y).
KernelDiagnostics kernel_residual(const SynthesizedKernel& sk, const SampledKernel& g,
                                  const GridSpec& grid);

/// Kernel export `i,j,re,im` plus a sidecar with U and the diagnostics.
void export_kernel_csv(const SynthesizedKernel& sk, const std::string& kernel_path,
                       const std::string& sidecar_path);

}  // namespace ftstab
