#pragma once

#include <string>
#include <vector>

#include "ftstab/grid.hpp"
#include "ftstab/spectral.hpp"
#include "ftstab/transport.hpp"
#include "ftstab/types.hpp"

namespace ftstab {

/// Truncated moment problem for the periodic null control: find U~ on (0,L)
/// with  Int_0^L exp(-conj(lambda_k) t) U~(t) dt = c_k  for |k| <= N, where
/// c_k = -<u~0, phi_k> / conj(b_k).
struct MomentProblem {
  int N = 0;
  Vec targets;               // c_k, index k+N
  std::vector<Complex> exponents;  // lambda_k, index k+N
  std::vector<Complex> observations;  // b_k, index k+N
  GridSpec grid;

  Complex target(int k) const { return targets(k + N); }
  Complex lambda(int k) const { return exponents[size_t(k + N)]; }
};

/// Targets by quadrature inner products. Throws NotControllableError when an
/// observation value |b_k| <= 1e-8 (carrying the failing indices).
MomentProblem moment_targets(const Vec& u0, const std::vector<EigenPair>& pairs,
                             const GridSpec& grid);

/// Gram matrix of the moment family m_k(t) = exp(-conj(lambda_k) t):
/// entries Gamma(k,j) = Int m_j conj(m_k) dt in closed form (L*delta on the
/// harmonic block, exponential integrals on row/column 0).
Mat gram_matrix(const std::vector<EigenPair>& pairs, const GridSpec& grid, int N);

/// Solves the truncated problem with a trigonometric-polynomial ansatz
/// U~ = sum_{|j|<=N} a_j exp(2i pi j t/L): harmonic constraints decouple
/// (L a_{-k} = c_k) and the k = 0 constraint closes a_0; O(N) in total.
/// Returns U~ sampled on the step times of [0,L].
ControlSignal solve_moments(const MomentProblem& mp);

/// r_k = |Int m_k U~ dt - c_k| by quadrature, for |k| <= N.
RVec verify_moments(const ControlSignal& U, const MomentProblem& mp);

/// Control export: `t,re,im`.
void export_control_csv(const ControlSignal& U, const std::string& path);

}  // namespace ftstab
