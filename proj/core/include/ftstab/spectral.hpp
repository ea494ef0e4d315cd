#pragma once

#include <map>
#include <string>
#include <vector>

#include "ftstab/grid.hpp"
#include "ftstab/kernel.hpp"
#include "ftstab/types.hpp"

namespace ftstab {

/// Eigenpair of the periodic adjoint under the x-only hypothesis:
/// lambda_k = 2ik*pi/L for k != 0, lambda_0 = Int conj(g);
/// phi_k(x) = exp(-lambda_k x) + J_k/(lambda_k - lambda_0), b_k = phi_k(L).
struct EigenPair {
  int k = 0;
  Complex lambda;
  Vec phi;
  Complex b;  // observation value B* phi_k = phi_k(L)
};

enum class FattoriniStatus { Satisfied, Fails, DegenerateLambda0 };

struct FattoriniVerdict {
  FattoriniStatus status = FattoriniStatus::Satisfied;
  std::vector<int> fails_at;          // within [-K_max, K_max] \ {0}
  int K_max = 0;                      // criterion provably holds beyond it
  std::map<int, Complex> values;
};

/// (1 - exp(-lambda x)) / lambda, with a series fallback near lambda x = 0.
Complex w_lambda(Complex lambda, double x);

/// 2x2 characteristic matrix H(lambda) of the periodic adjoint eigenproblem.
Eigen::Matrix2cd H_matrix(Complex lambda, const SampledKernel& g, const GridSpec& grid);

/// Eigenpairs for k in [-K, K]. Throws DegenerateSpectrumError when lambda_0
/// collides with a harmonic eigenvalue in range.
std::vector<EigenPair> spectrum(const SampledKernel& g, const GridSpec& grid, int K);

/// Discrete L2 norm of lambda*phi + phi' - Int conj(g) phi, plus the
/// periodicity defect |phi(L) - phi(0)|.
double eigen_residual(const EigenPair& pair, const SampledKernel& g, const GridSpec& grid);

/// 1 + J_k / (lambda_k - lambda_0) with J_k = Int conj(g) exp(-lambda_k x) dx.
Complex fattorini_value(int k, const SampledKernel& g, const GridSpec& grid);

/// Evaluates the criterion for 0 < |k| <= K_max, where K_max is the least K
/// with sqrt(L) ||g|| / (2K pi/L - |lambda_0|) < 1/2 (Cauchy-Schwarz tail
/// bound, forcing |value| >= 1/2 beyond it).
FattoriniVerdict fattorini_check(const SampledKernel& g, const GridSpec& grid, double tol);

/// Verdict export: `k,re_value,im_value,abs_value` rows plus a status line.
void export_verdict_csv(const FattoriniVerdict& v, const std::string& path);

}  // namespace ftstab
