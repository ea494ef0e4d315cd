#include "ftstab/moments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ftstab/csv.hpp"

namespace ftstab {

namespace {

constexpr double kObservationTol = 1e-8;
constexpr double kSeriesTol = 1e-8;

/// Int_0^L exp(mu t) dt with a series fallback near mu = 0.
Complex exp_integral(Complex mu, double L) {
  if (std::abs(mu) < kSeriesTol) {
    const Complex z = mu * L;
    return L * (1.0 + z / 2.0 + z * z / 6.0);
  }
  return (std::exp(mu * L) - 1.0) / mu;
}

/// m_k(t) = exp(-conj(lambda_k) t) sampled on the step times.
Vec family_samples(Complex lambda, const GridSpec& grid) {
  Vec m(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    m(i) = std::exp(-std::conj(lambda) * grid.nodes(i));
  }
  return m;
}

const EigenPair& pair_for(const std::vector<EigenPair>& pairs, int k) {
  for (const auto& p : pairs) {
    if (p.k == k) return p;
  }
  std::ostringstream msg;
  msg << "eigenpair list does not cover k = " << k;
  throw std::invalid_argument(msg.str());
}

}  // namespace

MomentProblem moment_targets(const Vec& u0, const std::vector<EigenPair>& pairs,
                             const GridSpec& grid) {
  if (u0.size() != grid.size()) {
    throw std::invalid_argument("moment_targets: state length mismatch");
  }
  int N = 0;
  for (const auto& p : pairs) N = std::max(N, std::abs(p.k));
  for (int k = -N; k <= N; ++k) pair_for(pairs, k);  // coverage check

  std::vector<int> failing;
  for (const auto& p : pairs) {
    if (std::abs(p.b) <= kObservationTol) failing.push_back(p.k);
  }
  if (!failing.empty()) {
    throw NotControllableError("moment_targets: vanishing observation values", failing);
  }

  const QuadratureRule rule = make_quadrature(grid);
  MomentProblem mp;
  mp.N = N;
  mp.grid = grid;
  mp.targets.resize(2 * N + 1);
  mp.exponents.resize(2 * N + 1);
  mp.observations.resize(2 * N + 1);
  for (int k = -N; k <= N; ++k) {
    const EigenPair& p = pair_for(pairs, k);
    const Complex inner = quad((u0.array() * p.phi.conjugate().array()).matrix(), rule);
    mp.targets(k + N) = -inner / std::conj(p.b);
    mp.exponents[size_t(k + N)] = p.lambda;
    mp.observations[size_t(k + N)] = p.b;
  }
  return mp;
}

Mat gram_matrix(const std::vector<EigenPair>& pairs, const GridSpec& grid, int N) {
  const double L = grid.L;
  const Complex lam0 = pair_for(pairs, 0).lambda;
  for (int k = 1; k <= N; ++k) {
    if (std::abs(lam0 - pair_for(pairs, k).lambda) < kSeriesTol * (1.0 + std::abs(lam0))) {
      throw DegenerateSpectrumError("gram_matrix: degenerate lambda_0");
    }
  }
  Mat G(2 * N + 1, 2 * N + 1);
  for (int k = -N; k <= N; ++k) {
    for (int j = -N; j <= N; ++j) {
      Complex entry;
      if (k != 0 && j != 0) {
        entry = (k == j) ? Complex(L) : Complex(0);
      } else if (k == 0 && j == 0) {
        entry = exp_integral(Complex(-2.0 * lam0.real(), 0.0), L);
      } else if (j == 0) {
        // Int m_0 conj(m_k) = Int exp(-conj(lam0) t) exp(-2ik pi t/L) dt
        entry = exp_integral(-std::conj(lam0) - Complex(0.0, 2.0 * std::numbers::pi * k / L), L);
      } else {
        // Int m_j conj(m_0) = Int exp(2ij pi t/L - lam0 t) dt
        entry = exp_integral(Complex(0.0, 2.0 * std::numbers::pi * j / L) - lam0, L);
      }
      G(k + N, j + N) = entry;
    }
  }
  return G;
}

ControlSignal solve_moments(const MomentProblem& mp) {
  const GridSpec& grid = mp.grid;
  const int N = mp.N;
  const double L = grid.L;
  if (2 * N >= grid.n) {
    throw std::invalid_argument("solve_moments: truncation aliases the grid (need 2N < n)");
  }
  const QuadratureRule rule = make_quadrature(grid);

  // Trigonometric ansatz U~ = sum a_j e_j, e_j = exp(2i pi j t/L). For k != 0
  // the discrete moments of harmonics are exactly L delta_{j,-k}, so
  // a_{-k} = c_k / L; the k = 0 row couples all coefficients through the
  // discrete moments eta_j of m_0 and closes a_0.
  std::vector<Vec> e(2 * N + 1);
  for (int j = -N; j <= N; ++j) {
    e[size_t(j + N)] = family_samples(Complex(0.0, 2.0 * std::numbers::pi * j / L), grid);
  }
  const Vec m0 = family_samples(mp.lambda(0), grid);

  Vec a = Vec::Zero(2 * N + 1);
  for (int k = -N; k <= N; ++k) {
    if (k != 0) a(-k + N) = mp.target(k) / L;
  }
  Complex eta0;
  Complex coupled = 0.0;
  for (int j = -N; j <= N; ++j) {
    const Complex eta = quad((m0.array() * e[size_t(j + N)].array()).matrix(), rule);
    if (j == 0) {
      eta0 = eta;
    } else {
      coupled += eta * a(j + N);
    }
  }
  if (std::abs(eta0) < kSeriesTol) {
    throw DegenerateSpectrumError("solve_moments: singular moment system (lambda_0 harmonic)");
  }
  a(N) = (mp.target(0) - coupled) / eta0;

  Vec samples = Vec::Zero(grid.size());
  for (int j = -N; j <= N; ++j) samples += a(j + N) * e[size_t(j + N)];
  return {std::move(samples), grid};
}

RVec verify_moments(const ControlSignal& U, const MomentProblem& mp) {
  const QuadratureRule rule = make_quadrature(mp.grid);
  if (U.samples.size() != mp.grid.size()) {
    throw std::invalid_argument("verify_moments: control not sampled on [0,L]");
  }
  RVec r(2 * mp.N + 1);
  for (int k = -mp.N; k <= mp.N; ++k) {
    const Vec mk = family_samples(mp.lambda(k), mp.grid);
    const Complex moment = quad((mk.array() * U.samples.array()).matrix(), rule);
    r(k + mp.N) = std::abs(moment - mp.target(k));
  }
  return r;
}

void export_control_csv(const ControlSignal& U, const std::string& path) {
  csv::Writer out(path);
  out.header("t,re,im");
  for (int m = 0; m < U.samples.size(); ++m) {
    out.row({m * U.grid.h, U.samples(m).real(), U.samples(m).imag()});
  }
}

}  // namespace ftstab
