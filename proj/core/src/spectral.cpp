#include "ftstab/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ftstab/csv.hpp"

namespace ftstab {

namespace {

constexpr double kDegeneracyTol = 1e-8;

void require_x_only(const SampledKernel& g, const char* who) {
  if (!g.x_only()) {
    throw std::invalid_argument(std::string(who) + ": kernel must be x-only");
  }
}

Complex lambda_harmonic(int k, double L) {
  return Complex(0.0, 2.0 * std::numbers::pi * k / L);
}

Complex lambda_zero(const SampledKernel& g, const GridSpec& grid) {
  const QuadratureRule rule = make_quadrature(grid);
  return quad(g.x_profile().conjugate(), rule);
}

bool degenerate(Complex lam0, Complex lamk) {
  return std::abs(lam0 - lamk) < kDegeneracyTol * (1.0 + std::abs(lam0));
}

/// J_k = Int conj(g(x)) exp(-lambda_k x) dx by quadrature.
Complex moment_integral(const SampledKernel& g, const GridSpec& grid, Complex lamk) {
  const QuadratureRule rule = make_quadrature(grid);
  Vec integrand(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    integrand(i) = std::conj(g.x_profile()(i)) * std::exp(-lamk * grid.nodes(i));
  }
  return quad(integrand, rule);
}

}  // namespace

Complex w_lambda(Complex lambda, double x) {
  const Complex z = lambda * x;
  if (std::abs(z) < 1e-6) {
    // (1 - e^{-z}) / lambda = x (1 - z/2 + z^2/6 - ...)
    return x * (1.0 - z / 2.0 + z * z / 6.0);
  }
  return (1.0 - std::exp(-z)) / lambda;
}

Eigen::Matrix2cd H_matrix(Complex lambda, const SampledKernel& g, const GridSpec& grid) {
  require_x_only(g, "H_matrix");
  const QuadratureRule rule = make_quadrature(grid);
  Vec wl(grid.size());
  for (int i = 0; i < grid.size(); ++i) wl(i) = w_lambda(lambda, grid.nodes(i));

  Eigen::Matrix2cd H;
  H(0, 0) = 1.0 - std::exp(-lambda * grid.L);
  H(0, 1) = -w_lambda(lambda, grid.L);
  H(1, 0) = moment_integral(g, grid, lambda);
  H(1, 1) = quad((g.x_profile().conjugate().array() * wl.array()).matrix(), rule) - 1.0;
  return H;
}

std::vector<EigenPair> spectrum(const SampledKernel& g, const GridSpec& grid, int K) {
  require_x_only(g, "spectrum");
  if (K < 1) throw std::invalid_argument("spectrum: K >= 1");
  const Complex lam0 = lambda_zero(g, grid);

  std::vector<EigenPair> pairs;
  pairs.reserve(2 * K + 1);
  for (int k = -K; k <= K; ++k) {
    EigenPair p;
    p.k = k;
    if (k == 0) {
      p.lambda = lam0;
      p.phi = Vec::Ones(grid.size());
      p.b = 1.0;
    } else {
      p.lambda = lambda_harmonic(k, grid.L);
      if (degenerate(lam0, p.lambda)) {
        std::ostringstream msg;
        msg << "spectrum: lambda_0 collides with lambda_" << k;
        throw DegenerateSpectrumError(msg.str());
      }
      const Complex ck = moment_integral(g, grid, p.lambda) / (p.lambda - lam0);
      p.phi.resize(grid.size());
      for (int i = 0; i < grid.size(); ++i) {
        p.phi(i) = std::exp(-p.lambda * grid.nodes(i)) + ck;
      }
      p.b = 1.0 + ck;  // exp(-lambda_k L) = 1
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

double eigen_residual(const EigenPair& pair, const SampledKernel& g, const GridSpec& grid) {
  require_x_only(g, "eigen_residual");
  if (pair.phi.size() != grid.size()) {
    throw std::invalid_argument("eigen_residual: phi length mismatch");
  }
  const int n = grid.n;
  const double h = grid.h;
  const QuadratureRule rule = make_quadrature(grid);
  const Complex I = quad((g.x_profile().conjugate().array() * pair.phi.array()).matrix(), rule);

  Vec d(n + 1);
  for (int i = 1; i < n; ++i) d(i) = (pair.phi(i + 1) - pair.phi(i - 1)) / (2.0 * h);
  d(0) = (-3.0 * pair.phi(0) + 4.0 * pair.phi(1) - pair.phi(2)) / (2.0 * h);
  d(n) = (3.0 * pair.phi(n) - 4.0 * pair.phi(n - 1) + pair.phi(n - 2)) / (2.0 * h);

  Vec r = pair.lambda * pair.phi + d - Vec::Constant(n + 1, I);
  return l2_norm(r, rule) + std::abs(pair.phi(n) - pair.phi(0));
}

Complex fattorini_value(int k, const SampledKernel& g, const GridSpec& grid) {
  require_x_only(g, "fattorini_value");
  if (k == 0) throw std::invalid_argument("fattorini_value: k must be nonzero");
  const Complex lam0 = lambda_zero(g, grid);
  const Complex lamk = lambda_harmonic(k, grid.L);
  if (degenerate(lam0, lamk)) {
    throw DegenerateSpectrumError("fattorini_value: degenerate lambda_0");
  }
  return 1.0 + moment_integral(g, grid, lamk) / (lamk - lam0);
}

FattoriniVerdict fattorini_check(const SampledKernel& g, const GridSpec& grid, double tol) {
  require_x_only(g, "fattorini_check");
  const Complex lam0 = lambda_zero(g, grid);
  const QuadratureRule rule = make_quadrature(grid);
  const double norm_g = l2_norm(g.x_profile(), rule);
  const double L = grid.L;

  // Least K with 2K pi/L > |lambda_0| and sqrt(L)||g||/(2K pi/L - |lambda_0|) < 1/2:
  // beyond it |value - 1| <= 1/2 by Cauchy-Schwarz, so the criterion holds.
  int K = 1;
  while (true) {
    const double gap = 2.0 * K * std::numbers::pi / L - std::abs(lam0);
    if (gap > 0.0 && std::sqrt(L) * norm_g / gap < 0.5) break;
    ++K;
  }

  FattoriniVerdict v;
  v.K_max = K;
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;
    if (degenerate(lam0, lambda_harmonic(k, L))) {
      v.status = FattoriniStatus::DegenerateLambda0;
      return v;
    }
  }
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;
    const Complex val = fattorini_value(k, g, grid);
    v.values[k] = val;
    if (std::abs(val) <= tol) v.fails_at.push_back(k);
  }
  v.status = v.fails_at.empty() ? FattoriniStatus::Satisfied : FattoriniStatus::Fails;
  return v;
}

void export_verdict_csv(const FattoriniVerdict& v, const std::string& path) {
  csv::Writer out(path);
  out.header("k,re_value,im_value,abs_value");
  for (const auto& [k, val] : v.values) {
    out.row_prefixed(k, {val.real(), val.imag(), std::abs(val)});
  }
  std::ostringstream status;
  status << "# status=";
  switch (v.status) {
    case FattoriniStatus::Satisfied:
      status << "satisfied";
      break;
    case FattoriniStatus::Fails: {
      status << "fails_at{";
      for (size_t i = 0; i < v.fails_at.size(); ++i) {
        if (i) status << ";";
        status << v.fails_at[i];
      }
      status << "}";
      break;
    }
    case FattoriniStatus::DegenerateLambda0:
      status << "degenerate_lambda0";
      break;
  }
  status << " K_max=" << v.K_max;
  out.raw(status.str());
}

}  // namespace ftstab
