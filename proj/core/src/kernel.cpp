#include "ftstab/kernel.hpp"

#include <cmath>
#include <numbers>

#include "ftstab/csv.hpp"

namespace ftstab {

KernelFunction KernelFunction::zero() {
  KernelFunction k;
  k.kind_ = KernelKind::Zero;
  return k;
}

KernelFunction KernelFunction::constant(Complex c) {
  KernelFunction k;
  k.kind_ = KernelKind::Constant;
  k.c_ = c;
  return k;
}

KernelFunction KernelFunction::x_only(std::function<Complex(double)> g) {
  KernelFunction k;
  k.kind_ = KernelKind::XOnly;
  k.f_ = std::move(g);
  return k;
}

KernelFunction KernelFunction::separable(std::function<Complex(double)> f,
                                         std::function<Complex(double)> q) {
  KernelFunction k;
  k.kind_ = KernelKind::Separable;
  k.f_ = std::move(f);
  k.q_ = std::move(q);
  return k;
}

KernelFunction KernelFunction::tabulated(Mat values) {
  if (values.rows() != values.cols() || values.rows() < 3) {
    throw std::invalid_argument("tabulated kernel: need a square table, n >= 2");
  }
  KernelFunction k;
  k.kind_ = KernelKind::Tabulated;
  k.table_ = std::move(values);
  return k;
}

KernelFunction KernelFunction::tabulated(Mat values, Vec diag_minus, Vec diag_plus) {
  KernelFunction k = tabulated(std::move(values));
  if (diag_minus.size() != k.table_.rows() || diag_plus.size() != k.table_.rows()) {
    throw std::invalid_argument("tabulated kernel: trace length mismatch");
  }
  k.has_traces_ = true;
  k.diag_minus_ = std::move(diag_minus);
  k.diag_plus_ = std::move(diag_plus);
  return k;
}

KernelFunction KernelFunction::volterra_masked(KernelFunction inner) {
  KernelFunction k;
  k.kind_ = KernelKind::VolterraMasked;
  k.inner_ = std::make_shared<const KernelFunction>(std::move(inner));
  return k;
}

SampledKernel sample_kernel(const KernelFunction& kf, const GridSpec& grid) {
  const int m = grid.size();
  SampledKernel sk;
  sk.grid = grid;
  sk.kind = kf.kind();
  sk.G.resize(m, m);

  switch (kf.kind()) {
    case KernelKind::Zero:
      sk.G.setZero();
      break;
    case KernelKind::Constant:
      sk.G.setConstant(kf.constant_value());
      break;
    case KernelKind::XOnly: {
      Vec prof(m);
      for (int i = 0; i < m; ++i) prof(i) = kf.x_part()(grid.nodes(i));
      sk.G = prof.replicate(1, m);
      break;
    }
    case KernelKind::Separable: {
      Vec f(m), q(m);
      for (int i = 0; i < m; ++i) {
        f(i) = kf.x_part()(grid.nodes(i));
        q(i) = kf.y_part()(grid.nodes(i));
      }
      sk.G = f * q.transpose();
      break;
    }
    case KernelKind::Tabulated:
      if (kf.table().rows() != m) {
        throw std::invalid_argument("sample_kernel: tabulated dimensions do not match grid");
      }
      sk.G = kf.table();
      break;
    case KernelKind::VolterraMasked: {
      SampledKernel inner = sample_kernel(kf.inner(), grid);
      sk.G = inner.G;
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) sk.G(i, j) = Complex{};
      sk.diag_minus = inner.G.diagonal();  // limit from x > y
      sk.diag_plus = Vec::Zero(m);
      return sk;
    }
  }

  if (kf.kind() == KernelKind::Tabulated && kf.has_traces()) {
    sk.diag_minus = kf.diag_minus();
    sk.diag_plus = kf.diag_plus();
  } else {
    sk.diag_minus = sk.G.diagonal();
    sk.diag_plus = sk.G.diagonal();
  }
  return sk;
}

KernelFunction fattorini_counterexample(double a0, int N, double L) {
  if (N < 1) throw std::invalid_argument("fattorini_counterexample: N >= 1");
  if (!(L > 0.0)) throw std::invalid_argument("fattorini_counterexample: L > 0");
  return KernelFunction::x_only([a0, N, L](double x) -> Complex {
    double v = a0;
    for (int k = 1; k <= N; ++k) {
      const double wk = 2.0 * std::numbers::pi * k / L;
      v += (2.0 / L) * a0 * std::cos(wk * x);
      v += (2.0 / L) * wk * std::sin(wk * x);
    }
    return v;
  });
}

double l2_norm(const SampledKernel& sk) {
  const QuadratureRule rule = make_quadrature(sk.grid);
  const RVec& w = rule.weights;
  double s = 0.0;
  for (int i = 0; i < sk.G.rows(); ++i) {
    s += w(i) * (w.array() * sk.G.row(i).transpose().array().abs2()).sum();
  }
  return std::sqrt(s);
}

bool small_gain(const SampledKernel& sk) {
  return l2_norm(sk) < std::numbers::sqrt2 / sk.grid.L;
}

bool is_volterra(const SampledKernel& sk, double tol) {
  for (int i = 0; i < sk.G.rows(); ++i)
    for (int j = i; j < sk.G.cols(); ++j)
      if (std::abs(sk.G(i, j)) > tol) return false;
  return true;
}

KernelFunction load_tabulated_kernel(const std::string& csv_path,
                                     const std::string& sidecar_path) {
  const auto rows = csv::read(csv_path, {"i", "j", "re", "im"});
  int n = -1;
  for (const auto& r : rows) n = std::max({n, int(r[0]), int(r[1])});
  if (n < 2) throw std::invalid_argument("kernel CSV: table too small");
  Mat table = Mat::Zero(n + 1, n + 1);
  Eigen::MatrixX<bool> seen = Eigen::MatrixX<bool>::Constant(n + 1, n + 1, false);
  for (const auto& r : rows) {
    const int i = int(r[0]), j = int(r[1]);
    if (i < 0 || j < 0) throw std::invalid_argument("kernel CSV: negative index");
    table(i, j) = Complex(r[2], r[3]);
    seen(i, j) = true;
  }
  if (!seen.all()) throw std::invalid_argument("kernel CSV: incomplete table");

  if (sidecar_path.empty()) return KernelFunction::tabulated(std::move(table));

  const auto traces = csv::read(sidecar_path, {"i", "re_minus", "im_minus", "re_plus", "im_plus"});
  Vec dm = Vec::Zero(n + 1), dp = Vec::Zero(n + 1);
  for (const auto& r : traces) {
    const int i = int(r[0]);
    if (i < 0 || i > n) throw std::invalid_argument("kernel sidecar CSV: index out of range");
    dm(i) = Complex(r[1], r[2]);
    dp(i) = Complex(r[3], r[4]);
  }
  return KernelFunction::tabulated(std::move(table), std::move(dm), std::move(dp));
}

}  // namespace ftstab
