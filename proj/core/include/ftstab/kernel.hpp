#pragma once

#include <functional>
#include <memory>
#include <string>

#include "ftstab/grid.hpp"
#include "ftstab/types.hpp"

namespace ftstab {

enum class KernelKind {
  Zero,
  Constant,
  XOnly,          // g(x,y) = g(x)
  Separable,      // g(x,y) = f(x) q(y)
  Tabulated,
  VolterraMasked  // inner kernel zeroed for x <= y
};

/// Descriptor for the integral kernel g(x,y). Tabulated kernels carry the
/// two one-sided diagonal traces g_-(x,x), g_+(x,x) explicitly; a pointwise
/// sample cannot recover them once g jumps across the diagonal.
class KernelFunction {
 public:
  static KernelFunction zero();
  static KernelFunction constant(Complex c);
  static KernelFunction x_only(std::function<Complex(double)> g);
  static KernelFunction separable(std::function<Complex(double)> f,
                                  std::function<Complex(double)> q);
  static KernelFunction tabulated(Mat values);
  static KernelFunction tabulated(Mat values, Vec diag_minus, Vec diag_plus);
  static KernelFunction volterra_masked(KernelFunction inner);

  KernelKind kind() const { return kind_; }
  Complex constant_value() const { return c_; }
  const std::function<Complex(double)>& x_part() const { return f_; }
  const std::function<Complex(double)>& y_part() const { return q_; }
  const Mat& table() const { return table_; }
  bool has_traces() const { return has_traces_; }
  const Vec& diag_minus() const { return diag_minus_; }
  const Vec& diag_plus() const { return diag_plus_; }
  const KernelFunction& inner() const { return *inner_; }

 private:
  KernelFunction() = default;
  KernelKind kind_ = KernelKind::Zero;
  Complex c_{};
  std::function<Complex(double)> f_, q_;
  Mat table_;
  bool has_traces_ = false;
  Vec diag_minus_, diag_plus_;
  std::shared_ptr<const KernelFunction> inner_;
};

/// Pointwise samples G(i,j) ~ g(x_i, x_j) plus the two diagonal traces.
struct SampledKernel {
  Mat G;
  Vec diag_minus;
  Vec diag_plus;
  GridSpec grid;
  KernelKind kind = KernelKind::Zero;

  bool x_only() const {
    return kind == KernelKind::Zero || kind == KernelKind::Constant ||
           kind == KernelKind::XOnly;
  }
  /// First column; rows are constant along j for x-only kernels.
  Vec x_profile() const { return G.col(0); }
};

SampledKernel sample_kernel(const KernelFunction& kf, const GridSpec& grid);

/// The explicit family of Remark-existence type: an x-only real kernel for
/// which the spectral criterion fails at modes k = 1..N:
///   g(x) = a0 + (2/L) sum_k a0 cos(2k pi x/L) + (2/L) sum_k (2k pi/L) sin(2k pi x/L).
KernelFunction fattorini_counterexample(double a0, int N, double L);

/// Discrete L2((0,L)x(0,L)) norm via tensor trapezoid quadrature.
double l2_norm(const SampledKernel& sk);

/// True iff ||g||_{L2} < sqrt(2)/L.
bool small_gain(const SampledKernel& sk);

/// True iff max |G(i,j)| <= tol over i <= j.
bool is_volterra(const SampledKernel& sk, double tol);

/// Load a tabulated kernel from CSV (header `i,j,re,im`, row-major), with an
/// optional sidecar CSV `i,re_minus,im_minus,re_plus,im_plus` for traces.
KernelFunction load_tabulated_kernel(const std::string& csv_path,
                                     const std::string& sidecar_path = {});

}  // namespace ftstab
