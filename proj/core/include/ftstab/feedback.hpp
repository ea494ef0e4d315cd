#pragma once

#include <optional>
#include <string>

#include "ftstab/grid.hpp"
#include "ftstab/kernel_synthesis.hpp"
#include "ftstab/types.hpp"

namespace ftstab {

/// Dense Nystrom discretization of the integral operator K with quadrature
/// weights folded in: (K u)_i = sum_j k(x_i, x_j) w_j u_j. sigma_min of
/// Id - K is computed lazily on demand.
class FredholmOp {
 public:
  FredholmOp(Mat weighted, GridSpec grid) : Kmat_(std::move(weighted)), grid_(std::move(grid)) {}

  const Mat& Kmat() const { return Kmat_; }
  const GridSpec& grid() const { return grid_; }
  double sigma_min() const;
  double op_norm() const;  // ||Kmat||_2

 private:
  Mat Kmat_;
  GridSpec grid_;
  mutable std::optional<double> sigma_min_;
  mutable std::optional<double> op_norm_;
};

/// Boundary feedback Gamma u = Int h_-(L,y) u(y) dy as a weighted dot product.
struct FeedbackLaw {
  Vec hrow;          // h_-(L, y_j)
  Vec gamma_vector;  // hrow .* weights

  Complex apply(const Vec& u) const { return (gamma_vector.array() * u.array()).sum(); }
};

struct InvertibilityReport {
  double sigma_min = 0.0;
  bool invertible = false;
};

struct FeedbackSolution {
  FeedbackLaw law;
  Mat field;  // full h(x_i, y_j), retained for residual checks
};

/// Kmat(i,j) = k(x_i, x_j) w_j; with `from_adjoint` set the kernel is read
/// as k(x,y) = conj(k*(y,x)).
FredholmOp assemble_K(const Mat& kernel_samples, const GridSpec& grid, bool from_adjoint);

InvertibilityReport invertibility(const FredholmOp& op, double tol);

/// Scale-relative default threshold 1e-6 (1 + ||Kmat||_2).
double default_invert_tol(const FredholmOp& op);

/// Solves (Id - K) h(., y_j) = -k(., y_j) column by column against one LU
/// factorization; the law reads off the x = L row.
FeedbackSolution feedback_kernel_h(const SynthesizedKernel& kstar, const GridSpec& grid);

/// Residual of h_x + h_y - Int g(s,y) h(x,s) ds + g(x,y) = 0 plus the
/// boundary defects ||h(.,0)|| and ||h(.,L)||.
struct HEquationResidual {
  double pde = 0.0;
  double bc_y0 = 0.0;
  double bc_yL = 0.0;
};
HEquationResidual h_equation_residual(const Mat& hfield, const SampledKernel& g,
                                      const GridSpec& grid);

Vec transform_apply(const FredholmOp& op, const Vec& w);
Vec transform_invert(const FredholmOp& op, const Vec& u);

/// Feedback export: `j,re_h,im_h` rows plus a diagnostics line with sigma_min.
void export_feedback_csv(const FeedbackLaw& law, double sigma_min, const std::string& path);

}  // namespace ftstab
