#include "ftstab/feedback.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "ftstab/csv.hpp"

namespace ftstab {

double FredholmOp::sigma_min() const {
  if (!sigma_min_) {
    Mat A = Mat::Identity(Kmat_.rows(), Kmat_.cols()) - Kmat_;
    Eigen::BDCSVD<Mat> svd(A);
    sigma_min_ = svd.singularValues().tail(1)(0);
  }
  return *sigma_min_;
}

double FredholmOp::op_norm() const {
  if (!op_norm_) {
    Eigen::BDCSVD<Mat> svd(Kmat_);
    op_norm_ = svd.singularValues()(0);
  }
  return *op_norm_;
}

FredholmOp assemble_K(const Mat& kernel_samples, const GridSpec& grid, bool from_adjoint) {
  if (kernel_samples.rows() != grid.size() || kernel_samples.cols() != grid.size()) {
    throw std::invalid_argument("assemble_K: dimension mismatch");
  }
  const QuadratureRule rule = make_quadrature(grid);
  Mat k = kernel_samples;
  if (from_adjoint) k = kernel_samples.adjoint();
  Mat weighted = k * rule.weights.cast<Complex>().asDiagonal();
  return FredholmOp(std::move(weighted), grid);
}

InvertibilityReport invertibility(const FredholmOp& op, double tol) {
  InvertibilityReport r;
  r.sigma_min = op.sigma_min();
  r.invertible = r.sigma_min > tol;
  return r;
}

double default_invert_tol(const FredholmOp& op) { return 1e-6 * (1.0 + op.op_norm()); }

FeedbackSolution feedback_kernel_h(const SynthesizedKernel& kstar, const GridSpec& grid) {
  FredholmOp op = assemble_K(kstar.kstar, grid, /*from_adjoint=*/true);
  if (!invertibility(op, default_invert_tol(op)).invertible) {
    throw SingularTransformError("feedback_kernel_h: Id - K is numerically singular");
  }
  const int m = grid.size();
  const Mat k = kstar.kstar.adjoint();  // k(x,y) = conj(k*(y,x))
  Mat A = Mat::Identity(m, m) - op.Kmat();
  Eigen::PartialPivLU<Mat> lu(A);
  Mat field = lu.solve((-k).eval());  // column j: h(., y_j)

  FeedbackSolution sol;
  sol.field = std::move(field);
  sol.law.hrow = sol.field.row(m - 1).transpose();  // h_-(L, .), trace from T-
  const QuadratureRule rule = make_quadrature(grid);
  sol.law.gamma_vector =
      (sol.law.hrow.array() * rule.weights.cast<Complex>().array()).matrix();
  return sol;
}

HEquationResidual h_equation_residual(const Mat& hfield, const SampledKernel& g,
                                      const GridSpec& grid) {
  const int n = grid.n;
  const double h = grid.h;
  if (hfield.rows() != n + 1 || g.G.rows() != n + 1) {
    throw std::invalid_argument("h_equation_residual: dimension mismatch");
  }
  const QuadratureRule rule = make_quadrature(grid);
  const RVec& w = rule.weights;
  const Mat& H = hfield;

  // Int g(s,y) h(x,s) ds = (H W G)(x,y) with the half-cell jump correction
  // at s = x (extrapolated one-sided limit from below the diagonal).
  Mat I = H * w.cast<Complex>().asDiagonal() * g.G;
  Vec corr(n + 1);
  for (int i = 0; i <= n; ++i) {
    const Complex below = (i >= 2) ? 2.0 * H(i, i - 1) - H(i, i - 2) : H(i, i);
    corr(i) = (h / 2.0) * (below - H(i, i));
  }
  I += corr.asDiagonal() * g.G;

  auto dx = [&](int i, int j) -> Complex {
    if (i > j) {
      if (i >= j + 3 && i >= 2) return (3.0 * H(i, j) - 4.0 * H(i - 1, j) + H(i - 2, j)) / (2.0 * h);
      return (H(i, j) - H(i - 1, j)) / h;
    }
    if (i + 2 <= j - 1) return (-3.0 * H(i, j) + 4.0 * H(i + 1, j) - H(i + 2, j)) / (2.0 * h);
    return (H(i + 1, j) - H(i, j)) / h;
  };
  auto dy = [&](int i, int j) -> Complex {
    if (i > j) {
      if (j + 2 <= i - 1) return (-3.0 * H(i, j) + 4.0 * H(i, j + 1) - H(i, j + 2)) / (2.0 * h);
      return (H(i, j + 1) - H(i, j)) / h;
    }
    if (j >= i + 3 && j >= 2) return (3.0 * H(i, j) - 4.0 * H(i, j - 1) + H(i, j - 2)) / (2.0 * h);
    return (H(i, j) - H(i, j - 1)) / h;
  };

  HEquationResidual out;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (std::abs(i - j) <= 1) continue;
      const Complex r = dx(i, j) + dy(i, j) - I(i, j) + g.G(i, j);
      acc += w(i) * w(j) * std::norm(r);
    }
  }
  out.pde = std::sqrt(acc);
  out.bc_y0 = l2_norm(H.col(0), rule);
  out.bc_yL = l2_norm(H.col(n), rule);
  return out;
}

Vec transform_apply(const FredholmOp& op, const Vec& w) {
  if (w.size() != op.Kmat().rows()) {
    throw std::invalid_argument("transform_apply: length mismatch");
  }
  return w - op.Kmat() * w;
}

Vec transform_invert(const FredholmOp& op, const Vec& u) {
  if (u.size() != op.Kmat().rows()) {
    throw std::invalid_argument("transform_invert: length mismatch");
  }
  if (!invertibility(op, default_invert_tol(op)).invertible) {
    throw SingularTransformError("transform_invert: Id - K is numerically singular");
  }
  Mat A = Mat::Identity(op.Kmat().rows(), op.Kmat().cols()) - op.Kmat();
  return A.partialPivLu().solve(u);
}

void export_feedback_csv(const FeedbackLaw& law, double sigma_min, const std::string& path) {
  csv::Writer out(path);
  out.header("j,re_h,im_h");
  for (int j = 0; j < law.hrow.size(); ++j) {
    out.row_prefixed(j, {law.hrow(j).real(), law.hrow(j).imag()});
  }
  out.raw("# sigma_min=" + csv::num(sigma_min));
}

}  // namespace ftstab
