#include "ftstab/grid.hpp"

#include <cmath>

namespace ftstab {

GridSpec make_grid(double L, int n) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw std::invalid_argument("make_grid: L must be positive and finite");
  }
  if (n < 2) {
    throw std::invalid_argument("make_grid: need at least two cells");
  }
  GridSpec g;
  g.L = L;
  g.n = n;
  g.h = L / n;
  g.nodes = RVec::LinSpaced(n + 1, 0.0, L);
  return g;
}

QuadratureRule make_quadrature(const GridSpec& grid) {
  QuadratureRule rule;
  rule.weights = RVec::Constant(grid.n + 1, grid.h);
  rule.weights(0) = grid.h / 2.0;
  rule.weights(grid.n) = grid.h / 2.0;
  return rule;
}

Complex quad(const Vec& values, const QuadratureRule& rule) {
  if (values.size() != rule.weights.size()) {
    throw std::invalid_argument("quad: length mismatch");
  }
  return (rule.weights.cast<Complex>().array() * values.array()).sum();
}

double l2_norm(const Vec& v, const QuadratureRule& rule) {
  if (v.size() != rule.weights.size()) {
    throw std::invalid_argument("l2_norm: length mismatch");
  }
  return std::sqrt((rule.weights.array() * v.array().abs2()).sum());
}

double l2_norm_interior(const Vec& v, const QuadratureRule& rule) {
  if (v.size() != rule.weights.size()) {
    throw std::invalid_argument("l2_norm_interior: length mismatch");
  }
  Vec vv = v;
  const Eigen::Index n = v.size() - 1;
  vv(n) = 2.0 * v(n - 1) - v(n - 2);
  return l2_norm(vv, rule);
}

}  // namespace ftstab
