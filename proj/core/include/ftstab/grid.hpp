#pragma once

#include "ftstab/types.hpp"

namespace ftstab {

/// Uniform grid on [0,L] with n cells and the characteristics-aligned time
/// step dt = h, so the unit-speed transport maps nodes to nodes exactly.
struct GridSpec {
  double L = 0.0;
  int n = 0;
  double h = 0.0;
  RVec nodes;  // x_i = i*h, i = 0..n

  int size() const { return n + 1; }
};

/// Trapezoid weights: h/2 at the endpoints, h inside. Sum equals L.
struct QuadratureRule {
  RVec weights;
};

GridSpec make_grid(double L, int n);
QuadratureRule make_quadrature(const GridSpec& grid);

/// Weighted sum  sum_i w_i v_i  (trapezoid approximation of the integral).
Complex quad(const Vec& values, const QuadratureRule& rule);

/// Discrete L2(0,L) norm sqrt(sum w_i |v_i|^2).
double l2_norm(const Vec& v, const QuadratureRule& rule);

/// L2 norm with the node-n sample replaced by the interior-limit
/// extrapolation 2 v_{n-1} - v_{n-2}. The boundary node of a marched state
/// holds the control sample, which for an L2 control is not the trace of
/// the state; this norm measures the function, not the boundary datum.
double l2_norm_interior(const Vec& v, const QuadratureRule& rule);

}  // namespace ftstab
