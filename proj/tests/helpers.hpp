#pragma once

#include <numbers>
#include <random>

#include "ftstab/grid.hpp"
#include "ftstab/types.hpp"

namespace ftstab::testing {

/// Random zero-mean-ish trigonometric polynomial of the given degree,
/// sampled on the grid nodes. Deterministic for a fixed seed.
inline Vec random_trig_poly(const GridSpec& grid, int degree, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec u0 = Vec::Zero(grid.size());
  for (int k = -degree; k <= degree; ++k) {
    const Complex xi(gauss(rng), gauss(rng));
    for (int i = 0; i < grid.size(); ++i) {
      u0(i) += xi * std::exp(Complex(0.0, 2.0 * std::numbers::pi * k * grid.nodes(i) / grid.L));
    }
  }
  return u0;
}

inline Vec random_complex_vector(int size, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(size);
  for (int i = 0; i < size; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v;
}

inline Mat random_complex_matrix(int size, unsigned seed, double scale = 1.0) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) m(i, j) = scale * Complex(gauss(rng), gauss(rng));
  return m;
}

}  // namespace ftstab::testing
