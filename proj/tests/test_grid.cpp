#include <doctest.h>

#include <cmath>

#include "ftstab/grid.hpp"

using namespace ftstab;

TEST_CASE("make_grid produces aligned uniform nodes") {
  GridSpec g = make_grid(1.0, 4);
  CHECK(g.h == doctest::Approx(0.25).epsilon(0));
  REQUIRE(g.nodes.size() == 5);
  for (int i = 0; i <= 4; ++i) CHECK(g.nodes(i) == doctest::Approx(0.25 * i));

  GridSpec g2 = make_grid(2.0, 2);
  CHECK(g2.h == 1.0);
  CHECK(g2.nodes(0) == 0.0);
  CHECK(g2.nodes(1) == 1.0);
  CHECK(g2.nodes(2) == 2.0);
}

TEST_CASE("make_grid rejects bad arguments") {
  CHECK_THROWS_AS(make_grid(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(-2.0, 4), std::invalid_argument);
}

TEST_CASE("trapezoid weights sum to L and integrate affine functions exactly") {
  for (auto [L, n] : {std::pair{1.0, 4}, {2.5, 7}, {0.3, 33}}) {
    GridSpec g = make_grid(L, n);
    QuadratureRule rule = make_quadrature(g);
    CHECK(rule.weights.sum() == doctest::Approx(L).epsilon(1e-14));
    CHECK(quad(Vec::Ones(g.size()), rule).real() == doctest::Approx(L).epsilon(1e-14));
    CHECK(quad(g.nodes.cast<Complex>(), rule).real() ==
          doctest::Approx(L * L / 2.0).epsilon(1e-14));
  }
}

TEST_CASE("quad on the spec examples") {
  GridSpec g = make_grid(1.0, 4);
  QuadratureRule rule = make_quadrature(g);
  CHECK(quad(Vec::Ones(5), rule).real() == doctest::Approx(1.0));
  CHECK(quad(g.nodes.cast<Complex>(), rule).real() == doctest::Approx(0.5));
  // hand trapezoid sum for x^2: 0.125*(0+1) + 0.25*(0.0625+0.25+0.5625)
  Vec sq = g.nodes.array().square().cast<Complex>();
  CHECK(quad(sq, rule).real() == doctest::Approx(0.34375).epsilon(1e-15));
}

TEST_CASE("quad rejects length mismatch") {
  GridSpec g = make_grid(1.0, 4);
  QuadratureRule rule = make_quadrature(g);
  CHECK_THROWS_AS(quad(Vec::Ones(4), rule), std::invalid_argument);
}

TEST_CASE("trapezoid error on x^3 shrinks by ~4 when n doubles") {
  auto err = [](int n) {
    GridSpec g = make_grid(1.0, n);
    Vec cube = g.nodes.array().cube().cast<Complex>();
    return std::abs(quad(cube, make_quadrature(g)) - Complex(0.25));
  };
  const double ratio = err(32) / err(64);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}
