#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "kcalc/grid.hpp"

using namespace kcalc;

namespace {

GridSpec box(double lo, double hi, int points, int n) {
  return GridSpec(std::vector<Axis>(static_cast<std::size_t>(n),
                                    Axis{lo, hi, points}));
}

}  // namespace

TEST_CASE("grid validation and geometry", "[grid]") {
  REQUIRE_THROWS_AS(GridSpec({Axis{0.0, 1.0, 2}}), std::invalid_argument);
  REQUIRE_THROWS_AS(GridSpec({Axis{1.0, 1.0, 5}}), std::invalid_argument);
  REQUIRE_THROWS_AS(GridSpec({Axis{2.0, 1.0, 5}}), std::invalid_argument);
  REQUIRE_THROWS_AS(GridSpec(std::vector<Axis>{}), std::invalid_argument);

  GridSpec g({Axis{-1.0, 1.0, 5}, Axis{0.0, 3.0, 4}, Axis{0.0, 1.0, 3}});
  REQUIRE(g.dimension() == 3);
  REQUIRE(g.node_count() == 5u * 4u * 3u);
  REQUIRE(g.spacing(0) == 0.5);
  REQUIRE(g.spacing(1) == 1.0);
  REQUIRE(g.spacing(2) == 0.5);
  REQUIRE(g.cell_volume() == 0.25);
  REQUIRE(g.stride(2) == 1u);
  REQUIRE(g.stride(1) == 3u);
  REQUIRE(g.stride(0) == 12u);
  REQUIRE(g.coordinate(0, 0) == -1.0);
  REQUIRE(g.coordinate(0, 4) == 1.0);
  REQUIRE(g.coordinate(1, 2) == 2.0);
}

TEST_CASE("flatten and unflatten are inverse and row-major", "[grid]") {
  GridSpec g({Axis{0.0, 1.0, 4}, Axis{0.0, 1.0, 3}, Axis{0.0, 1.0, 5}});
  std::vector<int> idx;
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    g.unflatten(node, idx);
    REQUIRE(g.flatten(idx) == node);
  }
  REQUIRE(g.flatten({1, 2, 3}) == 1u * 15u + 2u * 5u + 3u);

  std::vector<double> x;
  g.coordinates(g.flatten({2, 1, 4}), x);
  REQUIRE(x[0] == g.coordinate(0, 2));
  REQUIRE(x[1] == g.coordinate(1, 1));
  REQUIRE(x[2] == g.coordinate(2, 4));
}

TEST_CASE("boundary distance and interior mask", "[grid]") {
  GridSpec g = box(0.0, 1.0, 5, 2);
  REQUIRE(g.boundary_distance(g.flatten({0, 3})) == 0);
  REQUIRE(g.boundary_distance(g.flatten({2, 2})) == 2);
  REQUIRE(g.boundary_distance(g.flatten({1, 2})) == 1);

  const auto mask1 = interior_mask(g, 1);
  const auto mask2 = interior_mask(g, 2);
  std::size_t inner1 = 0, inner2 = 0;
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    inner1 += mask1[node];
    inner2 += mask2[node];
  }
  REQUIRE(inner1 == 9u);  // 3 x 3 core
  REQUIRE(inner2 == 1u);  // centre only
  REQUIRE(interior_mask(g, 0) == std::vector<std::uint8_t>(g.node_count(), 1));
}

TEST_CASE("quadrature weights telescope difference sums exactly", "[grid]") {
  // The weights are built so that sum_i w_i (Df)_i = f_end - f_start for the
  // matching stencil (one-sided second order at the ends, central inside).
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int points : {3, 4, 5, 8, 17}) {
    const double h = 0.37;
    std::vector<double> f(static_cast<std::size_t>(points));
    for (double& v : f) v = dist(rng);
    std::vector<double> df(f.size());
    const double inv2h = 1.0 / (2.0 * h);
    for (int i = 0; i < points; ++i) {
      if (i == 0)
        df[0] = (4.0 * (f[1] - f[0]) - (f[2] - f[0])) * inv2h;
      else if (i == points - 1)
        df[static_cast<std::size_t>(i)] =
            (4.0 * (f[static_cast<std::size_t>(i)] - f[static_cast<std::size_t>(i - 1)]) -
             (f[static_cast<std::size_t>(i)] - f[static_cast<std::size_t>(i - 2)])) *
            inv2h;
      else
        df[static_cast<std::size_t>(i)] =
            (f[static_cast<std::size_t>(i + 1)] - f[static_cast<std::size_t>(i - 1)]) * inv2h;
    }
    const auto w = stokes_weights(h, points);
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) total += w[i] * df[i];
    const double expect = f[static_cast<std::size_t>(points - 1)] - f[0];
    REQUIRE(std::abs(total - expect) < 1e-13);
  }
  REQUIRE_THROWS_AS(stokes_weights(0.1, 2), std::invalid_argument);
}

TEST_CASE("quadrature weights integrate smooth functions at second order",
          "[grid]") {
  // integral of exp(x) on [0,1]
  const double exact = std::exp(1.0) - 1.0;
  auto quad = [&](int points) {
    const double h = 1.0 / (points - 1);
    const auto w = stokes_weights(h, points);
    double total = 0.0;
    for (int i = 0; i < points; ++i)
      total += w[static_cast<std::size_t>(i)] * std::exp(i * h);
    return std::abs(total - exact);
  };
  const double coarse = quad(17);
  const double fine = quad(33);
  REQUIRE(coarse / fine > 3.0);
  REQUIRE(coarse / fine < 5.0);
}

TEST_CASE("region bounds are validated", "[grid]") {
  GridSpec g = box(0.0, 1.0, 8, 2);
  REQUIRE_THROWS_AS(Region(g, {{0, 7}}), std::invalid_argument);
  REQUIRE_THROWS_AS(Region(g, {{-1, 4}, {0, 7}}), std::invalid_argument);
  REQUIRE_THROWS_AS(Region(g, {{0, 8}, {0, 7}}), std::invalid_argument);
  REQUIRE_THROWS_AS(Region(g, {{3, 4}, {0, 7}}), std::invalid_argument);
  REQUIRE_NOTHROW(Region(g, {{2, 4}, {0, 7}}));
}

TEST_CASE("region classification and subgrid", "[grid]") {
  GridSpec g = box(0.0, 7.0, 8, 2);
  Region r(g, {{2, 5}, {1, 6}});
  REQUIRE(r.node_count() == 4u * 6u);
  REQUIRE_FALSE(r.is_full());
  REQUIRE(Region::full(g).is_full());

  REQUIRE(r.classify({3, 3}) == Region::Location::interior);
  REQUIRE(r.classify({2, 3}) == Region::Location::boundary);
  REQUIRE(r.classify({3, 6}) == Region::Location::boundary);
  REQUIRE(r.classify({1, 3}) == Region::Location::exterior);
  REQUIRE(r.classify({3, 7}) == Region::Location::exterior);

  GridSpec sub = r.subgrid();
  REQUIRE(sub.dimension() == 2);
  REQUIRE(sub.points(0) == 4);
  REQUIRE(sub.points(1) == 6);
  REQUIRE(sub.axis(0).min == 2.0);
  REQUIRE(sub.axis(0).max == 5.0);
  REQUIRE(sub.spacing(0) == 1.0);
}
