#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <complex>
#include <numbers>

#include "fhlab/quadrature.hpp"
#include "fhlab/types.hpp"

using fhlab::cplx;
using fhlab::QuadratureFailure;
using namespace fhlab::analysis;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  // An n-point rule is exact through degree 2n - 1.
  for (const std::size_t n : {2u, 4u, 8u, 16u}) {
    const auto& [nodes, weights] = gauss_legendre(n);
    REQUIRE(nodes.size() == n);
    REQUIRE(weights.size() == n);
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    CHECK(std::abs(wsum - 2.0) <= 1e-14);

    for (std::size_t d = 0; d + 1 <= 2 * n - 1; d += 2) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        acc += weights[i] * std::pow(nodes[i], double(d));
      const double exact = 2.0 / (double(d) + 1.0);
      CHECK(std::abs(acc - exact) <= 1e-13);
    }
    // Odd powers vanish by symmetry.
    double odd = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      odd += weights[i] * std::pow(nodes[i], 3.0);
    CHECK(std::abs(odd) <= 1e-14);
  }
}

TEST_CASE("gauss_legendre node values at small orders") {
  const auto& [n2, w2] = gauss_legendre(2);
  CHECK(std::abs(std::abs(n2[0]) - 1.0 / std::sqrt(3.0)) <= 1e-15);
  CHECK(std::abs(w2[0] - 1.0) <= 1e-15);
  const auto& [n3, w3] = gauss_legendre(3);
  CHECK(std::abs(std::abs(n3[0]) - std::sqrt(0.6)) <= 1e-15);
}

TEST_CASE("adaptive_simpson on reference integrals") {
  const double s = adaptive_simpson([](double x) { return std::sin(x); }, 0.0,
                                    kPi, 1e-12);
  CHECK(std::abs(s - 2.0) <= 1e-11);

  const double g = adaptive_simpson([](double x) { return std::exp(-x * x); },
                                    -6.0, 6.0, 1e-12);
  CHECK(std::abs(g - std::sqrt(kPi)) <= 1e-10);

  // Sharp peak forces genuine refinement.
  const double p = adaptive_simpson(
      [](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-9);
  const double exact = 2.0 / 1e-2 * std::atan(1.0 / 1e-2);
  CHECK(std::abs(p - exact) <= 1e-6 * exact);

  CHECK_THROWS_AS(adaptive_simpson([](double x) { return 1.0 / std::sqrt(std::abs(x)); },
                                   -1.0, 1.0, 1e-14, 8),
                  QuadratureFailure);
}

TEST_CASE("radial_rule integrates smooth and log-singular profiles") {
  const auto rule = radial_rule(256);
  REQUIRE(rule.nodes.size() == rule.weights.size());
  const double least = *std::min_element(rule.nodes.begin(), rule.nodes.end());
  CHECK(least < 1e-5);

  auto integrate = [&](auto&& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * g(rule.nodes[i]);
    return acc;
  };

  CHECK(std::abs(integrate([](double r) { return r * r; }) - 1.0 / 3.0) <=
        1e-12);
  // int_0^1 log(1/r) dr = 1; the dyadic panel split near 0 must absorb it.
  CHECK(std::abs(integrate([](double r) { return std::log(1.0 / r); }) - 1.0) <=
        1e-6);
}

TEST_CASE("boundary_rule concentrates panels at the unit radius") {
  const double L = 0.5;
  const std::size_t panels = 20;
  const auto rule = boundary_rule(L, panels, 4);
  REQUIRE(!rule.nodes.empty());
  for (double r : rule.nodes) {
    CHECK(r > 1.0 - L - 1e-15);
    CHECK(r < 1.0);
  }
  // Total mass equals the interval length L (1 - 2^-panels).
  double acc = 0.0;
  for (double w : rule.weights) acc += w;
  const double len = L * (1.0 - std::pow(2.0, -double(panels)));
  CHECK(std::abs(acc - len) <= 1e-12);

  // Exactness on a cubic over the covered interval.
  double cub = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    cub += rule.weights[i] * std::pow(rule.nodes[i], 3.0);
  const double a = 1.0 - L, b = 1.0 - L * std::pow(2.0, -double(panels));
  const double exact = (std::pow(b, 4.0) - std::pow(a, 4.0)) / 4.0;
  CHECK(std::abs(cub - exact) <= 1e-12);
}

TEST_CASE("disc_integral reproduces area-measure moments") {
  QuadratureSpec q;
  q.radial_nodes = 128;
  q.angular_nodes = 64;

  // int |z|^2 dm = int_0^1 r^2 2r dr = 1/2.
  const cplx m2 = disc_integral(
      [](cplx z) { return cplx{std::norm(z), 0.0}; }, q);
  CHECK(std::abs(m2 - cplx{0.5, 0.0}) <= 1e-10);

  // Pure powers of z average to zero over the disc.
  const cplx m1 = disc_integral([](cplx z) { return z * z * z; }, q);
  CHECK(std::abs(m1) <= 1e-12);

  // int z^2 conj(z)^2 dm = 1/3.
  const cplx m22 = disc_integral(
      [](cplx z) { return z * z * std::conj(z) * std::conj(z); }, q);
  CHECK(std::abs(m22 - cplx{1.0 / 3.0, 0.0}) <= 1e-10);

  const cplx one = disc_integral([](cplx) { return cplx{1.0, 0.0}; }, q);
  CHECK(std::abs(one - cplx{1.0, 0.0}) <= 1e-12);
}

TEST_CASE("disc_mean over an interior disc") {
  // Mean of |z|^2 over D(c, R) is |c|^2 + R^2 / 2.
  const cplx c{0.3, -0.2};
  const double R = 0.25;
  const double mean =
      disc_mean([](cplx z) { return std::norm(z); }, c, R, 32);
  CHECK(std::abs(mean - (std::norm(c) + R * R / 2.0)) <= 1e-5);

  const double flat = disc_mean([](cplx) { return 4.0; }, c, R, 8);
  CHECK(std::abs(flat - 4.0) <= 1e-12);
}
