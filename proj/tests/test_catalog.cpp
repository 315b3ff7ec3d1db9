#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "fhlab/catalog.hpp"
#include "fhlab/types.hpp"

using fhlab::ConfigError;
using fhlab::cplx;
using namespace fhlab::symbols;

TEST_CASE("hilbert symbol coefficients") {
  const auto f = catalog_series("hilbert");
  CHECK(f.coeff(0) == cplx{1.0, 0.0});
  CHECK(f.coeff(3) == cplx{0.25, 0.0});
  CHECK(std::abs(f.coeff(100) - cplx{1.0 / 101.0, 0.0}) == 0.0);
  CHECK(!f.finite_degree());
}

TEST_CASE("lens map coefficients and values") {
  const auto lens = catalog_series("lens");
  const auto c = lens.coeffs(4);
  CHECK(c[0] == cplx{0.0, 0.0});
  CHECK(c[1] == cplx{0.5, 0.0});
  CHECK(c[2] == cplx{-0.5, 0.0});
  CHECK(c[3] == cplx{0.0, 0.0});

  // phi(1/2) = (1/2)(1/2)/2.
  CHECK(std::abs(eval(lens, cplx{0.5, 0.0}) - cplx{0.125, 0.0}) <= 1e-16);

  const auto sm = catalog_self_map("lens");
  CHECK(sm.sup_bound == 1.0);
  CHECK(sm.radial_bound == 0.125);
  // On the negative real axis the modulus meets the circle bound.
  const double rho = 0.999;
  const double expect = rho * (1.0 + rho) / 2.0;
  CHECK(std::abs(eval(sm.series, cplx{-rho, 0.0})) ==
        doctest::Approx(expect).epsilon(1e-14));
  CHECK(sm.circle_bound(rho) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("lacunary_bloch support is 2^k + 1") {
  const auto f = catalog_series("lacunary_bloch");
  CHECK(f.coeff(0) == cplx{0.0, 0.0});
  CHECK(f.coeff(1) == cplx{0.0, 0.0});
  CHECK(f.coeff(2) == cplx{0.5, 0.0});
  CHECK(f.coeff(3) == cplx{1.0 / 3.0, 0.0});
  CHECK(f.coeff(4) == cplx{0.0, 0.0});
  CHECK(f.coeff(5) == cplx{0.2, 0.0});
  CHECK(f.coeff(9) == cplx{1.0 / 9.0, 0.0});
  CHECK(f.coeff(17) == cplx{1.0 / 17.0, 0.0});
  CHECK(f.coeff(33) == cplx{1.0 / 33.0, 0.0});
  CHECK(f.coeff(6) == cplx{0.0, 0.0});
  CHECK(f.coeff(16) == cplx{0.0, 0.0});
}

TEST_CASE("identity and monomial") {
  const auto id = catalog_self_map("identity_map");
  CHECK(id.series.coeff(1) == cplx{1.0, 0.0});
  CHECK(id.radial_bound == 1.0);
  const auto z = catalog_series("monomial");
  CHECK(z.coeff(0) == cplx{0.0, 0.0});
  CHECK(z.coeff(1) == cplx{1.0, 0.0});
  CHECK(z.degree() == 1);
}

TEST_CASE("constant map validation") {
  const auto c = catalog_self_map("constant:0.3");
  CHECK(c.series.coeff(0) == cplx{0.3, 0.0});
  CHECK(c.series.finite_degree());
  CHECK_THROWS_AS(catalog_self_map("constant:1.2"), ConfigError);
}

TEST_CASE("moebius coefficients match the closed form") {
  const auto m = catalog_self_map("moebius:0.5");
  CHECK(m.series.coeff(0) == cplx{0.5, 0.0});
  CHECK(std::abs(m.series.coeff(1) - cplx{0.75, 0.0}) <= 1e-16);
  CHECK(std::abs(m.series.coeff(2) - cplx{-0.375, 0.0}) <= 1e-16);
  CHECK(std::abs(m.series.coeff(3) - cplx{0.1875, 0.0}) <= 1e-16);

  const cplx z{0.3, 0.2};
  const cplx direct = (0.5 + z) / (1.0 + 0.5 * z);
  CHECK(std::abs(eval(m.series, z) - direct) <= 1e-12);

  // Degenerate parameter gives the identity series.
  const auto m0 = catalog_self_map("moebius:0");
  CHECK(m0.series.coeff(0) == cplx{0.0, 0.0});
  CHECK(m0.series.coeff(1) == cplx{1.0, 0.0});
}

TEST_CASE("szego family") {
  const auto s = catalog_series("szego:0.6");
  CHECK(std::abs(s.coeff(0) - cplx{0.8, 0.0}) <= 1e-15);
  CHECK(std::abs(s.coeff(2) - cplx{0.8 * 0.36, 0.0}) <= 1e-15);
  CHECK(!s.finite_degree());
}

TEST_CASE("catalog names are stable and lookups fail loudly") {
  const auto names = catalog_names();
  for (const char* expect :
       {"hilbert", "monomial", "lens", "lacunary_bloch", "identity_map"}) {
    CHECK(std::find(names.begin(), names.end(), expect) != names.end());
  }
  CHECK_THROWS_AS(catalog_series("nope"), ConfigError);
  CHECK_THROWS_AS(catalog_self_map("hilbert_matrix"), ConfigError);
}

TEST_CASE("radial_limsup of the lens map stays under 1/8") {
  const auto lens = catalog_self_map("lens");
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.001 + 0.998 * i / 100.0);
  const auto rep = radial_limsup(lens, grid);
  CHECK(rep.trace.size() == grid.size());
  CHECK(rep.estimate <= 0.125 + 1e-12);
  CHECK(rep.estimate > 0.0);

  CHECK_THROWS_AS(radial_limsup(lens, std::vector<double>{0.5, 0.4}),
                  ConfigError);
  CHECK_THROWS_AS(radial_limsup(lens, std::vector<double>{0.5, 1.0}),
                  ConfigError);
}

TEST_CASE("compose_series squares the lens map") {
  const auto p = PowerSeries::from_coeffs({{0, 0}, {0, 0}, {1, 0}}, "z^2");
  const auto lens = catalog_self_map("lens");
  const auto comp = compose_series(p, lens, 5);
  // z^2 (1-z)^2 / 4 = z^2/4 - z^3/2 + z^4/4.
  CHECK(std::abs(comp.coeff(0)) == 0.0);
  CHECK(std::abs(comp.coeff(1)) == 0.0);
  CHECK(std::abs(comp.coeff(2) - cplx{0.25, 0.0}) <= 1e-15);
  CHECK(std::abs(comp.coeff(3) - cplx{-0.5, 0.0}) <= 1e-15);
  CHECK(std::abs(comp.coeff(4) - cplx{0.25, 0.0}) <= 1e-15);
}
