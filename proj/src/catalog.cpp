#include "fhlab/catalog.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>

namespace fhlab::symbols {

namespace {

// Splits "moebius:0.5" into base name and parameter.
struct ParsedName {
  std::string base;
  std::optional<double> param;
};

ParsedName parse_name(const std::string& name) {
  const auto pos = name.find(':');
  if (pos == std::string::npos) return {name, std::nullopt};
  const std::string base = name.substr(0, pos);
  const std::string arg = name.substr(pos + 1);
  char* end = nullptr;
  const double v = std::strtod(arg.c_str(), &end);
  if (arg.empty() || end != arg.c_str() + arg.size()) {
    throw ConfigError("catalog: bad parameter in '" + name + "'");
  }
  return {base, v};
}

PowerSeries hilbert_series() {
  return PowerSeries::from_rule(
      [](std::size_t k) { return cplx{1.0 / static_cast<double>(k + 1), 0.0}; },
      TailDecay{TailDecay::Kind::harmonic, 0.0, 1.0}, "hilbert");
}

PowerSeries lacunary_bloch_series() {
  // Nonzero only at k = 2^j + 1, where the coefficient is 1/k; the
  // derivative is the classical lacunary Bloch series sum z^(2^j).
  return PowerSeries::from_rule(
      [](std::size_t k) {
        if (k >= 2 && ((k - 1) & (k - 2)) == 0) {
          return cplx{1.0 / static_cast<double>(k), 0.0};
        }
        return cplx{0.0, 0.0};
      },
      TailDecay{TailDecay::Kind::harmonic, 0.0, 1.0}, "lacunary_bloch");
}

PowerSeries lens_series() {
  return PowerSeries::from_coeffs({cplx{0.0, 0.0}, cplx{0.5, 0.0},
                                   cplx{-0.5, 0.0}},
                                  "lens");
}

PowerSeries moebius_series(double a, const std::string& name) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw ConfigError("catalog: moebius parameter must be in [0,1)");
  }
  if (a == 0.0) {
    return PowerSeries::from_coeffs({cplx{0.0, 0.0}, cplx{1.0, 0.0}}, name);
  }
  const double c1 = 1.0 - a * a;
  return PowerSeries::from_rule(
      [a, c1](std::size_t k) {
        if (k == 0) return cplx{a, 0.0};
        return cplx{c1 * std::pow(-a, static_cast<double>(k - 1)), 0.0};
      },
      TailDecay{TailDecay::Kind::geometric, a, c1 / a}, name);
}

PowerSeries szego_series(double a, const std::string& name) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw ConfigError("catalog: szego parameter must be in [0,1)");
  }
  const double s = std::sqrt(1.0 - a * a);
  if (a == 0.0) {
    return PowerSeries::from_coeffs({cplx{1.0, 0.0}}, name);
  }
  return PowerSeries::from_rule(
      [a, s](std::size_t k) {
        return cplx{s * std::pow(a, static_cast<double>(k)), 0.0};
      },
      TailDecay{TailDecay::Kind::geometric, a, s}, name);
}

}  // namespace

double SelfMap::circle_bound(double rho) const {
  if (tag == "identity_map") return rho;
  if (tag == "lens") return rho * (1.0 + rho) / 2.0;
  if (tag == "constant") return std::abs(param);
  if (tag == "moebius") {
    const double a = param;
    return (a + rho) / (1.0 + a * rho);
  }
  // Fallback: l1 bound with rho damping, certified but lossy.
  double acc = 0.0;
  double rp = 1.0;
  for (std::size_t k = 0; k < 4096; ++k) {
    acc += std::abs(series.coeff(k)) * rp;
    rp *= rho;
    if (rp < 1e-18) break;
  }
  return acc;
}

PowerSeries catalog_series(const std::string& name) {
  const ParsedName p = parse_name(name);
  if (p.base == "hilbert") return hilbert_series();
  if (p.base == "monomial") {
    return PowerSeries::from_coeffs({cplx{0.0, 0.0}, cplx{1.0, 0.0}},
                                    "monomial");
  }
  if (p.base == "lens") return lens_series();
  if (p.base == "lacunary_bloch") return lacunary_bloch_series();
  if (p.base == "identity_map") {
    return PowerSeries::from_coeffs({cplx{0.0, 0.0}, cplx{1.0, 0.0}},
                                    "identity_map");
  }
  if (p.base == "constant") {
    if (!p.param) throw ConfigError("catalog: constant needs a parameter");
    if (!(std::abs(*p.param) < 1.0)) {
      throw ConfigError("catalog: constant parameter must satisfy |c| < 1");
    }
    return PowerSeries::from_coeffs({cplx{*p.param, 0.0}}, name);
  }
  if (p.base == "moebius") {
    if (!p.param) throw ConfigError("catalog: moebius needs a parameter");
    return moebius_series(*p.param, name);
  }
  if (p.base == "szego") {
    if (!p.param) throw ConfigError("catalog: szego needs a parameter");
    return szego_series(*p.param, name);
  }
  throw ConfigError("catalog: unknown series '" + name + "'");
}

SelfMap catalog_self_map(const std::string& name) {
  const ParsedName p = parse_name(name);
  SelfMap m;
  if (p.base == "identity_map" || (p.base == "moebius" && p.param &&
                                   *p.param == 0.0)) {
    m.series = PowerSeries::from_coeffs({cplx{0.0, 0.0}, cplx{1.0, 0.0}},
                                        "identity_map");
    m.sup_bound = 1.0;
    m.radial_bound = 1.0;
    m.tag = "identity_map";
    return m;
  }
  if (p.base == "lens") {
    m.series = lens_series();
    m.sup_bound = 1.0;
    m.radial_bound = 0.125;
    m.tag = "lens";
    return m;
  }
  if (p.base == "constant") {
    if (!p.param) throw ConfigError("catalog: constant needs a parameter");
    if (!(std::abs(*p.param) < 1.0)) {
      throw ConfigError("catalog: constant parameter must satisfy |c| < 1");
    }
    m.series = PowerSeries::from_coeffs({cplx{*p.param, 0.0}}, name);
    m.sup_bound = std::abs(*p.param);
    m.radial_bound = std::abs(*p.param);
    m.tag = "constant";
    m.param = *p.param;
    return m;
  }
  if (p.base == "moebius") {
    if (!p.param) throw ConfigError("catalog: moebius needs a parameter");
    m.series = moebius_series(*p.param, name);
    m.sup_bound = 1.0;
    m.radial_bound = 1.0;
    m.tag = "moebius";
    m.param = *p.param;
    return m;
  }
  throw ConfigError("catalog: unknown self-map '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"hilbert",     "monomial",     "lens",       "lacunary_bloch",
          "identity_map", "constant:<c>", "moebius:<a>", "szego:<a>"};
}

ScanReport radial_limsup(const SelfMap& phi, const std::vector<double>& grid) {
  if (grid.empty()) throw ConfigError("radial_limsup: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || grid[i] >= 1.0 ||
        (i > 0 && grid[i] <= grid[i - 1])) {
      throw ConfigError("radial_limsup: grid must increase within [0,1)");
    }
  }
  ScanReport rep;
  rep.trace.reserve(grid.size());
  for (double r : grid) {
    rep.trace.push_back({cplx{r, 0.0}, std::abs(eval(phi.series, {r, 0.0}))});
  }
  rep.estimate_window = grid.size() / 2;
  rep.estimate = -1.0;
  for (std::size_t i = rep.estimate_window; i < rep.trace.size(); ++i) {
    if (rep.trace[i].value > rep.estimate) {
      rep.estimate = rep.trace[i].value;
      rep.argmax = rep.trace[i].node;
    }
  }
  return rep;
}

PowerSeries compose_series(const PowerSeries& p, const SelfMap& phi,
                           std::size_t len) {
  if (!p.finite_degree()) {
    throw ConfigError("compose_series: outer series must be a polynomial");
  }
  auto out = compose_trunc(p.coeffs(p.degree() + 1), phi.series.coeffs(len),
                           len);
  return PowerSeries::from_coeffs(std::move(out),
                                  "(" + p.name() + ")o(" + phi.tag + ")");
}

}  // namespace fhlab::symbols
