#include "fhlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "fhlab/analysis.hpp"
#include "fhlab/catalog.hpp"
#include "fhlab/io.hpp"
#include "fhlab/sampling.hpp"
#include "fhlab/sections.hpp"
#include "fhlab/spectral.hpp"

namespace fhlab::harness {
namespace {

std::string msg(const char* format, double a, double b = 0.0,
                double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

std::vector<std::size_t> sorted_sizes(const ExperimentConfig& cfg,
                                      const std::string& key,
                                      const std::string& fallback) {
  auto v = cfg.get_size_list(key, fallback);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.empty() || v.front() == 0) {
    throw ConfigError("scenario: '" + key + "' needs positive entries");
  }
  return v;
}

std::vector<unsigned> as_powers(const std::vector<std::size_t>& v) {
  std::vector<unsigned> out;
  out.reserve(v.size());
  for (std::size_t n : v) out.push_back(static_cast<unsigned>(n));
  return out;
}

std::string tagged_error(const std::exception& ex) {
  return std::string("error: ") + ex.what();
}

// Log-log statistics over the largest decade [n_max/10, n_max] of a norm
// sequence: least squares slope and relative range.
struct DecadeStats {
  double slope = 0.0;
  double range = 0.0;
  double ratio = 0.0;  // value at n_max over value at n_min, whole sequence
  bool valid = false;
};

DecadeStats decade_stats(const std::vector<spectral::PowerEntry>& entries) {
  DecadeStats st;
  if (entries.size() < 2) return st;
  for (const auto& e : entries) {
    if (!(e.norm > 0.0) || !std::isfinite(e.norm)) return st;
  }
  st.ratio = entries.back().norm / entries.front().norm;

  const double n_max = static_cast<double>(entries.back().n);
  std::vector<std::pair<double, double>> pts;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& e : entries) {
    if (static_cast<double>(e.n) * 10.0 < n_max) continue;
    pts.emplace_back(std::log(static_cast<double>(e.n)), std::log(e.norm));
    lo = std::min(lo, e.norm);
    hi = std::max(hi, e.norm);
  }
  if (pts.size() < 2) return st;

  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / static_cast<double>(pts.size());
  const double my = sy / static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) return st;
  st.slope = sxy / sxx;
  st.range = (hi - lo) / lo;
  st.valid = true;
  return st;
}

std::string classify_powers(const DecadeStats& st) {
  if (!st.valid) return "inconclusive (insufficient data)";
  const char* label = "inconclusive";
  if (st.slope >= 0.5) {
    label = "power-unbounded";
  } else if (st.slope <= 0.1 && st.range <= 0.25) {
    label = "power-bounded";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%s (decade slope=%.3f, decade range=%.1f%%, ratio=%.4g)",
                label, st.slope, 100.0 * st.range, st.ratio);
  return buf;
}

// Shared engine for the two power-norm scenarios: one table row per
// (pair, truncation, n), verdict per pair from the largest truncation.
void run_power_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const std::vector<std::size_t>& truncs, const std::vector<unsigned>& ns,
    double tol, ExperimentResult& res) {
  Table t;
  t.name = "norms";
  t.header = {"f",    "phi",      "truncation", "n",
              "norm", "dominant", "tail_bound", "status"};

  for (const auto& [f_name, phi_name] : pairs) {
    std::vector<spectral::PowerEntry> top;
    for (std::size_t N : truncs) {
      sections::FoguelHankelSpec spec{symbols::catalog_series(f_name),
                                      symbols::catalog_self_map(phi_name), N,
                                      0};
      for (unsigned n : ns) {
        try {
          auto seq = spectral::power_norm_sequence(spec, {n}, tol);
          const auto& e = seq.entries.front();
          t.rows.push_back({f_name, phi_name, std::to_string(N),
                            std::to_string(e.n), io::fmt(e.norm),
                            io::fmt(e.dominant), io::fmt(e.tail_bound), "ok"});
          if (N == truncs.back()) top.push_back(e);
        } catch (const std::exception& ex) {
          t.rows.push_back({f_name, phi_name, std::to_string(N),
                            std::to_string(n), "", "", "", tagged_error(ex)});
        }
      }
    }
    res.verdicts[f_name + "/" + phi_name] = classify_powers(decade_stats(top));
  }
  res.tables.push_back(std::move(t));
}

ExperimentResult peller_dichotomy(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const auto truncs = sorted_sizes(cfg, "truncations", "512,1024,2048");
  const auto ns = as_powers(sorted_sizes(cfg, "powers", "10:5:100"));
  const double tol = cfg.get_double("tol", 1e-6);
  run_power_pairs({{"hilbert", "identity_map"},
                   {"lacunary_bloch", "identity_map"}},
                  truncs, ns, tol, res);
  return res;
}

ExperimentResult gfh_power_bounded(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const std::string f_name = cfg.get_string("f", "lacunary_bloch");
  const auto phis = cfg.get_string_list("phis", "lens,moebius:0.5");
  const auto truncs = sorted_sizes(cfg, "truncations", "2048");
  const auto ns = as_powers(sorted_sizes(
      cfg, "powers", "1,2,3,4,6,8,11,16,23,32,45,64,91,128,181,200"));
  const double tol = cfg.get_double("tol", 1e-6);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& phi_name : phis) pairs.emplace_back(f_name, phi_name);
  run_power_pairs(pairs, truncs, ns, tol, res);
  return res;
}

std::string classify_kreiss(const std::vector<double>& estimates) {
  if (estimates.size() < 2) return "inconclusive (insufficient data)";
  double lo = estimates.front(), hi = estimates.front();
  for (double e : estimates) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      return "inconclusive (non-finite estimate)";
    }
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  const double growth = estimates.back() / estimates.front();
  if (growth >= 2.0) return msg("kreiss-fails (growth=%.2fx)", growth);
  const double spread = (hi - lo) / lo;
  if (spread <= 0.10) {
    return msg("kreiss-holds (spread=%.2f%%)", 100.0 * spread);
  }
  return msg("inconclusive (spread=%.2f%%, growth=%.2fx)", 100.0 * spread,
             growth);
}

ExperimentResult hilbert_foguel_kreiss(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const auto truncs = sorted_sizes(cfg, "truncations", "128,256,512");
  auto sched = spectral::default_kreiss_schedule();
  sched.angles = cfg.get_size("angles", 64);
  sched.refine_depth = cfg.get_size("refine_depth", 6);
  sched.norm_tol = cfg.get_double("scan_tol", 1e-3);
  if (cfg.has("shells")) sched.shells = cfg.get_double_list("shells", "");

  Table t;
  t.name = "kreiss";
  t.header = {"f", "phi", "truncation", "estimate", "rho", "theta", "status"};
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"hilbert", "lens"}, {"hilbert", "identity_map"}};
  for (const auto& [f_name, phi_name] : pairs) {
    std::vector<double> estimates;
    for (std::size_t N : truncs) {
      sections::FoguelHankelSpec spec{symbols::catalog_series(f_name),
                                      symbols::catalog_self_map(phi_name), N,
                                      0};
      try {
        auto rep = spectral::kreiss_scan(spec, sched);
        t.rows.push_back({f_name, phi_name, std::to_string(N),
                          io::fmt(rep.estimate), io::fmt(std::abs(rep.argmax)),
                          io::fmt(std::arg(rep.argmax)), "ok"});
        estimates.push_back(rep.estimate);
      } catch (const std::exception& ex) {
        t.rows.push_back({f_name, phi_name, std::to_string(N), "", "", "",
                          tagged_error(ex)});
      }
    }
    res.verdicts[f_name + "/" + phi_name] = classify_kreiss(estimates);
  }
  res.tables.push_back(std::move(t));

  Table w;
  w.name = "witness";
  w.header = {"r", "delta", "value", "lower_bound", "status"};
  const auto rs = cfg.get_double_list("witness_r", "0.9,0.99");
  const double quad_tol = cfg.get_double("witness_tol", 1e-9);
  const auto identity = symbols::catalog_self_map("identity_map");
  std::size_t above = 0;
  for (double r : rs) {
    const double delta = 1.0 - r;
    const double bound = 1.0 / (6.0 * delta);
    try {
      const double value = spectral::hilbert_kreiss_witness(
          identity, cplx{r, 0.0}, delta, quad_tol);
      const bool ok = value >= bound * (1.0 - quad_tol);
      if (ok) ++above;
      w.rows.push_back({io::fmt(r), io::fmt(delta), io::fmt(value),
                        io::fmt(bound), ok ? "ok" : "below-bound"});
    } catch (const std::exception& ex) {
      w.rows.push_back(
          {io::fmt(r), io::fmt(delta), "", io::fmt(bound), tagged_error(ex)});
    }
  }
  res.verdicts["witness"] = std::to_string(above) + "/" +
                            std::to_string(rs.size()) +
                            " at or above 1/(6(1-r))";
  res.tables.push_back(std::move(w));
  return res;
}

ExperimentResult kreiss_witness(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const std::string f_name = cfg.get_string("f", "hilbert");
  const auto rs = cfg.get_double_list("r", "0.5,0.75,0.9,0.99,0.999");
  const auto f = symbols::catalog_series(f_name);

  Table t;
  t.name = "witness";
  t.header = {"r", "value", "status"};
  std::vector<std::pair<double, double>> pts;
  for (double r : rs) {
    try {
      const double value = spectral::kreiss_lower_witness(f, cplx{r, 0.0});
      t.rows.push_back({io::fmt(r), io::fmt(value), "ok"});
      if (value > 0.0 && r < 1.0) {
        pts.emplace_back(std::log(1.0 / (1.0 - r)), std::log(value));
      }
    } catch (const std::exception& ex) {
      t.rows.push_back({io::fmt(r), "", tagged_error(ex)});
    }
  }
  res.tables.push_back(std::move(t));

  if (pts.size() < 2) {
    res.verdicts[f_name] = "inconclusive (insufficient data)";
    return res;
  }
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / static_cast<double>(pts.size());
  const double my = sy / static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) {
    res.verdicts[f_name] = "inconclusive (degenerate grid)";
    return res;
  }
  const double expo = sxy / sxx;
  res.verdicts[f_name] =
      msg(expo >= 0.5 ? "kreiss-fails (witness exponent=%.3f in (1-r)^-1)"
                      : "witness-bounded (exponent=%.3f in (1-r)^-1)",
          expo);
  return res;
}

symbols::PowerSeries random_poly(Sampler& rng, std::size_t degree,
                                 const std::string& name) {
  std::vector<cplx> c(degree + 1);
  for (auto& ck : c) ck = rng.box();
  return symbols::PowerSeries::from_coeffs(std::move(c), name);
}

ExperimentResult lemma_suite(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const std::uint64_t seed = cfg.get_seed("seed", 12345);
  analysis::QuadratureSpec q;

  // Weighted-area inner product identity on random polynomial pairs.
  {
    const std::size_t count = cfg.get_size("area_pairs", 100);
    const std::size_t degree = cfg.get_size("area_degree", 16);
    Sampler rng(seed);
    Table t;
    t.name = "area_pairing";
    t.header = {"i", "coefficient", "quadrature", "discrepancy", "status"};
    double worst = 0.0;
    std::size_t ok = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const auto u = random_poly(rng, degree, "u");
      const auto v = random_poly(rng, degree, "v");
      try {
        cplx side = 0.0;
        for (std::size_t k = 0; k <= degree; ++k) {
          side += u.coeff(k) * std::conj(v.coeff(k));
        }
        const cplx quad = analysis::hardy_inner_product_quadrature(u, v, q);
        const double disc = std::abs(quad - side);
        worst = std::max(worst, disc);
        if (disc <= 1e-6) ++ok;
        t.rows.push_back({std::to_string(i), io::fmt(side), io::fmt(quad),
                          io::fmt(disc), disc <= 1e-6 ? "ok" : "off"});
      } catch (const std::exception& ex) {
        t.rows.push_back({std::to_string(i), "", "", "", tagged_error(ex)});
      }
    }
    res.verdicts["area-pairing"] = std::to_string(ok) + "/" +
                              std::to_string(count) +
                              msg(" within 1e-6 (max %.3g)", worst);
    res.tables.push_back(std::move(t));
  }

  // Self-map inequality sampling.
  {
    const auto maps = cfg.get_string_list(
        "sp_maps", "lens,identity_map,moebius:0.5,constant:0.3");
    const auto orders = cfg.get_size_list("sp_orders", "1,2,3,4");
    const std::size_t samples = cfg.get_size("sp_samples", 100000);
    Table t;
    t.name = "schwarz_pick";
    t.header = {"map", "d", "worst_i", "worst_ii", "samples", "status"};
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& map_name : maps) {
      for (std::size_t d : orders) {
        try {
          const auto phi = symbols::catalog_self_map(map_name);
          const auto rep = analysis::schwarz_pick_check(
              phi, static_cast<unsigned>(d), samples, seed);
          worst = std::min({worst, rep.worst_i, rep.worst_ii});
          t.rows.push_back({map_name, std::to_string(d), io::fmt(rep.worst_i),
                            io::fmt(rep.worst_ii), std::to_string(samples),
                            "ok"});
        } catch (const std::exception& ex) {
          t.rows.push_back({map_name, std::to_string(d), "", "",
                            std::to_string(samples), tagged_error(ex)});
        }
      }
    }
    res.verdicts["schwarz-pick"] = msg("worst slack %.3g", worst);
    res.tables.push_back(std::move(t));
  }

  // Fejer-Riesz slack on random polynomials.
  {
    const std::size_t count = cfg.get_size("fr_count", 1000);
    const std::size_t degree = cfg.get_size("fr_degree", 16);
    Sampler rng(seed + 1);
    Table t;
    t.name = "fejer_riesz";
    t.header = {"i", "lhs", "rhs", "slack", "status"};
    double min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = random_poly(rng, degree, "v");
      try {
        const auto rep = analysis::fejer_riesz_check(v);
        min_slack = std::min(min_slack, rep.slack);
        t.rows.push_back({std::to_string(i), io::fmt(rep.lhs),
                          io::fmt(rep.rhs), io::fmt(rep.slack),
                          rep.slack >= 0.0 ? "ok" : "violated"});
      } catch (const std::exception& ex) {
        t.rows.push_back({std::to_string(i), "", "", "", tagged_error(ex)});
      }
    }
    res.verdicts["fejer-riesz"] = msg("min slack %.3g", min_slack);
    res.tables.push_back(std::move(t));
  }

  // Carleson box decay over dyadic arcs at the map's boundary contact point
  // (theta = pi for the lens map, theta = 0 for moebius). The reported value
  // per n is the sup of n^(r+1) * average over the arc family; the family is
  // deep enough that the sup sits on its interior plateau.
  {
    const auto ns = cfg.get_size_list("carleson_n", "16,32,64,128,256");
    const auto rs = cfg.get_size_list("carleson_r", "1,2,3");
    const auto maps = cfg.get_string_list("carleson_maps", "lens,moebius:0.5");
    const std::size_t arcs = cfg.get_size("carleson_arcs", 9);
    Table t;
    t.name = "carleson";
    t.header = {"map", "r", "n", "sup_normalized", "argmax_arc", "status"};
    for (const auto& map_name : maps) {
      const auto phi = symbols::catalog_self_map(map_name);
      const double center = phi.tag == "lens" ? std::numbers::pi : 0.0;
      for (std::size_t r : rs) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        bool all_ok = true;
        for (std::size_t n : ns) {
          try {
            double sup = 0.0;
            std::size_t arg = 0;
            for (std::size_t k = 0; k < arcs; ++k) {
              const analysis::Arc I{center,
                                    std::numbers::pi * std::pow(2.0, -double(k))};
              const double avg = analysis::carleson_box_average(
                  phi, static_cast<unsigned>(n), static_cast<unsigned>(r), I,
                  q);
              const double normalized =
                  std::pow(static_cast<double>(n),
                           static_cast<double>(r) + 1.0) *
                  avg;
              if (normalized > sup) {
                sup = normalized;
                arg = k;
              }
            }
            if (n >= 64) {
              lo = std::min(lo, sup);
              hi = std::max(hi, sup);
            }
            t.rows.push_back({map_name, std::to_string(r), std::to_string(n),
                              io::fmt(sup), std::to_string(arg), "ok"});
          } catch (const std::exception& ex) {
            all_ok = false;
            t.rows.push_back({map_name, std::to_string(r), std::to_string(n),
                              "", "", tagged_error(ex)});
          }
        }
        const std::string key = "carleson-decay " + map_name + " r=" +
                                std::to_string(r);
        if (!all_ok || !(hi > 0.0) || !std::isfinite(lo)) {
          res.verdicts[key] = "inconclusive";
        } else {
          res.verdicts[key] = msg("sup-normalized variation %.1f%% over n>=64",
                                  100.0 * (hi - lo) / lo);
        }
      }
    }
    res.tables.push_back(std::move(t));
  }

  // Luecking quantity for the power test measure; value ~ C/n^2, so the
  // table carries value * n^2 (sup over a short dyadic arc family).
  {
    const auto ns = cfg.get_size_list("luecking_n", "16,32,64");
    const auto arcs = cfg.get_size_list("luecking_arcs", "2,4,6");
    const auto lens = symbols::catalog_self_map("lens");
    Table t;
    t.name = "luecking";
    t.header = {"n", "sup_value", "normalized", "status"};
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    bool all_ok = true;
    for (std::size_t n : ns) {
      try {
        double sup = 0.0;
        for (std::size_t k : arcs) {
          const analysis::Arc I{std::numbers::pi,
                                std::numbers::pi * std::pow(2.0, -double(k))};
          sup = std::max(
              sup, analysis::luecking_quantity(
                       analysis::luecking_power_density(
                           lens, static_cast<unsigned>(n)),
                       1, I, q));
        }
        const double normalized = sup * static_cast<double>(n * n);
        lo = std::min(lo, normalized);
        hi = std::max(hi, normalized);
        t.rows.push_back({std::to_string(n), io::fmt(sup), io::fmt(normalized),
                          "ok"});
      } catch (const std::exception& ex) {
        all_ok = false;
        t.rows.push_back({std::to_string(n), "", "", tagged_error(ex)});
      }
    }
    if (!all_ok || !(lo > 0.0) || !std::isfinite(hi)) {
      res.verdicts["luecking"] = "inconclusive";
    } else {
      res.verdicts["luecking"] =
          msg("n^2-normalized spread %.2fx", hi / lo);
    }
    res.tables.push_back(std::move(t));
  }

  // Hilbert matrix pairing against the diameter integral.
  {
    const std::size_t count = cfg.get_size("pairing_count", 20);
    const std::size_t degree = cfg.get_size("pairing_degree", 31);
    analysis::QuadratureSpec qp = q;
    qp.radial_nodes = cfg.get_size("pairing_nodes", 65536);
    Sampler rng(seed + 2);
    Table t;
    t.name = "pairing";
    t.header = {"i", "discrepancy", "status"};
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const auto u = random_poly(rng, degree, "u");
      const auto v = random_poly(rng, degree, "v");
      try {
        const double disc =
            analysis::hilbert_pairing_check(u, v, degree + 1, qp);
        worst = std::max(worst, disc);
        t.rows.push_back({std::to_string(i), io::fmt(disc),
                          disc <= 1e-8 ? "ok" : "off"});
      } catch (const std::exception& ex) {
        t.rows.push_back({std::to_string(i), "", tagged_error(ex)});
      }
    }
    res.verdicts["pairing"] = msg("max discrepancy %.3g", worst);
    res.tables.push_back(std::move(t));
  }

  return res;
}

}  // namespace

const std::map<std::string, ScenarioFn>& scenario_registry() {
  static const std::map<std::string, ScenarioFn> registry = {
      {"peller-dichotomy", peller_dichotomy},
      {"gfh-power-bounded", gfh_power_bounded},
      {"hilbert-foguel-kreiss", hilbert_foguel_kreiss},
      {"kreiss-witness", kreiss_witness},
      {"lemma-suite", lemma_suite},
  };
  return registry;
}

}  // namespace fhlab::harness
