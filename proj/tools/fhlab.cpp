// Command line front end for the Foguel-Hankel laboratory.
//
// Exit codes: 0 success, 1 numeric failure (non-convergence, refused
// evaluation), 2 usage or configuration error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fhlab/analysis.hpp"
#include "fhlab/catalog.hpp"
#include "fhlab/harness.hpp"
#include "fhlab/io.hpp"
#include "fhlab/sampling.hpp"
#include "fhlab/scenarios.hpp"
#include "fhlab/sections.hpp"
#include "fhlab/spectral.hpp"
#include "fhlab/types.hpp"

namespace {

using namespace fhlab;

// List parsing reuses the config syntax: comma separated, "a:step:b" ranges.
std::vector<std::size_t> parse_sizes(const std::string& s) {
  harness::ExperimentConfig c;
  c.set("x", s);
  return c.get_size_list("x", "");
}

std::vector<double> parse_reals(const std::string& s) {
  harness::ExperimentConfig c;
  c.set("x", s);
  return c.get_double_list("x", "");
}

cplx parse_cplx(const std::string& s) {
  double re = 0.0, im = 0.0;
  if (std::sscanf(s.c_str(), "%lf,%lf", &re, &im) >= 1) return {re, im};
  throw ConfigError("expected a complex value as 're' or 're,im', got '" + s +
                    "'");
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows,
                         const std::string& format) {
  if (format == "json") {
    nlohmann::json j;
    j["schema"] = "fh-lab/1";
    j["header"] = header;
    j["rows"] = rows;
    return j.dump(2) + "\n";
  }
  std::string text = io::csv_line(header);
  for (const auto& r : rows) text += io::csv_line(r);
  return text;
}

struct GlobalOpts {
  std::size_t trunc = 64;
  std::size_t headroom = 0;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 12345;
  double tol = 1e-8;
  bool tol_given = false;
};

sections::FoguelHankelSpec make_spec(const std::string& f_name,
                                     const std::string& phi_name,
                                     const GlobalOpts& g) {
  return {symbols::catalog_series(f_name), symbols::catalog_self_map(phi_name),
          g.trunc, g.headroom};
}

// Prints the table and, when --out is set, saves it there as
// <name>.csv or <name>.json to match the console format.
void emit_table(const GlobalOpts& g, const std::string& name,
                const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  const std::string text = render_table(header, rows, g.format);
  std::cout << text;
  if (g.out.empty()) return;
  std::filesystem::create_directories(g.out);
  const char* ext = g.format == "json" ? ".json" : ".csv";
  io::write_text((std::filesystem::path(g.out) / (name + ext)).string(), text);
}

int cmd_norm(const GlobalOpts& g, const std::string& op,
             const std::string& f_name, const std::string& phi_name,
             unsigned n, const std::string& poly, const std::string& lambda) {
  sections::SectionMatrix sec;
  if (op == "analytic") {
    sec = sections::analytic_toeplitz(symbols::catalog_series(phi_name),
                                      g.trunc);
  } else if (op == "coanalytic") {
    sec = sections::coanalytic_toeplitz(symbols::catalog_series(phi_name),
                                        g.trunc);
  } else if (op == "hankel") {
    sec = sections::hankel_section(symbols::catalog_series(f_name), g.trunc);
  } else if (op == "hilbert-matrix") {
    sec = sections::hilbert_matrix(g.trunc);
  } else if (op == "foguel") {
    sec = sections::foguel_hankel(make_spec(f_name, phi_name, g));
  } else if (op == "power") {
    sec = sections::power_closed_form(make_spec(f_name, phi_name, g), n);
  } else if (op == "poly") {
    std::vector<cplx> pc;
    for (double x : parse_reals(poly)) pc.push_back(cplx{x, 0.0});
    if (pc.empty()) throw ConfigError("norm --op poly needs --p c0,c1,...");
    sec = sections::poly_calculus(
        make_spec(f_name, phi_name, g),
        symbols::PowerSeries::from_coeffs(pc, "p"));
  } else if (op == "resolvent") {
    const cplx lam = parse_cplx(lambda);
    if (std::abs(lam) == 0.0) throw ConfigError("resolvent needs lambda != 0");
    const cplx mu = cplx{1.0, 0.0} / lam;
    sec = sections::resolvent_section(make_spec(f_name, phi_name, g), mu);
    sec.entries *= mu;  // (lambda - Gamma)^(-1) = mu (1 - mu Gamma)^(-1)
  } else {
    throw ConfigError("unknown --op '" + op + "'");
  }

  std::cout << io::fmt(spectral::spectral_norm(sec, g.tol)) << "\n";
  if (!g.out.empty()) {
    std::filesystem::create_directories(g.out);
    const auto base = std::filesystem::path(g.out) / ("norm_" + op);
    if (g.format == "json") {
      io::save_json(sec, base.string() + ".json");
    } else {
      io::save_csv(sec, base.string() + ".csv");
    }
  }
  return 0;
}

int cmd_powers(const GlobalOpts& g, const std::string& f_name,
               const std::string& phi_name, const std::string& ns_str) {
  std::vector<unsigned> ns;
  for (std::size_t v : parse_sizes(ns_str)) {
    ns.push_back(static_cast<unsigned>(v));
  }
  const auto seq = spectral::power_norm_sequence(
      make_spec(f_name, phi_name, g), ns, g.tol_given ? g.tol : 1e-6);
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : seq.entries) {
    rows.push_back({std::to_string(e.n), io::fmt(e.norm), io::fmt(e.dominant),
                    io::fmt(e.tail_bound)});
  }
  emit_table(g, "powers", {"n", "norm", "dominant", "tail_bound"}, rows);
  return 0;
}

int cmd_kreiss(const GlobalOpts& g, const std::string& f_name,
               const std::string& phi_name, std::size_t angles,
               std::size_t depth, const std::string& shells) {
  auto sched = spectral::default_kreiss_schedule();
  sched.angles = angles;
  sched.refine_depth = depth;
  if (g.tol_given) sched.norm_tol = g.tol;
  if (!shells.empty()) sched.shells = parse_reals(shells);
  const auto rep = spectral::kreiss_scan(make_spec(f_name, phi_name, g), sched);
  emit_table(g, "kreiss",
             {"estimate", "rho", "theta"},
             {{io::fmt(rep.estimate), io::fmt(std::abs(rep.argmax)),
               io::fmt(std::arg(rep.argmax))}});
  return 0;
}

int cmd_bloch(const GlobalOpts& g, const std::string& f_name, double rmax,
              std::size_t shells, std::size_t angles) {
  analysis::QuadratureSpec q;
  q.radial_nodes = shells;
  q.angular_nodes = angles;
  const auto rep =
      analysis::bloch_norm_estimate(symbols::catalog_series(f_name), rmax, q);
  std::cout << io::fmt(rep.estimate) << "\n";
  if (!g.out.empty()) {
    std::filesystem::create_directories(g.out);
    std::string csv = io::csv_line({"node", "value"});
    for (const auto& s : rep.trace) {
      csv += io::csv_line({io::fmt(s.node), io::fmt(s.value)});
    }
    io::write_text(
        (std::filesystem::path(g.out) / "bloch_trace.csv").string(), csv);
  }
  return 0;
}

int cmd_witness(const GlobalOpts& g, const std::string& kind,
                const std::string& f_name, const std::string& phi_name,
                const std::string& rs_str) {
  const auto rs = parse_reals(rs_str);
  std::vector<std::vector<std::string>> rows;
  if (kind == "lower") {
    const auto f = symbols::catalog_series(f_name);
    for (double r : rs) {
      rows.push_back({io::fmt(r),
                      io::fmt(spectral::kreiss_lower_witness(f, cplx{r, 0.0}))});
    }
    emit_table(g, "witness_lower", {"r", "value"}, rows);
  } else if (kind == "delta") {
    const auto phi = symbols::catalog_self_map(phi_name);
    for (double r : rs) {
      const double delta = 1.0 - r;
      const double value = spectral::hilbert_kreiss_witness(
          phi, cplx{r, 0.0}, delta, g.tol_given ? g.tol : 1e-9);
      rows.push_back({io::fmt(r), io::fmt(delta), io::fmt(value)});
    }
    emit_table(g, "witness_delta", {"r", "delta", "value"}, rows);
  } else {
    throw ConfigError("unknown --kind '" + kind + "'");
  }
  return 0;
}

symbols::PowerSeries random_poly(Sampler& rng, std::size_t degree) {
  std::vector<cplx> c(degree + 1);
  for (auto& ck : c) ck = rng.box();
  return symbols::PowerSeries::from_coeffs(std::move(c), "random");
}

int cmd_quadrature(const GlobalOpts& g, const std::string& check,
                   std::size_t count, std::size_t degree,
                   const std::string& ns_str, const std::string& rs_str,
                   std::size_t arcs, std::size_t nodes) {
  analysis::QuadratureSpec q;
  std::vector<std::vector<std::string>> rows;
  if (check == "area-pairing") {
    Sampler rng(g.seed);
    for (std::size_t i = 0; i < count; ++i) {
      const auto u = random_poly(rng, degree);
      const auto v = random_poly(rng, degree);
      cplx side = 0.0;
      for (std::size_t k = 0; k <= degree; ++k) {
        side += u.coeff(k) * std::conj(v.coeff(k));
      }
      const cplx quad = analysis::hardy_inner_product_quadrature(u, v, q);
      rows.push_back({std::to_string(i), io::fmt(std::abs(quad - side))});
    }
    emit_table(g, "quadrature_area_pairing", {"i", "discrepancy"}, rows);
  } else if (check == "pairing") {
    Sampler rng(g.seed);
    analysis::QuadratureSpec qp = q;
    qp.radial_nodes = nodes;
    for (std::size_t i = 0; i < count; ++i) {
      const auto u = random_poly(rng, degree);
      const auto v = random_poly(rng, degree);
      rows.push_back({std::to_string(i),
                      io::fmt(analysis::hilbert_pairing_check(
                          u, v, degree + 1, qp))});
    }
    emit_table(g, "quadrature_pairing", {"i", "discrepancy"}, rows);
  } else if (check == "fejer-riesz") {
    Sampler rng(g.seed);
    for (std::size_t i = 0; i < count; ++i) {
      const auto rep = analysis::fejer_riesz_check(random_poly(rng, degree));
      rows.push_back({std::to_string(i), io::fmt(rep.lhs), io::fmt(rep.rhs),
                      io::fmt(rep.slack)});
    }
    emit_table(g, "quadrature_fejer_riesz", {"i", "lhs", "rhs", "slack"}, rows);
  } else if (check == "carleson") {
    const auto lens = symbols::catalog_self_map("lens");
    for (std::size_t r : parse_sizes(rs_str)) {
      for (std::size_t n : parse_sizes(ns_str)) {
        double sup = 0.0;
        std::size_t argmax = 0;
        for (std::size_t k = 0; k < arcs; ++k) {
          const analysis::Arc I{std::numbers::pi,
                                std::numbers::pi * std::pow(2.0, -double(k))};
          const double avg = analysis::carleson_box_average(
              lens, static_cast<unsigned>(n), static_cast<unsigned>(r), I, q);
          const double normalized =
              std::pow(static_cast<double>(n), static_cast<double>(r) + 1.0) *
              avg;
          if (normalized > sup) {
            sup = normalized;
            argmax = k;
          }
        }
        rows.push_back({std::to_string(r), std::to_string(n), io::fmt(sup),
                        std::to_string(argmax)});
      }
    }
    emit_table(g, "quadrature_carleson",
               {"r", "n", "sup_normalized", "argmax_arc"}, rows);
  } else if (check == "luecking") {
    const auto lens = symbols::catalog_self_map("lens");
    for (std::size_t n : parse_sizes(ns_str)) {
      double sup = 0.0;
      for (std::size_t k = 2; k < std::max<std::size_t>(arcs, 3); k += 2) {
        const analysis::Arc I{std::numbers::pi,
                              std::numbers::pi * std::pow(2.0, -double(k))};
        sup = std::max(sup, analysis::luecking_quantity(
                                analysis::luecking_power_density(
                                    lens, static_cast<unsigned>(n)),
                                1, I, q));
      }
      rows.push_back({std::to_string(n), io::fmt(sup),
                      io::fmt(sup * static_cast<double>(n * n))});
    }
    emit_table(g, "quadrature_luecking", {"n", "sup_value", "normalized"}, rows);
  } else {
    throw ConfigError("unknown --check '" + check + "'");
  }
  return 0;
}

int cmd_scenario(const GlobalOpts& g, const std::string& config_path,
                 const std::string& name,
                 const std::vector<std::string>& sets, bool seed_given) {
  harness::ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = harness::ExperimentConfig::from_file(config_path);
  }
  if (!name.empty()) cfg.set("scenario", name);
  if (seed_given) cfg.set("seed", std::to_string(g.seed));
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    }
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  const std::string out_dir = g.out.empty() ? "out" : g.out;
  const auto res = harness::run_scenario(cfg, out_dir);

  for (const auto& [k, v] : res.verdicts) {
    std::cout << "verdict " << k << ": " << v << "\n";
  }
  for (const auto& a : res.artifacts) std::cout << "wrote " << a << "\n";

  for (const auto& t : res.tables) {
    for (const auto& row : t.rows) {
      for (const auto& cell : row) {
        if (cell.rfind("error: ", 0) == 0) return 1;
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fhlab: numerical laboratory for generalized Foguel-Hankel "
               "operators on the Hardy space"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--trunc", g.trunc, "Section size N per block");
  app.add_option("--headroom", g.headroom,
                 "Internal summation length K (0 = policy default)");
  app.add_option("--out", g.out, "Output directory for artifacts");
  app.add_option("--format", g.format, "Table output format")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = app.add_option("--seed", g.seed, "Sampler seed");
  auto* tol_opt = app.add_option("--tol", g.tol, "Numeric tolerance");

  auto* norm = app.add_subcommand("norm", "Operator section norm");
  std::string op = "foguel", f_name = "hilbert", phi_name = "identity_map";
  unsigned power_n = 1;
  std::string poly_coeffs, lambda_str = "2,0";
  norm->add_option("--op", op,
                   "analytic|coanalytic|hankel|hilbert-matrix|foguel|power|"
                   "poly|resolvent");
  norm->add_option("--f", f_name, "Hankel symbol name");
  norm->add_option("--phi", phi_name, "Self-map name");
  norm->add_option("--n", power_n, "Power for --op power");
  norm->add_option("--p", poly_coeffs, "Real coefficients c0,c1,... for poly");
  norm->add_option("--lambda", lambda_str, "Resolvent point 're' or 're,im'");

  auto* powers = app.add_subcommand("powers", "Power norm sequence");
  std::string powers_ns = "1,2,4,8,16";
  powers->add_option("--f", f_name, "Hankel symbol name");
  powers->add_option("--phi", phi_name, "Self-map name");
  powers->add_option("--n", powers_ns, "Powers, e.g. 1,10,100 or 10:5:100");

  auto* kreiss = app.add_subcommand("kreiss", "Kreiss constant scan");
  std::size_t angles = 256, depth = 6;
  std::string shells_str;
  kreiss->add_option("--f", f_name, "Hankel symbol name");
  kreiss->add_option("--phi", phi_name, "Self-map name");
  kreiss->add_option("--angles", angles, "Angular nodes per shell");
  kreiss->add_option("--depth", depth, "Refinement depth");
  kreiss->add_option("--shells", shells_str, "Shell radii |lambda| > 1");

  auto* bloch = app.add_subcommand("bloch", "Bloch seminorm scan");
  double rmax = 0.99;
  std::size_t bloch_shells = 64, bloch_angles = 128;
  bloch->add_option("--f", f_name, "Symbol name");
  bloch->add_option("--rmax", rmax, "Largest shell radius, < 1");
  bloch->add_option("--shells", bloch_shells, "Radial shells");
  bloch->add_option("--angles", bloch_angles, "Angular nodes per shell");

  auto* witness = app.add_subcommand("witness", "Kreiss witnesses");
  std::string kind = "lower", witness_rs = "0.5,0.75,0.9,0.99,0.999";
  witness->add_option("--kind", kind, "lower|delta")
      ->check(CLI::IsMember({"lower", "delta"}));
  witness->add_option("--f", f_name, "Symbol for --kind lower");
  witness->add_option("--phi", phi_name, "Self-map for --kind delta");
  witness->add_option("--r", witness_rs, "Radial grid");

  auto* quad = app.add_subcommand("quadrature", "Quadrature identity checks");
  std::string check = "area-pairing", quad_ns = "64,128,256", quad_rs = "1,2,3";
  std::size_t count = 10, degree = 16, nodes = 65536, arcs = 9;
  quad->add_option("--check", check,
                   "area-pairing|pairing|fejer-riesz|carleson|luecking")
      ->check(CLI::IsMember(
          {"area-pairing", "pairing", "fejer-riesz", "carleson", "luecking"}));
  quad->add_option("--count", count, "Random batch size");
  quad->add_option("--degree", degree, "Polynomial degree");
  quad->add_option("--n", quad_ns, "Power grid (carleson, luecking)");
  quad->add_option("--r", quad_rs, "Exponent grid (carleson)");
  quad->add_option("--arcs", arcs, "Dyadic arc family size");
  quad->add_option("--nodes", nodes, "Simpson intervals (pairing)");

  auto* scenario = app.add_subcommand("scenario", "Run a named experiment");
  std::string config_path, scenario_name;
  std::vector<std::string> sets;
  scenario->add_option("--config", config_path, "key=value config file");
  scenario->add_option("--name", scenario_name, "Scenario name");
  scenario->add_option("--set", sets, "Override key=value (repeatable)");

  auto* catalog = app.add_subcommand("catalog", "List catalog symbol names");
  bool list_scenarios = false;
  catalog->add_flag("--scenarios", list_scenarios,
                    "List scenario names instead");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
    g.tol_given = tol_opt->count() > 0;

    if (*catalog) {
      const auto names = list_scenarios ? fhlab::harness::scenario_names()
                                        : symbols::catalog_names();
      for (const auto& n : names) std::cout << n << "\n";
      return 0;
    }
    if (*norm) {
      return cmd_norm(g, op, f_name, phi_name, power_n, poly_coeffs,
                      lambda_str);
    }
    if (*powers) return cmd_powers(g, f_name, phi_name, powers_ns);
    if (*kreiss) {
      return cmd_kreiss(g, f_name, phi_name, angles, depth, shells_str);
    }
    if (*bloch) return cmd_bloch(g, f_name, rmax, bloch_shells, bloch_angles);
    if (*witness) return cmd_witness(g, kind, f_name, phi_name, witness_rs);
    if (*quad) {
      return cmd_quadrature(g, check, count, degree, quad_ns, quad_rs, arcs,
                            nodes);
    }
    if (*scenario) {
      return cmd_scenario(g, config_path, scenario_name, sets,
                          seed_opt->count() > 0);
    }
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const HeadroomInsufficient& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NonConvergent& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
