// Acceptance gate. Every release criterion below runs end to end and prints
// exactly one [PASS]/[FAIL] line carrying the measured quantities next to
// their pinned bounds. Exit status is the number of failed criteria.
//
// Pinned thresholds sit in the constants block; each carries the measurement
// that fixed it. All randomness uses hard-coded seeds, so reruns reproduce
// every number exactly.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fhlab/analysis.hpp"
#include "fhlab/catalog.hpp"
#include "fhlab/harness.hpp"
#include "fhlab/sampling.hpp"
#include "fhlab/sections.hpp"
#include "fhlab/series.hpp"
#include "fhlab/spectral.hpp"
#include "fhlab/types.hpp"

namespace {

using fhlab::cplx;
using fhlab::Sampler;
namespace analysis = fhlab::analysis;
namespace harness = fhlab::harness;
namespace sections = fhlab::sections;
namespace spectral = fhlab::spectral;
namespace symbols = fhlab::symbols;

// --- pinned thresholds ------------------------------------------------------

// 1: area-pairing identity on random polynomial pairs.
constexpr std::size_t kAreaPairs = 100;
constexpr std::size_t kAreaDegree = 16;
constexpr double kAreaTol = 1e-6;       // measured worst 2.19e-10 at seed 12345
constexpr double kAreaSeconds = 60.0;

// 3: closed-form power vs direct matrix power with exact headroom.
constexpr double kPowerMatchTol = 1e-8;  // measured worst ~1e-13

// 4: power-norm dichotomy at section size 2048.
// Ratio floor = 80% of the value(100)/value(10) measurement at N = 2048.
// The ratio climbs with the section size (6.1606 at N = 512, 6.8734 at 1024,
// 7.4445 at 2048), approaching the untruncated growth from below, so the
// largest-N measurement is the conservative base for the pin.
constexpr double kGrowthRatioFloor = 5.95;
// The lacunary symbol's norm sequence is log-2-periodic in n (the dominant
// coefficient n / (2^k + 1) jumps phase just past n = 2^k + 3), so the decay
// window samples the fixed-phase subsequence n = 10 * 2^j. Measured range
// over {20, 40, 80, 160} at N = 2048: 0.66%.
constexpr double kDecadeRangeCap = 0.25;
constexpr double kDichotomySeconds = 600.0;

// 5: bounded power norms for the lacunary symbol under both maps.
// The running sup over the sampled grid peaks early (lens: 1.4665 at n = 3,
// moebius: 4.4673 at n = 6) and never moves afterward; measured range of the
// running sup over n in [20, 200] is 0.000% for both maps at N = 2048.
constexpr double kSupRangeCap = 0.25;

// 6: Kreiss scan dichotomy and the radial witness floor.
constexpr double kKreissSpreadCap = 0.10;   // measured 0.23% at sizes 64..128
constexpr double kKreissGrowthFloor = 2.0;  // measured 1.99x per doubling
constexpr double kWitnessQuadTol = 1e-6;

// 7: Kreiss scans of the compression with zero symbol stay contractive.
constexpr double kContractionCap = 1.0 + 1e-6;

// 8: radial witness growth window for the harmonic-coefficient symbol;
// closed-form value of the factor is 9.9823. For polynomial symbols the
// witness decays like (1 - r^2)^2 past its plateau, so the boundary sweep
// may exceed the r = 0.99 value only by quadrature-level slack.
constexpr double kWitnessFactorLo = 5.0;
constexpr double kWitnessFactorHi = 20.0;
constexpr double kPolySaturation = 1.05;
constexpr std::size_t kPolyWitnessCount = 20;
constexpr std::uint64_t kPolyWitnessSeed = 424242;

// 9: inequality suites.
constexpr double kSlackFloor = -1e-12;      // measured -4.56e-13 at 1e5 samples
constexpr std::size_t kSlackSamples = 100000;
constexpr std::size_t kFejerCount = 1000;   // measured min slack 19.6 at seed 12346
constexpr std::size_t kFejerDegree = 16;
// Arc-family decay: measured variation 4.1% (r=1), 7.8% (r=2), 13.0% (r=3)
// over n in {64, 128, 256} for the lens map.
constexpr double kDecayVariationCap = 0.20;

// 10: Hilbert matrix facts.
constexpr double kHilbertTwoTol = 1e-12;    // closed form (4 + sqrt 13) / 6
constexpr double kPairingTol = 1e-8;        // measured worst 2.3e-14 at 65536 nodes
constexpr std::size_t kPairingCount = 20;
constexpr std::size_t kPairingDegree = 32;
constexpr std::uint64_t kPairingSeed = 24680;

// --- reporting --------------------------------------------------------------

struct Gate {
  int failures = 0;

  void line(int index, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d  %-22s %s\n", ok ? "PASS" : "FAIL", index,
                name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::string fmt(const char* pattern, ...) {
  va_list args;
  va_start(args, pattern);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

symbols::PowerSeries random_poly(Sampler& rng, std::size_t degree,
                                 const std::string& name) {
  std::vector<cplx> c(degree + 1);
  for (auto& ck : c) ck = rng.box();
  return symbols::PowerSeries::from_coeffs(std::move(c), name);
}

bool bitwise_equal(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(),
                     sizeof(cplx) * static_cast<std::size_t>(a.size())) == 0;
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

sections::FoguelHankelSpec make_spec(const std::string& f,
                                     const std::string& phi, std::size_t N,
                                     std::size_t K = 0) {
  return {symbols::catalog_series(f), symbols::catalog_self_map(phi), N, K};
}

// Range of a positive sequence relative to its minimum.
double relative_range(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / *lo;
}

// --- criteria ---------------------------------------------------------------

void criterion_area_pairing(Gate& g) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Sampler rng(12345);
    analysis::QuadratureSpec q;
    double worst = 0.0;
    for (std::size_t i = 0; i < kAreaPairs; ++i) {
      const auto u = random_poly(rng, kAreaDegree, "u");
      const auto v = random_poly(rng, kAreaDegree, "v");
      cplx coeff_side = 0.0;
      for (std::size_t k = 0; k <= kAreaDegree; ++k) {
        coeff_side += u.coeff(k) * std::conj(v.coeff(k));
      }
      const cplx quad = analysis::hardy_inner_product_quadrature(u, v, q);
      worst = std::max(worst, std::abs(quad - coeff_side));
    }
    const double dt = seconds_since(t0);
    const bool ok = worst <= kAreaTol && dt <= kAreaSeconds;
    g.line(1, "area pairing", ok,
           fmt("worst |quad - coeff| %.3g (cap %.0e) over %zu pairs, %.1f s "
               "(cap %.0f s)",
               worst, kAreaTol, kAreaPairs, dt, kAreaSeconds));
  } catch (const std::exception& ex) {
    g.line(1, "area pairing", false, fmt("threw: %s", ex.what()));
  }
}

void criterion_algebraic_exactness(Gate& g) {
  try {
    double worst_adjoint = 0.0;
    for (const char* name : {"lens", "moebius:0.5"}) {
      const auto phi = symbols::catalog_series(name);
      const auto direct = sections::coanalytic_toeplitz(phi, 64);
      const auto via_tilde = sections::analytic_toeplitz(phi.tilde(), 64);
      worst_adjoint = std::max(
          worst_adjoint,
          max_abs_diff(direct.entries,
                       via_tilde.entries.adjoint()));
    }

    bool bitwise = true;
    for (const auto& [f, phi] :
         std::vector<std::pair<std::string, std::string>>{
             {"hilbert", "lens"}, {"lacunary_bloch", "moebius:0.5"}}) {
      const auto spec = make_spec(f, phi, 64);
      const auto gamma = sections::foguel_hankel(spec);
      const auto pow1 = sections::power_closed_form(spec, 1);
      const auto z = symbols::PowerSeries::from_coeffs({cplx{0.0}, cplx{1.0}},
                                                       "z");
      const auto calc = sections::poly_calculus(spec, z);
      bitwise = bitwise && bitwise_equal(gamma.entries, pow1.entries) &&
                bitwise_equal(gamma.entries, calc.entries);
    }

    const bool ok = worst_adjoint <= 1e-15 && bitwise;
    g.line(2, "algebraic exactness", ok,
           fmt("adjoint identity worst %.3g (cap 1e-15), power(1) and "
               "calculus(z) bitwise equal: %s",
               worst_adjoint, bitwise ? "yes" : "no"));
  } catch (const std::exception& ex) {
    g.line(2, "algebraic exactness", false, fmt("threw: %s", ex.what()));
  }
}

void criterion_power_match(Gate& g) {
  try {
    const std::size_t N = 64;
    double worst = 0.0;
    for (unsigned n = 1; n <= 16; ++n) {
      const std::size_t K = N + 2 * n;
      const auto spec = make_spec("hilbert", "lens", N, K);
      const auto closed = sections::power_closed_form(spec, n);

      const auto spec_big = make_spec("hilbert", "lens", K, 0);
      const Eigen::MatrixXcd gamma = sections::foguel_hankel(spec_big).entries;
      Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(2 * K, 2 * K);
      for (unsigned j = 0; j < n; ++j) power = gamma * power;

      Eigen::MatrixXcd compressed(2 * N, 2 * N);
      const auto NN = static_cast<Eigen::Index>(N);
      const auto KK = static_cast<Eigen::Index>(K);
      compressed.topLeftCorner(NN, NN) = power.block(0, 0, NN, NN);
      compressed.topRightCorner(NN, NN) = power.block(0, KK, NN, NN);
      compressed.bottomLeftCorner(NN, NN) = power.block(KK, 0, NN, NN);
      compressed.bottomRightCorner(NN, NN) = power.block(KK, KK, NN, NN);

      worst = std::max(worst, max_abs_diff(closed.entries, compressed));
    }
    const bool ok = worst <= kPowerMatchTol;
    g.line(3, "closed-form powers", ok,
           fmt("worst closed vs direct %.3g (cap %.0e) at N=64, n<=16",
               worst, kPowerMatchTol));
  } catch (const std::exception& ex) {
    g.line(3, "closed-form powers", false, fmt("threw: %s", ex.what()));
  }
}

void criterion_power_dichotomy(Gate& g) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::vector<unsigned> grid;
    for (unsigned n = 10; n <= 100; n += 5) grid.push_back(n);
    const auto growth = spectral::power_norm_sequence(
        make_spec("hilbert", "identity_map", 2048), grid, 1e-6);
    bool increasing = true;
    for (std::size_t i = 1; i < growth.entries.size(); ++i) {
      increasing = increasing &&
                   growth.entries[i].norm > growth.entries[i - 1].norm;
    }
    const double ratio =
        growth.entries.back().norm / growth.entries.front().norm;

    const auto bounded = spectral::power_norm_sequence(
        make_spec("lacunary_bloch", "identity_map", 2048),
        {10, 20, 40, 80, 160}, 1e-6);
    std::vector<double> window;
    for (const auto& e : bounded.entries) {
      if (e.n >= 16) window.push_back(e.norm);
    }
    const double range = relative_range(window);

    const double dt = seconds_since(t0);
    const bool ok = increasing && ratio >= kGrowthRatioFloor &&
                    range <= kDecadeRangeCap && dt <= kDichotomySeconds;
    g.line(4, "power dichotomy", ok,
           fmt("growth %s, ratio %.4f (floor %.2f); bounded range %.2f%% "
               "(cap %.0f%%); %.0f s (cap %.0f s)",
               increasing ? "monotone" : "NOT monotone", ratio,
               kGrowthRatioFloor, 100.0 * range, 100.0 * kDecadeRangeCap, dt,
               kDichotomySeconds));
  } catch (const std::exception& ex) {
    g.line(4, "power dichotomy", false, fmt("threw: %s", ex.what()));
  }
}

void criterion_bounded_powers(Gate& g) {
  try {
    const std::vector<unsigned> grid = {1,  2,  3,  4,  6,   8,   11,  16,
                                        23, 32, 45, 64, 91, 128, 181, 200};
    std::string detail;
    bool ok = true;
    for (const char* map : {"lens", "moebius:0.5"}) {
      const auto seq = spectral::power_norm_sequence(
          make_spec("lacunary_bloch", map, 2048), grid, 1e-6);
      double running = 0.0;
      std::vector<double> sup_window;
      for (const auto& e : seq.entries) {
        running = std::max(running, e.norm);
        if (e.n >= 20) sup_window.push_back(running);
      }
      const double range = relative_range(sup_window);
      ok = ok && range <= kSupRangeCap;
      if (!detail.empty()) detail += ", ";
      detail += fmt("%s sup %.4f range %.3f%%", map, running, 100.0 * range);
    }
    g.line(5, "bounded powers", ok,
           detail + fmt(" (cap %.0f%%)", 100.0 * kSupRangeCap));
  } catch (const std::exception& ex) {
    g.line(5, "bounded powers", false, fmt("threw: %s", ex.what()));
  }
}

void criterion_kreiss_dichotomy(Gate& g) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto sched = spectral::default_kreiss_schedule();
    sched.angles = 64;
    sched.refine_depth = 6;
    sched.norm_tol = 1e-3;

    std::vector<double> lens_est, identity_est;
    for (std::size_t N : {128, 256, 512}) {
      lens_est.push_back(
          spectral::kreiss_scan(make_spec("hilbert", "lens", N), sched)
              .estimate);
      identity_est.push_back(
          spectral::kreiss_scan(make_spec("hilbert", "identity_map", N), sched)
              .estimate);
    }
    const double spread = relative_range(lens_est);
    const double growth = identity_est.back() / identity_est.front();

    const auto identity = symbols::catalog_self_map("identity_map");
    double worst_margin = std::numeric_limits<double>::infinity();
    for (double r : {0.9, 0.99}) {
      const double value =
          spectral::hilbert_kreiss_witness(identity, cplx{r, 0.0}, 1.0 - r);
      const double floor = (1.0 - kWitnessQuadTol) / (6.0 * (1.0 - r));
      worst_margin = std::min(worst_margin, value / floor);
    }

    const bool ok = spread <= kKreissSpreadCap &&
                    growth >= kKreissGrowthFloor && worst_margin >= 1.0;
    g.line(6, "kreiss dichotomy", ok,
           fmt("lens spread %.2f%% (cap %.0f%%), identity growth %.2fx "
               "(floor %.1fx), witness/floor %.3f (>=1); %.0f s",
               100.0 * spread, 100.0 * kKreissSpreadCap, growth,
               kKreissGrowthFloor, worst_margin, seconds_since(t0)));
  } catch (const std::exception& ex) {
    g.line(6, "kreiss dichotomy", false, fmt("threw: %s", ex.what()));
  }
}

void criterion_contraction_scans(Gate& g) {
  try {
    auto sched = spectral::default_kreiss_schedule();
    sched.angles = 32;
    sched.refine_depth = 4;
    sched.norm_tol = 1e-6;
    const auto zero = symbols::PowerSeries::from_coeffs({cplx{0.0}}, "zero");

    double worst = 0.0;
    for (const char* map :
         {"identity_map", "lens", "moebius:0.5", "constant:0.3"}) {
      sections::FoguelHankelSpec spec{zero, symbols::catalog_self_map(map), 64,
                                      0};
      worst = std::max(worst, spectral::kreiss_scan(spec, sched).estimate);
    }
    const bool ok = worst <= kContractionCap;
    g.line(7, "contraction scans", ok,
           fmt("worst zero-symbol estimate %.9f (cap 1 + 1e-6) over 4 maps",
               worst));
  } catch (const std::exception& ex) {
    g.line(7, "contraction scans", false, fmt("threw: %s", ex.what()));
  }
}

void criterion_witness_growth(Gate& g) {
  try {
    const auto hilbert = symbols::catalog_series("hilbert");
    const double w90 = spectral::kreiss_lower_witness(hilbert, cplx{0.9, 0.0});
    const double w99 =
        spectral::kreiss_lower_witness(hilbert, cplx{0.99, 0.0});
    const double factor = w99 / w90;

    Sampler rng(kPolyWitnessSeed);
    const std::vector<double> sweep = {0.99,  0.992, 0.994,  0.996,
                                       0.998, 0.999, 0.9995, 0.9999};
    double worst_saturation = 0.0;
    for (std::size_t i = 0; i < kPolyWitnessCount; ++i) {
      const auto f = random_poly(rng, 8, "w");
      const double base =
          spectral::kreiss_lower_witness(f, cplx{sweep.front(), 0.0});
      double peak = 0.0;
      for (double r : sweep) {
        peak = std::max(peak,
                        spectral::kreiss_lower_witness(f, cplx{r, 0.0}));
      }
      worst_saturation = std::max(worst_saturation, peak / base);
    }

    const bool ok = factor >= kWitnessFactorLo && factor <= kWitnessFactorHi &&
                    worst_saturation <= kPolySaturation;
    g.line(8, "witness growth", ok,
           fmt("harmonic-symbol factor %.4f (window [%.0f, %.0f]), worst "
               "polynomial boundary/0.99 ratio %.4f (cap %.2f)",
               factor, kWitnessFactorLo, kWitnessFactorHi, worst_saturation,
               kPolySaturation));
  } catch (const std::exception& ex) {
    g.line(8, "witness growth", false, fmt("threw: %s", ex.what()));
  }
}

void criterion_inequality_suites(Gate& g) {
  try {
    double worst_slack = 0.0;
    std::uint64_t seed = 20260816;
    for (const char* map :
         {"lens", "identity_map", "moebius:0.5", "constant:0.3"}) {
      const auto phi = symbols::catalog_self_map(map);
      for (unsigned d = 1; d <= 4; ++d) {
        const auto rep =
            analysis::schwarz_pick_check(phi, d, kSlackSamples, ++seed);
        worst_slack = std::min({worst_slack, rep.worst_i, rep.worst_ii});
      }
    }

    Sampler rng(12346);
    double min_fejer = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < kFejerCount; ++i) {
      const auto v = random_poly(rng, kFejerDegree, "v");
      min_fejer = std::min(min_fejer, analysis::fejer_riesz_check(v).slack);
    }

    analysis::QuadratureSpec q;
    const auto lens = symbols::catalog_self_map("lens");
    double worst_variation = 0.0;
    for (unsigned r = 1; r <= 3; ++r) {
      std::vector<double> sups;
      for (unsigned n : {64, 128, 256}) {
        double sup = 0.0;
        for (int k = 0; k < 9; ++k) {
          const analysis::Arc arc{std::numbers::pi,
                                  std::numbers::pi * std::pow(2.0, -k)};
          sup = std::max(sup, std::pow(double(n), double(r) + 1.0) *
                                  analysis::carleson_box_average(lens, n, r,
                                                                 arc, q));
        }
        sups.push_back(sup);
      }
      worst_variation = std::max(worst_variation, relative_range(sups));
    }

    const bool ok = worst_slack >= kSlackFloor && min_fejer >= 0.0 &&
                    worst_variation <= kDecayVariationCap;
    g.line(9, "inequality suites", ok,
           fmt("derivative-bound slack %.3g (floor %.0e), diameter-bound "
               "slack %.3g (>=0), arc-decay variation %.1f%% (cap %.0f%%)",
               worst_slack, kSlackFloor, min_fejer, 100.0 * worst_variation,
               100.0 * kDecayVariationCap));
  } catch (const std::exception& ex) {
    g.line(9, "inequality suites", false, fmt("threw: %s", ex.what()));
  }
}

void criterion_hilbert_matrix(Gate& g) {
  try {
    double previous = 0.0;
    bool increasing = true, below_pi = true;
    double h2 = 0.0;
    for (std::size_t N = 2; N <= 1024; N *= 2) {
      const double norm =
          spectral::spectral_norm(sections::hilbert_matrix(N), 1e-13);
      if (N == 2) h2 = norm;
      increasing = increasing && norm > previous;
      below_pi = below_pi && norm < std::numbers::pi;
      previous = norm;
    }
    const double h2_error = std::abs(h2 - (4.0 + std::sqrt(13.0)) / 6.0);

    Sampler rng(kPairingSeed);
    analysis::QuadratureSpec q;
    q.radial_nodes = 65536;
    double worst_pairing = 0.0;
    for (std::size_t i = 0; i < kPairingCount; ++i) {
      const auto u = random_poly(rng, kPairingDegree, "u");
      const auto v = random_poly(rng, kPairingDegree, "v");
      worst_pairing = std::max(
          worst_pairing,
          analysis::hilbert_pairing_check(u, v, kPairingDegree + 1, q));
    }

    const bool ok = increasing && below_pi && h2_error <= kHilbertTwoTol &&
                    worst_pairing <= kPairingTol;
    g.line(10, "hilbert matrix facts", ok,
           fmt("norms %s and < pi up to N=1024, |H2 - (4+sqrt13)/6| %.3g "
               "(cap %.0e), pairing worst %.3g (cap %.0e)",
               increasing ? "increase" : "DO NOT increase", h2_error,
               kHilbertTwoTol, worst_pairing, kPairingTol));
  } catch (const std::exception& ex) {
    g.line(10, "hilbert matrix facts", false, fmt("threw: %s", ex.what()));
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_determinism(Gate& g) {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "fhlab-acceptance";
  try {
    harness::ExperimentConfig cfg;
    cfg.set("scenario", "kreiss-witness");

    std::vector<std::string> first, second;
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = base / (run == 0 ? "a" : "b");
      fs::remove_all(dir);
      fs::create_directories(dir);
      const auto res = harness::run_scenario(cfg, dir.string());
      auto& bucket = run == 0 ? first : second;
      for (const auto& artifact : res.artifacts) {
        const fs::path p(artifact);
        const auto ext = p.extension().string();
        if (ext == ".csv" || ext == ".json") bucket.push_back(artifact);
      }
      std::sort(bucket.begin(), bucket.end());
    }

    bool identical = first.size() == second.size() && !first.empty();
    std::size_t bytes = 0;
    for (std::size_t i = 0; identical && i < first.size(); ++i) {
      const auto a = slurp(first[i]);
      const auto b = slurp(second[i]);
      bytes += a.size();
      identical = !a.empty() && a == b;
    }
    fs::remove_all(base);

    g.line(11, "determinism", identical,
           fmt("%zu artifacts, %zu bytes, byte-identical across reruns: %s",
               first.size(), bytes, identical ? "yes" : "no"));
  } catch (const std::exception& ex) {
    std::error_code ec;
    fs::remove_all(base, ec);
    g.line(11, "determinism", false, fmt("threw: %s", ex.what()));
  }
}

}  // namespace

int main() {
  Gate gate;
  criterion_area_pairing(gate);
  criterion_algebraic_exactness(gate);
  criterion_power_match(gate);
  criterion_power_dichotomy(gate);
  criterion_bounded_powers(gate);
  criterion_kreiss_dichotomy(gate);
  criterion_contraction_scans(gate);
  criterion_witness_growth(gate);
  criterion_inequality_suites(gate);
  criterion_hilbert_matrix(gate);
  criterion_determinism(gate);

  std::printf("%d/11 criteria passed\n", 11 - gate.failures);
  return gate.failures == 0 ? 0 : 1;
}
