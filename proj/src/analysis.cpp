#include "fhlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fhlab/sampling.hpp"

namespace fhlab::analysis {

namespace {

using symbols::PowerSeries;
using symbols::SelfMap;

constexpr double kPi = std::numbers::pi;

void require_polynomial(const PowerSeries& p, std::size_t max_deg,
                        const char* who) {
  if (!p.finite_degree() || p.degree() > max_deg) {
    throw ConfigError(std::string(who) + ": '" + p.name() +
                      "' must be a polynomial of degree <= " +
                      std::to_string(max_deg));
  }
}

}  // namespace

ScanReport bloch_norm_estimate(const PowerSeries& f, double r_max,
                               const QuadratureSpec& q) {
  if (!(r_max > 0.0 && r_max <= 1.0 - kEvalMargin)) {
    throw ConfigError("bloch_norm_estimate: r_max outside (0, 1 - margin]");
  }
  if (q.radial_nodes < 8 || q.angular_nodes < 8) {
    throw ConfigError("bloch_norm_estimate: node counts must be >= 8");
  }
  ScanReport rep;
  const std::size_t shells = q.radial_nodes;
  const std::size_t nth = q.angular_nodes;
  for (std::size_t i = 0; i < shells; ++i) {
    // First shell at the origin, then 1 - r decreasing geometrically.
    double r = 0.0;
    if (i > 0) {
      const double t = static_cast<double>(i) /
                       static_cast<double>(shells - 1);
      r = 1.0 - std::pow(1.0 - r_max, t);
    }
    double best = -1.0;
    cplx best_z{0.0, 0.0};
    for (std::size_t j = 0; j < nth; ++j) {
      const double th = 2.0 * kPi * (static_cast<double>(j) + 0.5) /
                        static_cast<double>(nth);
      const cplx z = std::polar(r, th);
      const double v = (1.0 - r * r) * std::abs(symbols::eval(f, z, 1));
      if (v > best) {
        best = v;
        best_z = z;
      }
    }
    rep.trace.push_back({best_z, best});
  }
  rep.estimate = -1.0;
  for (const auto& s : rep.trace) {
    if (s.value > rep.estimate) {
      rep.estimate = s.value;
      rep.argmax = s.node;
    }
  }
  return rep;
}

cplx hardy_inner_product_quadrature(const PowerSeries& f, const PowerSeries& g,
                                    const QuadratureSpec& q) {
  require_polynomial(f, 64, "hardy_inner_product_quadrature");
  require_polynomial(g, 64, "hardy_inner_product_quadrature");

  const cplx head = f.coeff(0) * std::conj(g.coeff(0)) +
                    f.coeff(1) * std::conj(g.coeff(1));
  auto integrand = [&](cplx z) {
    const double r = std::abs(z);
    const double w = std::log(1.0 / r) * (1.0 + r * r) - (1.0 - r * r);
    return symbols::eval(f, z, 2) * std::conj(symbols::eval(g, z, 2)) * w;
  };
  return head + 2.0 * disc_integral(integrand, q);
}

double carleson_box_average(const SelfMap& phi, unsigned n, unsigned r_exp,
                            const Arc& I, const QuadratureSpec& q) {
  if (!(I.length > 0.0 && I.length <= 2.0 * kPi)) {
    throw ConfigError("carleson_box_average: arc length outside (0, 2 pi]");
  }
  const double depth = std::min(I.length, 1.0);
  const double a = I.center - 0.5 * I.length;
  const double b = I.center + 0.5 * I.length;

  auto point = [&](double rho, double th) {
    const double m = std::abs(symbols::eval(phi.series, std::polar(rho, th)));
    return std::pow(m, static_cast<double>(n)) *
           std::pow(std::max(0.0, 1.0 - m), static_cast<double>(r_exp));
  };

  double integral = 0.0;
  if (q.scheme == QuadratureSpec::Scheme::adaptive_simpson) {
    // Nested adaptive rule; tolerances scaled by a coarse probe so the
    // requested tolerance acts relative to the integral's size.
    double probe = 0.0;
    for (int i = 0; i <= 16; ++i) {
      for (int j = 0; j <= 16; ++j) {
        const double rho = 1.0 - depth + depth * i / 16.0;
        const double th = a + (b - a) * j / 16.0;
        probe = std::max(probe, point(rho, th) * rho);
      }
    }
    const double scale = std::max(probe * depth * I.length, 1e-280);
    auto inner = [&](double th) {
      auto h = [&](double rho) { return point(rho, th) * rho; };
      return adaptive_simpson(h, 1.0 - depth, 1.0,
                              0.25 * q.tolerance * scale / I.length);
    };
    integral = adaptive_simpson(inner, a, b, 0.5 * q.tolerance * scale) / kPi;
  } else {
    // Geometric panels toward the boundary resolve the |phi|^n peak.
    const std::size_t panels =
        std::max<std::size_t>(16, static_cast<std::size_t>(
                                      std::ceil(std::log2(double(n) + 2))) +
                                      12);
    const Rule1D rad = boundary_rule(depth, panels, 8);
    const std::size_t nth = std::max<std::size_t>(q.angular_nodes, 8);
    for (std::size_t j = 0; j < nth; ++j) {
      const double th = a + (b - a) * (static_cast<double>(j) + 0.5) /
                            static_cast<double>(nth);
      double col = 0.0;
      for (std::size_t i = 0; i < rad.nodes.size(); ++i) {
        col += rad.weights[i] * point(rad.nodes[i], th) * rad.nodes[i];
      }
      integral += col;
    }
    integral *= (b - a) / static_cast<double>(nth) / kPi;
  }
  return integral / I.length;
}

double luecking_quantity(const std::function<double(cplx)>& density,
                         unsigned d, const Arc& I, const QuadratureSpec& q) {
  if (!(I.length > 0.0 && I.length <= 2.0 * kPi)) {
    throw ConfigError("luecking_quantity: arc length outside (0, 2 pi]");
  }
  const double depth = std::min(I.length, 1.0);
  const double a = I.center - 0.5 * I.length;
  const double b = I.center + 0.5 * I.length;
  const Rule1D rad = boundary_rule(depth, 32, 8);
  const std::size_t nth = std::max<std::size_t>(q.angular_nodes, 8);

  double integral = 0.0;
  for (std::size_t i = 0; i < rad.nodes.size(); ++i) {
    const double rho = rad.nodes[i];
    const double R = 0.5 * (1.0 - rho);
    const double wr = std::pow(1.0 - rho, -2.0 * d - 3.0);
    double ring = 0.0;
    for (std::size_t j = 0; j < nth; ++j) {
      const double th = a + (b - a) * (static_cast<double>(j) + 0.5) /
                            static_cast<double>(nth);
      const cplx z = std::polar(rho, th);
      const double mu = disc_mean(density, z, R) * R * R;
      ring += mu * mu;
    }
    integral += rad.weights[i] * rho * wr * ring * (b - a) /
                static_cast<double>(nth);
  }
  integral /= kPi;
  return std::sqrt(integral / I.length);
}

std::function<double(cplx)> luecking_power_density(const SelfMap& psi,
                                                   unsigned n) {
  const PowerSeries s = psi.series;
  return [s, n](cplx w) {
    const double m = std::abs(symbols::eval(s, w));
    return std::pow(m, static_cast<double>(n)) * std::max(0.0, 1.0 - m);
  };
}

SlackReport schwarz_pick_check(const SelfMap& phi, unsigned d,
                               std::size_t samples, std::uint64_t seed) {
  if (d == 0 || d > 8) {
    throw ConfigError("schwarz_pick_check: d must be in [1, 8]");
  }
  if (samples == 0) throw ConfigError("schwarz_pick_check: no samples");
  Sampler rng(seed);
  SlackReport rep;
  rep.samples = samples;
  rep.worst_i = std::numeric_limits<double>::infinity();
  rep.worst_ii = std::numeric_limits<double>::infinity();

  // The sharp constant is (1+|phi(0)|)/(1-|phi(0)|): chain the Schwarz-Pick
  // identity 1-|b_a(w)|^2 = (1-|a|^2)(1-|w|^2)/|1-conj(a)w|^2 for a = phi(0)
  // with |1-conj(a)w| >= 1-|a|. With the reciprocal factor the bound already
  // fails at z = 0 whenever phi(0) != 0.
  const double phi0 = std::abs(symbols::eval(phi.series, {0.0, 0.0}));
  const double ratio = (1.0 + phi0) / (1.0 - phi0);
  double dfact = 1.0;
  for (unsigned k = 2; k <= d; ++k) dfact *= static_cast<double>(k);

  for (std::size_t s = 0; s < samples; ++s) {
    const cplx z = rng.disc(1.0 - kEvalMargin);
    const double r = std::abs(z);
    const double mz = std::abs(symbols::eval(phi.series, z));
    const double slack_i = ratio * (1.0 - mz * mz) - (1.0 - r * r);
    if (slack_i < rep.worst_i) {
      rep.worst_i = slack_i;
      rep.arg_i = z;
    }
    const double der = std::abs(symbols::eval(phi.series, z,
                                              static_cast<int>(d)));
    const double slack_ii = dfact * (1.0 - mz * mz) *
                                std::pow(1.0 + r, static_cast<double>(d) -
                                                      1.0) -
                            (1.0 - r * r) * der;
    if (slack_ii < rep.worst_ii) {
      rep.worst_ii = slack_ii;
      rep.arg_ii = z;
    }
  }
  return rep;
}

double hilbert_pairing_check(const PowerSeries& u, const PowerSeries& v,
                             std::size_t N, const QuadratureSpec& q) {
  if (N == 0) throw ConfigError("hilbert_pairing_check: N must be positive");
  if (!u.finite_degree() || u.degree() >= N || !v.finite_degree() ||
      v.degree() >= N) {
    throw ConfigError("hilbert_pairing_check: need polynomials of degree < N");
  }
  const auto uc = u.coeffs(N);
  const auto vc = v.coeffs(N);

  // Matrix side: conj(v)^T H u with H the Hilbert matrix.
  cplx matrix_side{0.0, 0.0};
  for (std::size_t n = 0; n < N; ++n) {
    cplx row{0.0, 0.0};
    for (std::size_t m = 0; m < N; ++m) {
      row += uc[m] / static_cast<double>(n + m + 1);
    }
    matrix_side += std::conj(vc[n]) * row;
  }

  // Integral side: composite Simpson for int_0^1 u(t) conj(v)(t) dt.
  std::size_t segs = std::max<std::size_t>(q.radial_nodes, 8);
  if (segs % 2 == 1) ++segs;
  auto val = [&](double t) {
    cplx uu{0.0, 0.0}, vv{0.0, 0.0};
    for (std::size_t k = N; k-- > 0;) {
      uu = uu * t + uc[k];
      vv = vv * t + vc[k];
    }
    return uu * std::conj(vv);
  };
  cplx integral{0.0, 0.0};
  const double h = 1.0 / static_cast<double>(segs);
  for (std::size_t i = 0; i <= segs; ++i) {
    const double w = (i == 0 || i == segs) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    integral += w * val(h * static_cast<double>(i));
  }
  integral *= h / 3.0;

  return std::abs(matrix_side - integral);
}

FejerRieszReport fejer_riesz_check(const PowerSeries& v) {
  require_polynomial(v, 64, "fejer_riesz_check");
  const auto c = v.coeffs(v.degree() + 1);
  long double lhs = 0.0L;
  long double norm2 = 0.0L;
  for (std::size_t m = 0; m < c.size(); ++m) {
    for (std::size_t n = 0; n < c.size(); ++n) {
      const cplx t = c[m] * std::conj(c[n]);
      lhs += static_cast<long double>(t.real()) /
             static_cast<long double>(m + n + 1);
    }
    norm2 += static_cast<long double>(std::norm(c[m]));
  }
  FejerRieszReport rep;
  rep.lhs = static_cast<double>(lhs);
  rep.rhs = static_cast<double>(static_cast<long double>(kPi) * norm2);
  rep.slack = rep.rhs - rep.lhs;
  return rep;
}

symbols::PowerSeries v_phi_coefficients(const PowerSeries& f,
                                        const SelfMap& phi, std::size_t D,
                                        double* tail_bound) {
  if (D == 0) throw ConfigError("v_phi_coefficients: D must be positive");
  if (tail_bound) *tail_bound = 0.0;

  // Coefficients of f(phi) up to degree D - 2 (the antiderivative shifts
  // everything up by one).
  const std::size_t comp_len = D > 1 ? D - 1 : 1;
  std::vector<cplx> comp;

  const cplx phi0 = phi.series.coeff(0);
  std::size_t cap = 0;
  if (phi0 == cplx{0.0, 0.0}) {
    // phi^k only feeds degrees >= k; truncating f at comp_len is exact.
    cap = comp_len;
  } else if (f.finite_degree()) {
    cap = f.degree() + 1;
  } else {
    // Certified cap: pick rho with circle bound c < 1, then
    // |(phi^k)_hat(s)| <= c^k / rho^s and the dropped terms are bounded by
    // sum_{k > cap} |f_k| c^k / rho^s.
    double rho = 0.9;
    double cbound = phi.circle_bound(rho);
    while (cbound >= 0.95 && rho > 1e-3) {
      rho *= 0.7;
      cbound = phi.circle_bound(rho);
    }
    if (cbound >= 0.95) {
      throw NonConvergent("v_phi_coefficients: no certified interior bound");
    }
    const double target = 1e-14;
    double tail = 0.0;
    const double rs = std::pow(rho, -static_cast<double>(comp_len - 1));
    cap = 8;
    for (; cap <= 65536; cap *= 2) {
      // Decay-certificate bound on sum_{k >= cap} |f_k| c^k.
      const auto& td = f.decay();
      double mass = 0.0;
      if (td.kind == symbols::TailDecay::Kind::geometric) {
        const double qq = td.ratio * cbound;
        mass = qq >= 1.0 ? 1e300
                         : td.scale * std::pow(qq, double(cap)) / (1.0 - qq);
      } else {
        mass = td.scale * std::pow(cbound, double(cap)) /
               (double(cap) * (1.0 - cbound));
      }
      tail = mass * rs;
      if (tail <= target) break;
    }
    if (tail_bound) *tail_bound = tail;
    if (tail > target) {
      throw NonConvergent("v_phi_coefficients: cap exhausted");
    }
  }

  comp = symbols::compose_trunc(f.coeffs(cap), phi.series.coeffs(comp_len),
                                comp_len);

  std::vector<cplx> out(D, cplx{0.0, 0.0});
  for (std::size_t k = 1; k < D; ++k) {
    out[k] = comp[k - 1] / static_cast<double>(k);
  }
  return PowerSeries::from_coeffs(std::move(out),
                                  "V_" + phi.tag + "(" + f.name() + ")");
}

}  // namespace fhlab::analysis
