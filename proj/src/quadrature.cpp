#include "fhlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace fhlab::analysis {

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(
    std::size_t n) {
  static std::map<std::size_t, std::pair<std::vector<double>,
                                         std::vector<double>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> x(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double t = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * t * p1 -
                           (static_cast<double>(k) - 1.0) * p0) /
                          static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      // Derivative via the standard identity.
      const double dp = static_cast<double>(n) * (t * p1 - p0) /
                        (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * t * p1 -
                         (static_cast<double>(k) - 1.0) * p0) /
                        static_cast<double>(k);
      p0 = p1;
      p1 = pk;
    }
    const double dp = static_cast<double>(n) * (t * p1 - p0) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return cache.emplace(n, std::make_pair(std::move(x), std::move(w)))
      .first->second;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth, int max_depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth >= max_depth) {
    throw QuadratureFailure("adaptive_simpson: depth cap at [" +
                            std::to_string(a) + ", " + std::to_string(b) +
                            "]");
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1,
                       max_depth) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1,
                       max_depth);
}

void append_gauss_panel(Rule1D& rule, double a, double b,
                        std::size_t per_panel) {
  const auto& [x, w] = gauss_legendre(per_panel);
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  for (std::size_t i = 0; i < per_panel; ++i) {
    rule.nodes.push_back(c + h * x[i]);
    rule.weights.push_back(h * w[i]);
  }
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (!(b > a)) throw ConfigError("adaptive_simpson: empty interval");
  if (!(tol > 0.0)) throw ConfigError("adaptive_simpson: tolerance <= 0");
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 0, max_depth);
}

Rule1D radial_rule(std::size_t target_nodes) {
  if (target_nodes < 8) throw ConfigError("radial_rule: need >= 8 nodes");
  const std::size_t per_panel = 4;
  const std::size_t panels = std::max<std::size_t>(2, target_nodes / 4);
  const double w = 1.0 / static_cast<double>(panels);
  Rule1D rule;
  // Dyadic split of the panel touching 0 absorbs log singularities.
  double lo = w;
  for (int k = 0; k < 14; ++k) {
    append_gauss_panel(rule, 0.5 * lo, lo, per_panel);
    lo *= 0.5;
  }
  append_gauss_panel(rule, 0.0, lo, per_panel);
  for (std::size_t pnl = 1; pnl < panels; ++pnl) {
    append_gauss_panel(rule, w * static_cast<double>(pnl),
                       w * static_cast<double>(pnl + 1), per_panel);
  }
  return rule;
}

Rule1D boundary_rule(double L, std::size_t panels, std::size_t per_panel) {
  if (!(L > 0.0 && L <= 1.0)) throw ConfigError("boundary_rule: bad width");
  Rule1D rule;
  double width = L;
  for (std::size_t k = 0; k < panels; ++k) {
    append_gauss_panel(rule, 1.0 - width, 1.0 - 0.5 * width, per_panel);
    width *= 0.5;
  }
  return rule;
}

cplx disc_integral(const std::function<cplx(cplx)>& F,
                   const QuadratureSpec& q) {
  if (q.radial_nodes < 8 || q.angular_nodes < 8) {
    throw ConfigError("disc_integral: node counts must be >= 8");
  }
  const Rule1D radial = radial_rule(q.radial_nodes);
  const std::size_t nth = q.angular_nodes;
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double r = radial.nodes[i];
    cplx ring{0.0, 0.0};
    for (std::size_t j = 0; j < nth; ++j) {
      const double th = 2.0 * std::numbers::pi *
                        (static_cast<double>(j) + 0.5) /
                        static_cast<double>(nth);
      ring += F(std::polar(r, th));
    }
    acc += ring * (radial.weights[i] * r);
  }
  // dm = r dr dtheta / pi and the angular mean carries 2 pi / nth.
  return acc * (2.0 / static_cast<double>(nth));
}

double disc_mean(const std::function<double(cplx)>& F, cplx center, double R,
                 std::size_t base) {
  auto level = [&](std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double rho = R * (static_cast<double>(i) + 0.5) /
                         static_cast<double>(n);
      double ring = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double th = 2.0 * std::numbers::pi *
                          (static_cast<double>(j) + 0.5) /
                          static_cast<double>(n);
        ring += F(center + std::polar(rho, th));
      }
      acc += ring * rho;
    }
    // Mean over the disc: (2 / (R^2 n)) * sum rho_i ring_i * (R / n).
    return acc * 2.0 * R / (static_cast<double>(n) * static_cast<double>(n) *
                            R * R);
  };
  const double coarse = level(base);
  const double fine = level(2 * base);
  if (std::abs(fine - coarse) > 0.01 * std::max(1e-300, std::abs(fine))) {
    return level(4 * base);
  }
  return fine;
}

}  // namespace fhlab::analysis
