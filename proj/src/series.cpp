#include "fhlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace fhlab::symbols {

PowerSeries PowerSeries::from_coeffs(std::vector<cplx> c, std::string name) {
  PowerSeries s;
  s.list_ = std::move(c);
  s.degree_ = s.list_.empty() ? 0 : s.list_.size() - 1;
  s.decay_ = TailDecay{TailDecay::Kind::finite, 0.0, 0.0};
  s.name_ = std::move(name);
  return s;
}

PowerSeries PowerSeries::from_rule(Rule rule, TailDecay decay,
                                   std::string name) {
  PowerSeries s;
  s.rule_ = std::move(rule);
  s.decay_ = decay;
  s.degree_ = std::numeric_limits<std::size_t>::max();
  s.name_ = std::move(name);
  return s;
}

cplx PowerSeries::coeff(std::size_t k) const {
  if (rule_) return rule_(k);
  return k < list_.size() ? list_[k] : cplx{0.0, 0.0};
}

std::vector<cplx> PowerSeries::coeffs(std::size_t count) const {
  std::vector<cplx> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = coeff(k);
  return out;
}

PowerSeries PowerSeries::tilde() const {
  PowerSeries s;
  s.decay_ = decay_;
  s.degree_ = degree_;
  s.name_ = "tilde(" + name_ + ")";
  if (rule_) {
    Rule base = rule_;
    s.rule_ = [base](std::size_t k) { return std::conj(base(k)); };
  } else {
    s.list_ = list_;
    for (auto& c : s.list_) c = std::conj(c);
  }
  return s;
}

namespace {

// Falling-factorial weight k(k-1)...(k-d+1) applied by term-wise derivative.
double falling(std::size_t k, int d) {
  double w = 1.0;
  for (int j = 0; j < d; ++j) w *= static_cast<double>(k - j);
  return w;
}

cplx horner_eval(const std::vector<cplx>& c, cplx z) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

}  // namespace

cplx eval(const PowerSeries& f, cplx z, int d, double tail_tol) {
  if (d < 0) throw ConfigError("eval: derivative order must be nonnegative");
  const double r = std::abs(z);

  if (f.finite_degree()) {
    std::vector<cplx> c = f.coeffs(f.degree() + 1);
    for (int j = 0; j < d; ++j) c = derivative_coeffs(c);
    return horner_eval(c, z);
  }

  const TailDecay& td = f.decay();
  // Effective geometric ratio of the term moduli.
  const double rho =
      td.kind == TailDecay::Kind::geometric ? td.ratio * r : r;
  if (rho >= 1.0 - kEvalMargin) {
    throw NonConvergent("eval: series '" + f.name() +
                        "' has no certified tail at |z|=" + std::to_string(r));
  }
  if (rho == 0.0) {
    // Only the k = d term survives.
    return f.coeff(static_cast<std::size_t>(d)) * falling(d, d);
  }

  // Smallest K with tail bound scale * rho^K * K^d / (1-rho) below tail_tol,
  // found by iterating the log estimate twice to absorb the K^d factor.
  const double scale = std::max(td.scale, 1e-300);
  double target = tail_tol * (1.0 - rho) / scale;
  double K = std::log(std::max(target, 1e-300)) / std::log(rho);
  for (int pass = 0; pass < 2 && d > 0; ++pass) {
    double corr = -static_cast<double>(d) * std::log(std::max(K, 2.0)) /
                  std::log(rho);
    K = std::log(std::max(target, 1e-300)) / std::log(rho) + corr;
  }
  std::size_t terms = static_cast<std::size_t>(std::max(K, 8.0)) + d + 2;
  if (terms > 2'000'000) {
    throw NonConvergent("eval: series '" + f.name() + "' needs " +
                        std::to_string(terms) + " terms at |z|=" +
                        std::to_string(r));
  }

  cplx acc{0.0, 0.0};
  cplx zp{1.0, 0.0};
  for (std::size_t k = static_cast<std::size_t>(d); k <= terms; ++k) {
    acc += f.coeff(k) * falling(k, d) * zp;
    zp *= z;
  }
  return acc;
}

std::vector<cplx> conv_trunc(const std::vector<cplx>& a,
                             const std::vector<cplx>& b, std::size_t len) {
  std::vector<cplx> out(len, cplx{0.0, 0.0});
  const std::size_t na = std::min(a.size(), len);
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == cplx{0.0, 0.0}) continue;
    const std::size_t nb = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < nb; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<cplx> pow_trunc(const std::vector<cplx>& a, unsigned n,
                            std::size_t len) {
  std::vector<cplx> result(len, cplx{0.0, 0.0});
  if (len == 0) return result;
  result[0] = cplx{1.0, 0.0};
  if (n == 0) return result;
  std::vector<cplx> base = a;
  base.resize(len, cplx{0.0, 0.0});
  unsigned e = n;
  while (true) {
    if (e & 1u) result = conv_trunc(result, base, len);
    e >>= 1u;
    if (e == 0) break;
    base = conv_trunc(base, base, len);
  }
  return result;
}

std::vector<cplx> inverse_trunc(const std::vector<cplx>& a, std::size_t len) {
  if (a.empty() || a[0] == cplx{0.0, 0.0}) {
    throw ConfigError("inverse_trunc: constant term vanishes");
  }
  std::vector<cplx> out(len, cplx{0.0, 0.0});
  if (len == 0) return out;
  const cplx inv0 = cplx{1.0, 0.0} / a[0];
  out[0] = inv0;
  for (std::size_t k = 1; k < len; ++k) {
    cplx acc{0.0, 0.0};
    const std::size_t jmax = std::min(k, a.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j) acc += a[j] * out[k - j];
    out[k] = -inv0 * acc;
  }
  return out;
}

std::vector<cplx> compose_trunc(const std::vector<cplx>& p,
                                const std::vector<cplx>& phi,
                                std::size_t len) {
  std::vector<cplx> out(len, cplx{0.0, 0.0});
  if (len == 0) return out;
  // Horner in phi over the truncated ring.
  for (std::size_t i = p.size(); i-- > 0;) {
    out = conv_trunc(out, phi, len);
    out[0] += p[i];
  }
  return out;
}

std::vector<cplx> derivative_coeffs(const std::vector<cplx>& p) {
  if (p.size() <= 1) return {cplx{0.0, 0.0}};
  std::vector<cplx> out(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) {
    out[k - 1] = p[k] * static_cast<double>(k);
  }
  return out;
}

}  // namespace fhlab::symbols
