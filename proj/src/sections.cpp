#include "fhlab/sections.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace fhlab::sections {

namespace {

using symbols::PowerSeries;
using symbols::TailDecay;

void check_truncation(std::size_t N) {
  if (N == 0) throw ConfigError("sections: truncation must be positive");
}

// Heuristic bound on the coefficient mass of f past index K.
double tail_mass(const PowerSeries& f, std::size_t K) {
  const TailDecay& td = f.decay();
  switch (td.kind) {
    case TailDecay::Kind::finite:
      return f.degree() < K ? 0.0 : 1.0;
    case TailDecay::Kind::harmonic:
      return td.scale * td.scale / static_cast<double>(std::max<std::size_t>(
                                       K, 2) - 1);
    case TailDecay::Kind::geometric: {
      if (td.ratio >= 1.0) return 1.0;
      const double q2 = td.ratio * td.ratio;
      return td.scale * td.scale * std::pow(q2, static_cast<double>(K)) /
             (1.0 - q2);
    }
  }
  return 1.0;
}

// Degree of phi^n when phi is a polynomial, or no value.
std::optional<std::size_t> poly_power_degree(const symbols::SelfMap& phi,
                                             unsigned n) {
  if (!phi.series.finite_degree()) return std::nullopt;
  return phi.series.degree() * static_cast<std::size_t>(n);
}

std::size_t effective_headroom(const FoguelHankelSpec& spec,
                               std::optional<std::size_t> psi_degree) {
  const std::size_t N = spec.truncation;
  if (spec.headroom != 0) {
    if (spec.headroom < N) {
      throw HeadroomInsufficient("sections: headroom " +
                                 std::to_string(spec.headroom) +
                                 " below truncation " + std::to_string(N));
    }
    return spec.headroom;
  }
  if (psi_degree) return std::max(2 * N, N + *psi_degree);
  return 4 * N;
}

Eigen::MatrixXcd toeplitz_lower(const std::vector<cplx>& c, std::size_t N) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t m = 0; m <= n; ++m) M(n, m) = c[n - m];
  }
  return M;
}

Eigen::MatrixXcd toeplitz_upper(const std::vector<cplx>& c, std::size_t N) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t m = n; m < N; ++m) M(n, m) = c[m - n];
  }
  return M;
}

// Assembles the 2N x 2N block matrix [[A, B], [0, C]].
SectionMatrix assemble(Eigen::MatrixXcd A, Eigen::MatrixXcd B,
                       Eigen::MatrixXcd C, std::size_t N, std::size_t K,
                       double tail) {
  SectionMatrix out;
  out.entries = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
  out.entries.topLeftCorner(N, N) = A;
  out.entries.topRightCorner(N, N) = B;
  out.entries.bottomRightCorner(N, N) = C;
  out.truncation = N;
  out.headroom = K;
  out.tag = StructureTag::block_upper_2x2;
  out.tail_bound = tail;
  return out;
}

}  // namespace

SectionMatrix analytic_toeplitz(const PowerSeries& phi, std::size_t N) {
  check_truncation(N);
  SectionMatrix out;
  out.entries = toeplitz_lower(phi.coeffs(N), N);
  out.truncation = N;
  out.headroom = N;
  out.tag = StructureTag::lower_toeplitz;
  return out;
}

SectionMatrix coanalytic_toeplitz(const PowerSeries& phi, std::size_t N) {
  check_truncation(N);
  SectionMatrix out;
  out.entries = toeplitz_upper(phi.coeffs(N), N);
  out.truncation = N;
  out.headroom = N;
  out.tag = StructureTag::upper_toeplitz;
  return out;
}

SectionMatrix hankel_section(const PowerSeries& f, std::size_t N) {
  check_truncation(N);
  SectionMatrix out;
  const auto c = f.coeffs(2 * N - 1);
  out.entries.resize(N, N);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t m = 0; m < N; ++m) out.entries(n, m) = c[n + m];
  }
  out.truncation = N;
  out.headroom = N;
  out.tag = StructureTag::hankel;
  return out;
}

SectionMatrix hilbert_matrix(std::size_t N) {
  return hankel_section(symbols::catalog_series("hilbert"), N);
}

Eigen::MatrixXcd hankel_toeplitz_section(const PowerSeries& f,
                                         const std::vector<cplx>& psi,
                                         std::size_t N, std::size_t K) {
  if (K < N) {
    throw HeadroomInsufficient("hankel_toeplitz_section: K < N");
  }
  const auto fc = f.coeffs(N + K - 1);
  Eigen::MatrixXcd out(N, N);
  // Entry (a, b) = sum_{j=0}^{K-1-b} f_hat(a+b+j) psi_hat(j). Along the
  // antidiagonal a + b = s the sums share a prefix in j; walking j upward
  // and snapshotting at j = K-1-b reproduces the canonical loop's arithmetic
  // order exactly.
  const std::size_t jlim = std::min(psi.size(), K);
  for (std::size_t s = 0; s <= 2 * (N - 1); ++s) {
    const std::size_t b_hi = std::min<std::size_t>(s, N - 1);
    const std::size_t b_lo = s >= N ? s - (N - 1) : 0;
    cplx run{0.0, 0.0};
    const std::size_t j_last = K - 1 - b_lo;
    for (std::size_t j = 0; j <= j_last; ++j) {
      if (j < jlim) run += fc[s + j] * psi[j];
      // j = K-1-b finishes the sum for column b.
      if (j + b_hi >= K - 1 && j + b_lo <= K - 1) {
        const std::size_t b = K - 1 - j;
        out(s - b, b) = run;
      }
    }
  }
  return out;
}

SectionMatrix foguel_hankel(const FoguelHankelSpec& spec) {
  check_truncation(spec.truncation);
  const std::size_t N = spec.truncation;
  const auto c = spec.phi.series.coeffs(N);
  return assemble(toeplitz_upper(c, N), hankel_section(spec.f, N).entries,
                  toeplitz_lower(c, N), N,
                  spec.headroom ? spec.headroom : N, 0.0);
}

SectionMatrix power_closed_form(const FoguelHankelSpec& spec, unsigned n) {
  check_truncation(spec.truncation);
  const std::size_t N = spec.truncation;
  if (n == 0) {
    SectionMatrix out = assemble(Eigen::MatrixXcd::Identity(N, N),
                                 Eigen::MatrixXcd::Zero(N, N),
                                 Eigen::MatrixXcd::Identity(N, N), N, N, 0.0);
    return out;
  }
  const auto deg = poly_power_degree(spec.phi, n);
  const std::size_t K = effective_headroom(spec, deg);

  const auto diag = symbols::pow_trunc(spec.phi.series.coeffs(N), n, N);
  const auto psi = symbols::pow_trunc(spec.phi.series.coeffs(K), n - 1, K);

  Eigen::MatrixXcd B = hankel_toeplitz_section(spec.f, psi, N, K);
  B *= static_cast<double>(n);

  double tail = 0.0;
  const bool exact =
      spec.phi.series.finite_degree() &&
      spec.phi.series.degree() * static_cast<std::size_t>(n - 1) + N <= K;
  if (!exact) tail = static_cast<double>(n) * tail_mass(spec.f, K);

  return assemble(toeplitz_upper(diag, N), std::move(B),
                  toeplitz_lower(diag, N), N, K, tail);
}

SectionMatrix poly_calculus(const FoguelHankelSpec& spec,
                            const PowerSeries& p) {
  check_truncation(spec.truncation);
  if (!p.finite_degree()) {
    throw ConfigError("poly_calculus: p must be a polynomial");
  }
  const std::size_t N = spec.truncation;
  const auto pc = p.coeffs(p.degree() + 1);
  const auto dpc = symbols::derivative_coeffs(pc);

  std::optional<std::size_t> deg;
  if (spec.phi.series.finite_degree()) {
    deg = spec.phi.series.degree() * std::max<std::size_t>(p.degree(), 1);
  }
  const std::size_t K = effective_headroom(spec, deg);

  const auto diag = symbols::compose_trunc(pc, spec.phi.series.coeffs(N), N);
  const auto psi = symbols::compose_trunc(dpc, spec.phi.series.coeffs(K), K);

  Eigen::MatrixXcd B = hankel_toeplitz_section(spec.f, psi, N, K);

  double tail = 0.0;
  const bool exact = spec.phi.series.finite_degree() &&
                     (dpc.size() - 1) * spec.phi.series.degree() + N <= K;
  if (!exact) tail = tail_mass(spec.f, K);

  return assemble(toeplitz_upper(diag, N), std::move(B),
                  toeplitz_lower(diag, N), N, K, tail);
}

SectionMatrix resolvent_section(const FoguelHankelSpec& spec, cplx mu) {
  check_truncation(spec.truncation);
  const std::size_t N = spec.truncation;
  if (std::abs(mu) * spec.phi.sup_bound >= 1.0 - kEvalMargin) {
    throw NonConvergent("resolvent_section: |mu| sup|phi| too close to 1");
  }
  const std::size_t K = effective_headroom(spec, std::nullopt);

  // g = 1/(1 - mu phi); the three blocks are coanalytic(g), analytic(g) and
  // JH_f applied to mu g^2.
  auto den = spec.phi.series.coeffs(K);
  for (auto& c : den) c = -mu * c;
  den[0] += 1.0;
  const auto g = symbols::inverse_trunc(den, K);
  const auto g2 = symbols::conv_trunc(g, g, K);
  std::vector<cplx> psi(K);
  for (std::size_t k = 0; k < K; ++k) psi[k] = mu * g2[k];

  Eigen::MatrixXcd B = hankel_toeplitz_section(spec.f, psi, N, K);

  std::vector<cplx> gN(g.begin(), g.begin() + N);
  const double tail = std::abs(mu) * tail_mass(spec.f, K);

  return assemble(toeplitz_upper(gN, N), std::move(B), toeplitz_lower(gN, N),
                  N, K, tail);
}

}  // namespace fhlab::sections
