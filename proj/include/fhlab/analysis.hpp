#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>

#include "fhlab/catalog.hpp"
#include "fhlab/quadrature.hpp"
#include "fhlab/report.hpp"
#include "fhlab/series.hpp"
#include "fhlab/types.hpp"

namespace fhlab::analysis {

// Arc on the circle, parametrized by center angle and length in radians.
// The Carleson box over the arc has depth min(length, 1).
struct Arc {
  double center = std::numbers::pi;
  double length = 1.0;
};

// Sup estimate of the Bloch quantity (1 - |z|^2) |f'(z)| over shells of
// radius geometrically approaching r_max; one trace entry per shell holding
// the shell maximum.
ScanReport bloch_norm_estimate(const symbols::PowerSeries& f, double r_max,
                               const QuadratureSpec& q);

// Hardy pairing <f, g> through the area formula
//   f(0) conj(g(0)) + f'(0) conj(g'(0))
//     + 2 int f'' conj(g'') (ln(1/|z|)(1 + |z|^2) - (1 - |z|^2)) dm.
// f and g must be polynomials of degree <= 64; the angular node count must
// exceed twice the degree for the rule to be exact in theta.
cplx hardy_inner_product_quadrature(const symbols::PowerSeries& f,
                                    const symbols::PowerSeries& g,
                                    const QuadratureSpec& q);

// (1/|I|) int_{S(I)} |phi|^n (1 - |phi|)^r dm over the Carleson box S(I).
// The polar_tensor scheme stacks geometric panels against the boundary and
// leaves out the outermost sliver (depth 2^-P of the box, P >= 16 panels);
// the adaptive_simpson scheme covers the full box.
double carleson_box_average(const symbols::SelfMap& phi, unsigned n,
                            unsigned r_exp, const Arc& I,
                            const QuadratureSpec& q);

// sqrt( (1/|I|) int_{S(I)} mu(D(z))^2 (1-|z|)^(-2d-3) dm(z) ) with
// mu given by a density against normalized area measure and D(z) the disc
// of radius (1-|z|)/2 about z. The radial rule accumulates geometrically at
// the boundary and omits the sliver within 2^-32 |I| of it, which keeps the
// quantity finite even for densities that fail the Luecking condition.
double luecking_quantity(const std::function<double(cplx)>& density,
                         unsigned d, const Arc& I, const QuadratureSpec& q);

// Density of the measure |psi|^n (1 - |psi|) dm used as the Luecking test
// measure for the power-boundedness argument (case d = 1).
std::function<double(cplx)> luecking_power_density(const symbols::SelfMap& psi,
                                                   unsigned n);

struct SlackReport {
  // Slack of (1 - |z|^2) <= (1+|phi(0)|)/(1-|phi(0)|) (1 - |phi(z)|^2).
  double worst_i = 0.0;
  cplx arg_i{0.0, 0.0};
  // Slack of (1 - |z|^2)|phi^(d)(z)| <= d! (1 - |phi(z)|^2)(1 + |z|)^(d-1).
  double worst_ii = 0.0;
  cplx arg_ii{0.0, 0.0};
  std::size_t samples = 0;
};

// Checks both self-map inequalities at `samples` points drawn uniformly
// from the disc of radius 1 - kEvalMargin with the given seed.
SlackReport schwarz_pick_check(const symbols::SelfMap& phi, unsigned d,
                               std::size_t samples, std::uint64_t seed);

// | <H u, v> - int_0^1 u(t) conj(v)(t) dt | with H the Hilbert matrix of
// size N, u and v polynomials of degree < N. The integral side runs
// composite Simpson on q.radial_nodes intervals.
double hilbert_pairing_check(const symbols::PowerSeries& u,
                             const symbols::PowerSeries& v, std::size_t N,
                             const QuadratureSpec& q);

struct FejerRieszReport {
  double lhs = 0.0;  // sum_{m,n} v_m conj(v_n) / (m + n + 1)
  double rhs = 0.0;  // pi * sum |v_k|^2
  double slack = 0.0;
};

// Fejer-Riesz step: int_0^1 |v(t)|^2 dt <= pi ||v||^2 for polynomials. The
// left side is accumulated in extended precision.
FejerRieszReport fejer_riesz_check(const symbols::PowerSeries& v);

// Coefficients of V_phi(f)(z) = int_0^z f(phi(t)) dt up to degree D - 1,
// i.e. D coefficients. When phi(0) != 0 the composition truncates f at a
// certified cap; the dropped mass lands in *tail_bound when given.
symbols::PowerSeries v_phi_coefficients(const symbols::PowerSeries& f,
                                        const symbols::SelfMap& phi,
                                        std::size_t D,
                                        double* tail_bound = nullptr);

}  // namespace fhlab::analysis
