#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "fhlab/types.hpp"

namespace fhlab::analysis {

// Deterministic quadrature plan shared by the analysis operations.
struct QuadratureSpec {
  enum class Scheme { polar_tensor, adaptive_simpson };
  Scheme scheme = Scheme::polar_tensor;
  std::size_t radial_nodes = 256;
  std::size_t angular_nodes = 128;
  double tolerance = 1e-10;
};

// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(
    std::size_t n);

// Recursive Simpson with Richardson acceptance; throws QuadratureFailure
// when `max_depth` bisections cannot meet the tolerance (absolute).
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 40);

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Rule for int_0^1 g(r) dr with g allowed a logarithmic singularity at 0:
// composite 4-point Gauss panels, the panel touching 0 subdivided
// dyadically through 14 halvings. Roughly `target_nodes` nodes; the
// smallest node falls below 2^-14 of a panel width.
Rule1D radial_rule(std::size_t target_nodes);

// Rule for int_{1-L}^{1-L 2^-panels} g(r) dr with panels accumulating
// geometrically at 1; used where the integrand peaks at the boundary.
Rule1D boundary_rule(double L, std::size_t panels, std::size_t per_panel);

// Integral over the unit disc against normalized area measure
// dm = r dr dtheta / pi: midpoint angular rule (exact for trigonometric
// polynomials below the node count) tensored with radial_rule.
cplx disc_integral(const std::function<cplx(cplx)>& F,
                   const QuadratureSpec& q);

// Mean of F over the disc D(center, R) against dm / m(D): midpoint polar
// rule at base x base, refined to 2*base when the two levels disagree by
// more than 1%.
double disc_mean(const std::function<double(cplx)>& F, cplx center, double R,
                 std::size_t base = 16);

}  // namespace fhlab::analysis
