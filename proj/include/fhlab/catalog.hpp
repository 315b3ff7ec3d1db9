#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fhlab/report.hpp"
#include "fhlab/series.hpp"
#include "fhlab/types.hpp"

namespace fhlab::symbols {

// Analytic self-map of the unit disc together with certified bounds used by
// resolvent and composition code paths.
struct SelfMap {
  PowerSeries series;
  // Certified sup of |phi| over the open disc.
  double sup_bound = 1.0;
  // Certified sup of |phi(r)| for r in (0, 1).
  double radial_bound = 1.0;
  // Certified bound for sup over |z| = rho, monotone in rho.
  double circle_bound(double rho) const;
  std::string tag;
  double param = 0.0;
};

// Named symbol lookup. Fixed entries:
//   series:   hilbert, monomial, lens, lacunary_bloch
//   self-maps: identity_map, lens
// Parametric entries: constant:<c>, moebius:<a>, szego:<a> with the
// parameter parsed from the name (0 <= a < 1 for moebius/szego, |c| < 1 for
// constant). Unknown names throw ConfigError.
PowerSeries catalog_series(const std::string& name);
SelfMap catalog_self_map(const std::string& name);

// Names accepted by the two lookups, parametric entries shown with a

// placeholder parameter. Order is fixed.
std::vector<std::string> catalog_names();

// Max of |phi(r)| over the tail half of an increasing radial grid; the trace
// carries the whole grid. Grids must stay within [0, 1).
ScanReport radial_limsup(const SelfMap& phi, const std::vector<double>& grid);

// Coefficients of p(phi) as an explicit series of length `len`, with p a
// finite series (polynomial).
PowerSeries compose_series(const PowerSeries& p, const SelfMap& phi,
                           std::size_t len);

}  // namespace fhlab::symbols
