#pragma once

#include <cstddef>
#include <vector>

#include "fhlab/types.hpp"

namespace fhlab {

// One probed node of a scan and the scalar it produced.
struct ScanSample {
  cplx node;
  double value;
};

// Result of a sup-style scan (radial limsup, Bloch shells, Kreiss shells).
// `estimate` is the max of trace[estimate_window..end); scans that estimate a
// boundary limsup ignore an initial transient window, all others use the full
// trace (estimate_window = 0).
struct ScanReport {
  double estimate = 0.0;
  cplx argmax{0.0, 0.0};
  std::vector<ScanSample> trace;
  std::size_t estimate_window = 0;
  std::size_t truncation_used = 0;
};

}  // namespace fhlab
