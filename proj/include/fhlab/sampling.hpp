#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "fhlab/types.hpp"

namespace fhlab {

// Deterministic sampler on top of mt19937_64. The raw 64-bit stream is
// mapped to doubles by hand so results do not depend on the standard
// library's distribution implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  // Uniform on [0, 1).
  double unit() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform on the disc of radius `radius` (area measure).
  cplx disc(double radius = 1.0) {
    const double r = radius * std::sqrt(unit());
    const double th = 2.0 * std::numbers::pi * unit();
    return std::polar(r, th);
  }

  // Uniform on the square [-1, 1]^2 in the complex plane.
  cplx box() {
    const double re = 2.0 * unit() - 1.0;
    const double im = 2.0 * unit() - 1.0;
    return {re, im};
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace fhlab
