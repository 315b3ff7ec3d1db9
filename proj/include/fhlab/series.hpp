#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fhlab/types.hpp"

namespace fhlab::symbols {

// Certified bound on the coefficient tail of a power series. The bound is
// what makes point evaluation near the boundary honest: it tells eval() how
// many terms are needed and when to refuse.
struct TailDecay {
  enum class Kind {
    finite,     // c_k = 0 for k > degree
    geometric,  // |c_k| <= scale * ratio^k
    harmonic,   // |c_k| <= scale / max(k, 1)
  };
  Kind kind = Kind::finite;
  double ratio = 0.0;
  double scale = 1.0;
};

// Formal power series sum c_k z^k with either an explicit coefficient list
// or a coefficient rule plus a decay certificate.
class PowerSeries {
 public:
  using Rule = std::function<cplx(std::size_t)>;

  PowerSeries() = default;

  static PowerSeries from_coeffs(std::vector<cplx> c, std::string name);
  static PowerSeries from_rule(Rule rule, TailDecay decay, std::string name);

  cplx coeff(std::size_t k) const;
  // First `count` coefficients, zero padded past the degree.
  std::vector<cplx> coeffs(std::size_t count) const;

  // Conjugate the coefficients: tilde(f)(z) = sum conj(c_k) z^k.
  PowerSeries tilde() const;

  bool finite_degree() const { return decay_.kind == TailDecay::Kind::finite; }
  // Largest index with a (possibly) nonzero coefficient; only meaningful for
  // finite series.
  std::size_t degree() const { return degree_; }
  const TailDecay& decay() const { return decay_; }
  const std::string& name() const { return name_; }

 private:
  std::vector<cplx> list_;
  Rule rule_;
  TailDecay decay_;
  std::size_t degree_ = 0;
  std::string name_;
};

// Evaluate the d-th derivative of f at z. Finite series evaluate anywhere by
// Horner's scheme. Unbounded series are summed to the index where the decay
// certificate pushes the remaining tail below `tail_tol`; evaluation is
// refused (NonConvergent) when the certificate cannot do that, i.e. when the
// effective ratio |z| (harmonic) or ratio*|z| (geometric) is within
// kEvalMargin of 1.
cplx eval(const PowerSeries& f, cplx z, int d = 0, double tail_tol = 1e-12);

// Truncated series arithmetic on plain coefficient vectors. All results have
// exactly `len` entries; inputs shorter than `len` are treated as zero padded.
std::vector<cplx> conv_trunc(const std::vector<cplx>& a,
                             const std::vector<cplx>& b, std::size_t len);
std::vector<cplx> pow_trunc(const std::vector<cplx>& a, unsigned n,
                            std::size_t len);
// Reciprocal of a series with a[0] != 0.
std::vector<cplx> inverse_trunc(const std::vector<cplx>& a, std::size_t len);
// p(phi) truncated, p a polynomial given by its coefficient list.
std::vector<cplx> compose_trunc(const std::vector<cplx>& p,
                                const std::vector<cplx>& phi, std::size_t len);
// Coefficient list of the derivative (one entry shorter, never empty).
std::vector<cplx> derivative_coeffs(const std::vector<cplx>& p);

}  // namespace fhlab::symbols
