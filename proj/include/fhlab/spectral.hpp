#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "fhlab/report.hpp"
#include "fhlab/sections.hpp"
#include "fhlab/types.hpp"

namespace fhlab::spectral {

// Matrix-free operator for the norm engine.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Eigen::Index rows() const = 0;
  virtual Eigen::Index cols() const = 0;
  // Y = A X, X has cols() rows; Y must be resized by the callee.
  virtual void apply(const Eigen::MatrixXcd& X, Eigen::MatrixXcd& Y) const = 0;
  // Y = A^* X.
  virtual void apply_adjoint(const Eigen::MatrixXcd& X,
                             Eigen::MatrixXcd& Y) const = 0;
};

// Largest singular value by deterministic subspace iteration on A^* A
// (block size 8, first basis vector all-ones). Relative tolerance on the
// singular value; iteration cap 1e5, exceeded -> NoConvergence.
double spectral_norm(const LinearOperator& op, double tol = 1e-10);
double spectral_norm(const Eigen::MatrixXcd& A, double tol = 1e-10);
double spectral_norm(const sections::SectionMatrix& A, double tol = 1e-10);

struct PowerEntry {
  unsigned n = 0;
  double norm = 0.0;
  // Norm of the off-diagonal block alone, the term that decides growth.
  double dominant = 0.0;
  double tail_bound = 0.0;
};

struct PowerNormSequence {
  std::vector<PowerEntry> entries;
  std::string f_name;
  std::string phi_name;
  std::size_t truncation = 0;
};

// ||Gamma^n|| for the listed powers (strictly increasing), via the closed
// form. Block-structured matvecs keep the cost at one dense N x N block.
PowerNormSequence power_norm_sequence(const sections::FoguelHankelSpec& spec,
                                      const std::vector<unsigned>& powers,
                                      double tol = 1e-6);

// ||(lambda - Gamma)^(-1)|| at section size spec.truncation, assembled
// blockwise from resolvent_section (|lambda| > 1 required in practice; the
// section refuses lambda too close to the unit circle).
double resolvent_norm(const sections::FoguelHankelSpec& spec, cplx lambda,
                      double tol = 1e-6);
// Cross-check path: invert (lambda - Gamma_K) at headroom size and compress.
double resolvent_norm_dense(const sections::FoguelHankelSpec& spec,
                            cplx lambda, double tol = 1e-6);

struct KreissSchedule {
  std::vector<double> shells;  // |lambda| levels, strictly decreasing
  std::size_t angles = 256;
  std::size_t refine_depth = 6;
  double norm_tol = 1e-4;
};

// Default shells 1 + 2^-k, k = 1..12.
KreissSchedule default_kreiss_schedule();

// Scan of (|lambda| - 1) ||(lambda - Gamma)^(-1)|| over shells x angles with
// local bisection refinement around the best node. Ties break toward the
// lowest angle index. The trace lists every probed node in visit order.
ScanReport kreiss_scan(const sections::FoguelHankelSpec& spec,
                       const KreissSchedule& sched);

// (1 - |mu|^2)^2 |g'''(mu)| / 6 with g(z) = z^3 f(z); grows like
// 1/(1 - |mu|) exactly when the Kreiss condition fails for the symbol f.
double kreiss_lower_witness(const symbols::PowerSeries& f, cplx mu);

// (1 - |mu|)^3 delta^(-1) integral_{1-delta}^{1} |1 - conj(mu) phi(rho)|^(-4)
// drho, by adaptive Simpson with an initial split at the integrand maximum.
// The tolerance is relative to the integral's scale.
double hilbert_kreiss_witness(const symbols::SelfMap& phi, cplx mu,
                              double delta, double rel_tol = 1e-9);

struct PseudospectrumGrid {
  std::vector<double> re;
  std::vector<double> im;
  // norms(i, j) = ||(re[j] + i im[i] - A)^(-1)||; infinity marks a node where
  // the shifted section was singular to working precision.
  Eigen::MatrixXd norms;
};

PseudospectrumGrid pseudospectrum_grid(const sections::SectionMatrix& A,
                                       double re0, double re1, double im0,
                                       double im1, std::size_t nx,
                                       std::size_t ny, double tol = 1e-6);

}  // namespace fhlab::spectral
