#include "fhlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "fhlab/quadrature.hpp"

namespace fhlab::spectral {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr std::size_t kIterCap = 100'000;

class DenseOp final : public LinearOperator {
 public:
  explicit DenseOp(const MatrixXcd& A) : A_(A) {}
  Index rows() const override { return A_.rows(); }
  Index cols() const override { return A_.cols(); }
  void apply(const MatrixXcd& X, MatrixXcd& Y) const override {
    Y.noalias() = A_ * X;
  }
  void apply_adjoint(const MatrixXcd& X, MatrixXcd& Y) const override {
    Y.noalias() = A_.adjoint() * X;
  }

 private:
  const MatrixXcd& A_;
};

// Sparse coefficient list of a Toeplitz symbol.
struct SparseCoeffs {
  std::vector<std::pair<std::size_t, cplx>> terms;
};

std::optional<SparseCoeffs> sparsify(const std::vector<cplx>& c,
                                     std::size_t limit) {
  SparseCoeffs s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != cplx{0.0, 0.0}) {
      if (s.terms.size() == limit) return std::nullopt;
      s.terms.emplace_back(k, c[k]);
    }
  }
  return s;
}

// Section of [[coanalytic(c), B], [0, analytic(c)]] with the Toeplitz
// blocks applied as shift convolutions when the symbol is sparse, dense
// triangular matrices otherwise.
class BlockTriangularOp final : public LinearOperator {
 public:
  BlockTriangularOp(std::vector<cplx> c, MatrixXcd B)
      : c_(std::move(c)), B_(std::move(B)), N_(B_.rows()) {
    sparse_ = sparsify(c_, static_cast<std::size_t>(N_) / 4);
    if (!sparse_) {
      U_ = MatrixXcd::Zero(N_, N_);
      for (Index n = 0; n < N_; ++n) {
        for (Index m = n; m < N_; ++m) U_(n, m) = c_[m - n];
      }
    }
  }

  Index rows() const override { return 2 * N_; }
  Index cols() const override { return 2 * N_; }

  void apply(const MatrixXcd& X, MatrixXcd& Y) const override {
    Y.resize(2 * N_, X.cols());
    // Top: U x_top + B x_bot, bottom: L x_bot with L = U^T pattern.
    if (sparse_) {
      Y.topRows(N_).setZero();
      Y.bottomRows(N_).setZero();
      for (const auto& [s, v] : sparse_->terms) {
        const Index sh = static_cast<Index>(s);
        if (sh >= N_) continue;
        Y.topRows(N_).topRows(N_ - sh) +=
            v * X.topRows(N_).bottomRows(N_ - sh);
        Y.bottomRows(N_).bottomRows(N_ - sh) +=
            v * X.bottomRows(N_).topRows(N_ - sh);
      }
    } else {
      Y.topRows(N_).noalias() = U_ * X.topRows(N_);
      Y.bottomRows(N_).noalias() = U_.transpose() * X.bottomRows(N_);
    }
    Y.topRows(N_).noalias() += B_ * X.bottomRows(N_);
  }

  void apply_adjoint(const MatrixXcd& X, MatrixXcd& Y) const override {
    Y.resize(2 * N_, X.cols());
    if (sparse_) {
      Y.topRows(N_).setZero();
      Y.bottomRows(N_).setZero();
      for (const auto& [s, v] : sparse_->terms) {
        const Index sh = static_cast<Index>(s);
        if (sh >= N_) continue;
        const cplx vc = std::conj(v);
        Y.topRows(N_).bottomRows(N_ - sh) +=
            vc * X.topRows(N_).topRows(N_ - sh);
        Y.bottomRows(N_).topRows(N_ - sh) +=
            vc * X.bottomRows(N_).bottomRows(N_ - sh);
      }
    } else {
      Y.topRows(N_).noalias() = U_.adjoint() * X.topRows(N_);
      Y.bottomRows(N_).noalias() = U_.conjugate() * X.bottomRows(N_);
    }
    Y.bottomRows(N_).noalias() += B_.adjoint() * X.topRows(N_);
  }

 private:
  std::vector<cplx> c_;
  MatrixXcd B_;
  Index N_;
  std::optional<SparseCoeffs> sparse_;
  MatrixXcd U_;
};

bool lu_singular(const Eigen::PartialPivLU<MatrixXcd>& lu) {
  const auto d = lu.matrixLU().diagonal();
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (Index i = 0; i < d.size(); ++i) {
    dmin = std::min(dmin, std::abs(d(i)));
    dmax = std::max(dmax, std::abs(d(i)));
  }
  return !(dmin > dmax * 1e-300);
}

// Plain inverse through an LU factorization.
class InverseOp final : public LinearOperator {
 public:
  explicit InverseOp(const MatrixXcd& M) : lu_(M), n_(M.rows()) {}
  Index rows() const override { return n_; }
  Index cols() const override { return n_; }
  void apply(const MatrixXcd& X, MatrixXcd& Y) const override {
    Y = lu_.solve(X);
  }
  void apply_adjoint(const MatrixXcd& X, MatrixXcd& Y) const override {
    Y = lu_.adjoint().solve(X);
  }
  bool singular() const { return lu_singular(lu_); }

 private:
  Eigen::PartialPivLU<MatrixXcd> lu_;
  Index n_;
};

// Compression of (lambda - Gamma_K)^(-1) back to section size N.
class CompressedInverseOp final : public LinearOperator {
 public:
  CompressedInverseOp(const MatrixXcd& M, Index N, Index K)
      : lu_(M), N_(N), K_(K) {}

  Index rows() const override { return 2 * N_; }
  Index cols() const override { return 2 * N_; }

  void apply(const MatrixXcd& X, MatrixXcd& Y) const override {
    MatrixXcd Z = MatrixXcd::Zero(2 * K_, X.cols());
    Z.topRows(N_) = X.topRows(N_);
    Z.middleRows(K_, N_) = X.bottomRows(N_);
    const MatrixXcd S = lu_.solve(Z);
    Y.resize(2 * N_, X.cols());
    Y.topRows(N_) = S.topRows(N_);
    Y.bottomRows(N_) = S.middleRows(K_, N_);
  }

  void apply_adjoint(const MatrixXcd& X, MatrixXcd& Y) const override {
    MatrixXcd Z = MatrixXcd::Zero(2 * K_, X.cols());
    Z.topRows(N_) = X.topRows(N_);
    Z.middleRows(K_, N_) = X.bottomRows(N_);
    const MatrixXcd S = lu_.adjoint().solve(Z);
    Y.resize(2 * N_, X.cols());
    Y.topRows(N_) = S.topRows(N_);
    Y.bottomRows(N_) = S.middleRows(K_, N_);
  }

  bool singular() const { return lu_singular(lu_); }

 private:
  Eigen::PartialPivLU<MatrixXcd> lu_;
  Index N_;
  Index K_;
};

double spectral_norm_block(const LinearOperator& op, double tol, Index p);

double spectral_norm_block(const LinearOperator& op, double tol, Index p) {
  const Index n = op.cols();
  if (n == 0 || op.rows() == 0) return 0.0;
  if (!(tol > 0.0)) throw ConfigError("spectral_norm: tolerance <= 0");
  p = std::min(p, n);

  MatrixXcd V(n, p);
  V.col(0).setConstant(cplx{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
  for (Index j = 1; j < p; ++j) {
    for (Index i = 0; i < n; ++i) {
      V(i, j) = cplx{std::cos(std::numbers::pi * static_cast<double>(j) *
                              (static_cast<double>(i) + 0.5) /
                              static_cast<double>(n)),
                     0.0};
    }
    V.col(j).normalize();
  }
  {
    Eigen::HouseholderQR<MatrixXcd> qr(V);
    V = qr.householderQ() * MatrixXcd::Identity(n, p);
  }

  MatrixXcd W, S;
  for (std::size_t iter = 0; iter < kIterCap; ++iter) {
    op.apply(V, W);
    const MatrixXcd G = W.adjoint() * W;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(G);
    const double rho = es.eigenvalues()(p - 1);
    if (!(rho > 1e-300)) return 0.0;
    const VectorXcd u = es.eigenvectors().col(p - 1);

    op.apply_adjoint(W, S);
    const VectorXcd resid = S * u - rho * (V * u);
    if (resid.norm() <= 2.0 * tol * rho) return std::sqrt(rho);

    Eigen::HouseholderQR<MatrixXcd> qr(S);
    V = qr.householderQ() * MatrixXcd::Identity(n, p);
  }
  throw NoConvergence("spectral_norm: iteration cap hit");
}

sections::SectionMatrix build_resolvent(const sections::FoguelHankelSpec& spec,
                                        cplx lambda) {
  const cplx mu = cplx{1.0, 0.0} / lambda;
  return sections::resolvent_section(spec, mu);
}

}  // namespace

double spectral_norm(const LinearOperator& op, double tol) {
  return spectral_norm_block(op, tol, 8);
}

double spectral_norm(const MatrixXcd& A, double tol) {
  return spectral_norm_block(DenseOp(A), tol, 8);
}

double spectral_norm(const sections::SectionMatrix& A, double tol) {
  return spectral_norm_block(DenseOp(A.entries), tol, 8);
}

PowerNormSequence power_norm_sequence(const sections::FoguelHankelSpec& spec,
                                      const std::vector<unsigned>& powers,
                                      double tol) {
  if (powers.empty()) {
    throw ConfigError("power_norm_sequence: empty power list");
  }
  for (std::size_t i = 1; i < powers.size(); ++i) {
    if (powers[i] <= powers[i - 1]) {
      throw ConfigError("power_norm_sequence: powers must increase");
    }
  }
  const std::size_t N = spec.truncation;
  if (N == 0) throw ConfigError("power_norm_sequence: truncation 0");

  PowerNormSequence out;
  out.f_name = spec.f.name();
  out.phi_name = spec.phi.series.name();
  out.truncation = N;
  out.entries.reserve(powers.size());

  for (unsigned n : powers) {
    sections::SectionMatrix sec = sections::power_closed_form(spec, n);
    // Pull the pieces back out of the assembled section; the block op
    // recomputes nothing and keeps the per-iteration cost at one N x N gemm.
    std::vector<cplx> diag(N);
    for (std::size_t k = 0; k < N; ++k) diag[k] = sec.entries(0, k);
    MatrixXcd B = sec.entries.topRightCorner(N, N);

    PowerEntry e;
    e.n = n;
    e.dominant = spectral_norm_block(DenseOp(B), tol, 8);
    e.norm = spectral_norm_block(
        BlockTriangularOp(std::move(diag), std::move(B)), tol, 8);
    e.tail_bound = sec.tail_bound;
    out.entries.push_back(e);
  }
  return out;
}

double resolvent_norm(const sections::FoguelHankelSpec& spec, cplx lambda,
                      double tol) {
  const sections::SectionMatrix R = build_resolvent(spec, lambda);
  const std::size_t N = spec.truncation;
  std::vector<cplx> diag(N);
  for (std::size_t k = 0; k < N; ++k) diag[k] = R.entries(0, k);
  MatrixXcd B = R.entries.topRightCorner(N, N);
  const double nrm = spectral_norm_block(
      BlockTriangularOp(std::move(diag), std::move(B)), tol, 4);
  // (lambda - Gamma)^(-1) = mu (1 - mu Gamma)^(-1).
  return nrm / std::abs(lambda);
}

double resolvent_norm_dense(const sections::FoguelHankelSpec& spec,
                            cplx lambda, double tol) {
  const std::size_t N = spec.truncation;
  if (N == 0) throw ConfigError("resolvent_norm_dense: truncation 0");
  const std::size_t K = spec.headroom ? spec.headroom : 4 * N;
  if (K < N) throw HeadroomInsufficient("resolvent_norm_dense: K < N");

  sections::FoguelHankelSpec big = spec;
  big.truncation = K;
  big.headroom = K;
  const sections::SectionMatrix G = sections::foguel_hankel(big);
  MatrixXcd M = -G.entries;
  M.diagonal().array() += lambda;

  CompressedInverseOp op(M, static_cast<Index>(N), static_cast<Index>(K));
  if (op.singular()) {
    throw NonConvergent("resolvent_norm_dense: singular shift");
  }
  return spectral_norm_block(op, tol, 4);
}

KreissSchedule default_kreiss_schedule() {
  KreissSchedule s;
  for (int k = 1; k <= 12; ++k) s.shells.push_back(1.0 + std::ldexp(1.0, -k));
  return s;
}

ScanReport kreiss_scan(const sections::FoguelHankelSpec& spec,
                       const KreissSchedule& sched) {
  if (sched.shells.empty() || sched.angles == 0) {
    throw ConfigError("kreiss_scan: empty schedule");
  }
  const double floor_rho = 1.0 + std::ldexp(1.0, -19);
  for (std::size_t i = 0; i < sched.shells.size(); ++i) {
    if (sched.shells[i] <= 1.0 ||
        (i > 0 && sched.shells[i] >= sched.shells[i - 1])) {
      throw ConfigError("kreiss_scan: shells must decrease toward 1");
    }
  }

  ScanReport rep;
  rep.truncation_used = spec.truncation;
  auto probe = [&](double rho, double theta) {
    rho = std::max(rho, floor_rho);
    const cplx lambda = std::polar(rho, theta);
    const double val =
        (rho - 1.0) * resolvent_norm(spec, lambda, sched.norm_tol);
    rep.trace.push_back({lambda, val});
    return val;
  };

  double best_val = -1.0;
  double best_rho = sched.shells[0];
  double best_theta = 0.0;
  std::size_t best_shell = 0;

  for (std::size_t si = 0; si < sched.shells.size(); ++si) {
    for (std::size_t j = 0; j < sched.angles; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(sched.angles);
      const double v = probe(sched.shells[si], theta);
      // Strictly-greater keeps the lowest angle index on ties.
      if (v > best_val) {
        best_val = v;
        best_rho = sched.shells[si];
        best_theta = theta;
        best_shell = si;
      }
    }
  }

  // Local bisection around the winner, in shell radius and in angle.
  const double up_gap = best_shell == 0
                            ? sched.shells[0] - 1.0
                            : sched.shells[best_shell - 1] - best_rho;
  const double down_gap = best_shell + 1 < sched.shells.size()
                              ? best_rho - sched.shells[best_shell + 1]
                              : best_rho - 1.0;
  double dr = 0.5 * std::min(up_gap, down_gap);
  double dth = std::numbers::pi / static_cast<double>(sched.angles);
  for (std::size_t level = 0; level < sched.refine_depth; ++level) {
    const double cand[4][2] = {{best_rho - dr, best_theta},
                               {best_rho + dr, best_theta},
                               {best_rho, best_theta - dth},
                               {best_rho, best_theta + dth}};
    for (const auto& c : cand) {
      if (c[0] <= floor_rho) continue;
      const double v = probe(c[0], c[1]);
      if (v > best_val) {
        best_val = v;
        best_rho = c[0];
        best_theta = c[1];
      }
    }
    dr *= 0.5;
    dth *= 0.5;
  }

  rep.estimate = -1.0;
  for (const auto& s : rep.trace) {
    if (s.value > rep.estimate) {
      rep.estimate = s.value;
      rep.argmax = s.node;
    }
  }
  return rep;
}

double kreiss_lower_witness(const symbols::PowerSeries& f, cplx mu) {
  const double r = std::abs(mu);
  if (!(r < 1.0)) {
    throw ConfigError("kreiss_lower_witness: |mu| must be below 1");
  }
  // g(z) = z^3 f(z); g''' = 6 f + 18 z f' + 9 z^2 f'' + z^3 f'''.
  const cplx f0 = symbols::eval(f, mu, 0);
  const cplx f1 = symbols::eval(f, mu, 1);
  const cplx f2 = symbols::eval(f, mu, 2);
  const cplx f3 = symbols::eval(f, mu, 3);
  const cplx g3 = 6.0 * f0 + 18.0 * mu * f1 + 9.0 * mu * mu * f2 +
                  mu * mu * mu * f3;
  const double w = 1.0 - r * r;
  return w * w * std::abs(g3) / 6.0;
}

double hilbert_kreiss_witness(const symbols::SelfMap& phi, cplx mu,
                              double delta, double rel_tol) {
  const double r = std::abs(mu);
  if (!(r < 1.0)) {
    throw ConfigError("hilbert_kreiss_witness: |mu| must be below 1");
  }
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw ConfigError("hilbert_kreiss_witness: delta outside (0, 1]");
  }
  const cplx muc = std::conj(mu);
  auto h = [&](double rho) {
    const cplx den = cplx{1.0, 0.0} - muc * symbols::eval(phi.series,
                                                          {rho, 0.0});
    const double m = std::abs(den);
    return 1.0 / (m * m * m * m);
  };

  const double a = 1.0 - delta;
  // Coarse probe locates the peak; the initial split there keeps the
  // adaptive rule from wasting depth on one lopsided interval.
  double peak_x = a;
  double peak_v = -1.0;
  for (int i = 0; i <= 128; ++i) {
    const double x = a + delta * static_cast<double>(i) / 128.0;
    const double v = h(x);
    if (v > peak_v) {
      peak_v = v;
      peak_x = x;
    }
  }
  const double tol_abs = std::max(rel_tol * peak_v * delta, 1e-300);
  double integral = 0.0;
  if (peak_x > a + 1e-14 * delta && peak_x < 1.0 - 1e-14 * delta) {
    integral = analysis::adaptive_simpson(h, a, peak_x, 0.5 * tol_abs) +
               analysis::adaptive_simpson(h, peak_x, 1.0, 0.5 * tol_abs);
  } else {
    integral = analysis::adaptive_simpson(h, a, 1.0, tol_abs);
  }
  const double w = 1.0 - r;
  return w * w * w / delta * integral;
}

PseudospectrumGrid pseudospectrum_grid(const sections::SectionMatrix& A,
                                       double re0, double re1, double im0,
                                       double im1, std::size_t nx,
                                       std::size_t ny, double tol) {
  if (nx < 2 || ny < 2) throw ConfigError("pseudospectrum_grid: need >= 2x2");
  if (!(re1 > re0 && im1 > im0)) {
    throw ConfigError("pseudospectrum_grid: empty box");
  }
  PseudospectrumGrid g;
  g.re.resize(nx);
  g.im.resize(ny);
  for (std::size_t j = 0; j < nx; ++j) {
    g.re[j] = re0 + (re1 - re0) * static_cast<double>(j) /
                        static_cast<double>(nx - 1);
  }
  for (std::size_t i = 0; i < ny; ++i) {
    g.im[i] = im0 + (im1 - im0) * static_cast<double>(i) /
                        static_cast<double>(ny - 1);
  }
  g.norms.resize(ny, nx);
  for (std::size_t i = 0; i < ny; ++i) {
    for (std::size_t j = 0; j < nx; ++j) {
      MatrixXcd M = -A.entries;
      M.diagonal().array() += cplx{g.re[j], g.im[i]};
      InverseOp op(M);
      if (op.singular()) {
        g.norms(i, j) = std::numeric_limits<double>::infinity();
        continue;
      }
      g.norms(i, j) = spectral_norm_block(op, tol, 4);
    }
  }
  return g;
}

}  // namespace fhlab::spectral
