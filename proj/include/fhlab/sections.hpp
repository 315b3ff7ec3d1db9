#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "fhlab/catalog.hpp"
#include "fhlab/series.hpp"
#include "fhlab/types.hpp"

namespace fhlab::sections {

enum class StructureTag {
  lower_toeplitz,
  upper_toeplitz,
  hankel,
  block_upper_2x2,
  general,
};

// Finite section of an operator on the monomial basis. `truncation` is the
// section size per block, `headroom` the internal summation length used for
// off-diagonal products, and `tail_bound` a bound (heuristic for unbounded
// symbols, exact zero for polynomial data) on the mass dropped past the
// headroom.
struct SectionMatrix {
  Eigen::MatrixXcd entries;
  std::size_t truncation = 0;
  std::size_t headroom = 0;
  StructureTag tag = StructureTag::general;
  double tail_bound = 0.0;
};

// Symbol pair (f, phi) with section size N and optional explicit headroom K.
// K = 0 selects the policy default: exact support for polynomial phi,
// K = 4N otherwise.
struct FoguelHankelSpec {
  symbols::PowerSeries f;
  symbols::SelfMap phi;
  std::size_t truncation = 0;
  std::size_t headroom = 0;
};

// Section of the multiplication operator by phi: entries phi_hat(n - m),
// lower triangular.
SectionMatrix analytic_toeplitz(const symbols::PowerSeries& phi,
                                std::size_t N);
// Section of the adjoint of multiplication by tilde(phi): entries
// phi_hat(m - n), upper triangular.
SectionMatrix coanalytic_toeplitz(const symbols::PowerSeries& phi,
                                  std::size_t N);
// Hankel section with entries f_hat(n + m).
SectionMatrix hankel_section(const symbols::PowerSeries& f, std::size_t N);
// hankel_section of the hilbert symbol: entries 1/(n + m + 1).
SectionMatrix hilbert_matrix(std::size_t N);

// 2N x 2N section of the generalized Foguel-Hankel operator
// [[coanalytic(phi), hankel(f)], [0, analytic(phi)]].
SectionMatrix foguel_hankel(const FoguelHankelSpec& spec);

// 2N x 2N section of the n-th power via the closed form: diagonal blocks
// from phi^n, off-diagonal block n * JH_f * M_{phi^(n-1)} summed over the
// headroom.
SectionMatrix power_closed_form(const FoguelHankelSpec& spec, unsigned n);

// 2N x 2N section of p(Gamma) for a polynomial p: diagonal blocks from
// p(phi), off-diagonal block JH_f * M_{p'(phi)}.
SectionMatrix poly_calculus(const FoguelHankelSpec& spec,
                            const symbols::PowerSeries& p);

// 2N x 2N section of (I - mu Gamma)^(-1): diagonal blocks from
// g = 1/(1 - mu phi), off-diagonal block JH_f * M_{mu g^2}. Refuses mu with
// |mu| * sup|phi| within kEvalMargin of 1.
SectionMatrix resolvent_section(const FoguelHankelSpec& spec, cplx mu);

// First N rows and columns of the semi-infinite product
// [f_hat(a + k)]_{a,k} [psi_hat(k - b)]_{k,b} with the inner index summed
// over k < K. Exact when psi is supported below K - N + 1.
Eigen::MatrixXcd hankel_toeplitz_section(const symbols::PowerSeries& f,
                                         const std::vector<cplx>& psi,
                                         std::size_t N, std::size_t K);

}  // namespace fhlab::sections
