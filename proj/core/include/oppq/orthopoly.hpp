#ifndef OPPQ_ORTHOPOLY_HPP
#define OPPQ_ORTHOPOLY_HPP

#include <vector>

#include "oppq/problems.hpp"

namespace oppq {

// Orthonormal polynomial family under an even weight, built from the
// weight's power moments. xi[j][i] is the coefficient of x^i in P_j;
// entries with i+j odd are identically zero. The moment profile
// pi[j][r] = <P_j, x^r>_R is kept alongside: it makes projections and
// moment identities O(degree) instead of O(degree^2).
struct OrthoBasis {
  int max_degree = 0;
  std::vector<std::vector<BigReal>> xi;       // xi[j], length j+1
  std::vector<std::vector<BigReal>> profile;  // pi[j], r = 0..max_degree+1
  WeightMoments moments;                      // s_p through 2*max_degree (+2)
  unsigned built_digits = 0;

  BigReal leading(int j) const { return xi[j][j]; }
};

// Modified Gram-Schmidt over monomials in the moment inner product
// <x^i, x^j> = s_{i+j}, with one re-orthogonalization pass. Polynomials are
// normalized to unit weight-norm with positive leading coefficient. Throws
// PrecisionError (naming the degree) if a squared norm goes non-positive.
OrthoBasis build_basis(const WeightMoments& moments, int n,
                       const PrecisionContext& ctx);

// <P_j1 | R | P_j2> straight from the coefficient table and weight moments;
// validation only.
BigReal inner_product(const OrthoBasis& basis, int j1, int j2);

// Horner evaluation of P_j.
BigReal eval_poly(const OrthoBasis& basis, int j, const BigReal& x);
BigComplex eval_poly(const OrthoBasis& basis, int j, const BigComplex& z);

}  // namespace oppq

#endif
