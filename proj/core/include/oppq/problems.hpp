#ifndef OPPQ_PROBLEMS_HPP
#define OPPQ_PROBLEMS_HPP

#include <array>
#include <string>
#include <vector>

#include "oppq/precision.hpp"

namespace oppq {

enum class Family { Harmonic, Sextic, Rational };

// A built-in 1-D potential family together with its missing-moment order.
struct ProblemSpec {
  Family family = Family::Harmonic;
  BigReal a = 0, b = 0;  // sextic V(x) = a x^2 + b x^4 + x^6

  int missing_order() const { return family == Family::Harmonic ? 1 : 5; }
  bool parity_symmetric() const { return true; }

  // "harmonic" | "sextic:a=<v>,b=<v>" | "rational"
  static ProblemSpec parse(const std::string& id);
  std::string id() const;

  // Default energy scan window and step for this family.
  void default_window(BigReal& lo, BigReal& hi) const;
  BigReal default_step() const;
};

enum class WeightKind { GaussianHalf, FreudQuartic, RationalGroundState, MomentsOnly };

// A positive even reference function, known in closed form or (for
// MomentsOnly) purely through its power moments.
struct WeightSpec {
  WeightKind kind = WeightKind::GaussianHalf;
  BigReal b = 0;                          // FreudQuartic: e^{-(x^4 + b x^2)/4}
  std::vector<BigReal> explicit_moments;  // MomentsOnly

  // "gaussian" | "freud4:b=<v>" | "ground-state"
  static WeightSpec parse(const std::string& id);
  std::string id() const;

  // Pointwise R(x); throws for MomentsOnly.
  BigReal evaluate(const BigReal& x) const;
};

// The asymptotically matched weight for a family (Taylor recursions assume it).
WeightSpec matched_weight(const ProblemSpec& problem);
bool is_matched_weight(const ProblemSpec& problem, const WeightSpec& weight);

// Power moments s_p = ∫ x^p R(x) dx, p = 0..p_max. Odd entries are zero.
struct WeightMoments {
  std::vector<BigReal> s;
  int p_max() const { return static_cast<int>(s.size()) - 1; }
};

WeightMoments weight_moments(const WeightSpec& weight, int p_max,
                             const PrecisionContext& ctx);

// Moment transfer table: mu_p = sum_l m[p][l] mu_l with identity rows for
// p <= m_s and the family's linear recursion above.
struct MomentTable {
  BigReal energy;
  int m_s = 0;
  std::vector<std::vector<BigReal>> m;  // m[p][l], p = 0..N, l = 0..m_s
  int order() const { return static_cast<int>(m.size()) - 1; }
};

MomentTable moment_table(const ProblemSpec& problem, const BigReal& energy,
                         int n, const PrecisionContext& ctx);

// Which c_n coefficient to use in the rational Taylor recursion. Alt keeps
// the 2n(3n-5) variant around purely so its failure against the exact
// ground-state series can be demonstrated.
enum class RationalTaylorVariant { Corrected, Alt };

// Frobenius transfer table: c_n = t[n][0] c_0 + t[n][1] c_1 for Psi/R.
struct TaylorTable {
  BigReal energy;
  std::vector<std::array<BigReal, 2>> t;
  int order() const { return static_cast<int>(t.size()) - 1; }
};

TaylorTable taylor_table(const ProblemSpec& problem, const WeightSpec& weight,
                         const BigReal& energy, int n, const PrecisionContext& ctx,
                         RationalTaylorVariant variant = RationalTaylorVariant::Corrected);

// One Frobenius step: c_{k+2} from (c_k, c_{k-2}, c_{k-4}); out-of-range
// trailing coefficients enter as zero.
BigReal taylor_step(const ProblemSpec& problem, const BigReal& energy, int k,
                    const BigReal& ck, const BigReal& ckm2, const BigReal& ckm4,
                    RationalTaylorVariant variant = RationalTaylorVariant::Corrected);

// Exact ground state of the rational problem (energy -3):
// e^{-x^2/2} / (1 + 2x^2/3), with a pole at x = ±i sqrt(3/2).
BigReal rational_ground_state(const BigReal& x);
BigComplex rational_ground_state(const BigComplex& z);
// The same state divided by the gaussian weight: 1 / (1 + 2x^2/3).
BigComplex rational_ground_state_over_weight(const BigComplex& z);

}  // namespace oppq

#endif
