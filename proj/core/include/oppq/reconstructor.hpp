#ifndef OPPQ_RECONSTRUCTOR_HPP
#define OPPQ_RECONSTRUCTOR_HPP

#include <functional>
#include <memory>

#include "oppq/quantizer.hpp"

namespace oppq {

// Everything extracted at a quantized energy: missing moments and local
// seeds from the kernel, the full moment list, and the projection
// coefficients Omega. Normalization: largest kernel component equals 1.
struct ReconstructedState {
  BigReal energy;
  Method method = Method::Oppq;
  int truncation = 0;
  std::vector<BigReal> missing_moments;  // mu_0..mu_{m_s}
  BigReal c0, c1;
  std::vector<BigReal> mu;     // mu_0..mu_N
  std::vector<BigReal> omega;  // Omega_0..Omega_N
  std::shared_ptr<const OrthoBasis> basis;
  WeightSpec weight;
  ProblemSpec problem;
  unsigned decimal_digits = 0;
};

// Refines the root until the quantization matrix is numerically singular,
// then extracts the kernel. For Oppq the local seeds c_0, c_1 are
// back-filled from the reconstruction Taylor map rather than the kernel.
// Hill states carry no kernel and are rejected.
ReconstructedState solve_state(Method method, const ProblemSpec& problem,
                               const WeightSpec& weight,
                               std::shared_ptr<const OrthoBasis> basis,
                               const BigReal& energy_root, int n,
                               const PrecisionContext& ctx);

// Psi_N(x) = sum_n Omega_n P_n(x) R(x) at real points.
std::vector<BigReal> evaluate_wavefunction(const ReconstructedState& state,
                                           const std::vector<BigReal>& points);

// Taylor coefficients of Psi_N / R about the origin,
// d_n = sum_{j>=n} Xi_n^(j) Omega_j, normalized to d_0 = 1 (or d_1 = 1 with
// the odd_normalized flag when d_0 vanishes).
struct TaylorCoefficients {
  std::vector<BigReal> d;
  bool odd_normalized = false;
};
TaylorCoefficients reconstruction_taylor(const ReconstructedState& state, int order);

// Max over p = 0..N of |∫ x^p Psi_N - mu_p| / (1 + |mu_p|), computed
// algebraically from Omega, Xi and the weight moments.
BigReal verify_moment_match(const ReconstructedState& state);
// Same residual at a single p (p = N+1 is allowed and generically large).
BigReal moment_match_residual_at(const ReconstructedState& state, int p);

// Optimal scalar kappa minimizing sum (kappa * v_i - ref_i)^2; states are
// defined up to normalization.
BigReal align_scale(const std::vector<BigReal>& values,
                    const std::vector<BigReal>& reference);

enum class PointStatus { Converged, Diverging, Singular };

struct ExactReference {
  std::function<BigComplex(const BigComplex&)> value;
  std::vector<BigComplex> poles;
};

// Per-point, per-order classification of the partial sums
// S_M(z) = sum_{n<=M} Omega_n P_n(z) (normalized to d_0 = 1), using the
// fixed rule: converged when |S_M - S_{M-20}| <= 1e-3 (1 + |S_M|);
// diverging when that difference grew >= 10x over each of the last two
// order steps; singular within 1e-6 of a known pole.
struct ConvergenceMap {
  std::vector<BigComplex> points;
  std::vector<int> orders;
  std::vector<std::vector<PointStatus>> status;  // [point][order index]
  std::vector<std::vector<BigReal>> abs_error;   // [point][order index]; -1 without reference
};

ConvergenceMap convergence_map(const ReconstructedState& state,
                               const std::vector<BigComplex>& grid,
                               const std::vector<int>& orders,
                               const ExactReference* exact = nullptr);

// Exact reference for the rational problem: 1/(1 + 2z^2/3) with poles at
// ±i sqrt(3/2).
ExactReference rational_exact_reference();

// Partial sum, at the given order, of the Taylor expansion of
// 1/(1 + 2z^2/3) about the real center x0 (the disk-of-convergence foil to
// the weighted polynomial expansion).
BigComplex rational_taylor_about(const BigReal& x0, const BigComplex& z, int order);

}  // namespace oppq

#endif
