#include <memory>

#include "doctest.h"
#include "oppq/reconstructor.hpp"
#include "test_helpers.hpp"

using namespace oppq;
using oppq::testing::tol;

namespace {

std::shared_ptr<const OrthoBasis> make_basis(const WeightSpec& weight, int n,
                                             const PrecisionContext& ctx) {
  return std::make_shared<const OrthoBasis>(
      build_basis(weight_moments(weight, 2 * n, ctx), n, ctx));
}

}  // namespace

TEST_CASE("harmonic ground state reconstructs to the pure weight") {
  PrecisionContext ctx(60);
  auto harmonic = ProblemSpec::parse("harmonic");
  WeightSpec gauss = matched_weight(harmonic);
  auto basis = make_basis(gauss, 16, ctx);

  ReconstructedState state =
      solve_state(Method::Oppq, harmonic, gauss, basis, BigReal(1), 16, ctx);
  CHECK(abs(state.energy - 1) < tol(20));

  // Psi/R is constant: only Omega_0 survives.
  for (int j = 1; j <= 16; ++j)
    CHECK(abs(state.omega[j]) <= abs(state.omega[0]) * tol(25));
  CHECK(abs(state.c1) < tol(25));

  std::vector<BigReal> xs = {BigReal(0), BigReal(1) / 2, BigReal(1), BigReal(2)};
  std::vector<BigReal> psi = evaluate_wavefunction(state, xs);
  std::vector<BigReal> exact;
  for (const auto& x : xs) exact.push_back(exp(-x * x / 2));
  BigReal kappa = align_scale(psi, exact);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(abs(kappa * psi[i] - exact[i]) < tol(25));

  TaylorCoefficients tc = reconstruction_taylor(state, 8);
  CHECK(!tc.odd_normalized);
  CHECK(tc.d[0] == 1);
  for (int k = 1; k <= 8; ++k) CHECK(abs(tc.d[k]) < tol(25));

  CHECK(verify_moment_match(state) < tol(25));
}

TEST_CASE("rational ground state by global-local reconstruction") {
  PrecisionContext ctx(120);
  auto rational = ProblemSpec::parse("rational");
  WeightSpec gauss = WeightSpec::parse("gaussian");
  const int n = 40;
  auto basis = make_basis(gauss, n, ctx);

  auto roots = scan_spectrum(Method::GlobalLocal, rational, gauss, basis.get(), n,
                             BigReal(-32) / 10, BigReal(-28) / 10, BigReal(1) / 50,
                             tol(12), ctx);
  REQUIRE(!roots.empty());
  ReconstructedState state = solve_state(Method::GlobalLocal, rational, gauss,
                                         basis, roots[0].energy, n, ctx);
  CHECK(abs(state.energy + 3) < BigReal(1) / 50);

  // Even state: odd missing moments and the odd local seed vanish.
  CHECK(abs(state.missing_moments[1]) < tol(30));
  CHECK(abs(state.missing_moments[3]) < tol(30));
  CHECK(abs(state.missing_moments[5]) < tol(30));
  CHECK(abs(state.c1) < tol(30));
  CHECK(state.missing_moments[0] > 0);

  // The local seeds agree with the series of the reconstruction itself.
  TaylorCoefficients tc = reconstruction_taylor(state, 6);
  CHECK(abs(state.c1 / state.c0) < tol(30));
  CHECK(abs(tc.d[2] + BigReal(2) / 3) < BigReal(1) / 20);
  CHECK(abs(tc.d[4] - BigReal(4) / 9) < BigReal(1) / 10);

  // Pointwise agreement with the exact ground state after scale alignment.
  std::vector<BigReal> xs;
  for (int i = 0; i <= 8; ++i) xs.push_back(BigReal(i) / 4);
  std::vector<BigReal> psi = evaluate_wavefunction(state, xs);
  std::vector<BigReal> exact;
  for (const auto& x : xs) exact.push_back(rational_ground_state(x));
  BigReal kappa = align_scale(psi, exact);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(abs(kappa * psi[i] - exact[i]) < BigReal(1) / 100);

  CHECK(verify_moment_match(state) < tol(50));
  CHECK_THROWS_AS(moment_match_residual_at(state, n + 2), DimensionError);

  // Projection coefficients die off for the converged state.
  CHECK(abs(state.omega[n]) < abs(state.omega[0]) / 20);

  // At odd truncation the moment one past the order has the state's parity
  // and is genuinely unmatched; everything up to the order still matches.
  auto odd_roots = scan_spectrum(Method::Oppq, rational, gauss, basis.get(), 31,
                                 BigReal(-32) / 10, BigReal(-27) / 10,
                                 BigReal(1) / 100, tol(12), ctx);
  REQUIRE(!odd_roots.empty());
  ReconstructedState odd_state = solve_state(Method::Oppq, rational, gauss, basis,
                                             odd_roots[0].energy, 31, ctx);
  CHECK(verify_moment_match(odd_state) < tol(50));
  CHECK(moment_match_residual_at(odd_state, 32) > tol(6));
}

TEST_CASE("ground-state weight collapses the expansion to one term") {
  PrecisionContext ctx(60);
  auto rational = ProblemSpec::parse("rational");
  WeightSpec gsw = WeightSpec::parse("ground-state");
  const int n = 10;
  auto basis = make_basis(gsw, n, ctx);
  ReconstructedState state =
      solve_state(Method::Oppq, rational, gsw, basis, BigReal(-3), n, ctx);
  CHECK(abs(state.energy + 3) < tol(10));
  for (int j = 1; j <= n; ++j)
    CHECK(abs(state.omega[j]) <= abs(state.omega[0]) * tol(12));
}

TEST_CASE("series and basis evaluation paths agree near the origin") {
  PrecisionContext ctx(120);
  auto rational = ProblemSpec::parse("rational");
  WeightSpec gauss = WeightSpec::parse("gaussian");
  const int n = 30;
  auto basis = make_basis(gauss, n, ctx);
  auto roots = scan_spectrum(Method::Oppq, rational, gauss, basis.get(), n,
                             BigReal(-31) / 10, BigReal(-28) / 10, BigReal(1) / 100,
                             tol(12), ctx);
  REQUIRE(!roots.empty());
  ReconstructedState state = solve_state(Method::Oppq, rational, gauss, basis,
                                         roots[0].energy, n, ctx);

  TaylorCoefficients tc = reconstruction_taylor(state, n);
  BigReal x = BigReal(3) / 10;
  BigReal series(0);
  for (int k = n; k >= 0; --k) series = series * x + tc.d[k];
  series *= gauss.evaluate(x);

  std::vector<BigReal> direct = evaluate_wavefunction(state, {x});
  // Both are the same degree-n polynomial times the weight, up to the d_0
  // normalization of the series.
  BigReal d0(0);
  for (int j = 0; j <= n; j += 2) d0 += basis->xi[j][0] * state.omega[j];
  CHECK(abs(series * d0 - direct[0]) <= tol(60) * (1 + abs(direct[0])));
}

TEST_CASE("align_scale recovers a scalar multiple and rejects bad input") {
  PrecisionContext ctx(50);
  std::vector<BigReal> v = {BigReal(1), BigReal(-2), BigReal(3)};
  std::vector<BigReal> w;
  for (const auto& x : v) w.push_back(x * 7 / 5);
  CHECK(abs(align_scale(v, w) - BigReal(7) / 5) < tol(40));
  CHECK_THROWS_AS(align_scale(v, {BigReal(1)}), DimensionError);
  std::vector<BigReal> zeros(3, BigReal(0));
  CHECK_THROWS_AS(align_scale(zeros, v), Error);
}

TEST_CASE("convergence map classifies interior, exterior, and pole points") {
  PrecisionContext ctx(180);
  auto rational = ProblemSpec::parse("rational");
  WeightSpec gauss = WeightSpec::parse("gaussian");
  const int n = 60;
  auto basis = make_basis(gauss, n, ctx);
  auto roots = scan_spectrum(Method::GlobalLocal, rational, gauss, basis.get(), n,
                             BigReal(-31) / 10, BigReal(-29) / 10, BigReal(1) / 100,
                             tol(12), ctx);
  REQUIRE(!roots.empty());
  ReconstructedState state = solve_state(Method::GlobalLocal, rational, gauss,
                                         basis, roots[0].energy, n, ctx);

  ExactReference ref = rational_exact_reference();
  REQUIRE(ref.poles.size() == 2);
  std::vector<BigComplex> grid = {
      BigComplex(BigReal(1)),                     // real axis: converges
      ref.poles[0],                               // the pole itself
      BigComplex(BigReal(0), BigReal(3) / 2),     // beyond the pole
  };
  std::vector<int> orders = {40, 60};
  ConvergenceMap map = convergence_map(state, grid, orders, &ref);

  CHECK(map.status[0][1] == PointStatus::Converged);
  CHECK(map.abs_error[0][1] < tol(3));
  CHECK(map.status[1][0] == PointStatus::Singular);
  CHECK(map.status[1][1] == PointStatus::Singular);
  CHECK(map.status[2][1] == PointStatus::Diverging);

  // Without a reference there is no error column and no singular class.
  ConvergenceMap blind = convergence_map(state, grid, orders, nullptr);
  CHECK(blind.abs_error[0][0] == -1);
  CHECK(blind.status[1][1] != PointStatus::Singular);

  CHECK_THROWS_AS(convergence_map(state, grid, {30}, &ref), Error);
  CHECK_THROWS_AS(convergence_map(state, grid, {60, 40}, &ref), Error);
  CHECK_THROWS_AS(convergence_map(state, grid, {40, 80}, &ref), DimensionError);
}

TEST_CASE("disk-of-convergence behavior of the off-center Taylor foil") {
  PrecisionContext ctx(60);
  // About the origin the series converges inside |z| < sqrt(3/2) only.
  BigComplex inside = rational_taylor_about(BigReal(0), BigComplex(BigReal(1) / 2), 120);
  BigReal exact_inside = BigReal(1) / (1 + BigReal(1) / 6);
  CHECK(abs(inside - BigComplex(exact_inside)) < tol(10));

  BigComplex outside =
      rational_taylor_about(BigReal(0), BigComplex(BigReal(0), BigReal(3) / 2), 120);
  CHECK(abs(outside) > BigReal(100));

  // Centered at 1.4 the disk reaches only to the poles at +-i sqrt(3/2);
  // z = 4 + 0.5i lies far outside it.
  BigComplex far = rational_taylor_about(BigReal(7) / 5,
                                         BigComplex(BigReal(4), BigReal(1) / 2), 140);
  CHECK(abs(far) > BigReal(100));
}

TEST_CASE("solve_state rejects invalid requests") {
  PrecisionContext ctx(60);
  auto rational = ProblemSpec::parse("rational");
  WeightSpec gauss = WeightSpec::parse("gaussian");
  auto basis = make_basis(gauss, 10, ctx);
  CHECK_THROWS_AS(
      solve_state(Method::Hill, rational, gauss, basis, BigReal(-3), 10, ctx),
      ConfigError);
  CHECK_THROWS_AS(
      solve_state(Method::Oppq, rational, gauss, nullptr, BigReal(-3), 10, ctx),
      DimensionError);
  // No determinant root anywhere near this energy.
  CHECK_THROWS_AS(
      solve_state(Method::Oppq, rational, gauss, basis, BigReal(-50), 10, ctx),
      NoKernelError);
}
