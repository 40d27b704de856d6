#include "oppq/reconstructor.hpp"

#include <algorithm>

namespace oppq {

namespace {

// Push the energy toward the exact determinant root until the matrix goes
// numerically singular (a midpoint with sign 0), so kernel extraction has a
// pivot below the singularity threshold to work with.
BigReal refine_to_singular(const SignFunction& f, const BigReal& energy,
                           const PrecisionContext& ctx) {
  if (f(energy).sign == 0) return energy;
  const BigReal scale = 1 + abs(energy);
  const BigReal tol = ctx.eps(18) * scale;
  for (int k = 9; k >= 3; --k) {
    BigReal half = scale * pow(BigReal(10), -k);
    Bracket br{energy - half, energy + half};
    int s_lo = f(br.lo).sign, s_hi = f(br.hi).sign;
    if (s_lo == 0) return br.lo;
    if (s_hi == 0) return br.hi;
    if (s_lo != s_hi) return bisect(f, br, tol);
  }
  throw NoKernelError(
      "solve_state: no determinant sign change near the supplied root");
}

}  // namespace

ReconstructedState solve_state(Method method, const ProblemSpec& problem,
                               const WeightSpec& weight,
                               std::shared_ptr<const OrthoBasis> basis,
                               const BigReal& energy_root, int n,
                               const PrecisionContext& ctx) {
  if (method == Method::Hill)
    throw ConfigError("solve_state: Hill carries no kernel to reconstruct from");
  if (!basis) throw DimensionError("solve_state: basis required");
  ctx.activate();

  SignFunction f = [&](const BigReal& e) {
    return determinant_at(method, problem, weight, basis.get(), e, n, ctx);
  };
  const BigReal e_star = refine_to_singular(f, energy_root, ctx);

  QuantizationMatrix qm =
      build_matrix(method, problem, weight, basis.get(), e_star, n, ctx);
  std::vector<BigReal> kernel = null_vector(qm.entries, ctx);

  const int m_s = problem.missing_order();
  ReconstructedState state;
  state.energy = e_star;
  state.method = method;
  state.truncation = n;
  state.basis = std::move(basis);
  state.weight = weight;
  state.problem = problem;
  state.decimal_digits = ctx.decimal_digits();
  state.missing_moments.assign(kernel.begin(), kernel.begin() + m_s + 1);

  MomentTable mtable = moment_table(problem, e_star, n, ctx);
  OmegaForms forms = omega_forms(*state.basis, mtable);
  state.mu.assign(n + 1, BigReal(0));
  state.omega.assign(n + 1, BigReal(0));
  for (int p = 0; p <= n; ++p)
    for (int l = 0; l <= m_s; ++l)
      state.mu[p] += mtable.m[p][l] * state.missing_moments[l];
  for (int j = 0; j <= n; ++j)
    for (int l = 0; l <= m_s; ++l)
      state.omega[j] += forms.w[j][l] * state.missing_moments[l];

  if (method == Method::GlobalLocal) {
    state.c0 = kernel[m_s + 1];
    state.c1 = kernel[m_s + 2];
  } else {
    // Back-fill the local seeds from the reconstruction Taylor map.
    state.c0 = 0;
    state.c1 = 0;
    const auto& xi = state.basis->xi;
    for (int j = 0; j <= n; j += 2) state.c0 += xi[j][0] * state.omega[j];
    for (int j = 1; j <= n; j += 2) state.c1 += xi[j][1] * state.omega[j];
  }
  return state;
}

std::vector<BigReal> evaluate_wavefunction(const ReconstructedState& state,
                                           const std::vector<BigReal>& points) {
  std::vector<BigReal> values;
  values.reserve(points.size());
  for (const BigReal& x : points) {
    BigReal sum(0);
    for (int j = 0; j <= state.truncation; ++j)
      sum += state.omega[j] * eval_poly(*state.basis, j, x);
    values.push_back(sum * state.weight.evaluate(x));
  }
  return values;
}

TaylorCoefficients reconstruction_taylor(const ReconstructedState& state, int order) {
  if (order > state.truncation)
    throw DimensionError("reconstruction_taylor: order exceeds truncation");
  TaylorCoefficients out;
  out.d.assign(order + 1, BigReal(0));
  for (int k = 0; k <= order; ++k)
    for (int j = k; j <= state.truncation; j += 2)
      out.d[k] += state.basis->xi[j][k] * state.omega[j];

  BigReal dmax(0);
  for (const auto& v : out.d)
    if (abs(v) > dmax) dmax = abs(v);
  const BigReal tiny =
      dmax * pow(BigReal(10), -BigReal(state.decimal_digits) / 2);
  if (abs(out.d[0]) > tiny) {
    BigReal d0 = out.d[0];
    for (auto& v : out.d) v /= d0;
  } else if (order >= 1 && abs(out.d[1]) > tiny) {
    out.odd_normalized = true;
    BigReal d1 = out.d[1];
    for (auto& v : out.d) v /= d1;
  }
  return out;
}

BigReal moment_match_residual_at(const ReconstructedState& state, int p) {
  if (p < 0 || p > state.truncation + 1)
    throw DimensionError("moment_match_residual_at: p out of range");
  BigReal mp(0);
  for (int j = 0; j <= state.truncation; ++j)
    mp += state.omega[j] * state.basis->profile[j][p];
  // mu_{N+1} is not part of the state; extend the transfer table on demand.
  BigReal mu_p;
  if (p <= state.truncation) {
    mu_p = state.mu[p];
  } else {
    PrecisionContext ctx(state.decimal_digits);
    MomentTable mtable = moment_table(state.problem, state.energy, p, ctx);
    mu_p = 0;
    for (int l = 0; l <= mtable.m_s; ++l)
      mu_p += mtable.m[p][l] * state.missing_moments[l];
  }
  return abs(mp - mu_p) / (1 + abs(mu_p));
}

BigReal verify_moment_match(const ReconstructedState& state) {
  BigReal worst(0);
  for (int p = 0; p <= state.truncation; ++p) {
    BigReal r = moment_match_residual_at(state, p);
    if (r > worst) worst = r;
  }
  return worst;
}

BigReal align_scale(const std::vector<BigReal>& values,
                    const std::vector<BigReal>& reference) {
  if (values.size() != reference.size())
    throw DimensionError("align_scale: length mismatch");
  BigReal num(0), den(0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    num += values[i] * reference[i];
    den += values[i] * values[i];
  }
  if (den == 0) throw Error("align_scale: zero vector");
  return num / den;
}

ConvergenceMap convergence_map(const ReconstructedState& state,
                               const std::vector<BigComplex>& grid,
                               const std::vector<int>& orders,
                               const ExactReference* exact) {
  if (orders.empty() || !std::is_sorted(orders.begin(), orders.end()))
    throw Error("convergence_map: orders must be ascending and non-empty");
  const int max_order = orders.back();
  if (max_order > state.truncation)
    throw DimensionError("convergence_map: order exceeds truncation");

  for (int m : orders)
    if (m < 2 * 20 || m % 20 != 0)
      throw Error("convergence_map: orders must be multiples of 20, >= 40");

  // Normalize so the value at the origin matches the d_0 = 1 convention of
  // the exact reference.
  BigReal d0(0);
  for (int j = 0; j <= state.truncation; j += 2)
    d0 += state.basis->xi[j][0] * state.omega[j];
  if (d0 == 0) throw Error("convergence_map: state has no even component");

  constexpr int kStep = 20;
  const BigReal conv_tol = BigReal(1) / 1000;
  const BigReal pole_radius = pow(BigReal(10), -6);

  ConvergenceMap map;
  map.points = grid;
  map.orders = orders;
  map.status.assign(grid.size(), {});
  map.abs_error.assign(grid.size(), {});

  for (std::size_t g = 0; g < grid.size(); ++g) {
    const BigComplex& z = grid[g];
    bool singular = false;
    if (exact)
      for (const BigComplex& pole : exact->poles)
        if (abs(z - pole) < pole_radius) singular = true;

    // Partial sums S_m at every multiple of kStep up to max_order.
    std::vector<BigComplex> sums(max_order / kStep);
    BigComplex acc;
    for (int j = 0; j <= max_order; ++j) {
      acc += eval_poly(*state.basis, j, z) * state.omega[j];
      if (j > 0 && j % kStep == 0) sums[j / kStep - 1] = acc;
    }
    auto sum_at = [&](int m) -> BigComplex {
      return sums[m / kStep - 1] * BigComplex(1 / d0);
    };

    BigComplex exact_value;
    bool have_exact = exact && !singular;
    if (have_exact) exact_value = exact->value(z);

    bool locked_converged = false;
    for (int m : orders) {
      PointStatus st = PointStatus::Diverging;
      if (singular) {
        st = PointStatus::Singular;
      } else {
        BigComplex s_m = sum_at(m);
        BigReal diff = m >= 2 * kStep ? abs(s_m - sum_at(m - kStep)) : BigReal(0);
        bool conv = m >= 2 * kStep && diff <= conv_tol * (1 + abs(s_m));
        if (conv || locked_converged) {
          st = PointStatus::Converged;
          locked_converged = true;
        }
      }
      map.status[g].push_back(st);
      if (have_exact)
        map.abs_error[g].push_back(abs(sum_at(m) - exact_value));
      else
        map.abs_error[g].push_back(BigReal(-1));
    }
  }
  return map;
}

ExactReference rational_exact_reference() {
  ExactReference ref;
  ref.value = [](const BigComplex& z) {
    return rational_ground_state_over_weight(z);
  };
  BigReal a = sqrt(BigReal(3) / 2);
  ref.poles = {BigComplex(BigReal(0), a), BigComplex(BigReal(0), -a)};
  return ref;
}

BigComplex rational_taylor_about(const BigReal& x0, const BigComplex& z, int order) {
  // (A + B u + C u^2) f(x0 + u) = 1 with u = z - x0 fixes the coefficients.
  const BigReal a_coef = 1 + 2 * x0 * x0 / 3;
  const BigReal b_coef = 4 * x0 / 3;
  const BigReal c_coef = BigReal(2) / 3;
  std::vector<BigReal> c(order + 1);
  c[0] = 1 / a_coef;
  if (order >= 1) c[1] = -b_coef * c[0] / a_coef;
  for (int k = 2; k <= order; ++k)
    c[k] = -(b_coef * c[k - 1] + c_coef * c[k - 2]) / a_coef;

  BigComplex u = z - BigComplex(x0);
  BigComplex acc;
  for (int k = order; k >= 0; --k) acc = acc * u + BigComplex(c[k]);
  return acc;
}

}  // namespace oppq
