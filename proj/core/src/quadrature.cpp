#include "oppq/quadrature.hpp"

#include <boost/math/constants/constants.hpp>

namespace oppq {

namespace {

// One sinh-sinh trapezoid level: sum of weighted samples at odd multiples
// of h (every multiple when all_nodes is set), including k = 0 only then.
struct LevelSum {
  BigReal value;
  BigReal l1;
};

LevelSum de_level(const std::function<BigReal(const BigReal&)>& f,
                  const BigReal& h, bool all_nodes, const BigReal& term_cut) {
  const BigReal c = boost::math::constants::half_pi<BigReal>();
  LevelSum out{BigReal(0), BigReal(0)};
  if (all_nodes) {
    BigReal t0 = c * f(BigReal(0));
    out.value += t0;
    out.l1 += abs(t0);
  }
  int consecutive_small = 0;
  for (long k = all_nodes ? 1 : 0;; ++k) {
    BigReal t = all_nodes ? BigReal(k) * h : BigReal(2 * k + 1) * h;
    if (t > 8) break;  // weights beyond this dwarf any admissible integrand
    BigReal sh = sinh(t);
    BigReal x = sinh(c * sh);
    BigReal w = c * cosh(t) * cosh(c * sh);
    BigReal fp = f(x), fm = f(-x);
    BigReal term = w * (fp + fm);
    BigReal mag = w * (abs(fp) + abs(fm));
    out.value += term;
    out.l1 += mag;
    if (mag < term_cut * (1 + out.l1)) {
      if (++consecutive_small >= 3) break;
    } else {
      consecutive_small = 0;
    }
  }
  return out;
}

}  // namespace

BigReal integrate_line(const std::function<BigReal(const BigReal&)>& f,
                       unsigned target_digits, const PrecisionContext& ctx) {
  // Work with guard digits, restore the caller's precision on exit.
  const unsigned work = std::max(ctx.decimal_digits(), target_digits + 20);
  const unsigned saved = BigReal::default_precision();
  BigReal::default_precision(work);

  try {
    const BigReal tol = pow(BigReal(10), -static_cast<int>(target_digits));
    const BigReal term_cut = pow(BigReal(10), -static_cast<int>(target_digits) - 15);

    BigReal h(1);
    LevelSum acc = de_level(f, h, /*all_nodes=*/true, term_cut);
    BigReal prev = acc.value * h;
    for (int level = 1; level <= 12; ++level) {
      h /= 2;
      LevelSum odd = de_level(f, h, /*all_nodes=*/false, term_cut);
      acc.value += odd.value;
      acc.l1 += odd.l1;
      BigReal cur = acc.value * h;
      BigReal scale = acc.l1 * h;
      if (scale == 0) scale = 1;
      if (level >= 2 && abs(cur - prev) <= tol * scale) {
        BigReal::default_precision(saved);
        return cur;
      }
      prev = cur;
    }
  } catch (...) {
    BigReal::default_precision(saved);
    throw;
  }
  BigReal::default_precision(saved);
  throw NonConvergenceError(
      "integrate_line: refinement levels failed to agree to target_digits");
}

}  // namespace oppq
