#include "oppq/problems.hpp"

#include <boost/math/constants/constants.hpp>

#include "oppq/quadrature.hpp"

namespace oppq {

namespace {

// Splits "key=value,key=value" parameter tails.
BigReal param_value(const std::string& params, const std::string& key,
                    const std::string& id) {
  std::size_t pos = 0;
  while (pos < params.size()) {
    std::size_t end = params.find(',', pos);
    if (end == std::string::npos) end = params.size();
    std::string item = params.substr(pos, end - pos);
    std::size_t eq = item.find('=');
    if (eq != std::string::npos && item.substr(0, eq) == key) {
      try {
        return BigReal(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "' in '" + id + "'");
      }
    }
    pos = end + 1;
  }
  throw ConfigError("missing parameter '" + key + "' in '" + id + "'");
}

std::string render(const BigReal& x) {
  if (x == floor(x) && abs(x) < BigReal("1e15"))
    return std::to_string(x.convert_to<long long>());
  return x.str(10);
}

}  // namespace

ProblemSpec ProblemSpec::parse(const std::string& id) {
  if (id == "harmonic") return {Family::Harmonic};
  if (id == "rational") return {Family::Rational};
  if (id.rfind("sextic:", 0) == 0) {
    std::string params = id.substr(7);
    return {Family::Sextic, param_value(params, "a", id), param_value(params, "b", id)};
  }
  throw ConfigError("unknown problem '" + id +
                    "' (expected harmonic, rational, or sextic:a=<v>,b=<v>)");
}

std::string ProblemSpec::id() const {
  switch (family) {
    case Family::Harmonic:
      return "harmonic";
    case Family::Rational:
      return "rational";
    case Family::Sextic:
      return "sextic:a=" + render(a) + ",b=" + render(b);
  }
  return {};
}

void ProblemSpec::default_window(BigReal& lo, BigReal& hi) const {
  switch (family) {
    case Family::Harmonic:
      lo = 0;
      hi = 12;
      break;
    case Family::Sextic:
      lo = -30;
      hi = 15;
      break;
    case Family::Rational:
      lo = -5;
      hi = 10;
      break;
  }
}

BigReal ProblemSpec::default_step() const {
  return family == Family::Harmonic ? BigReal(1) / 10 : BigReal(1) / 20;
}

WeightSpec WeightSpec::parse(const std::string& id) {
  if (id == "gaussian") return {WeightKind::GaussianHalf};
  if (id == "ground-state") return {WeightKind::RationalGroundState};
  if (id.rfind("freud4:", 0) == 0)
    return {WeightKind::FreudQuartic, param_value(id.substr(7), "b", id)};
  throw ConfigError("unknown weight '" + id +
                    "' (expected gaussian, ground-state, or freud4:b=<v>)");
}

std::string WeightSpec::id() const {
  switch (kind) {
    case WeightKind::GaussianHalf:
      return "gaussian";
    case WeightKind::FreudQuartic:
      return "freud4:b=" + render(b);
    case WeightKind::RationalGroundState:
      return "ground-state";
    case WeightKind::MomentsOnly:
      return "moments-only";
  }
  return {};
}

BigReal WeightSpec::evaluate(const BigReal& x) const {
  switch (kind) {
    case WeightKind::GaussianHalf:
      return exp(-x * x / 2);
    case WeightKind::FreudQuartic:
      return exp(-(x * x * x * x + b * x * x) / 4);
    case WeightKind::RationalGroundState:
      return exp(-x * x / 2) / (1 + 2 * x * x / 3);
    case WeightKind::MomentsOnly:
      throw Error("moments-only weight has no pointwise form");
  }
  return 0;
}

WeightSpec matched_weight(const ProblemSpec& problem) {
  if (problem.family == Family::Sextic)
    return {WeightKind::FreudQuartic, problem.b};
  return {WeightKind::GaussianHalf};
}

WeightMoments weight_moments(const WeightSpec& weight, int p_max,
                             const PrecisionContext& ctx) {
  if (p_max < 0) throw DimensionError("weight_moments: p_max must be >= 0");
  ctx.activate();
  const unsigned seed_digits = ctx.decimal_digits() + 10;
  WeightMoments wm;
  wm.s.assign(p_max + 1, BigReal(0));

  switch (weight.kind) {
    case WeightKind::GaussianHalf: {
      // s_p = sqrt(2 pi) (p-1)!! for even p
      wm.s[0] = sqrt(2 * boost::math::constants::pi<BigReal>());
      for (int p = 2; p <= p_max; p += 2) wm.s[p] = (p - 1) * wm.s[p - 2];
      break;
    }
    case WeightKind::FreudQuartic: {
      const BigReal b = weight.b;
      auto r = [&b](const BigReal& x) {
        return exp(-(x * x * x * x + b * x * x) / 4);
      };
      wm.s[0] = integrate_line(r, seed_digits, ctx);
      if (p_max >= 2)
        wm.s[2] = integrate_line([&r](const BigReal& x) { return x * x * r(x); },
                                 seed_digits, ctx);
      // Integration by parts of (x^{p-3} R)' gives
      // s_p = (p-3) s_{p-4} - (b/2) s_{p-2}.
      for (int p = 4; p <= p_max; p += 2)
        wm.s[p] = (p - 3) * wm.s[p - 4] - b / 2 * wm.s[p - 2];
      break;
    }
    case WeightKind::RationalGroundState: {
      WeightMoments g = weight_moments({WeightKind::GaussianHalf}, p_max, ctx);
      wm.s[0] = integrate_line(
          [](const BigReal& x) {
            return exp(-x * x / 2) / (1 + 2 * x * x / 3);
          },
          seed_digits, ctx);
      // (1 + 2x^2/3) R(x) = e^{-x^2/2}, hence t_{p+2} = (3/2)(s_p - t_p).
      for (int p = 2; p <= p_max; p += 2)
        wm.s[p] = BigReal(3) / 2 * (g.s[p - 2] - wm.s[p - 2]);
      break;
    }
    case WeightKind::MomentsOnly: {
      if (static_cast<int>(weight.explicit_moments.size()) <= p_max)
        throw DimensionError("weight_moments: explicit moment list too short");
      for (int p = 0; p <= p_max; ++p) wm.s[p] = weight.explicit_moments[p];
      break;
    }
  }
  return wm;
}

MomentTable moment_table(const ProblemSpec& problem, const BigReal& energy,
                         int n, const PrecisionContext& ctx) {
  const int m_s = problem.missing_order();
  if (n < m_s) throw DimensionError("moment_table: order below missing-moment order");
  ctx.activate();
  require_finite(energy, "moment_table");

  MomentTable table;
  table.energy = energy;
  table.m_s = m_s;
  table.m.assign(n + 1, std::vector<BigReal>(m_s + 1, BigReal(0)));
  for (int p = 0; p <= m_s; ++p) table.m[p][p] = 1;

  const std::vector<BigReal> zero_row(m_s + 1, BigReal(0));
  auto row = [&](int p) -> const std::vector<BigReal>& {
    return p < 0 ? zero_row : table.m[p];
  };
  auto axpy = [&](std::vector<BigReal>& dst, const BigReal& c,
                  const std::vector<BigReal>& src) {
    for (int l = 0; l <= m_s; ++l) dst[l] += c * src[l];
  };

  const BigReal& e = energy;
  for (int p = m_s + 1; p <= n; ++p) {
    auto& dst = table.m[p];
    switch (problem.family) {
      case Family::Harmonic: {
        int q = p - 2;
        axpy(dst, e, row(q));
        axpy(dst, BigReal(q) * (q - 1), row(q - 2));
        break;
      }
      case Family::Sextic: {
        int q = p - 6;
        axpy(dst, e, row(q));
        axpy(dst, BigReal(q) * (q - 1), row(q - 2));
        axpy(dst, -problem.a, row(q + 2));
        axpy(dst, -problem.b, row(q + 4));
        break;
      }
      case Family::Rational: {
        int q = p - 6;
        axpy(dst, e - 3, row(q + 4));
        axpy(dst, BigReal(q) * (q + 7) + 3 * e + BigReal(39) / 4, row(q + 2));
        axpy(dst, 3 * BigReal(q) * (q + 3) + BigReal(9) / 4 * e + 18, row(q));
        axpy(dst, BigReal(9) / 4 * q * (q - 1), row(q - 2));
        break;
      }
    }
  }
  return table;
}

bool is_matched_weight(const ProblemSpec& problem, const WeightSpec& weight) {
  switch (problem.family) {
    case Family::Harmonic:
    case Family::Rational:
      return weight.kind == WeightKind::GaussianHalf;
    case Family::Sextic:
      return weight.kind == WeightKind::FreudQuartic && weight.b == problem.b;
  }
  return false;
}

namespace {

void require_matched(const ProblemSpec& problem, const WeightSpec& weight) {
  if (!is_matched_weight(problem, weight))
    throw ConfigError("taylor_table: weight '" + weight.id() +
                      "' is not the matched asymptotic weight for problem '" +
                      problem.id() + "'");
}

}  // namespace

TaylorTable taylor_table(const ProblemSpec& problem, const WeightSpec& weight,
                         const BigReal& energy, int n, const PrecisionContext& ctx,
                         RationalTaylorVariant variant) {
  require_matched(problem, weight);
  if (n < 1) throw DimensionError("taylor_table: order must be >= 1");
  ctx.activate();
  require_finite(energy, "taylor_table");

  TaylorTable table;
  table.energy = energy;
  table.t.assign(n + 1, {BigReal(0), BigReal(0)});
  table.t[0][0] = 1;
  table.t[1][1] = 1;

  const std::array<BigReal, 2> zero{BigReal(0), BigReal(0)};
  auto at = [&](int k) -> const std::array<BigReal, 2>& {
    return k < 0 ? zero : table.t[k];
  };
  for (int m = 2; m <= n; ++m) {
    const int k = m - 2;  // recursion index: c_{k+2} from lower coefficients
    for (int col = 0; col < 2; ++col)
      table.t[m][col] = taylor_step(problem, energy, k, at(k)[col],
                                    at(k - 2)[col], at(k - 4)[col], variant);
  }
  return table;
}

BigReal taylor_step(const ProblemSpec& problem, const BigReal& energy, int k,
                    const BigReal& ck, const BigReal& ckm2, const BigReal& ckm4,
                    RationalTaylorVariant variant) {
  const BigReal& e = energy;
  BigReal v(0);
  switch (problem.family) {
    case Family::Harmonic:
      v = (2 * k + 1 - e) * ck;
      break;
    case Family::Sextic:
      v = (problem.a + 2 * k - 1 - problem.b * problem.b / 4) * ckm2 +
          (problem.b * (k + BigReal(1) / 2) - e) * ck;
      break;
    case Family::Rational: {
      BigReal cn_term = variant == RationalTaylorVariant::Corrected
                            ? BigReal(2 * k) * (2 * k - 5)
                            : BigReal(2 * k) * (3 * k - 5);
      v = (4 * (2 * k - e - 7) * ckm4 +
           4 * (BigReal(k) * (11 - k) - 3 * e - 15) * ckm2 -
           3 * (13 + 3 * e + cn_term) * ck) /
          9;
      break;
    }
  }
  return v / (BigReal(k + 1) * (k + 2));
}

BigReal rational_ground_state(const BigReal& x) {
  return exp(-x * x / 2) / (1 + 2 * x * x / 3);
}

BigComplex rational_ground_state(const BigComplex& z) {
  BigComplex z2 = z * z;
  return exp(BigComplex(-z2.re / 2, -z2.im / 2)) *
         rational_ground_state_over_weight(z);
}

BigComplex rational_ground_state_over_weight(const BigComplex& z) {
  BigComplex denom = BigComplex(1) + z * z * BigComplex(BigReal(2) / 3);
  if (abs(denom) < pow(BigReal(10), -30))
    throw SingularityError("evaluation at a pole of the rational ground state "
                           "(x = ±i sqrt(3/2))");
  return BigComplex(1) / denom;
}

}  // namespace oppq
