#include "oppq/orthopoly.hpp"

namespace oppq {

OrthoBasis build_basis(const WeightMoments& moments, int n,
                       const PrecisionContext& ctx) {
  if (n < 0) throw DimensionError("build_basis: negative degree");
  if (moments.p_max() < 2 * n)
    throw DimensionError("build_basis: weight moments needed through order 2N");
  if (!(moments.s[0] > 0))
    throw Error("build_basis: s_0 must be positive");
  ctx.activate();

  OrthoBasis basis;
  basis.max_degree = n;
  basis.moments = moments;
  basis.built_digits = ctx.decimal_digits();
  basis.xi.resize(n + 1);
  basis.profile.resize(n + 1);

  const int r_max = n + 1;
  auto s_at = [&](int p) -> BigReal {
    if (p % 2 != 0) return BigReal(0);
    return moments.s[p];
  };

  for (int j = 0; j <= n; ++j) {
    const int par = j % 2;
    std::vector<BigReal> v(j + 1, BigReal(0));
    v[j] = 1;
    std::vector<BigReal> mv(r_max + 1, BigReal(0));
    for (int r = par; r <= r_max; r += 2) mv[r] = s_at(j + r);

    // MGS with one re-orthogonalization pass; only same-parity polynomials
    // can have nonzero projections.
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = par; k < j; k += 2) {
        BigReal c(0);
        for (int i = par; i <= k; i += 2) c += basis.xi[k][i] * mv[i];
        if (c == 0) continue;
        for (int i = par; i <= k; i += 2) v[i] -= c * basis.xi[k][i];
        for (int r = par; r <= r_max; r += 2) mv[r] -= c * basis.profile[k][r];
      }
    }

    BigReal norm2(0);
    for (int i = par; i <= j; i += 2) norm2 += v[i] * mv[i];
    // The projections cancel down from <x^j, x^j> = s_2j. Once the surviving
    // norm sits within ~10 digits of the roundoff floor of that cancellation,
    // the polynomial is pure noise even if its squared norm is still positive.
    const BigReal floor2 = s_at(2 * j) * ctx.eps(10);
    if (!(norm2 > floor2))
      throw PrecisionError(
          "build_basis: squared norm at or below the cancellation noise floor "
          "at degree " + std::to_string(j) + "; raise decimal_digits");
    BigReal nrm = sqrt(norm2);
    for (auto& c : v) c /= nrm;
    for (auto& c : mv) c /= nrm;
    basis.xi[j] = std::move(v);
    basis.profile[j] = std::move(mv);
  }
  return basis;
}

BigReal inner_product(const OrthoBasis& basis, int j1, int j2) {
  if (j1 < 0 || j2 < 0 || j1 > basis.max_degree || j2 > basis.max_degree)
    throw DimensionError("inner_product: degree out of range");
  BigReal acc(0);
  for (int i1 = j1 % 2; i1 <= j1; i1 += 2)
    for (int i2 = j2 % 2; i2 <= j2; i2 += 2) {
      if ((i1 + i2) % 2 != 0) continue;
      acc += basis.xi[j1][i1] * basis.xi[j2][i2] * basis.moments.s[i1 + i2];
    }
  return acc;
}

BigReal eval_poly(const OrthoBasis& basis, int j, const BigReal& x) {
  if (j < 0 || j > basis.max_degree)
    throw DimensionError("eval_poly: degree out of range");
  const auto& c = basis.xi[j];
  BigReal acc(0);
  for (int i = j; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

BigComplex eval_poly(const OrthoBasis& basis, int j, const BigComplex& z) {
  if (j < 0 || j > basis.max_degree)
    throw DimensionError("eval_poly: degree out of range");
  const auto& c = basis.xi[j];
  BigComplex acc;
  for (int i = j; i >= 0; --i) acc = acc * z + BigComplex(c[i]);
  return acc;
}

}  // namespace oppq
