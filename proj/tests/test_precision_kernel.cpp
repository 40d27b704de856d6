#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "oppq/linalg.hpp"
#include "oppq/quadrature.hpp"
#include "oppq/rootfind.hpp"
#include "test_helpers.hpp"

using namespace oppq;
using oppq::testing::IntDraw;
using oppq::testing::tol;

TEST_CASE("det_sign_log basics") {
  PrecisionContext ctx(50);

  Matrix id3(3, 3);
  for (int i = 0; i < 3; ++i) id3(i, i) = 1;
  auto d = det_sign_log(id3, ctx);
  CHECK(d.sign == 1);
  CHECK(abs(d.log_magnitude) < tol(40));

  Matrix diag(2, 2);
  diag(0, 0) = 2;
  diag(1, 1) = 3;
  d = det_sign_log(diag, ctx);
  CHECK(d.sign == 1);
  CHECK(abs(d.log_magnitude - log(BigReal(6))) < tol(40));

  Matrix rank1(2, 2);
  rank1(0, 0) = 1;
  rank1(0, 1) = 2;
  rank1(1, 0) = 2;
  rank1(1, 1) = 4;
  CHECK(det_sign_log(rank1, ctx).sign == 0);

  Matrix rect(2, 3);
  CHECK_THROWS_AS(det_sign_log(rect, ctx), DimensionError);
}

TEST_CASE("det_sign_log of a product multiplies signs and adds logs") {
  PrecisionContext ctx(50);
  IntDraw draw(12345);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a(5, 5), b(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        a(i, j) = draw(-9, 9);
        b(i, j) = draw(-9, 9);
      }
    // Diagonal dominance keeps both factors well-conditioned.
    for (int i = 0; i < 5; ++i) {
      a(i, i) += 50;
      b(i, i) += 50;
    }
    auto da = det_sign_log(a, ctx);
    auto db = det_sign_log(b, ctx);
    auto dab = det_sign_log(a * b, ctx);
    CHECK(dab.sign == da.sign * db.sign);
    BigReal expected = da.log_magnitude + db.log_magnitude;
    CHECK(abs(dab.log_magnitude - expected) < tol(25) * (1 + abs(expected)));
  }
}

TEST_CASE("null_vector on simple singular matrices") {
  PrecisionContext ctx(50);

  Matrix ones(2, 2);
  ones(0, 0) = ones(0, 1) = ones(1, 0) = ones(1, 1) = 1;
  auto v = null_vector(ones, ctx);
  REQUIRE(v.size() == 2);
  CHECK(abs(v[0] + v[1]) < tol(25));
  CHECK(std::max(abs(v[0]), abs(v[1])) == 1);

  Matrix zero(2, 2);
  v = null_vector(zero, ctx);
  CHECK(std::max(abs(v[0]), abs(v[1])) == 1);

  Matrix well(2, 2);
  well(0, 0) = 3;
  well(1, 1) = 4;
  well(0, 1) = 1;
  well(1, 0) = -1;
  CHECK_THROWS_AS(null_vector(well, ctx), NoKernelError);
}

TEST_CASE("null_vector residual bound on constructed singular inputs") {
  PrecisionContext ctx(60);
  IntDraw draw(777);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a(4, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = draw(-9, 9);
    // Last row is a combination of the first two: rank <= 3.
    for (int j = 0; j < 4; ++j) a(3, j) = 2 * a(0, j) - a(1, j);
    auto v = null_vector(a, ctx);
    BigReal residual(0), amax = a.max_abs();
    for (int i = 0; i < 4; ++i) {
      BigReal s(0);
      for (int j = 0; j < 4; ++j) s += a(i, j) * v[j];
      if (abs(s) > residual) residual = abs(s);
    }
    CHECK(residual <= amax * tol(30));
  }
}

TEST_CASE("bracket_roots and bisect") {
  PrecisionContext ctx(50);
  auto sign_of = [](const BigReal& v) {
    return SignLogDet{v > 0 ? 1 : (v < 0 ? -1 : 0),
                      v == 0 ? BigReal(0) : log(abs(v))};
  };
  SignFunction f = [&](const BigReal& e) { return sign_of(e * e - 2); };

  auto brs = bracket_roots(f, BigReal(0), BigReal(2), BigReal(1) / 2);
  REQUIRE(brs.size() == 1);
  CHECK(brs[0].lo == 1);
  CHECK(brs[0].hi == BigReal(3) / 2);

  SignFunction g = [&](const BigReal& e) { return sign_of(e + 5); };
  CHECK(bracket_roots(g, BigReal(0), BigReal(2), BigReal(1) / 2).empty());

  BigReal root = bisect(f, {BigReal(1), BigReal(2)}, tol(12));
  CHECK(abs(root - sqrt(BigReal(2))) < tol(11));

  CHECK(bisect(f, {BigReal(5), BigReal(5)}, tol(12)) == 5);
  CHECK_THROWS_AS(bisect(f, {BigReal(2), BigReal(3)}, tol(12)), Error);

  // Refined root does not depend on how the bracket was found.
  auto wide = bracket_roots(f, BigReal(0), BigReal(2), BigReal(1) / 4);
  REQUIRE(wide.size() == 1);
  BigReal root2 = bisect(f, wide[0], tol(12));
  CHECK(abs(root - root2) < 2 * tol(12));
}

TEST_CASE("integrate_line reproduces closed forms") {
  PrecisionContext ctx(60);

  BigReal gauss = integrate_line(
      [](const BigReal& x) { return exp(-x * x / 2); }, 40, ctx);
  BigReal two_pi = 2 * boost::math::constants::pi<BigReal>();
  CHECK(abs(gauss - sqrt(two_pi)) < tol(39));

  BigReal quartic = integrate_line(
      [](const BigReal& x) { return exp(-x * x * x * x / 4); }, 40, ctx);
  BigReal expected =
      2 * pow(BigReal(4), -BigReal(3) / 4) * boost::math::tgamma(BigReal(1) / 4);
  CHECK(abs(quartic - expected) < tol(38));
}

TEST_CASE("integrate_line agrees with an independent quadrature scheme") {
  PrecisionContext ctx(60);
  auto f = [](const BigReal& x) -> BigReal {
    return exp(-x * x / 2) / (1 + 2 * x * x / 3);
  };
  BigReal ours = integrate_line(f, 40, ctx);
  // Second scheme: exp-sinh on the half line, doubled by symmetry.
  boost::math::quadrature::exp_sinh<BigReal> half_line;
  BigReal other = 2 * half_line.integrate(f, tol(40));
  CHECK(abs(ours - other) < tol(25));
  CHECK(abs(ours - BigReal("1.79")) < BigReal("0.01"));
}
