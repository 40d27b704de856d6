#ifndef OPPQ_PRECISION_HPP
#define OPPQ_PRECISION_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <boost/math/constants/constants.hpp>

#include "oppq/errors.hpp"

namespace oppq {

// Arbitrary-precision real. The working precision is set per thread through
// PrecisionContext::activate(); values carry the precision they were created
// under.
using BigReal = boost::multiprecision::mpfr_float;

// Working-precision handle. Everything downstream derives its tolerances
// from decimal_digits, so a single knob controls the whole pipeline.
class PrecisionContext {
 public:
  explicit PrecisionContext(unsigned decimal_digits) : digits_(decimal_digits) {
    if (decimal_digits < 30)
      throw ConfigError("decimal_digits must be at least 30, got " +
                        std::to_string(decimal_digits));
    activate();
  }

  unsigned decimal_digits() const { return digits_; }

  // Makes this context's precision the default for new values on the
  // calling thread.
  void activate() const { BigReal::default_precision(digits_); }

  // 10^(-decimal_digits + shift)
  BigReal eps(int shift = 0) const {
    activate();
    return pow(BigReal(10), shift - static_cast<int>(digits_));
  }

 private:
  unsigned digits_;
};

// Default precision policy: 3 digits per truncation order with a 50-digit
// floor. Hankel-based Gram-Schmidt loses digits roughly linearly in N.
inline unsigned default_digits_for_order(int n) {
  return std::max(50, 3 * n);
}

inline bool is_finite(const BigReal& x) {
  return boost::math::isfinite(x);
}

inline void require_finite(const BigReal& x, const char* what) {
  if (!is_finite(x)) throw Error(std::string("non-finite value in ") + what);
}

// Complex value over BigReal. Only the handful of operations the complex
// partial-sum evaluation needs.
struct BigComplex {
  BigReal re, im;

  BigComplex() : re(0), im(0) {}
  BigComplex(BigReal r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}

  BigComplex operator+(const BigComplex& o) const { return {re + o.re, im + o.im}; }
  BigComplex operator-(const BigComplex& o) const { return {re - o.re, im - o.im}; }
  BigComplex operator*(const BigComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  BigComplex operator*(const BigReal& s) const { return {re * s, im * s}; }
  BigComplex operator/(const BigComplex& o) const {
    BigReal d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
};

inline BigReal abs(const BigComplex& z) {
  return sqrt(z.re * z.re + z.im * z.im);
}

inline BigComplex exp(const BigComplex& z) {
  BigReal m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

}  // namespace oppq

#endif
