#ifndef OPPQ_ROOTFIND_HPP
#define OPPQ_ROOTFIND_HPP

#include <functional>
#include <vector>

#include "oppq/linalg.hpp"

namespace oppq {

// Energy-dependent determinant sign; only the sign drives root finding,
// the log-magnitude is kept for diagnostics.
using SignFunction = std::function<SignLogDet(const BigReal&)>;

struct Bracket {
  BigReal lo, hi;
  bool degenerate() const { return lo == hi; }
};

// Samples f on [lo, hi] with the given step and returns every consecutive
// pair with a sign change. A sample with sign 0 becomes a degenerate
// bracket. The endpoint hi is always sampled.
std::vector<Bracket> bracket_roots(const SignFunction& f, const BigReal& lo,
                                   const BigReal& hi, const BigReal& step);

// Midpoint bisection down to bracket width <= tol. A midpoint with sign 0
// is returned immediately. Throws Error if f does not change sign across a
// non-degenerate bracket.
BigReal bisect(const SignFunction& f, Bracket bracket, const BigReal& tol);

}  // namespace oppq

#endif
