#include "oppq/rootfind.hpp"

namespace oppq {

std::vector<Bracket> bracket_roots(const SignFunction& f, const BigReal& lo,
                                   const BigReal& hi, const BigReal& step) {
  if (!(lo < hi)) throw Error("bracket_roots: window must satisfy lo < hi");
  if (!(step > 0)) throw Error("bracket_roots: step must be positive");

  std::vector<Bracket> out;
  BigReal x_prev = lo;
  int s_prev = f(lo).sign;
  if (s_prev == 0) out.push_back({lo, lo});
  bool done = false;
  for (BigReal x = lo + step; !done; x += step) {
    if (x >= hi) {
      x = hi;
      done = true;
    }
    int s = f(x).sign;
    if (s == 0)
      out.push_back({x, x});
    else if (s_prev != 0 && s != s_prev)
      out.push_back({x_prev, x});
    x_prev = x;
    s_prev = s;
  }
  return out;
}

BigReal bisect(const SignFunction& f, Bracket bracket, const BigReal& tol) {
  if (bracket.degenerate()) return bracket.lo;
  if (!(bracket.lo < bracket.hi)) throw Error("bisect: invalid bracket");
  int s_lo = f(bracket.lo).sign;
  int s_hi = f(bracket.hi).sign;
  if (s_lo == 0) return bracket.lo;
  if (s_hi == 0) return bracket.hi;
  if (s_lo == s_hi) throw Error("bisect: no sign change across bracket");

  while (bracket.hi - bracket.lo > tol) {
    BigReal mid = (bracket.lo + bracket.hi) / 2;
    if (mid <= bracket.lo || mid >= bracket.hi) break;  // precision floor
    int s_mid = f(mid).sign;
    if (s_mid == 0) return mid;
    if (s_mid == s_lo)
      bracket.lo = mid;
    else
      bracket.hi = mid;
  }
  return (bracket.lo + bracket.hi) / 2;
}

}  // namespace oppq
