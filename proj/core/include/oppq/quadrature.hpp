#ifndef OPPQ_QUADRATURE_HPP
#define OPPQ_QUADRATURE_HPP

#include <functional>

#include "oppq/precision.hpp"

namespace oppq {

// Integral of f over the whole real line by double-exponential (sinh-sinh)
// quadrature with successive step halving. The integrand must be smooth
// with super-algebraic decay. The result is accepted once two consecutive
// refinement levels agree to target_digits (relative to the L1 mass);
// otherwise NonConvergenceError is thrown.
BigReal integrate_line(const std::function<BigReal(const BigReal&)>& f,
                       unsigned target_digits, const PrecisionContext& ctx);

}  // namespace oppq

#endif
