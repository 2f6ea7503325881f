#ifndef XIBASIN_BERNOULLI_H
#define XIBASIN_BERNOULLI_H

#include "xibasin/numerics.h"

namespace xibasin::detail {

/// B_{2k} / (2k)! rounded to `bits`, k >= 1. Exact rationals are cached process-wide.
Real bernoulli_over_factorial(int k, mpfr_prec_t bits);

/// B_{2k} rounded to `bits`, k >= 1.
Real bernoulli_even(int k, mpfr_prec_t bits);

} // namespace xibasin::detail

#endif
