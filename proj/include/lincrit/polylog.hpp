#pragma once

#include "lincrit/bigfloat.hpp"
#include "lincrit/rational.hpp"

namespace lincrit {

// Li_k(x) = sum_{l>=1} x^l / l^k for |x| < 1, with relative error below 2^(1-prec).
// Throws std::domain_error for |x| >= 1 and std::invalid_argument for k == 0.
BigFloat polylog(unsigned k, const Rational& x, mpfr_prec_t prec);

// Number of series terms polylog(k, x, prec) sums.
unsigned long polylog_terms(unsigned k, const Rational& x, mpfr_prec_t prec);

}  // namespace lincrit
