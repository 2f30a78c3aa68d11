#include "lincrit/polylog.hpp"

#include <cmath>
#include <stdexcept>

namespace lincrit {

namespace {

void check_args(unsigned k, const Rational& x) {
  if (k == 0) throw std::invalid_argument("polylog order must be positive");
  if (abs(x) >= 1) throw std::domain_error("polylog requires |x| < 1");
}

}  // namespace

unsigned long polylog_terms(unsigned k, const Rational& x, mpfr_prec_t prec) {
  check_args(k, x);
  if (x == 0) return 0;
  // Tail after N terms is at most |x|^(N+1) / ((N+1)^k (1-|x|)); |Li_k(x)| >= |x|/2,
  // so stopping once tail < 2^(-prec-8) |x|/2 keeps the truncation well under target.
  // Bounds are evaluated in log2 form with 64-bit floats and a safety margin.
  BigFloat ax(abs(x), 128);
  double lx = log(ax).to_double() / std::log(2.0);  // log2 |x| < 0
  double l1x = log(BigFloat(1L, 128) - ax).to_double() / std::log(2.0);
  double target = -static_cast<double>(prec) - 8.0 + lx - 1.0;
  auto small_enough = [&](unsigned long n) {
    double np1 = static_cast<double>(n) + 1.0;
    return np1 * lx - k * std::log2(np1) - l1x < target - 2.0;
  };
  unsigned long hi = 1;
  while (!small_enough(hi)) hi *= 2;
  unsigned long lo = hi / 2;  // small_enough(lo) is false or lo == 0
  while (hi - lo > 1) {
    unsigned long mid = lo + (hi - lo) / 2;
    (small_enough(mid) ? hi : lo) = mid;
  }
  return hi;
}

BigFloat polylog(unsigned k, const Rational& x, mpfr_prec_t prec) {
  check_args(k, x);
  if (x == 0) return BigFloat(0L, prec);
  unsigned long n = polylog_terms(k, x, prec);
  // Each term carries a few roundings; the summed error relative to |Li_k(x)| is at
  // most about 8 N / (1-|x|) * 2^-wp.
  double l1x = -std::log2(1.0 - std::fabs(x.get_d()));
  if (!std::isfinite(l1x)) l1x = 64.0;
  mpfr_prec_t wp = prec + 16 + static_cast<mpfr_prec_t>(std::log2(static_cast<double>(n) + 1.0) + l1x) + 1;
  BigFloat xf(x, wp);
  BigFloat power = xf;
  BigFloat sum(0L, wp);
  BigFloat denom(wp);
  for (unsigned long l = 1; l <= n; ++l) {
    if (l > 1) power *= xf;
    mpfr_ui_pow_ui(denom.raw(), l, k, MPFR_RNDN);
    sum += power / denom;
  }
  return sum.with_precision(prec);
}

}  // namespace lincrit
