#pragma once

#include "lincrit/bigfloat.hpp"
#include "lincrit/poly.hpp"
#include "lincrit/roots.hpp"

#include <string>
#include <vector>

namespace lincrit {

// Critical-point analysis of g(t) = t (t^2 - 1/q)(t^2 - 2/q) / (t - 1), which governs the
// growth of the linear forms built from the points -1/q and -2/q with dilogarithm depth 2.

// Numerator of g'(t): 4t^5 - 5t^4 - (6/q) t^3 + (9/q) t^2 - 2/q^2. Throws for q == 0.
Poly example1_quintic(const Rational& q);

// g evaluated over a disk, outward rounded.
ComplexBall example1_g(const ComplexBall& t, const Rational& q);

enum class Verdict { Holds, Fails, Inconclusive };
std::string to_string(Verdict v);

enum class Example1Mode { Full, FourOfFive };
std::string to_string(Example1Mode m);

struct Example1Values {
  Integer q;
  mpfr_prec_t precision = 0;
  // Critical points ordered by |g(t_i)| descending.
  std::vector<CertifiedRoot> roots;
  std::vector<BigFloat> abs_g;
  std::vector<BigFloat> abs_g_lower;
  std::vector<BigFloat> abs_g_upper;
  // v_i = log|g(t_i)| + 2 log q + 4 at the enclosure midpoints.
  std::vector<BigFloat> values;
  // tied[i]: the |g| enclosures of positions i and i+1 overlap.
  std::vector<bool> tied;
  // Full: v_2 < 0. FourOfFive: v_2 + v_3 < 0. Certified from the enclosure bounds.
  Verdict full = Verdict::Inconclusive;
  Verdict four_of_five = Verdict::Inconclusive;

  Verdict verdict(Example1Mode m) const { return m == Example1Mode::Full ? full : four_of_five; }
};

// Values at precision prec, re-run at 2 prec and accepted once the verdicts agree and the
// values agree to prec/4 bits (precision doubles up to three times, then PrecisionError).
Example1Values example1_criterion_values(const Integer& q, mpfr_prec_t prec);

// Single evaluation without the stability re-run.
Example1Values example1_criterion_values_at(const Integer& q, mpfr_prec_t prec);

struct MinQResult {
  Example1Mode mode = Example1Mode::Full;
  long q = 0;
  // The inequality was confirmed on q..q+scan and found not to hold at q-1.
  bool holds_on_scan = false;
  bool fails_below = false;
  long scan = 50;
  mpfr_prec_t precision = 0;
  long evaluations = 0;
};

// Least integer q >= 3 for which the mode's inequality holds: doubling to bracket, binary search,
// then a linear scan over q..q+scan; a failure inside the scan restarts the scan above it.
MinQResult example1_min_q(Example1Mode mode, mpfr_prec_t prec, long scan = 50);

}  // namespace lincrit
