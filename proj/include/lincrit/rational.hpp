#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lincrit {

// Exact scalars. mpq_class results of arithmetic are canonical; values built
// from raw numerator/denominator pairs must go through make_rational.
using Integer = mpz_class;
using Rational = mpq_class;

// Lowest-terms rational num/den. Throws std::domain_error when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

// Parses "a", "-a", "a/b" (decimal integers). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

bool is_integer(const Rational& x);

// |x|
Rational abs(const Rational& x);
Integer abs(const Integer& x);

// x^e for e >= 0 (x^0 == 1, including 0^0).
Rational pow(const Rational& x, unsigned long e);
Integer pow(const Integer& x, unsigned long e);

// d_n = lcm(1, ..., n). Throws std::invalid_argument for n == 0.
Integer lcm_upto(unsigned long n);

// C(n, k); zero when k < 0 or k > n.
Integer binomial(long n, long k);

// True when every prime factor of den(x) divides base, i.e. x lies in Z[1/base].
bool in_localization(const Rational& x, const Integer& base);

}  // namespace lincrit
