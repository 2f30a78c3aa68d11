#include "lincrit/rational.hpp"

#include <stdexcept>

namespace lincrit {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  std::string text(s);
  if (text.front() == '+') text.erase(0, 1);
  return Integer(text, 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  Integer num = parse_integer(trim(s.substr(0, slash)), text);
  Integer den = parse_integer(trim(s.substr(slash + 1)), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

std::string to_string(const Integer& x) { return x.get_str(10); }

std::string to_string(const Rational& x) { return x.get_str(10); }

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

Integer pow(const Integer& x, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

Rational pow(const Rational& x, unsigned long e) {
  Integer n = pow(x.get_num(), e);
  Integer d = pow(x.get_den(), e);
  // num and den stay coprime under powering.
  return Rational(n, d);
}

Integer lcm_upto(unsigned long n) {
  if (n == 0) throw std::invalid_argument("lcm_upto requires n >= 1");
  Integer r = 1;
  for (unsigned long i = 2; i <= n; ++i) mpz_lcm_ui(r.get_mpz_t(), r.get_mpz_t(), i);
  return r;
}

Integer binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial requires n >= 0");
  if (k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

bool in_localization(const Rational& x, const Integer& base) {
  Integer d = x.get_den();
  Integer b = abs(base);
  if (b == 0) return d == 1;
  Integer g;
  while (true) {
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), b.get_mpz_t());
    if (g == 1) break;
    while (mpz_divisible_p(d.get_mpz_t(), g.get_mpz_t())) d /= g;
  }
  return d == 1;
}

}  // namespace lincrit
