#pragma once

#include "lincrit/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace lincrit {

// Raised when a computation cannot be stabilised by precision escalation.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Owning MPFR value. The precision is fixed at construction; binary
// operations produce a result at the larger of the operand precisions.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64);
  BigFloat(long v, mpfr_prec_t prec);
  BigFloat(const Rational& v, mpfr_prec_t prec);
  BigFloat(const Integer& v, mpfr_prec_t prec);
  static BigFloat from_double(double v, mpfr_prec_t prec);
  // Decimal or scientific literal.
  static BigFloat parse(const std::string& text, mpfr_prec_t prec);

  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return prec_; }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  // Same value rounded to a new precision.
  BigFloat with_precision(mpfr_prec_t prec) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Exponent e with 2^(e-1) <= |x| < 2^e; LONG_MIN for zero.
  long exponent() const;
  // digits == 0 picks enough digits to represent the precision.
  std::string to_string(int digits = 0) const;
  // Exact rational value of the binary float.
  Rational to_rational() const;

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  friend BigFloat operator-(const BigFloat& a);

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  void grow_to(mpfr_prec_t prec);
  mpfr_prec_t prec_;
  mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat pow(const BigFloat& x, unsigned long e);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat min(const BigFloat& a, const BigFloat& b);
BigFloat log2_const(mpfr_prec_t prec);
BigFloat pi_const(mpfr_prec_t prec);
// 2^e at the given precision.
BigFloat pow2(long e, mpfr_prec_t prec);
// Smallest integer >= x.
Integer ceil_integer(const BigFloat& x);
// Directed-rounding helpers used for enclosure radii.
BigFloat add_up(const BigFloat& a, const BigFloat& b);
BigFloat mul_up(const BigFloat& a, const BigFloat& b);
BigFloat div_up(const BigFloat& a, const BigFloat& b);
BigFloat div_down(const BigFloat& a, const BigFloat& b);
BigFloat sub_down(const BigFloat& a, const BigFloat& b);
// Upper bound on the rounding error of a correctly rounded result x: |x| * 2^(1-prec).
BigFloat ulp_bound(const BigFloat& x);

// Relative agreement |a-b| <= tol_bits-scaled max(|a|,|b|), i.e. |a-b| <= 2^-bits * max(|a|,|b|).
bool agree_to_bits(const BigFloat& a, const BigFloat& b, long bits);

class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(const BigFloat& r) : re(r), im(0L, r.precision()) {}

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }
  BigComplex with_precision(mpfr_prec_t prec) const {
    return BigComplex(re.with_precision(prec), im.with_precision(prec));
  }
  BigFloat norm() const;  // re^2 + im^2
  BigFloat modulus() const;

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }

  BigFloat re;
  BigFloat im;
};

// Complex disk {mid + w : |w| <= rad} with outward-rounded arithmetic: every
// operation returns a disk that contains all results for inputs in the operands.
class ComplexBall {
 public:
  ComplexBall(BigComplex mid, BigFloat rad);
  static ComplexBall exact(const Rational& v, mpfr_prec_t prec);

  const BigComplex& mid() const { return mid_; }
  const BigFloat& rad() const { return rad_; }
  // Lower and upper bounds on |z| over the disk (lower clamps at zero).
  BigFloat abs_lower() const;
  BigFloat abs_upper() const;
  bool contains_zero() const;

  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  // Throws std::domain_error if b contains zero.
  friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);

 private:
  BigComplex mid_;
  BigFloat rad_;
};

// Runs compute(p) and compute(2p); returns the 2p result once accept(low, high, p)
// holds. On disagreement the precision doubles, at most max_escalations times.
template <class T>
T with_escalation(const std::function<T(mpfr_prec_t)>& compute,
                  const std::function<bool(const T&, const T&, mpfr_prec_t)>& accept, mpfr_prec_t prec,
                  int max_escalations = 3, mpfr_prec_t* used_prec = nullptr) {
  T low = compute(prec);
  for (int e = 0; e <= max_escalations; ++e) {
    T high = compute(2 * prec);
    if (accept(low, high, prec)) {
      if (used_prec) *used_prec = 2 * prec;
      return high;
    }
    low = std::move(high);
    prec *= 2;
  }
  throw PrecisionError("results did not stabilise after " + std::to_string(max_escalations) +
                       " precision escalations");
}

}  // namespace lincrit
