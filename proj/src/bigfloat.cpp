#include "lincrit/bigfloat.hpp"

#include <climits>
#include <cstdlib>

namespace lincrit {

BigFloat::BigFloat(mpfr_prec_t prec) : prec_(prec) {
  if (prec < MPFR_PREC_MIN) throw std::invalid_argument("precision too small");
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_si(v_, v, MPFR_RNDN); }

BigFloat::BigFloat(const Rational& v, mpfr_prec_t prec) : BigFloat(prec) {
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Integer& v, mpfr_prec_t prec) : BigFloat(prec) {
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

BigFloat BigFloat::from_double(double v, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::parse(const std::string& text, mpfr_prec_t prec) {
  BigFloat r(prec);
  char* end = nullptr;
  mpfr_strtofr(r.v_, text.c_str(), &end, 10, MPFR_RNDN);
  if (end == text.c_str() || *end != '\0') throw std::invalid_argument("malformed number: '" + text + "'");
  return r;
}

BigFloat::BigFloat(const BigFloat& o) : prec_(o.prec_) {
  mpfr_init2(v_, prec_);
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept : prec_(o.prec_) {
  // Steal the limbs and leave o as a valid minimum-precision value.
  mpfr_init2(v_, o.prec_);
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this == &o) return *this;
  if (prec_ != o.prec_) {
    mpfr_set_prec(v_, o.prec_);
    prec_ = o.prec_;
  }
  mpfr_set(v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  std::swap(prec_, o.prec_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::with_precision(mpfr_prec_t prec) const {
  BigFloat r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

void BigFloat::grow_to(mpfr_prec_t prec) {
  if (prec <= prec_) return;
  mpfr_prec_round(v_, prec, MPFR_RNDN);
  prec_ = prec;
}

long BigFloat::exponent() const {
  if (mpfr_zero_p(v_)) return LONG_MIN;
  return mpfr_get_exp(v_);
}

std::string BigFloat::to_string(int digits) const {
  if (digits <= 0) digits = static_cast<int>(static_cast<double>(prec_) * 0.30103) + 1;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Rational BigFloat::to_rational() const {
  if (!is_finite()) throw std::domain_error("non-finite value has no rational form");
  if (is_zero()) return 0;
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  Rational r(m);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
  }
  return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  grow_to(o.prec_);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
  grow_to(o.prec_);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
  grow_to(o.prec_);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
  grow_to(o.prec_);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat operator-(const BigFloat& a) {
  BigFloat r(a.prec_);
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

namespace {

template <class Op>
BigFloat unary(const BigFloat& x, Op op) {
  BigFloat r(x.precision());
  op(r.raw(), x.raw());
  return r;
}

template <class Op>
BigFloat binary(const BigFloat& a, const BigFloat& b, Op op) {
  BigFloat r(std::max(a.precision(), b.precision()));
  op(r.raw(), a.raw(), b.raw());
  return r;
}

}  // namespace

BigFloat abs(const BigFloat& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_abs(r, a, MPFR_RNDN); });
}

BigFloat sqrt(const BigFloat& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_sqrt(r, a, MPFR_RNDN); });
}

BigFloat log(const BigFloat& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_log(r, a, MPFR_RNDN); });
}

BigFloat exp(const BigFloat& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a) { mpfr_exp(r, a, MPFR_RNDN); });
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
  return binary(x, y, [](mpfr_ptr r, mpfr_srcptr a, mpfr_srcptr b) { mpfr_pow(r, a, b, MPFR_RNDN); });
}

BigFloat pow(const BigFloat& x, unsigned long e) {
  BigFloat r(x.precision());
  mpfr_pow_ui(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

BigFloat log2_const(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

BigFloat pi_const(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

BigFloat pow2(long e, mpfr_prec_t prec) {
  BigFloat r(1L, prec);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

Integer ceil_integer(const BigFloat& x) {
  if (!x.is_finite()) throw std::domain_error("ceiling of a non-finite value");
  Integer z;
  mpfr_get_z(z.get_mpz_t(), x.raw(), MPFR_RNDU);
  return z;
}

BigFloat add_up(const BigFloat& a, const BigFloat& b) {
  return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_add(r, x, y, MPFR_RNDU); });
}

BigFloat mul_up(const BigFloat& a, const BigFloat& b) {
  return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_mul(r, x, y, MPFR_RNDU); });
}

BigFloat div_up(const BigFloat& a, const BigFloat& b) {
  return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_div(r, x, y, MPFR_RNDU); });
}

BigFloat div_down(const BigFloat& a, const BigFloat& b) {
  return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_div(r, x, y, MPFR_RNDD); });
}

BigFloat sub_down(const BigFloat& a, const BigFloat& b) {
  return binary(a, b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_sub(r, x, y, MPFR_RNDD); });
}

BigFloat ulp_bound(const BigFloat& x) {
  BigFloat r = abs(x);
  mpfr_mul_2si(r.raw(), r.raw(), 1 - static_cast<long>(x.precision()), MPFR_RNDU);
  return r;
}

bool agree_to_bits(const BigFloat& a, const BigFloat& b, long bits) {
  BigFloat diff = abs(a - b);
  if (diff.is_zero()) return true;
  BigFloat scale = max(abs(a), abs(b));
  mpfr_mul_2si(scale.raw(), scale.raw(), -bits, MPFR_RNDN);
  return diff <= scale;
}

BigFloat BigComplex::norm() const { return re * re + im * im; }

BigFloat BigComplex::modulus() const {
  BigFloat r(precision());
  mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
  return r;
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigFloat r = re * o.re - im * o.im;
  BigFloat i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  BigFloat d = o.norm();
  if (d.is_zero()) throw std::domain_error("complex division by zero");
  BigFloat r = (re * o.re + im * o.im) / d;
  BigFloat i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

namespace {

// |z| rounded outward by a generous margin for the few roundings in hypot.
BigFloat modulus_up(const BigComplex& z) {
  BigFloat m = z.modulus();
  return add_up(m, mul_up(m, pow2(4 - static_cast<long>(m.precision()), m.precision())));
}

BigFloat modulus_down(const BigComplex& z) {
  BigFloat m = z.modulus();
  return sub_down(m, mul_up(m, pow2(4 - static_cast<long>(m.precision()), m.precision())));
}

// Error bound for a midpoint result that went through a handful of roundings.
BigFloat rounding_slack(const BigFloat& magnitude) {
  BigFloat r = magnitude;
  mpfr_mul_2si(r.raw(), r.raw(), 4 - static_cast<long>(magnitude.precision()), MPFR_RNDU);
  return r;
}

}  // namespace

ComplexBall::ComplexBall(BigComplex mid, BigFloat rad) : mid_(std::move(mid)), rad_(std::move(rad)) {
  if (rad_.sign() < 0) throw std::invalid_argument("negative ball radius");
}

ComplexBall ComplexBall::exact(const Rational& v, mpfr_prec_t prec) {
  BigFloat m(v, prec);
  // set_q rounds; one ulp covers it.
  BigFloat r = ulp_bound(m);
  return ComplexBall(BigComplex(m), r);
}

BigFloat ComplexBall::abs_lower() const {
  BigFloat l = sub_down(modulus_down(mid_), rad_);
  if (l.sign() < 0) return BigFloat(0L, l.precision());
  return l;
}

BigFloat ComplexBall::abs_upper() const { return add_up(modulus_up(mid_), rad_); }

bool ComplexBall::contains_zero() const { return abs_lower().is_zero(); }

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  BigComplex m = a.mid_ + b.mid_;
  BigFloat r = add_up(add_up(a.rad_, b.rad_), rounding_slack(modulus_up(m)));
  return ComplexBall(std::move(m), std::move(r));
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  BigComplex m = a.mid_ - b.mid_;
  BigFloat r = add_up(add_up(a.rad_, b.rad_), rounding_slack(modulus_up(m)));
  return ComplexBall(std::move(m), std::move(r));
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  BigComplex m = a.mid_ * b.mid_;
  BigFloat ma = modulus_up(a.mid_);
  BigFloat mb = modulus_up(b.mid_);
  BigFloat r = add_up(mul_up(ma, b.rad_), mul_up(mb, a.rad_));
  r = add_up(r, mul_up(a.rad_, b.rad_));
  r = add_up(r, rounding_slack(mul_up(ma, mb)));
  return ComplexBall(std::move(m), std::move(r));
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  BigFloat lo = b.abs_lower();
  if (lo.is_zero()) throw std::domain_error("ball division by a disk containing zero");
  BigComplex one(BigFloat(1L, b.mid_.precision()));
  BigComplex inv_mid = one / b.mid_;
  BigFloat mb_down = modulus_down(b.mid_);
  // |1/(c+y) - 1/c| <= r / (|c| (|c| - r)) for |y| <= r < |c|.
  BigFloat r = div_up(b.rad_, mul_up(mb_down, lo));
  r = add_up(r, rounding_slack(div_up(BigFloat(1L, mb_down.precision()), mb_down)));
  return a * ComplexBall(std::move(inv_mid), std::move(r));
}

}  // namespace lincrit
