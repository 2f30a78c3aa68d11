#include "lincrit/example1.hpp"

#include <algorithm>
#include <numeric>

namespace lincrit {

Poly example1_quintic(const Rational& q) {
  if (q == 0) throw std::invalid_argument("q must be nonzero");
  return Poly{Rational(-2) / (q * q), Rational(0), Rational(9) / q, Rational(-6) / q, Rational(-5), Rational(4)};
}

ComplexBall example1_g(const ComplexBall& t, const Rational& q) {
  mpfr_prec_t p = t.mid().precision();
  ComplexBall t2 = t * t;
  ComplexBall num = t * (t2 - ComplexBall::exact(Rational(1) / q, p)) * (t2 - ComplexBall::exact(Rational(2) / q, p));
  return num / (t - ComplexBall::exact(1, p));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Fails:
      return "fails";
    default:
      return "inconclusive";
  }
}

std::string to_string(Example1Mode m) { return m == Example1Mode::Full ? "full" : "four_of_five"; }

namespace {

// Pads a logarithm computed at precision p by a relative-plus-absolute rounding allowance.
BigFloat log_slack(const BigFloat& v) {
  BigFloat one(1L, v.precision());
  return mul_up(add_up(abs(v), one), pow2(8 - static_cast<long>(v.precision()), v.precision()));
}

Verdict certify(const BigFloat& lower, const BigFloat& upper) {
  if (upper.sign() < 0) return Verdict::Holds;
  if (lower.sign() > 0) return Verdict::Fails;
  return Verdict::Inconclusive;
}

}  // namespace

Example1Values example1_criterion_values_at(const Integer& q, mpfr_prec_t prec) {
  if (q < 3) throw std::invalid_argument("q must be at least 3");
  Example1Values out;
  out.q = q;
  Rational qr(q);
  RootProfile prof = poly_roots(example1_quintic(qr), prec);
  mpfr_prec_t wp = prof.precision;
  out.precision = prec;

  struct Item {
    CertifiedRoot root;
    BigFloat mid, lo, hi;
  };
  std::vector<Item> items;
  for (const auto& r : prof.roots) {
    for (int k = 0; k < r.multiplicity; ++k) {
      ComplexBall t(r.z, r.radius);
      ComplexBall g = example1_g(t, qr);
      items.push_back({r, g.mid().modulus(), g.abs_lower(), g.abs_upper()});
    }
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.mid > b.mid; });

  BigFloat shift = BigFloat(2L, wp) * log(BigFloat(q, wp)) + BigFloat(4L, wp);
  std::vector<BigFloat> vlo, vhi;
  for (auto& it : items) {
    out.roots.push_back(it.root);
    out.abs_g.push_back(it.mid);
    out.abs_g_lower.push_back(it.lo);
    out.abs_g_upper.push_back(it.hi);
    BigFloat v = log(it.mid) + shift;
    out.values.push_back(v);
    BigFloat hi = log(it.hi) + shift;
    BigFloat lo = log(it.lo) + shift;
    vhi.push_back(add_up(hi, log_slack(hi)));
    vlo.push_back(lo.is_finite() ? sub_down(lo, log_slack(lo)) : lo);
  }
  for (std::size_t i = 0; i + 1 < items.size(); ++i) out.tied.push_back(!(items[i].lo > items[i + 1].hi));

  const bool tie23 = out.tied.size() > 1 && out.tied[1];
  if (items.size() >= 2 && !tie23) out.full = certify(vlo[1], vhi[1]);
  if (items.size() >= 3 && !tie23) out.four_of_five = certify(vlo[1] + vlo[2], add_up(vhi[1], vhi[2]));
  return out;
}

Example1Values example1_criterion_values(const Integer& q, mpfr_prec_t prec) {
  std::function<Example1Values(mpfr_prec_t)> compute = [&q](mpfr_prec_t p) {
    return example1_criterion_values_at(q, p);
  };
  std::function<bool(const Example1Values&, const Example1Values&, mpfr_prec_t)> accept =
      [](const Example1Values& a, const Example1Values& b, mpfr_prec_t p) {
        if (a.full != b.full || a.four_of_five != b.four_of_five) return false;
        if (a.values.size() != b.values.size()) return false;
        for (std::size_t i = 0; i < a.values.size(); ++i)
          if (!agree_to_bits(a.values[i], b.values[i], static_cast<long>(p) / 4)) return false;
        return true;
      };
  mpfr_prec_t used = prec;
  Example1Values v = with_escalation(compute, accept, prec, 3, &used);
  // Report the requested precision when the first comparison already agreed.
  v.precision = used / 2;
  return v;
}

MinQResult example1_min_q(Example1Mode mode, mpfr_prec_t prec, long scan) {
  MinQResult res;
  res.mode = mode;
  res.precision = prec;
  res.scan = scan;
  auto holds = [&](long q) {
    ++res.evaluations;
    return example1_criterion_values(Integer(q), prec).verdict(mode) == Verdict::Holds;
  };
  long lo = 2;  // below the admissible range: treated as failing
  long hi = 3;
  while (!holds(hi)) {
    lo = hi;
    if (hi > (1L << 40)) throw std::runtime_error("no admissible q found below 2^40");
    hi *= 2;
  }
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (holds(mid) ? hi : lo) = mid;
  }
  long cand = hi;
  bool restart = true;
  while (restart) {
    restart = false;
    for (long q = cand + 1; q <= cand + scan; ++q) {
      if (!holds(q)) {
        cand = q + 1;
        while (!holds(cand)) ++cand;
        restart = true;
        break;
      }
    }
  }
  res.q = cand;
  res.holds_on_scan = true;
  res.fails_below = cand == 3 || !holds(cand - 1);
  return res;
}

}  // namespace lincrit
