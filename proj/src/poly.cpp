#include "lincrit/poly.hpp"

#include <stdexcept>

namespace lincrit {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

Poly::Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { normalize(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

Poly Poly::linear_factor(const Rational& root) { return Poly{Rational(-root), Rational(1)}; }

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

const Rational& Poly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return c_.back();
}

Rational Poly::operator()(const Rational& z) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative(unsigned times) const {
  if (times == 0) return *this;
  if (c_.size() <= times) return Poly();
  std::vector<Rational> out(c_.size() - times);
  for (std::size_t i = times; i < c_.size(); ++i) {
    // falling factorial i (i-1) ... (i-times+1)
    Integer f = 1;
    for (unsigned t = 0; t < times; ++t) f *= static_cast<unsigned long>(i - t);
    out[i - times] = c_[i] * Rational(f);
  }
  return Poly(std::move(out));
}

Poly Poly::reversed(std::size_t d) const {
  if (degree() > static_cast<long>(d)) throw std::invalid_argument("reversal degree below polynomial degree");
  std::vector<Rational> out(d + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) out[d - i] = c_[i];
  return Poly(std::move(out));
}

Poly Poly::truncated(std::size_t d) const {
  if (c_.size() <= d + 1) return *this;
  return Poly(std::vector<Rational>(c_.begin(), c_.begin() + static_cast<long>(d + 1)));
}

Poly Poly::pow(unsigned e) const {
  Poly result = Poly::constant(1);
  Poly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  r *= Rational(1) / leading();
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> out(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(out);
  normalize();
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Poly operator-(Poly a) {
  for (auto& c : a.c_) c = -c;
  return a;
}

Poly poly_derivative(const Poly& p, unsigned times) { return p.derivative(times); }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const auto& bc = b.coeffs();
  long db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational inv_lead = Rational(1) / b.leading();
  for (long k = a.degree() - db; k >= 0; --k) {
    Rational t = r[static_cast<std::size_t>(k + db)] * inv_lead;
    q[static_cast<std::size_t>(k)] = t;
    if (t == 0) continue;
    for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= t * bc[static_cast<std::size_t>(j)];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<std::pair<Poly, int>> squarefree_factorization(const Poly& p) {
  // Yun's algorithm (characteristic zero).
  std::vector<std::pair<Poly, int>> out;
  if (p.degree() < 1) return out;
  Poly f = p.monic();
  Poly fp = f.derivative();
  Poly a = gcd(f, fp);
  Poly b = divmod(f, a).first;
  Poly c = divmod(fp, a).first;
  Poly d = c - b.derivative();
  int i = 1;
  while (b.degree() >= 1) {
    Poly g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (long i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    std::string cs = to_string(c);
    if (!s.empty()) {
      if (cs.front() == '-') {
        s += " - ";
        cs.erase(0, 1);
      } else {
        s += " + ";
      }
    }
    if (i == 0) {
      s += cs;
    } else {
      if (cs != "1") s += (cs == "-1" ? "-" : cs + "*");
      s += (i == 1 ? "z" : "z^" + std::to_string(i));
    }
  }
  return s;
}

}  // namespace lincrit
