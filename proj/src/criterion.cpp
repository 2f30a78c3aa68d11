#include "lincrit/criterion.hpp"

#include "lincrit/polylog.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>

namespace lincrit {

// ---- gammas -----------------------------------------------------------------------------------

Gamma Gamma::rational(const Rational& v) {
  Gamma g;
  g.exact_ = v;
  return g;
}

Gamma Gamma::polylog(unsigned order, const Rational& arg) {
  if (order == 0) throw std::invalid_argument("polylog order must be positive");
  if (abs(arg) >= 1) throw std::domain_error("polylog argument must satisfy |x| < 1");
  Gamma g;
  g.order_ = order;
  g.arg_ = arg;
  return g;
}

std::string Gamma::provenance() const {
  if (exact_) return "rational " + to_string(*exact_);
  return "Li_" + std::to_string(order_) + "(" + to_string(arg_) + ")";
}

BigFloat Gamma::value(mpfr_prec_t wp) const {
  if (exact_) return BigFloat(*exact_, wp);
  return lincrit::polylog(order_, arg_, wp);
}

BigFloat Gamma::error(const BigFloat& value) const {
  mpfr_prec_t wp = value.precision();
  if (exact_) return BigFloat(0L, wp);
  // Relative error below 2^(1-wp) of the true value, hence below 2^(2-wp) of the computed one.
  return mul_up(abs(value), pow2(2 - static_cast<long>(wp), wp));
}

// ---- families ---------------------------------------------------------------------------------

ApproximationFamily::ApproximationFamily(int m, int l, bool extended, std::vector<Gamma> gammas, QFn q, PFn p)
    : m_(m), l_(l), extended_(extended), gammas_(std::move(gammas)), q_(std::move(q)), p_(std::move(p)) {
  if (m < 1 || l < 1 || l > m) throw std::invalid_argument("family needs 1 <= l <= m");
  if (static_cast<int>(gammas_.size()) != m) throw std::invalid_argument("family needs exactly m gammas");
  if (!q_ || !p_) throw std::invalid_argument("family accessors must be set");
}

ApproximationFamily ApproximationFamily::from_tables(int m, int l, bool extended, std::vector<Gamma> gammas,
                                                     long n_start, std::vector<std::vector<Rational>> q,
                                                     std::vector<std::vector<std::vector<Rational>>> p) {
  const int cols = extended ? m + 1 : l;
  const int first = extended ? 0 : 1;
  if (q.size() != p.size()) throw std::invalid_argument("q and p tables cover different windows");
  for (std::size_t t = 0; t < q.size(); ++t) {
    if (static_cast<int>(q[t].size()) != cols) throw std::invalid_argument("q table has the wrong column count");
    if (static_cast<int>(p[t].size()) != m) throw std::invalid_argument("p table has the wrong row count");
    for (const auto& row : p[t])
      if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("p table has the wrong column count");
  }
  auto qt = std::make_shared<const std::vector<std::vector<Rational>>>(std::move(q));
  auto pt = std::make_shared<const std::vector<std::vector<std::vector<Rational>>>>(std::move(p));
  auto slot = [n_start, size = qt->size()](long n) {
    if (n < n_start || n - n_start >= static_cast<long>(size))
      throw std::out_of_range("n = " + std::to_string(n) + " outside the tabulated window");
    return static_cast<std::size_t>(n - n_start);
  };
  QFn qf = [qt, slot, first](long n, int nu) { return (*qt)[slot(n)][static_cast<std::size_t>(nu - first)]; };
  PFn pf = [pt, slot, first](long n, int mu, int nu) {
    return (*pt)[slot(n)][static_cast<std::size_t>(mu - 1)][static_cast<std::size_t>(nu - first)];
  };
  return ApproximationFamily(m, l, extended, std::move(gammas), std::move(qf), std::move(pf));
}

bool ApproximationFamily::all_gammas_exact() const {
  return std::all_of(gammas_.begin(), gammas_.end(), [](const Gamma& g) { return g.is_exact(); });
}

Rational ApproximationFamily::q(long n, int nu) const {
  if (nu < nu_first() || nu > nu_last()) throw std::out_of_range("column index outside the family");
  return q_(n, nu);
}

Rational ApproximationFamily::p(long n, int mu, int nu) const {
  if (mu < 1 || mu > m_) throw std::out_of_range("row index outside the family");
  if (nu < nu_first() || nu > nu_last()) throw std::out_of_range("column index outside the family");
  return p_(n, mu, nu);
}

RatMat ApproximationFamily::q_row(long n) const {
  RatMat r(1, static_cast<std::size_t>(columns()));
  for (int c = 1; c <= columns(); ++c) r(0, static_cast<std::size_t>(c - 1)) = q(n, nu_of(c));
  return r;
}

RatMat ApproximationFamily::p_block(long n) const {
  RatMat r(static_cast<std::size_t>(m_), static_cast<std::size_t>(columns()));
  for (int mu = 1; mu <= m_; ++mu)
    for (int c = 1; c <= columns(); ++c)
      r(static_cast<std::size_t>(mu - 1), static_cast<std::size_t>(c - 1)) = p(n, mu, nu_of(c));
  return r;
}

RatMat ApproximationFamily::stacked(long n) const { return q_row(n).stack_below(p_block(n)); }

bool ApproximationFamily::integral_at(long n) const { return stacked(n).is_integral(); }

std::vector<IndexSet> ApproximationFamily::column_choices() const {
  if (!extended_) return {IndexSet::full(l_)};
  return IndexSet::all(columns(), l_);
}

namespace {

Integer lcm_or_one(long n) { return n >= 1 ? lcm_upto(static_cast<unsigned long>(n)) : Integer(1); }

struct LevelValues {
  Rational v0;
  std::vector<std::vector<Rational>> w;  // [i-1][j-1]
};

// Pade values at z = 1 per level, computed once.
class PadeCache {
 public:
  PadeCache(int k, std::vector<Rational> alphas) : k_(k), alphas_(std::move(alphas)) {}

  std::shared_ptr<const LevelValues> at(long N) {
    if (N < 0) throw std::out_of_range("Pade level " + std::to_string(N) + " is negative");
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(N);
      if (it != cache_.end()) return it->second;
    }
    const int M = static_cast<int>(alphas_.size());
    PadeSystem sys = build_pade_system(k_, M, N, alphas_);
    auto lv = std::make_shared<LevelValues>();
    lv->v0 = sys.V0(Rational(1));
    lv->w.assign(static_cast<std::size_t>(M), std::vector<Rational>(static_cast<std::size_t>(k_)));
    for (int i = 1; i <= M; ++i)
      for (int j = 1; j <= k_; ++j)
        lv->w[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = sys.w(i, j)(Rational(1));
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(N, std::move(lv)).first->second;
  }

 private:
  int k_;
  std::vector<Rational> alphas_;
  std::mutex mu_;
  std::map<long, std::shared_ptr<const LevelValues>> cache_;
};

}  // namespace

ApproximationFamily pade_family(int k, const std::vector<Rational>& alphas, int l, bool extended,
                                std::function<Rational(long N)> scale) {
  const int M = static_cast<int>(alphas.size());
  validate_pade_input(k, M, 0, alphas);
  for (const auto& a : alphas)
    if (abs(a) >= 1) throw std::domain_error("points must satisfy |alpha| < 1");
  const int m = k * M;
  std::vector<Gamma> gammas;
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= M; ++i)
      gammas.push_back(Gamma::polylog(static_cast<unsigned>(j), -alphas[static_cast<std::size_t>(i - 1)]));
  auto cache = std::make_shared<PadeCache>(k, alphas);
  if (!scale) scale = [](long) { return Rational(1); };
  auto s = std::make_shared<const std::function<Rational(long)>>(std::move(scale));
  auto qf = [cache, s](long n, int nu) -> Rational {
    long N = n + nu - 1;
    return (*s)(N) * cache->at(N)->v0;
  };
  auto pf = [cache, s, M](long n, int mu, int nu) -> Rational {
    long N = n + nu - 1;
    int i = (mu - 1) % M + 1;
    int j = (mu - 1) / M + 1;
    return (*s)(N) * cache->at(N)->w[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  };
  return ApproximationFamily(m, l, extended, std::move(gammas), qf, pf);
}

ApproximationFamily reciprocal_pade_family(int k, int M, const Integer& q, int l, bool extended) {
  if (abs(q) < 2) throw std::invalid_argument("q must satisfy |q| >= 2");
  const Integer dM = lcm_or_one(M);
  auto scale = [k, M, q, dM](long N) {
    auto e = static_cast<unsigned long>(N);
    return Rational(pow(q, static_cast<unsigned long>(k * M) * e) * pow(dM, static_cast<unsigned long>(k) * e));
  };
  return pade_family(k, reciprocal_points(M, q), l, extended, scale);
}

// ---- linear forms and certified values -----------------------------------------------------------

bool LinearForm::is_zero() const {
  return constant == 0 && std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  if (coeffs.size() < o.coeffs.size()) coeffs.resize(o.coeffs.size());
  constant += o.constant;
  for (std::size_t i = 0; i < o.coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

LinearForm& LinearForm::operator*=(const Rational& s) {
  constant *= s;
  for (auto& c : coeffs) c *= s;
  return *this;
}

namespace {

long bit_size(const Rational& x) {
  if (x == 0) return 0;
  return static_cast<long>(std::max(mpz_sizeinbase(x.get_num_mpz_t(), 2), mpz_sizeinbase(x.get_den_mpz_t(), 2)));
}

// Rounding allowance for the conversion of an exact rational.
BigFloat conv_error(const BigFloat& x) { return ulp_bound(x); }

struct Accumulator {
  BigFloat value;
  BigFloat error;
  explicit Accumulator(mpfr_prec_t wp) : value(0L, wp), error(0L, wp) {}

  void add_exact(const Rational& c) {
    BigFloat cf(c, value.precision());
    error = add_up(error, conv_error(cf));
    value += cf;
    error = add_up(error, ulp_bound(value));
  }

  // c * gamma, with gamma known to within gerr.
  void add_product(const Rational& c, const BigFloat& g, const BigFloat& gerr) {
    BigFloat cf(c, value.precision());
    BigFloat ce = conv_error(cf);
    BigFloat t = cf * g;
    error = add_up(error, mul_up(add_up(abs(cf), ce), gerr));
    error = add_up(error, mul_up(abs(g), ce));
    error = add_up(error, ulp_bound(t));
    value += t;
    error = add_up(error, ulp_bound(value));
  }
};

CertifiedValue finish(const Accumulator& acc, mpfr_prec_t prec) {
  CertifiedValue out;
  out.value = acc.value.with_precision(prec);
  out.error = add_up(acc.error, ulp_bound(out.value)).with_precision(prec);
  out.error = add_up(out.error, ulp_bound(out.error));
  out.nonzero = abs(acc.value) > acc.error;
  return out;
}

}  // namespace

CertifiedValue evaluate(const LinearForm& form, const std::vector<Gamma>& gammas, mpfr_prec_t prec) {
  if (form.coeffs.size() > gammas.size()) throw std::invalid_argument("form has more coefficients than gammas");
  bool exact = true;
  long bits = bit_size(form.constant);
  for (std::size_t i = 0; i < form.coeffs.size(); ++i) {
    if (form.coeffs[i] == 0) continue;
    bits = std::max(bits, bit_size(form.coeffs[i]));
    if (!gammas[i].is_exact()) exact = false;
  }
  if (form.is_zero()) {
    CertifiedValue out;
    out.value = BigFloat(0L, prec);
    out.error = BigFloat(0L, prec);
    out.exact = Rational(0);
    out.is_zero = true;
    return out;
  }
  if (exact) {
    Rational v = form.constant;
    for (std::size_t i = 0; i < form.coeffs.size(); ++i)
      if (form.coeffs[i] != 0) v += form.coeffs[i] * *gammas[i].exact();
    CertifiedValue out;
    out.value = BigFloat(v, prec);
    out.error = BigFloat(0L, prec);
    out.exact = v;
    out.is_zero = v == 0;
    out.nonzero = v != 0;
    return out;
  }
  mpfr_prec_t wp = 4 * prec + bits;
  for (int attempt = 0;; ++attempt, wp *= 2) {
    Accumulator acc(wp);
    acc.add_exact(form.constant);
    for (std::size_t i = 0; i < form.coeffs.size(); ++i) {
      if (form.coeffs[i] == 0) continue;
      BigFloat g = gammas[i].value(wp);
      acc.add_product(form.coeffs[i], g, gammas[i].error(g));
    }
    CertifiedValue out = finish(acc, prec);
    if (out.nonzero || attempt == 3) return out;
  }
}

EpsMatrix eps_matrix(const ApproximationFamily& fam, long n, mpfr_prec_t prec) {
  const int m = fam.m();
  const int cols = fam.columns();
  EpsMatrix out;
  out.n = n;
  out.precision = prec;
  RatMat q = fam.q_row(n);
  RatMat p = fam.p_block(n);
  out.value.assign(static_cast<std::size_t>(m), std::vector<BigFloat>(static_cast<std::size_t>(cols)));
  out.error = out.value;

  if (fam.all_gammas_exact()) {
    RatMat e(static_cast<std::size_t>(m), static_cast<std::size_t>(cols));
    for (int mu = 1; mu <= m; ++mu)
      for (int c = 1; c <= cols; ++c) {
        auto r = static_cast<std::size_t>(mu - 1);
        auto s = static_cast<std::size_t>(c - 1);
        e(r, s) = q(0, s) * *fam.gamma(mu).exact() - p(r, s);
        out.value[r][s] = BigFloat(e(r, s), prec);
        out.error[r][s] = BigFloat(0L, prec);
      }
    out.exact = std::move(e);
    return out;
  }

  long bits = 0;
  for (const auto& x : q.data()) bits = std::max(bits, bit_size(x));
  for (const auto& x : p.data()) bits = std::max(bits, bit_size(x));
  mpfr_prec_t wp = 4 * prec + bits;
  for (int attempt = 0;; ++attempt, wp *= 2) {
    out.unresolved.clear();
    for (int mu = 1; mu <= m; ++mu) {
      BigFloat g = fam.gamma(mu).value(wp);
      BigFloat ge = fam.gamma(mu).error(g);
      for (int c = 1; c <= cols; ++c) {
        auto r = static_cast<std::size_t>(mu - 1);
        auto s = static_cast<std::size_t>(c - 1);
        Accumulator acc(wp);
        acc.add_product(q(0, s), g, ge);
        acc.add_exact(-p(r, s));
        CertifiedValue v = finish(acc, prec);
        out.value[r][s] = v.value;
        out.error[r][s] = v.error;
        bool zero = q(0, s) == 0 && p(r, s) == 0;
        if (!zero && !v.nonzero) out.unresolved.emplace_back(mu, c);
      }
    }
    if (out.unresolved.empty() || attempt == 3) return out;
  }
}

LinearForm minor_linear_form(const ApproximationFamily& fam, long n, const IndexSet& mu, const IndexSet& cols) {
  const std::size_t l = mu.size();
  if (cols.size() != l) throw std::invalid_argument("row and column choices differ in size");
  if (mu.ambient() != fam.m() || cols.ambient() != fam.columns())
    throw std::invalid_argument("index sets do not match the family");
  RatMat q = fam.q_row(n).select_cols(cols);
  RatMat p = fam.p_block(n).select(mu, cols);
  LinearForm f;
  f.coeffs.assign(static_cast<std::size_t>(fam.m()), Rational(0));
  // Expansion of det [gamma | p ; 1 | q]^(mu-hat,-) along its first column.
  f.constant = (l % 2 == 0 ? 1 : -1) * det(p);
  for (std::size_t r = 0; r < l; ++r) {
    RatMat sub(l, l);
    std::size_t row = 0;
    for (std::size_t t = 0; t < l; ++t) {
      if (t == r) continue;
      for (std::size_t c = 0; c < l; ++c) sub(row, c) = p(t, c);
      ++row;
    }
    for (std::size_t c = 0; c < l; ++c) sub(l - 1, c) = q(0, c);
    f.coeffs[static_cast<std::size_t>(mu[r] - 1)] = (r % 2 == 0 ? 1 : -1) * det(sub);
  }
  return f;
}

bool linear_form_identity_check(const ApproximationFamily& fam, long n) {
  if (!fam.all_gammas_exact()) throw std::invalid_argument("identity check needs rational gammas");
  std::vector<Rational> g;
  for (const auto& x : fam.gammas()) g.push_back(*x.exact());
  RatMat q = fam.q_row(n);
  RatMat p = fam.p_block(n);
  for (const auto& mu : IndexSet::all(fam.m(), fam.l()))
    for (const auto& cols : fam.column_choices()) {
      const std::size_t l = mu.size();
      RatMat e(l, l), bordered(l + 1, l + 1);
      for (std::size_t r = 0; r < l; ++r) {
        auto row = static_cast<std::size_t>(mu[r] - 1);
        bordered(r, 0) = g[row];
        for (std::size_t c = 0; c < l; ++c) {
          auto col = static_cast<std::size_t>(cols[c] - 1);
          e(r, c) = q(0, col) * g[row] - p(row, col);
          bordered(r, c + 1) = p(row, col);
        }
      }
      bordered(l, 0) = 1;
      for (std::size_t c = 0; c < l; ++c) bordered(l, c + 1) = q(0, static_cast<std::size_t>(cols[c] - 1));
      LinearForm f = minor_linear_form(fam, n, mu, cols);
      Rational via_form = f.constant;
      for (std::size_t i = 0; i < g.size(); ++i) via_form += f.coeffs[i] * g[i];
      Rational d = det(e);
      if (d != det(bordered) || d != via_form) return false;
    }
  return true;
}

// ---- denominator plans ------------------------------------------------------------------------

DenominatorPlan unit_plan() {
  return {"unit", [](long, int) { return Integer(1); }, [](long, int) { return Integer(1); }};
}

DenominatorPlan reciprocal_pade_plan(int k, int M, int nu_last, bool drop_lcm_factor) {
  if (k < 1 || M < 1) throw std::invalid_argument("k and M must be positive");
  const Integer dM = lcm_or_one(M);
  auto D = [k, M, nu_last, dM, drop_lcm_factor](long n, int mu) {
    long N = n + nu_last - 1;
    if (N < 0) throw std::out_of_range("plan level is negative");
    int j = (mu - 1) / M + 1;
    Integer d = pow(dM, static_cast<unsigned long>(k) * static_cast<unsigned long>(M - 1) * static_cast<unsigned long>(N));
    if (!drop_lcm_factor) d *= pow(lcm_or_one(static_cast<long>(k) * M * N), static_cast<unsigned long>(j));
    return d;
  };
  std::string label = drop_lcm_factor ? "reciprocal-pade-without-lcm" : "reciprocal-pade";
  return {label, D, [](long, int) { return Integer(1); }};
}

PlanCheck check_plan(const ApproximationFamily& fam, const DenominatorPlan& plan, long n) {
  PlanCheck out;
  auto fail = [&](std::string s) {
    out.ok = false;
    out.failures.push_back(std::move(s));
  };
  const int m = fam.m();
  std::vector<Integer> D(static_cast<std::size_t>(m + 1));
  for (int mu = 1; mu <= m; ++mu) {
    D[static_cast<std::size_t>(mu)] = plan.D(n, mu);
    if (D[static_cast<std::size_t>(mu)] <= 0) fail("D(" + std::to_string(n) + "," + std::to_string(mu) + ") <= 0");
  }
  for (int c = 1; c <= fam.columns(); ++c) {
    int nu = fam.nu_of(c);
    Integer delta = plan.delta(n, nu);
    if (delta <= 0) {
      fail("delta(" + std::to_string(n) + "," + std::to_string(nu) + ") <= 0");
      continue;
    }
    if (!is_integer(fam.q(n, nu) / Rational(delta))) fail("q/delta not integral at nu=" + std::to_string(nu));
    for (int mu1 = 1; mu1 <= m; ++mu1) {
      Rational pv = fam.p(n, mu1, nu) / Rational(delta);
      for (int mu2 = mu1; mu2 <= m; ++mu2)
        if (!is_integer(Rational(D[static_cast<std::size_t>(mu2)]) * pv))
          fail("D(" + std::to_string(mu2) + ") p(" + std::to_string(mu1) + "," + std::to_string(nu) +
               ")/delta not integral");
    }
  }
  return out;
}

IntegralityAudit integrality_audit(const ApproximationFamily& fam, const DenominatorPlan& plan, long n) {
  IntegralityAudit out;
  out.n = n;
  const int m = fam.m();
  const int l = fam.l();
  RatMat st = fam.stacked(n);
  std::vector<Rational> rowscale(static_cast<std::size_t>(l));
  for (int i = 1; i <= l; ++i) rowscale[static_cast<std::size_t>(i - 1)] = Rational(plan.D(n, m - l + i));
  std::vector<Rational> colscale(static_cast<std::size_t>(fam.columns()));
  for (int c = 1; c <= fam.columns(); ++c) colscale[static_cast<std::size_t>(c - 1)] = Rational(plan.delta(n, fam.nu_of(c)));
  for (const auto& xi : IndexSet::all(m + 1, l))
    for (const auto& cols : fam.column_choices()) {
      RatMat sub = st.select(xi, cols);
      for (std::size_t i = 0; i < sub.rows(); ++i)
        for (std::size_t j = 0; j < sub.cols(); ++j) {
          sub(i, j) = sub(i, j) * rowscale[i] / colscale[static_cast<std::size_t>(cols[j] - 1)];
          if (!is_integer(sub(i, j)))
            out.violations.push_back({xi, cols, static_cast<int>(i + 1), static_cast<int>(j + 1), sub(i, j)});
        }
      Rational d = det(sub);
      if (!is_integer(d)) out.violations.push_back({xi, cols, 0, 0, d});
      ++out.minors_checked;
    }
  out.ok = out.violations.empty();
  return out;
}

Rational plan_factor(const ApproximationFamily& fam, const DenominatorPlan& plan, long n, const IndexSet& cols) {
  const int m = fam.m();
  const int l = fam.l();
  if (static_cast<int>(cols.size()) != l) throw std::invalid_argument("column choice must have l entries");
  Rational f = 1;
  for (int i = 1; i <= l; ++i)
    f *= make_rational(plan.D(n, m - l + i), plan.delta(n, fam.nu_of(cols[static_cast<std::size_t>(i - 1)])));
  return f;
}

RefinedMinor refined_scaled_minor(const ApproximationFamily& fam, const DenominatorPlan& plan, const IndexSet& mu,
                                  long n, mpfr_prec_t prec, std::optional<IndexSet> cols) {
  RefinedMinor out;
  out.n = n;
  out.mu = mu;
  out.cols = cols ? *cols : fam.column_choices().front();
  out.plan = check_plan(fam, plan, n);
  out.audit = integrality_audit(fam, plan, n);
  out.factor = plan_factor(fam, plan, n, out.cols);
  LinearForm f = minor_linear_form(fam, n, mu, out.cols);
  f *= out.factor;
  out.scaled = evaluate(f, fam.gammas(), prec);
  return out;
}

// ---- minor decay ------------------------------------------------------------------------------

MinorDecayReport minor_decay_report(const ApproximationFamily& fam, long n_start, long n_end, mpfr_prec_t prec,
                                    const DenominatorPlan* plan, double margin) {
  if (n_start < 0) throw std::invalid_argument("window must start at n >= 0");
  if (n_end - n_start + 1 < 8) throw std::invalid_argument("decay window needs at least 8 indices");
  MinorDecayReport rep;
  rep.n_start = n_start;
  rep.n_end = n_end;
  rep.precision = prec;
  rep.scaled = plan != nullptr;
  rep.margin = margin;
  const auto mus = IndexSet::all(fam.m(), fam.l());
  const auto colsets = fam.column_choices();
  for (const auto& mu : mus)
    for (const auto& cols : colsets) {
      MinorDecay md;
      md.mu = mu;
      md.cols = cols;
      std::vector<BigFloat> norms;
      for (long n = n_start; n <= n_end; ++n) {
        LinearForm f = minor_linear_form(fam, n, mu, cols);
        if (plan) f *= plan_factor(fam, *plan, n, cols);
        CertifiedValue v = evaluate(f, fam.gammas(), prec);
        md.n.push_back(n);
        md.value.push_back(v.value);
        md.error.push_back(v.error);
        if (!v.is_zero && !v.nonzero) md.unresolved.push_back(n);
        if (n >= 1) norms.push_back(v.is_zero ? BigFloat(0L, prec) : abs(v.value));
      }
      md.estimate = pituk_from_norms(norms, std::max(1L, n_start));
      BigFloat scaled_limit = md.estimate.limit * BigFloat::from_double(1.0 + margin, prec);
      md.decaying = md.estimate.zero_solution || scaled_limit < BigFloat(1L, prec);
      rep.minors.push_back(std::move(md));
    }
  rep.all_decaying = std::all_of(rep.minors.begin(), rep.minors.end(), [](const MinorDecay& d) { return d.decaying; });
  return rep;
}

// ---- non-vanishing probes ---------------------------------------------------------------------

std::string to_string(ProbeMode m) {
  switch (m) {
    case ProbeMode::LambdaEps:
      return "lambda-eps";
    case ProbeMode::ThetaLambda:
      return "theta-lambda";
    default:
      return "stacked";
  }
}

namespace {

void require_mode(const ApproximationFamily& fam, ProbeMode mode) {
  if (mode == ProbeMode::Stacked) {
    if (!fam.extended()) throw std::invalid_argument("the stacked determinant needs the full column set nu = 0..m");
  } else if (fam.extended()) {
    throw std::invalid_argument("lambda probes need a family with the l columns nu = 1..l");
  }
}

std::size_t probe_width(const ApproximationFamily& fam, ProbeMode mode) {
  return static_cast<std::size_t>(mode == ProbeMode::LambdaEps ? fam.m() : fam.m() + 1);
}

// Per-n data shared by all probes of one report.
struct WindowData {
  long n = 0;
  std::vector<LinearForm> forms;  // minor forms per mu (LambdaEps)
  RatMat stacked;                 // ThetaLambda / Stacked
};

std::vector<WindowData> window_data(const ApproximationFamily& fam, ProbeMode mode, long n_start, long n_end) {
  std::vector<WindowData> out;
  const auto mus = IndexSet::all(fam.m(), fam.l());
  const IndexSet cols = IndexSet::full(fam.columns());
  for (long n = n_start; n <= n_end; ++n) {
    WindowData w;
    w.n = n;
    if (mode == ProbeMode::LambdaEps) {
      for (const auto& mu : mus) w.forms.push_back(minor_linear_form(fam, n, mu, cols));
    } else {
      w.stacked = fam.stacked(n);
    }
    out.push_back(std::move(w));
  }
  return out;
}

ProbeResult run_probe(const ApproximationFamily& fam, const RatMat& lambda, ProbeMode mode,
                      const std::vector<WindowData>& data, mpfr_prec_t prec, bool& exact) {
  ProbeResult res;
  res.matrix = lambda;
  const auto mus = IndexSet::all(fam.m(), fam.l());
  const IndexSet rows = IndexSet::full(fam.l());
  std::vector<Rational> lam_minors;
  if (mode == ProbeMode::LambdaEps)
    for (const auto& mu : mus) lam_minors.push_back(minor(lambda, rows, mu));
  for (const auto& w : data) {
    if (mode == ProbeMode::LambdaEps) {
      // Binet-Cauchy: det(lambda eps) = sum_mu det lambda^(-,mu) det eps^(mu,-).
      LinearForm f;
      f.coeffs.assign(static_cast<std::size_t>(fam.m()), Rational(0));
      for (std::size_t t = 0; t < mus.size(); ++t) {
        if (lam_minors[t] == 0) continue;
        LinearForm g = w.forms[t];
        g *= lam_minors[t];
        f += g;
      }
      CertifiedValue v = evaluate(f, fam.gammas(), prec);
      if (!v.exact) exact = false;
      if (v.nonzero)
        res.nonsingular.push_back(w.n);
      else if (!v.is_zero)
        res.unresolved.push_back(w.n);
    } else {
      Rational d = mode == ProbeMode::Stacked ? det(w.stacked) : det(lambda * w.stacked);
      if (d != 0) res.nonsingular.push_back(w.n);
    }
  }
  return res;
}

void check_lambda(const ApproximationFamily& fam, const RatMat& lambda, ProbeMode mode) {
  if (lambda.rows() != static_cast<std::size_t>(fam.l()) || lambda.cols() != probe_width(fam, mode))
    throw std::invalid_argument("probe matrix has the wrong shape");
  if (!lambda.is_integral()) throw std::invalid_argument("probe matrix must have integer entries");
  if (rank(lambda) != static_cast<std::size_t>(fam.l())) throw std::invalid_argument("probe matrix has rank < l");
}

// Primitive vectors in [-B, B]^w with positive leading nonzero entry, lexicographic.
std::vector<std::vector<long>> primitive_rows(std::size_t w, int B) {
  std::vector<std::vector<long>> out;
  std::vector<long> v(w, -B);
  while (true) {
    auto lead = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
    if (lead != v.end() && *lead > 0) {
      long g = 0;
      for (long x : v) g = std::gcd(g, std::labs(x));
      if (g == 1) out.push_back(v);
    }
    std::size_t i = w;
    while (i > 0 && v[i - 1] == B) v[--i] = -B;
    if (i == 0) break;
    ++v[i - 1];
  }
  return out;
}

}  // namespace

ProbeResult probe_matrix(const ApproximationFamily& fam, const RatMat& lambda, ProbeMode mode, long n_start,
                         long n_end, mpfr_prec_t prec) {
  require_mode(fam, mode);
  if (mode != ProbeMode::Stacked) check_lambda(fam, lambda, mode);
  if (n_end < n_start) throw std::invalid_argument("empty window");
  bool exact = true;
  return run_probe(fam, lambda, mode, window_data(fam, mode, n_start, n_end), prec, exact);
}

ProbeReport nonvanishing_probe(const ApproximationFamily& fam, long n_start, long n_end, ProbeMode mode,
                               const ProbeConfig& cfg, mpfr_prec_t prec) {
  if (cfg.bound < 1) throw std::invalid_argument("probe bound must be at least 1");
  if (n_end < n_start) throw std::invalid_argument("empty window");
  require_mode(fam, mode);
  ProbeReport rep;
  rep.mode = mode;
  rep.n_start = n_start;
  rep.n_end = n_end;
  auto data = window_data(fam, mode, n_start, n_end);
  bool exact = true;

  if (mode == ProbeMode::Stacked) {
    rep.probes.push_back(run_probe(fam, RatMat(), mode, data, prec, exact));
  } else {
    const std::size_t w = probe_width(fam, mode);
    const auto l = static_cast<std::size_t>(fam.l());
    auto rows = primitive_rows(w, cfg.bound);
    auto make = [&](const std::vector<std::size_t>& pick) {
      RatMat lam(l, w);
      for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < w; ++j) lam(i, j) = rows[pick[i]][j];
      return lam;
    };
    // Increasing l-combinations of the primitive rows.
    std::vector<std::size_t> pick(l);
    std::iota(pick.begin(), pick.end(), 0);
    bool more = rows.size() >= l;
    while (more) {
      if (rep.enumerated >= cfg.enumeration_cap) {
        rep.truncated = true;
        break;
      }
      RatMat lam = make(pick);
      if (rank(lam) == l) {
        rep.probes.push_back(run_probe(fam, lam, mode, data, prec, exact));
        ++rep.enumerated;
      }
      std::size_t i = l;
      while (i > 0 && pick[i - 1] == rows.size() - l + i - 1) --i;
      if (i == 0) {
        more = false;
      } else {
        ++pick[i - 1];
        for (std::size_t t = i; t < l; ++t) pick[t] = pick[t - 1] + 1;
      }
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long> dist(-cfg.bound, cfg.bound);
    int attempts = 0;
    while (rep.random < static_cast<std::size_t>(cfg.random) && attempts < 100 * (cfg.random + 1)) {
      ++attempts;
      RatMat lam(l, w);
      for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < w; ++j) lam(i, j) = dist(rng);
      if (rank(lam) != l) continue;
      ProbeResult r = run_probe(fam, lam, mode, data, prec, exact);
      r.random = true;
      rep.probes.push_back(std::move(r));
      ++rep.random;
    }
  }
  rep.exact = exact;
  for (const auto& p : rep.probes)
    if (!p.nonsingular.empty()) ++rep.nonsingular_somewhere;
  rep.fraction = rep.probes.empty() ? 0.0
                                    : static_cast<double>(rep.nonsingular_somewhere) /
                                          static_cast<double>(rep.probes.size());
  return rep;
}

// ---- verdicts ---------------------------------------------------------------------------------

std::string to_string(CriterionMode m) {
  switch (m) {
    case CriterionMode::LambdaEps:
      return "lambda-eps";
    case CriterionMode::ThetaLambda:
      return "theta-lambda";
    case CriterionMode::FullColumns:
      return "full-columns";
    case CriterionMode::Refined:
      return "refined";
    default:
      return "refined-full-columns";
  }
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::Failed:
      return "failed";
    case Evidence::Assumed:
      return "assumed";
    case Evidence::Numeric:
      return "verified-numerically";
    default:
      return "verified-exactly";
  }
}

CriterionReport dimension_verdict(const ApproximationFamily& fam, CriterionMode mode, const MinorDecayReport& decay,
                                  const ProbeReport& probe, const std::vector<Hypothesis>& extra,
                                  const DenominatorPlan* plan) {
  CriterionReport rep;
  rep.mode = mode;
  rep.m = fam.m();
  rep.l = fam.l();
  for (const auto& d : decay.minors) rep.decay.push_back({d.mu, d.cols, d.estimate.limit, d.decaying});
  rep.probes = probe.probes.size();
  rep.probes_nonsingular = probe.nonsingular_somewhere;

  const bool refined = mode == CriterionMode::Refined || mode == CriterionMode::RefinedFullColumns;
  const bool full = mode == CriterionMode::FullColumns || mode == CriterionMode::RefinedFullColumns;

  Hypothesis h_decay{"minor decay", Evidence::Failed, ""};
  if (full != fam.extended()) {
    h_decay.detail = full ? "mode needs the full column set nu = 0..m" : "mode needs the columns nu = 1..l";
  } else if (refined != decay.scaled) {
    h_decay.detail = refined ? "decay report was not scaled by a denominator plan" : "decay report is scaled";
  } else if (decay.all_decaying) {
    h_decay.evidence = Evidence::Numeric;
    h_decay.detail = "every minor has nth-root limit below 1 on n = " + std::to_string(decay.n_start) + ".." +
                     std::to_string(decay.n_end);
  } else {
    std::size_t bad = 0;
    for (const auto& d : decay.minors)
      if (!d.decaying) ++bad;
    h_decay.detail = std::to_string(bad) + " of " + std::to_string(decay.minors.size()) + " minors do not decay";
  }
  rep.hypotheses.push_back(h_decay);

  Hypothesis h_int{"integrality", Evidence::Failed, ""};
  const std::string window = std::to_string(decay.n_start) + ".." + std::to_string(decay.n_end);
  if (refined && !plan) {
    h_int.detail = "refined modes need a denominator plan";
  } else {
    std::optional<long> bad;
    for (long n = decay.n_start; n <= decay.n_end && !bad; ++n)
      if (refined ? !check_plan(fam, *plan, n).ok : !fam.integral_at(n)) bad = n;
    if (bad) {
      h_int.detail = (refined ? "plan conditions fail at n = " : "non-integral q or p at n = ") + std::to_string(*bad);
    } else {
      h_int.evidence = Evidence::Exact;
      h_int.detail = (refined ? "plan " + plan->label + " holds on n = " : "q and p are integers on n = ") + window;
    }
  }
  rep.hypotheses.push_back(h_int);

  ProbeMode want = full ? ProbeMode::Stacked : mode == CriterionMode::ThetaLambda ? ProbeMode::ThetaLambda
                                                                                  : ProbeMode::LambdaEps;
  Hypothesis h_nv{"non-vanishing", Evidence::Failed, ""};
  if (probe.mode != want && !(refined && !full && probe.mode == ProbeMode::ThetaLambda)) {
    h_nv.detail = "probe mode " + to_string(probe.mode) + " does not match the criterion";
  } else if (probe.probes.empty()) {
    h_nv.detail = "no probes were run";
  } else if (probe.nonsingular_somewhere == probe.probes.size()) {
    h_nv.evidence = probe.exact ? Evidence::Exact : Evidence::Numeric;
    h_nv.detail = "all " + std::to_string(probe.probes.size()) + " probes non-singular somewhere in n = " +
                  std::to_string(probe.n_start) + ".." + std::to_string(probe.n_end);
    if (full && probe.probes.front().nonsingular.size() != static_cast<std::size_t>(probe.n_end - probe.n_start + 1)) {
      h_nv.evidence = Evidence::Failed;
      h_nv.detail = "the stacked determinant vanishes inside the window";
    }
  } else {
    h_nv.detail = std::to_string(probe.probes.size() - probe.nonsingular_somewhere) +
                  " probes singular on the whole window";
  }
  rep.hypotheses.push_back(h_nv);

  for (const auto& h : extra) {
    rep.hypotheses.push_back(h);
    if (h.evidence == Evidence::Assumed) rep.assumed.push_back(h.name + ": " + h.detail);
  }

  rep.extrapolations.push_back("minor decay beyond n = " + std::to_string(decay.n_end));
  if (full)
    rep.extrapolations.push_back("non-vanishing of the stacked determinant for every n");
  else
    rep.extrapolations.push_back("non-singularity for infinitely many n and for every admissible integer matrix");

  bool ok = std::all_of(rep.hypotheses.begin(), rep.hypotheses.end(),
                        [](const Hypothesis& h) { return h.evidence >= Evidence::Numeric; });
  if (ok) {
    rep.bound = 2 + fam.m() - fam.l();
    rep.conclusion = "dim >= " + std::to_string(*rep.bound) + " (experimental)";
  } else {
    rep.conclusion = "no conclusion";
  }
  return rep;
}

}  // namespace lincrit
