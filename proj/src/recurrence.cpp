#include "lincrit/recurrence.hpp"

#include <string>

namespace lincrit {

Recurrence::Recurrence(int order, CoeffFn coeffs)
    : order_(order), fn_(std::move(coeffs)), memo_(std::make_shared<Memo>()) {
  if (order < 1) throw std::invalid_argument("recurrence order must be positive");
  if (!fn_) throw std::invalid_argument("missing coefficient source");
}

Recurrence Recurrence::constant(std::vector<Rational> coeffs) {
  if (coeffs.size() < 2) throw std::invalid_argument("constant recurrence needs at least two coefficients");
  int m = static_cast<int>(coeffs.size()) - 1;
  return Recurrence(m, [c = std::move(coeffs)](long) { return c; });
}

Recurrence Recurrence::from_table(int order, std::vector<std::vector<Rational>> table) {
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != order + 1) throw std::invalid_argument("coefficient row has wrong length");
  return Recurrence(order, [t = std::move(table)](long n) {
    if (n < 0 || static_cast<std::size_t>(n) >= t.size())
      throw std::out_of_range("no coefficients tabulated at n = " + std::to_string(n));
    return t[static_cast<std::size_t>(n)];
  });
}

Recurrence Recurrence::from_roots(const std::vector<std::pair<Rational, int>>& roots) {
  Poly p = Poly::constant(1);
  for (const auto& [r, k] : roots) {
    if (k < 1) throw std::invalid_argument("root multiplicity must be positive");
    p *= Poly::linear_factor(r).pow(static_cast<unsigned>(k));
  }
  return constant(p.coeffs());
}

std::vector<Rational> Recurrence::coeffs(long n) const {
  {
    std::lock_guard<std::mutex> g(memo_->lock);
    auto it = memo_->values.find(n);
    if (it != memo_->values.end()) return it->second;
  }
  std::vector<Rational> c = fn_(n);
  if (static_cast<int>(c.size()) != order_ + 1)
    throw std::invalid_argument("coefficient source returned wrong length at n = " + std::to_string(n));
  if (c[0] == 0) throw DegenerateCoefficient("alpha^(0) vanishes at n = " + std::to_string(n), n);
  if (c.back() == 0) throw DegenerateCoefficient("leading coefficient vanishes at n = " + std::to_string(n), n);
  std::lock_guard<std::mutex> g(memo_->lock);
  memo_->values.emplace(n, c);
  return c;
}

RatMat companion(const Recurrence& rec, long n) {
  const int m = rec.order();
  auto a = rec.coeffs(n);
  RatMat psi(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  for (int i = 0; i + 1 < m; ++i) psi(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)) = 1;
  for (int j = 1; j <= m; ++j)
    psi(static_cast<std::size_t>(m - 1), static_cast<std::size_t>(j - 1)) =
        -a[static_cast<std::size_t>(j - 1)] / a[static_cast<std::size_t>(m)];
  return psi;
}

RatMat companion_inverse(const Recurrence& rec, long n) {
  const int m = rec.order();
  auto a = rec.coeffs(n);
  RatMat inv(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) inv(0, static_cast<std::size_t>(j - 1)) = -a[static_cast<std::size_t>(j)] / a[0];
  for (int i = 1; i < m; ++i) inv(static_cast<std::size_t>(i), static_cast<std::size_t>(i - 1)) = 1;
  return inv;
}

RatMat companion_product(const Recurrence& rec, long n, long count) {
  RatMat p = RatMat::identity(static_cast<std::size_t>(rec.order()));
  for (long j = 0; j < count; ++j) p = companion(rec, n + j) * p;
  return p;
}

SolutionBundle::SolutionBundle(Recurrence rec, RatMat initial)
    : rec_(std::move(rec)), l_(initial.cols()), cache_(std::make_shared<Cache>()) {
  if (static_cast<int>(initial.rows()) != rec_.order())
    throw std::invalid_argument("initial values must have one row per order");
  cache_->cols.assign(l_, {});
  for (std::size_t j = 0; j < l_; ++j)
    for (std::size_t i = 0; i < initial.rows(); ++i) cache_->cols[j].push_back(initial(i, j));
}

void SolutionBundle::iterate(long up_to) const {
  std::lock_guard<std::mutex> g(cache_->lock);
  const int m = rec_.order();
  if (l_ == 0) return;
  while (static_cast<long>(cache_->cols[0].size()) <= up_to) {
    long n = static_cast<long>(cache_->cols[0].size()) - m;
    auto a = rec_.coeffs(n);
    for (auto& col : cache_->cols) {
      Rational s = 0;
      for (int j = 0; j < m; ++j) s += a[static_cast<std::size_t>(j)] * col[static_cast<std::size_t>(n + j)];
      col.push_back(-s / a[static_cast<std::size_t>(m)]);
    }
  }
}

Rational SolutionBundle::value(long n, std::size_t j) const {
  if (n < 0) throw std::out_of_range("negative solution index");
  if (j >= l_) throw std::out_of_range("solution column out of range");
  iterate(n);
  std::lock_guard<std::mutex> g(cache_->lock);
  return cache_->cols[j][static_cast<std::size_t>(n)];
}

std::vector<Rational> SolutionBundle::sequence(std::size_t j, long up_to) const {
  if (j >= l_) throw std::out_of_range("solution column out of range");
  iterate(up_to);
  std::lock_guard<std::mutex> g(cache_->lock);
  const auto& c = cache_->cols[j];
  return std::vector<Rational>(c.begin(), c.begin() + up_to + 1);
}

RatMat SolutionBundle::casoratian(long n) const {
  const int m = rec_.order();
  iterate(n + m - 1);
  std::lock_guard<std::mutex> g(cache_->lock);
  RatMat x(static_cast<std::size_t>(m), l_);
  for (int i = 0; i < m; ++i)
    for (std::size_t j = 0; j < l_; ++j) x(static_cast<std::size_t>(i), j) = cache_->cols[j][static_cast<std::size_t>(n + i)];
  return x;
}

bool abel_check(const SolutionBundle& bundle, long n, AbelSign sign) {
  const int m = bundle.recurrence().order();
  if (static_cast<int>(bundle.count()) != m) throw std::invalid_argument("Abel relation needs m solutions");
  auto a = bundle.recurrence().coeffs(n);
  long e = sign == AbelSign::Order ? m : n;
  Rational s = (e % 2 == 0) ? 1 : -1;
  return det(bundle.casoratian(n + 1)) == s * a[0] / a[static_cast<std::size_t>(m)] * det(bundle.casoratian(n));
}

SolutionBundle confluent_bundle(const std::vector<std::pair<Rational, int>>& roots) {
  Recurrence rec = Recurrence::from_roots(roots);
  const int m = rec.order();
  RatMat init(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  std::size_t col = 0;
  for (const auto& [lambda, mult] : roots) {
    for (int k = 1; k <= mult; ++k, ++col) {
      for (int n = 0; n < m; ++n) {
        long e = n - k + 1;
        init(static_cast<std::size_t>(n), col) =
            e < 0 ? Rational(0) : Rational(binomial(n, k - 1)) * pow(lambda, static_cast<unsigned long>(e));
      }
    }
  }
  return SolutionBundle(std::move(rec), std::move(init));
}

bool confluent_casoratian_check(const std::vector<std::pair<Rational, int>>& roots, long n_max) {
  SolutionBundle b = confluent_bundle(roots);
  Rational base = 1;
  Rational vandermonde = 1;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    base *= pow(roots[i].first, static_cast<unsigned long>(roots[i].second));
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      vandermonde *= pow(roots[j].first - roots[i].first,
                         static_cast<unsigned long>(roots[i].second * roots[j].second));
  }
  for (long n = 0; n <= n_max; ++n) {
    if (det(b.casoratian(n)) != pow(base, static_cast<unsigned long>(n)) * vandermonde) return false;
  }
  return true;
}

Rational MinorRecurrence::residual(const std::vector<Rational>& y) const {
  if (y.size() != order + 1) throw std::invalid_argument("residual needs order+1 sequence values");
  Rational s = 0;
  for (std::size_t k = 0; k <= order; ++k) s += (k % 2 == 0 ? c[k] : Rational(-c[k])) * y[k];
  return s;
}

namespace {

// Row j (0-based) holds [det P_j^(mu,nu)]_nu, P_j = Psi_{n+j-1}...Psi_n.
RatMat transfer_minor_rows(const Recurrence& rec, const IndexSet& mu, int l, long n, std::size_t rows) {
  const int m = rec.order();
  auto nus = IndexSet::all(m, l);
  RatMat r(rows, nus.size());
  RatMat p = RatMat::identity(static_cast<std::size_t>(m));
  for (std::size_t j = 0; j < rows; ++j) {
    if (j > 0) p = companion(rec, n + static_cast<long>(j) - 1) * p;
    for (std::size_t v = 0; v < nus.size(); ++v) r(j, v) = minor(p, mu, nus[v]);
  }
  return r;
}

}  // namespace

MinorRecurrence minor_recurrence(const Recurrence& rec, const IndexSet& mu, int l, long n) {
  const int m = rec.order();
  if (l < 1 || l > m) throw std::invalid_argument("minor size out of range");
  if (static_cast<int>(mu.size()) != l || mu.ambient() != m) throw std::invalid_argument("row choice does not match (m, l)");
  MinorRecurrence out;
  out.mu = mu;
  out.l = l;
  out.n = n;
  out.order = binomial(m, l).get_ui();
  RatMat r = transfer_minor_rows(rec, mu, l, n, out.order + 1);
  const int rows = static_cast<int>(out.order) + 1;
  out.c.resize(out.order + 1);
  for (int k = 0; k < rows; ++k) {
    std::vector<int> keep;
    for (int i = 1; i <= rows; ++i)
      if (i != k + 1) keep.push_back(i);
    out.c[static_cast<std::size_t>(k)] = det(r.select_rows(IndexSet(keep, rows)));
  }
  out.degenerate = out.c.back() == 0;
  return out;
}

bool minor_basis_check(const SolutionBundle& bundle, const IndexSet& mu, int l, long n) {
  const Recurrence& rec = bundle.recurrence();
  const int m = rec.order();
  if (static_cast<int>(bundle.count()) != m) throw std::invalid_argument("minor basis check needs a full bundle");
  auto ups = IndexSet::all(m, l);
  const std::size_t q = ups.size();
  RatMat y(q, q);
  for (std::size_t j = 0; j < q; ++j) {
    RatMat x = bundle.casoratian(n + static_cast<long>(j));
    for (std::size_t u = 0; u < q; ++u) y(j, u) = minor(x, mu, ups[u]);
  }
  RatMat r = transfer_minor_rows(rec, mu, l, n, q);
  Rational rhs = det(r) * pow(det(bundle.casoratian(n)), binomial(m - 1, l - 1).get_ui());
  return det(y) == rhs;
}

bool compound_transfer_check(const SolutionBundle& bundle, long n) {
  const Recurrence& rec = bundle.recurrence();
  const int m = rec.order();
  const int l = static_cast<int>(bundle.count());
  if (l < 1 || l > m) throw std::invalid_argument("bundle size out of range");
  auto mus = IndexSet::all(m, l);
  auto all_cols = IndexSet::full(l);
  RatMat now(mus.size(), 1), next(mus.size(), 1);
  RatMat x0 = bundle.casoratian(n), x1 = bundle.casoratian(n + 1);
  for (std::size_t i = 0; i < mus.size(); ++i) {
    now(i, 0) = minor(x0, mus[i], all_cols);
    next(i, 0) = minor(x1, mus[i], all_cols);
  }
  return compound(companion(rec, n), l) * now == next;
}

Poly constant_minor_spectrum(const RatMat& psi, int l) { return charpoly(compound(psi, l)); }

}  // namespace lincrit
