#include "lincrit/example2.hpp"

#include <algorithm>
#include <stdexcept>

namespace lincrit {

namespace {

BigFloat log_lcm(long n, mpfr_prec_t prec) {
  if (n < 1) return BigFloat(0L, prec);
  return log(BigFloat(lcm_upto(static_cast<unsigned long>(n)), prec));
}

BigFloat log_int(long a, mpfr_prec_t prec) { return log(BigFloat(a, prec)); }

void check_km(int k, int m) {
  if (k < 1 || m < 1) throw std::invalid_argument("k and m must be positive");
}

}  // namespace

int example2_max_level(int k, int m) {
  check_km(k, m);
  return std::min({k - 1, m - 1, kExample2MaxLevel});
}

long example2_delta(int k, int m, int level) { return static_cast<long>(k) * m + 1 - level; }

BigFloat example2_threshold(int k, int m, int level, mpfr_prec_t prec) {
  check_km(k, m);
  if (level < 0 || level > kExample2MaxLevel)
    throw std::invalid_argument("level must lie in 0.." + std::to_string(kExample2MaxLevel));
  if (k < level + 1 || m < level + 1)
    throw std::invalid_argument("level " + std::to_string(level) + " needs k, m >= " + std::to_string(level + 1));
  const long t = level;
  const long L = t + 1;
  const long K = k, M = m;
  BigFloat rhs(L * K * K * M + L * K, prec);
  rhs += BigFloat((L * K - t) * M, prec) * log_lcm(M, prec);
  if (t > 0) rhs += BigFloat(std::min(t, 2L) * M, prec) * log_lcm(M - 1, prec);
  if (t > 2) rhs += BigFloat((t - 2) * M, prec) * log_lcm(M - 2, prec);
  rhs += BigFloat(L * K * M, prec) * log2_const(prec);
  rhs += BigFloat(L * K, prec) * log_int(K * M + 1, prec);
  return rhs / BigFloat(L, prec);
}

BigFloat example2_threshold_sharp(int k, int m, mpfr_prec_t prec) {
  check_km(k, m);
  const long K = k, M = m;
  BigFloat r(K * K * M, prec);
  r += BigFloat(K * M, prec) * (log2_const(prec) + log_lcm(M, prec));
  r += BigFloat(K * (K * M + 1), prec) * log_int(K * M + 1, prec);
  r -= BigFloat(K * K * M, prec) * log_int(K * M, prec);
  return r;
}

BigFloat dhk_baseline_threshold(int k, int m, mpfr_prec_t prec) {
  check_km(k, m);
  const long K = k, M = m;
  BigFloat five_halves = BigFloat(5L, prec) / BigFloat(2L, prec);
  BigFloat inner = BigFloat(K, prec) + log_lcm(M, prec) + BigFloat(K, prec) * log(five_halves);
  return BigFloat(K * M, prec) * inner + BigFloat(K, prec) * log_int(3, prec);
}

const std::vector<Example2Pathway>& fixed_pathways() {
  // k = m = 11, corners of sizes 1..4 cut:
  // 10 log|q| > 10 * 11^3 + 1010 log d_11 + 55 log d_10 + 44 log d_8 + 1210 log 2 + 110 log 122 + 110.
  static const std::vector<Example2Pathway> list = {
      {11, 11, 112, 10, 10 * 11 * 11 * 11 + 110, {{1010, 11}, {55, 10}, {44, 8}}, {{1210, 2}, {110, 122}}},
  };
  return list;
}

BigFloat pathway_threshold(const Example2Pathway& p, mpfr_prec_t prec) {
  BigFloat r(p.constant, prec);
  for (const auto& [c, n] : p.lcm_logs) r += BigFloat(c, prec) * log_lcm(n, prec);
  for (const auto& [c, a] : p.logs) r += BigFloat(c, prec) * log_int(a, prec);
  return r / BigFloat(p.multiplier, prec);
}

DeltaBound delta_bound(int k, int m, const BigFloat& logq, mpfr_prec_t prec) {
  check_km(k, m);
  DeltaBound best;
  best.threshold = BigFloat(0L, prec);
  best.source = "trivial";
  for (int t = 0; t <= example2_max_level(k, m); ++t) {
    BigFloat th = example2_threshold(k, m, t, prec);
    long d = example2_delta(k, m, t);
    if (logq > th && d > best.delta) {
      best = {d, t, false, th, "level " + std::to_string(t)};
    }
  }
  for (const auto& p : fixed_pathways()) {
    if (p.k != k || p.m != m) continue;
    BigFloat th = pathway_threshold(p, prec);
    if (logq > th && p.delta > best.delta) best = {p.delta, std::nullopt, true, th, "pathway"};
  }
  return best;
}

Example2Table example2_table(int k, int m, std::optional<BigFloat> logq, mpfr_prec_t prec) {
  check_km(k, m);
  Example2Table tab;
  tab.k = k;
  tab.m = m;
  tab.baseline = dhk_baseline_threshold(k, m, prec);
  tab.logq = logq;
  for (int t = 0; t <= example2_max_level(k, m); ++t) {
    Example2Row row;
    row.level = t;
    row.threshold = example2_threshold(k, m, t, prec);
    row.rounded = ceil_integer(row.threshold);
    row.delta = example2_delta(k, m, t);
    row.baseline_beaten = row.threshold < tab.baseline;
    if (logq) row.satisfied = *logq > row.threshold;
    tab.rows.push_back(std::move(row));
  }
  for (const auto& p : fixed_pathways())
    if (p.k == k && p.m == m) tab.pathways.emplace_back(p, pathway_threshold(p, prec));
  if (logq) tab.best = delta_bound(k, m, *logq, prec);
  return tab;
}

}  // namespace lincrit
