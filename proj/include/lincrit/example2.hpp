#pragma once

#include "lincrit/bigfloat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lincrit {

// Thresholds for log|q| above which 1 and Li_j(1/(l q)) (j = 1..k, l = 1..m) span a space of
// dimension at least km + 1 - level. Level t (t = 0..5) needs k, m >= t + 1; with L = t + 1:
//   L log|q| > L k^2 m + (Lk - t) m log d_m + min(t,2) m log d_{m-1} + max(t-2,0) m log d_{m-2}
//              + Lkm log 2 + Lk log(km+1) + Lk.
constexpr int kExample2MaxLevel = 5;

// Throws std::invalid_argument for k, m < 1, a level outside 0..5, or an unmet side condition.
BigFloat example2_threshold(int k, int m, int level, mpfr_prec_t prec = 128);

// Sharper level-0 form k^2 m + km log(2 d_m) + k(km+1) log(km+1) - k^2 m log(km).
BigFloat example2_threshold_sharp(int k, int m, mpfr_prec_t prec = 128);

// km(k + log d_m + k log(5/2)) + k log 3.
BigFloat dhk_baseline_threshold(int k, int m, mpfr_prec_t prec = 128);

// Largest level allowed by the side conditions.
int example2_max_level(int k, int m);

// Dimension bound km + 1 - level.
long example2_delta(int k, int m, int level);

// multiplier log|q| > constant + sum c log d_n + sum c' log a, with explicit integer coefficients.
struct Example2Pathway {
  int k = 0;
  int m = 0;
  long delta = 0;
  long multiplier = 0;
  long constant = 0;
  std::vector<std::pair<long, long>> lcm_logs;  // (c, n)
  std::vector<std::pair<long, long>> logs;      // (c', a)
};

// Fixed pathways with explicit coefficients; currently the one giving dimension >= 112 for k = m = 11.
const std::vector<Example2Pathway>& fixed_pathways();
BigFloat pathway_threshold(const Example2Pathway& p, mpfr_prec_t prec = 128);

struct DeltaBound {
  long delta = 1;
  std::optional<int> level;  // level used, if any
  bool pathway = false;      // a fixed pathway gave the bound
  BigFloat threshold;
  std::string source;
};

// Best dimension bound available at the given log|q| (strict inequality against each threshold).
// Falls back to 1 when no threshold is exceeded.
DeltaBound delta_bound(int k, int m, const BigFloat& logq, mpfr_prec_t prec = 128);

struct Example2Row {
  int level = 0;
  BigFloat threshold;
  Integer rounded;  // ceiling of the threshold
  long delta = 0;
  bool baseline_beaten = false;
  std::optional<bool> satisfied;  // logq > threshold, when logq was given
};

struct Example2Table {
  int k = 0;
  int m = 0;
  BigFloat baseline;
  std::vector<Example2Row> rows;
  std::vector<std::pair<Example2Pathway, BigFloat>> pathways;
  std::optional<BigFloat> logq;
  std::optional<DeltaBound> best;
};

Example2Table example2_table(int k, int m, std::optional<BigFloat> logq = std::nullopt, mpfr_prec_t prec = 128);

}  // namespace lincrit
