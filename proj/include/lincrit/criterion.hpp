#pragma once

#include "lincrit/asymptotics.hpp"
#include "lincrit/bigfloat.hpp"
#include "lincrit/matrix.hpp"
#include "lincrit/pade.hpp"
#include "lincrit/rational.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lincrit {

// A target real gamma_mu together with how to evaluate it.
class Gamma {
 public:
  static Gamma rational(const Rational& v);
  // Li_order(arg), |arg| < 1.
  static Gamma polylog(unsigned order, const Rational& arg);

  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact() const { return exact_; }
  unsigned polylog_order() const { return order_; }
  const Rational& polylog_arg() const { return arg_; }
  std::string provenance() const;

  // Value at working precision wp and a bound on |value - gamma| (zero when exact).
  BigFloat value(mpfr_prec_t wp) const;
  BigFloat error(const BigFloat& value) const;

 private:
  std::optional<Rational> exact_;
  unsigned order_ = 0;
  Rational arg_;
};

// Sequences q_n^(nu), p_n^(mu,nu) and targets gamma_1..gamma_m.
// Columns nu = 1..l, or nu = 0..m in the extended mode.
class ApproximationFamily {
 public:
  using QFn = std::function<Rational(long n, int nu)>;
  using PFn = std::function<Rational(long n, int mu, int nu)>;

  // Throws std::invalid_argument unless 1 <= l <= m and gammas.size() == m.
  ApproximationFamily(int m, int l, bool extended, std::vector<Gamma> gammas, QFn q, PFn p);

  // Values read from tables: q[n - n_start][c], p[n - n_start][mu - 1][c], c the column position.
  static ApproximationFamily from_tables(int m, int l, bool extended, std::vector<Gamma> gammas, long n_start,
                                         std::vector<std::vector<Rational>> q,
                                         std::vector<std::vector<std::vector<Rational>>> p);

  int m() const { return m_; }
  int l() const { return l_; }
  bool extended() const { return extended_; }
  int nu_first() const { return extended_ ? 0 : 1; }
  int nu_last() const { return extended_ ? m_ : l_; }
  int columns() const { return nu_last() - nu_first() + 1; }
  const std::vector<Gamma>& gammas() const { return gammas_; }
  const Gamma& gamma(int mu) const { return gammas_[static_cast<std::size_t>(mu - 1)]; }
  bool all_gammas_exact() const;

  // Range-checked accessors; throw std::out_of_range for mu or nu outside the family.
  Rational q(long n, int nu) const;
  Rational p(long n, int mu, int nu) const;

  // 1 x columns row of q, m x columns block of p, and the (m+1) x columns stack [q; p].
  RatMat q_row(long n) const;
  RatMat p_block(long n) const;
  RatMat stacked(long n) const;
  // Every q and p at n has denominator 1.
  bool integral_at(long n) const;

  // All column choices the criteria quantify over: {1..l}, or every l-subset of {0..m}.
  // Returned as IndexSets over the column positions 1..columns().
  std::vector<IndexSet> column_choices() const;
  // Column position (1-based) to nu and back.
  int nu_of(int position) const { return position - 1 + nu_first(); }

 private:
  int m_ = 0;
  int l_ = 0;
  bool extended_ = false;
  std::vector<Gamma> gammas_;
  QFn q_;
  PFn p_;
};

// Family built from the Pade system with k polylog depths at points -alpha_1..-alpha_M:
// gamma_mu = Li_j(-alpha_i) with mu = (j-1) M + i, and column nu taken from level N = n + nu - 1,
// q_n^(nu) = s(N) V0(1), p_n^(mu,nu) = s(N) W_{i,j}(1). s defaults to 1.
// Systems are cached per level; concurrent reads are safe.
ApproximationFamily pade_family(int k, const std::vector<Rational>& alphas, int l, bool extended = false,
                                std::function<Rational(long N)> scale = {});

// The same with alpha_i = 1/(i q) and s(N) = q^{kMN} d_M^{kN}: q values are integers, p values
// become integers after the factors of reciprocal_pade_plan.
ApproximationFamily reciprocal_pade_family(int k, int M, const Integer& q, int l, bool extended = false);

// eps_n^(mu,nu) = q_n^(nu) gamma_mu - p_n^(mu,nu) with a propagated error bound per entry.
struct EpsMatrix {
  long n = 0;
  mpfr_prec_t precision = 0;
  std::vector<std::vector<BigFloat>> value;  // [mu-1][column position-1]
  std::vector<std::vector<BigFloat>> error;
  std::optional<RatMat> exact;  // when every gamma is rational
  // Entries with |value| <= error after three doublings of the working precision.
  std::vector<std::pair<int, int>> unresolved;
};

// Non-exact gammas are evaluated at 4 prec; the working precision doubles (at most three times)
// while some entry cannot be told apart from zero.
EpsMatrix eps_matrix(const ApproximationFamily& fam, long n, mpfr_prec_t prec);

// c_0 + c_1 gamma_1 + ... + c_m gamma_m with exact coefficients.
struct LinearForm {
  Rational constant;
  std::vector<Rational> coeffs;
  bool is_zero() const;
  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator*=(const Rational& s);
};

// Value of a form with a rigorous error bound; exact when the gammas involved are rational.
struct CertifiedValue {
  BigFloat value;
  BigFloat error;
  std::optional<Rational> exact;
  // Zero when the form is identically zero or the exact value is zero.
  bool is_zero = false;
  // Certified nonzero: exact and nonzero, or |value| > error.
  bool nonzero = false;
};

// Precision doubling up to three times while the value is neither zero nor certified nonzero.
CertifiedValue evaluate(const LinearForm& form, const std::vector<Gamma>& gammas, mpfr_prec_t prec);

// det eps_n^(mu,cols) expanded along the gamma column of [gamma | p; 1 | q]^(mu-hat,-).
// cols are column positions (1..columns()).
LinearForm minor_linear_form(const ApproximationFamily& fam, long n, const IndexSet& mu, const IndexSet& cols);

// Exact check, for rational gammas, that det eps^(mu,cols) equals both the bordered
// (l+1) x (l+1) determinant and the expanded linear form, for every mu and column choice.
// Throws std::invalid_argument when some gamma is not rational.
bool linear_form_identity_check(const ApproximationFamily& fam, long n);

// Positive integer sequences D_n^(mu) and delta_n^(nu) (nu as in the family, not the position).
struct DenominatorPlan {
  std::string label;
  std::function<Integer(long n, int mu)> D;
  std::function<Integer(long n, int nu)> delta;
};

DenominatorPlan unit_plan();

// For reciprocal_pade_family(k, M, q, l): D^(i,j) = d_M^{k(M-1)N} d_{kMN}^j with N = n + nu_last - 1,
// delta = 1. drop_lcm_factor removes the d_{kMN}^j factor (a plan that must fail).
DenominatorPlan reciprocal_pade_plan(int k, int M, int nu_last, bool drop_lcm_factor = false);

struct PlanCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

// D, delta positive, q^(nu)/delta^(nu) integral and D^(mu2)/delta^(nu) p^(mu1,nu) integral for mu1 <= mu2.
PlanCheck check_plan(const ApproximationFamily& fam, const DenominatorPlan& plan, long n);

// Entry (i, j) of the scaled sub-matrix of [q; p]^(xi, cols) that is not an integer;
// i == j == 0 marks a non-integral scaled determinant.
struct IntegralityViolation {
  IndexSet xi;
  IndexSet cols;
  int i = 0;
  int j = 0;
  Rational value;
};

struct IntegralityAudit {
  long n = 0;
  bool ok = true;
  std::size_t minors_checked = 0;
  std::vector<IntegralityViolation> violations;
};

// Every l x l minor of [q_n; p_n] over rows xi and each column choice, with row i multiplied by
// D^(m-l+i) and column j divided by delta^(nu_j): entries and determinant must be integers.
IntegralityAudit integrality_audit(const ApproximationFamily& fam, const DenominatorPlan& plan, long n);

// prod_i D^(m-l+i) / delta^(nu_i) for the given column positions.
Rational plan_factor(const ApproximationFamily& fam, const DenominatorPlan& plan, long n, const IndexSet& cols);

struct RefinedMinor {
  long n = 0;
  IndexSet mu;
  IndexSet cols;
  Rational factor;
  CertifiedValue scaled;
  PlanCheck plan;
  IntegralityAudit audit;
};

// Scaled minor factor * det eps_n^(mu,cols), with the plan conditions and the full audit at n.
RefinedMinor refined_scaled_minor(const ApproximationFamily& fam, const DenominatorPlan& plan, const IndexSet& mu,
                                  long n, mpfr_prec_t prec, std::optional<IndexSet> cols = std::nullopt);

struct MinorDecay {
  IndexSet mu;
  IndexSet cols;
  std::vector<long> n;
  std::vector<BigFloat> value;  // signed minor (scaled when a plan was given)
  std::vector<BigFloat> error;
  std::vector<long> unresolved;  // n where the minor could not be told apart from zero
  PitukEstimate estimate;
  bool decaying = false;
};

struct MinorDecayReport {
  long n_start = 0;
  long n_end = 0;
  mpfr_prec_t precision = 0;
  bool scaled = false;
  double margin = 0.05;
  std::vector<MinorDecay> minors;
  bool all_decaying = false;
};

// For each mu and column choice: det eps_n^(mu,cols) over [n_start, n_end] (n_end - n_start + 1 >= 8)
// and the nth-root limit of |det|. Decaying iff limit (1 + margin) < 1, or the sequence is
// eventually zero. With a plan the minors are multiplied by plan_factor first.
MinorDecayReport minor_decay_report(const ApproximationFamily& fam, long n_start, long n_end, mpfr_prec_t prec,
                                    const DenominatorPlan* plan = nullptr, double margin = 0.05);

// Non-singularity conditions: det(lambda eps_n) for rank-l lambda (l x m), det([theta|lambda][q_n; p_n])
// for rank-l [theta|lambda] (l x (m+1)), or det [q_n; p_n] for the full column set.
enum class ProbeMode { LambdaEps, ThetaLambda, Stacked };
std::string to_string(ProbeMode m);

struct ProbeConfig {
  int bound = 2;
  int random = 64;
  std::uint64_t seed = 1;
  // Cap on the exhaustive enumeration; the report says when it was reached.
  std::size_t enumeration_cap = 2000;
};

struct ProbeResult {
  RatMat matrix;  // empty in the Stacked mode
  bool random = false;
  std::vector<long> nonsingular;
  std::vector<long> unresolved;
};

struct ProbeReport {
  ProbeMode mode = ProbeMode::LambdaEps;
  long n_start = 0;
  long n_end = 0;
  std::size_t enumerated = 0;
  std::size_t random = 0;
  bool truncated = false;
  // Every decision was made in exact arithmetic.
  bool exact = true;
  std::vector<ProbeResult> probes;
  std::size_t nonsingular_somewhere = 0;
  double fraction = 0;
};

// One probe matrix over the window. Throws std::invalid_argument for a wrong shape or rank < l,
// and for modes the family cannot support (LambdaEps/ThetaLambda need the l columns,
// Stacked needs the extended family).
ProbeResult probe_matrix(const ApproximationFamily& fam, const RatMat& lambda, ProbeMode mode, long n_start,
                         long n_end, mpfr_prec_t prec);

// Rows are primitive integer vectors in [-B, B] with a positive leading entry, taken as increasing
// l-combinations in lexicographic order (row scaling and row order only change the determinant
// by a nonzero factor), then cfg.random seeded random rank-l matrices.
ProbeReport nonvanishing_probe(const ApproximationFamily& fam, long n_start, long n_end, ProbeMode mode,
                               const ProbeConfig& cfg, mpfr_prec_t prec);

enum class CriterionMode { LambdaEps, ThetaLambda, FullColumns, Refined, RefinedFullColumns };
std::string to_string(CriterionMode m);

enum class Evidence { Failed, Assumed, Numeric, Exact };
std::string to_string(Evidence e);

struct Hypothesis {
  std::string name;
  Evidence evidence = Evidence::Failed;
  std::string detail;
};

struct CriterionReport {
  CriterionMode mode = CriterionMode::LambdaEps;
  int m = 0;
  int l = 0;
  std::string label = "experimental";
  struct DecayEntry {
    IndexSet mu;
    IndexSet cols;
    BigFloat limit;
    bool decaying = false;
  };
  std::vector<DecayEntry> decay;
  std::size_t probes = 0;
  std::size_t probes_nonsingular = 0;
  std::vector<Hypothesis> hypotheses;
  // Hypotheses taken on trust, listed separately from the checked ones.
  std::vector<std::string> assumed;
  // What a finite window cannot show.
  std::vector<std::string> extrapolations;
  std::optional<int> bound;
  std::string conclusion;
};

// Bound 2 + m - l when every hypothesis has at least numeric evidence; "no conclusion" otherwise.
// Integrality is checked exactly over the decay window: integer q and p in the plain modes,
// the plan conditions in the refined modes (which therefore need a plan).
// extra adds hypotheses supplied by the caller, e.g. a non-vanishing result taken from elsewhere.
CriterionReport dimension_verdict(const ApproximationFamily& fam, CriterionMode mode, const MinorDecayReport& decay,
                                  const ProbeReport& probe, const std::vector<Hypothesis>& extra = {},
                                  const DenominatorPlan* plan = nullptr);

}  // namespace lincrit
