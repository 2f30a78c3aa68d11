// Command-line front end. Exit codes: 0 pass, 1 a hypothesis or verdict failed, 2 usage error,
// 3 internal inconsistency or unstable numerics.
#include "lincrit/asymptotics.hpp"
#include "lincrit/criterion.hpp"
#include "lincrit/example1.hpp"
#include "lincrit/example2.hpp"
#include "lincrit/pade.hpp"
#include "lincrit/serialize.hpp"
#include "lincrit/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace lincrit;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct Config {
  long precision = 256;
  std::string format = "json";
  std::string out;
  double tolerance = 0.05;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

long default_precision() {
  const char* env = std::getenv("PADE_PRECISION_BITS");
  if (!env || !*env) return 256;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0') throw UsageError("PADE_PRECISION_BITS is not an integer");
  return v;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void emit_json(const Config& cfg, const Json& j) { emit(cfg, j.dump(2)); }

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

RatMat read_matrix(const std::string& path) {
  std::string text = read_file(path);
  auto b = text.find_first_not_of(" \t\r\n");
  if (b != std::string::npos && (text[b] == '{' || text[b] == '[')) return matrix_from_json(Json::parse(text));
  return matrix_from_csv(text);
}

// ---- pade --------------------------------------------------------------------------------------

struct PadeArgs {
  int k = 1;
  int m = 1;
  long n = 0;
  std::string alphas;
  bool forms = false;
};

int cmd_pade_build(const Config& cfg, const PadeArgs& a) {
  auto alphas = parse_list(a.alphas);
  validate_pade_input(a.k, a.m, a.n, alphas);
  PadeSystem sys = build_pade_system(a.k, a.m, a.n, alphas);
  OrderCheck oc = verify_order(sys);
  std::cerr << "order condition: " << (oc.ok ? "true" : "false") << "\n";
  if (cfg.format == "csv") {
    std::string t = "poly,degree,coefficient\n";
    for (std::size_t d = 0; d < sys.V0.coeffs().size(); ++d)
      t += "V0," + std::to_string(d) + "," + to_string(sys.V0.coeffs()[d]) + "\n";
    for (int i = 1; i <= sys.m; ++i)
      for (int j = 1; j <= sys.k; ++j) {
        const auto& c = sys.w(i, j).coeffs();
        for (std::size_t d = 0; d < c.size(); ++d)
          t += "W" + std::to_string(i) + std::to_string(j) + "," + std::to_string(d) + "," + to_string(c[d]) + "\n";
      }
    emit(cfg, t);
  } else {
    Json payload{{"order_condition", oc.ok}, {"system", to_json(sys)}};
    if (a.forms) payload["linear_forms"] = to_json(linear_forms_at_one(sys, cfg.precision));
    emit_json(cfg, report("pade", cfg.precision, payload));
  }
  return oc.ok ? kPass : kInternal;
}

// ---- example 1 ---------------------------------------------------------------------------------

struct Example1Args {
  long q = 0;
  std::vector<long> scan;
  std::string find_min;
  long window = 50;
};

int cmd_example1(const Config& cfg, const Example1Args& a) {
  if (!a.find_min.empty()) {
    Example1Mode mode;
    if (a.find_min == "full") mode = Example1Mode::Full;
    else if (a.find_min == "four" || a.find_min == "four_of_five") mode = Example1Mode::FourOfFive;
    else throw UsageError("--find-min takes full or four");
    MinQResult r = example1_min_q(mode, cfg.precision, a.window);
    if (cfg.format == "csv")
      emit(cfg, "mode,q,evaluations\n" + to_string(r.mode) + "," + std::to_string(r.q) + "," +
                    std::to_string(r.evaluations) + "\n");
    else
      emit_json(cfg, report("example1-min-q", cfg.precision, to_json(r)));
    return kPass;
  }
  std::vector<long> qs;
  if (!a.scan.empty()) {
    if (a.scan.size() != 2 || a.scan[0] > a.scan[1]) throw UsageError("--scan takes qmin qmax");
    for (long q = a.scan[0]; q <= a.scan[1]; ++q) qs.push_back(q);
  } else {
    qs.push_back(a.q);
  }
  for (long q : qs)
    if (q < 3) throw UsageError("q must be at least 3");
  bool all_hold = true;
  Json items = Json::array();
  std::string csv = "q,v2,full,four_of_five\n";
  for (long q : qs) {
    Example1Values v = example1_criterion_values(Integer(q), cfg.precision);
    if (v.full == Verdict::Inconclusive) std::cerr << "q = " << q << ": inconclusive (tied critical values)\n";
    all_hold = all_hold && v.full == Verdict::Holds;
    items.push_back(to_json(v));
    csv += std::to_string(q) + "," + (v.values.size() > 1 ? v.values[1].to_string(20) : "") + "," + to_string(v.full) +
           "," + to_string(v.four_of_five) + "\n";
  }
  if (cfg.format == "csv")
    emit(cfg, csv);
  else if (items.size() == 1)
    emit_json(cfg, report("example1", cfg.precision, items[0]));
  else
    emit_json(cfg, report("example1-scan", cfg.precision, Json{{"results", items}}));
  return all_hold ? kPass : kFail;
}

// ---- example 2 ---------------------------------------------------------------------------------

int cmd_example2(const Config& cfg, int k, int m, const std::string& logq) {
  std::optional<BigFloat> lq;
  if (!logq.empty()) lq = BigFloat::parse(logq, cfg.precision);
  Example2Table t = example2_table(k, m, lq, cfg.precision);
  if (cfg.format == "csv") {
    std::string s = "level,threshold,ceil,delta,beats_baseline\n";
    for (const auto& r : t.rows)
      s += std::to_string(r.level) + "," + r.threshold.to_string(12) + "," + r.rounded.get_str() + "," +
           std::to_string(r.delta) + "," + (r.baseline_beaten ? "true" : "false") + "\n";
    for (const auto& [p, th] : t.pathways)
      s += "pathway," + th.to_string(12) + "," + ceil_integer(th).get_str() + "," + std::to_string(p.delta) + ",\n";
    emit(cfg, s);
  } else {
    emit_json(cfg, report("example2", cfg.precision, to_json(t)));
  }
  if (t.best) std::cerr << "delta(" << k << "," << m << ") >= " << t.best->delta << " (" << t.best->source << ")\n";
  return kPass;
}

// ---- verify ------------------------------------------------------------------------------------

int cmd_verify(const Config& cfg, const std::string& suite, std::uint64_t seed) {
  auto results = run_suite(suite, seed);
  bool ok = true;
  Json suites = Json::array();
  std::string csv = "suite,check,passed,detail\n";
  for (const auto& r : results) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
      checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      csv += r.suite + "," + c.name + "," + (c.passed ? "true" : "false") + "," + c.detail + "\n";
      std::cerr << (c.passed ? "PASS " : "FAIL ") << r.suite << ": " << c.name
                << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    }
    suites.push_back(Json{{"suite", r.suite}, {"passed", r.passed()}, {"checks", checks}});
    ok = ok && r.passed();
  }
  if (cfg.format == "csv")
    emit(cfg, csv);
  else
    emit_json(cfg, report("verify", cfg.precision, Json{{"seed", seed}, {"passed", ok}, {"suites", suites}}));
  return ok ? kPass : kFail;
}

// ---- recurrence --------------------------------------------------------------------------------

int cmd_recurrence_minors(const Config& cfg, const std::string& roots_text, const std::string& init_path, int l,
                          long n_max) {
  std::vector<std::pair<Rational, int>> roots;
  std::stringstream ss(roots_text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      roots.emplace_back(parse_rational(item), 1);
    else
      roots.emplace_back(parse_rational(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
  }
  Recurrence rec = Recurrence::from_roots(roots);
  const int m = rec.order();
  RatMat init;
  if (!init_path.empty()) {
    init = read_matrix(init_path);
  } else {
    // Default: the first l columns of the confluent basis.
    if (l < 1 || l > m) throw UsageError("-l must lie in 1..m");
    std::vector<int> first(static_cast<std::size_t>(l));
    std::iota(first.begin(), first.end(), 1);
    init = confluent_bundle(roots).casoratian(0).select_cols(IndexSet(first, m));
  }
  if (init.rows() != static_cast<std::size_t>(m)) throw UsageError("initial matrix needs m rows");
  SolutionBundle b(rec, init);
  Poly cp = Poly::constant(1);
  for (const auto& [r, mult] : roots) cp *= Poly::linear_factor(r).pow(static_cast<unsigned>(mult));
  auto rep = minor_asymptotics_check(b, cp, n_max, cfg.tolerance, cfg.precision);
  Json spec = Json::array();
  for (const auto& v : rep.spectrum.values) spec.push_back(v.to_string(12));
  Json j{{"m", rep.m},
         {"l", rep.l},
         {"n_max", rep.n_max},
         {"independent", rep.independent},
         {"limit", rep.estimate.limit.to_string(12)},
         {"spectrum", spec},
         {"relative_error", rep.estimate.relative_error.to_string(6)},
         {"tolerance", rep.tolerance},
         {"passed", rep.passed},
         {"message", rep.message}};
  emit_json(cfg, report("recurrence-minors", cfg.precision, j));
  return rep.passed ? kPass : kFail;
}

// ---- criterion ---------------------------------------------------------------------------------

struct CriterionArgs {
  std::string family;
  int pade_k = 0;
  std::string alphas;
  std::vector<std::string> reciprocal;  // k M q
  int l = 1;
  bool extended = false;
  std::vector<long> window{1, 12};
  std::string mode = "lambda";
  std::string plan = "none";
  int bound = 2;
  int random = 64;
  std::uint64_t seed = 1;
  std::string lambda;
  long n = 1;
  std::vector<std::string> assume;
};

struct FamilyChoice {
  std::optional<ApproximationFamily> fam;
  std::optional<DenominatorPlan> plan;
};

FamilyChoice make_family(const CriterionArgs& a) {
  FamilyChoice c;
  int sources = !a.family.empty() + (a.pade_k > 0) + !a.reciprocal.empty();
  if (sources != 1) throw UsageError("choose exactly one of --family, --pade, --reciprocal");
  if (!a.family.empty()) {
    c.fam = family_from_json(Json::parse(read_file(a.family)));
  } else if (a.pade_k > 0) {
    c.fam = pade_family(a.pade_k, parse_list(a.alphas), a.l, a.extended);
  } else {
    if (a.reciprocal.size() != 3) throw UsageError("--reciprocal takes k M q");
    int k = std::stoi(a.reciprocal[0]);
    int M = std::stoi(a.reciprocal[1]);
    c.fam = reciprocal_pade_family(k, M, Integer(a.reciprocal[2]), a.l, a.extended);
    if (a.plan == "reciprocal") c.plan = reciprocal_pade_plan(k, M, c.fam->nu_last());
    if (a.plan == "reciprocal-without-lcm") c.plan = reciprocal_pade_plan(k, M, c.fam->nu_last(), true);
  }
  if (a.plan == "unit") c.plan = unit_plan();
  if (a.plan != "none" && !c.plan) throw UsageError("plan " + a.plan + " is not available for this family");
  return c;
}

CriterionMode parse_mode(const std::string& s) {
  if (s == "lambda") return CriterionMode::LambdaEps;
  if (s == "theta") return CriterionMode::ThetaLambda;
  if (s == "full") return CriterionMode::FullColumns;
  if (s == "refined") return CriterionMode::Refined;
  if (s == "refined-full") return CriterionMode::RefinedFullColumns;
  throw UsageError("unknown mode " + s);
}

ProbeMode probe_mode_for(CriterionMode m) {
  switch (m) {
    case CriterionMode::ThetaLambda:
      return ProbeMode::ThetaLambda;
    case CriterionMode::FullColumns:
    case CriterionMode::RefinedFullColumns:
      return ProbeMode::Stacked;
    default:
      return ProbeMode::LambdaEps;
  }
}

void check_window(const CriterionArgs& a) {
  if (a.window.size() != 2 || a.window[1] <= a.window[0]) throw UsageError("--window takes n_start n_end with n_end > n_start");
}

int cmd_criterion(const Config& cfg, const std::string& what, const CriterionArgs& a) {
  FamilyChoice fc = make_family(a);
  const ApproximationFamily& fam = *fc.fam;
  const mpfr_prec_t prec = cfg.precision;
  if (what == "export") {
    check_window(a);
    emit_json(cfg, family_to_json(fam, a.window[0], a.window[1]));
    return kPass;
  }
  if (what == "eps") {
    EpsMatrix e = eps_matrix(fam, a.n, prec);
    Json rows = Json::array();
    for (std::size_t i = 0; i < e.value.size(); ++i) {
      Json r = Json::array();
      for (std::size_t j = 0; j < e.value[i].size(); ++j)
        r.push_back(Json{{"value", e.value[i][j].to_string(30)}, {"error", e.error[i][j].to_string(6)}});
      rows.push_back(r);
    }
    Json j{{"n", e.n}, {"eps", rows}, {"exact", e.exact.has_value()}, {"unresolved", e.unresolved.size()}};
    emit_json(cfg, report("criterion-eps", prec, j));
    return e.unresolved.empty() ? kPass : kFail;
  }
  if (what == "audit") {
    if (!fc.plan) throw UsageError("audit needs --plan");
    auto r = refined_scaled_minor(fam, *fc.plan, IndexSet::all(fam.m(), fam.l()).front(), a.n, prec);
    emit_json(cfg, report("criterion-audit", prec, to_json(r)));
    return r.plan.ok && r.audit.ok ? kPass : kFail;
  }
  check_window(a);
  if (what == "decay") {
    auto rep = minor_decay_report(fam, a.window[0], a.window[1], prec, fc.plan ? &*fc.plan : nullptr, cfg.tolerance);
    if (cfg.format == "csv")
      emit(cfg, decay_to_csv(rep));
    else
      emit_json(cfg, report("criterion-decay", prec, to_json(rep)));
    return rep.all_decaying ? kPass : kFail;
  }
  ProbeConfig pc;
  pc.bound = a.bound;
  pc.random = a.random;
  pc.seed = a.seed;
  CriterionMode mode = parse_mode(a.mode);
  if (what == "probe") {
    ProbeMode pm = probe_mode_for(mode);
    if (!a.lambda.empty()) {
      ProbeResult r = probe_matrix(fam, read_matrix(a.lambda), pm, a.window[0], a.window[1], prec);
      Json j{{"mode", to_string(pm)}, {"nonsingular", r.nonsingular}, {"unresolved", r.unresolved}};
      emit_json(cfg, report("criterion-probe", prec, j));
      return r.nonsingular.empty() ? kFail : kPass;
    }
    auto rep = nonvanishing_probe(fam, a.window[0], a.window[1], pm, pc, prec);
    emit_json(cfg, report("criterion-probe", prec, to_json(rep)));
    return rep.nonsingular_somewhere == rep.probes.size() ? kPass : kFail;
  }
  if (what == "verdict") {
    const bool refined = mode == CriterionMode::Refined || mode == CriterionMode::RefinedFullColumns;
    if (refined && !fc.plan) throw UsageError("refined modes need --plan");
    auto decay = minor_decay_report(fam, a.window[0], a.window[1], prec, refined ? &*fc.plan : nullptr, cfg.tolerance);
    auto probe = nonvanishing_probe(fam, a.window[0], a.window[1], probe_mode_for(mode), pc, prec);
    std::vector<Hypothesis> extra;
    for (const auto& s : a.assume) extra.push_back({s, Evidence::Assumed, "supplied on the command line"});
    auto rep = dimension_verdict(fam, mode, decay, probe, extra, fc.plan ? &*fc.plan : nullptr);
    for (const auto& s : rep.assumed) std::cerr << "ASSUMED: " << s << "\n";
    emit_json(cfg, report("criterion-verdict", prec, to_json(rep)));
    return rep.bound ? kPass : kFail;
  }
  throw UsageError("unknown criterion command " + what);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite-Pade approximations, linear-independence criteria and Casoratian minors"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  try {
    cfg.precision = default_precision();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  app.add_option("--precision", cfg.precision, "Working precision in bits (>= 64)")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (stdout when omitted)");
  app.add_option("--tolerance", cfg.tolerance, "Relative tolerance for spectrum matching and decay margins")
      ->capture_default_str();

  std::function<int()> action;

  auto* pade = app.add_subcommand("pade", "Hermite-Pade systems");
  pade->require_subcommand(1);
  pade->fallthrough();
  PadeArgs pa;
  auto* build = pade->add_subcommand("build", "Build V0 and W_{i,j} and check the order condition");
  build->add_option("-k", pa.k, "Polylog depth")->required();
  build->add_option("-m", pa.m, "Number of points")->required();
  build->add_option("-n", pa.n, "Degree parameter")->required();
  build->add_option("--alpha", pa.alphas, "Comma-separated points alpha_1..alpha_m")->required();
  build->add_flag("--forms", pa.forms, "Include the linear forms at z = 1");
  build->callback([&] { action = [&] { return cmd_pade_build(cfg, pa); }; });

  Example1Args ea;
  auto* ex1 = app.add_subcommand("example1", "Critical values for the points -1/q, -2/q");
  ex1->add_option("q", ea.q, "q >= 3");
  ex1->add_option("--scan", ea.scan, "qmin qmax")->expected(2);
  ex1->add_option("--find-min", ea.find_min, "full or four");
  ex1->add_option("--scan-window", ea.window, "Confirmation window above the minimum")->capture_default_str();
  ex1->callback([&] {
    if (ea.q == 0 && ea.scan.empty() && ea.find_min.empty()) throw CLI::ValidationError("example1", "give q, --scan or --find-min");
    action = [&] { return cmd_example1(cfg, ea); };
  });

  int k2 = 0, m2 = 0;
  std::string logq;
  auto* ex2 = app.add_subcommand("example2", "Thresholds for log|q| and dimension bounds");
  ex2->add_option("k", k2)->required();
  ex2->add_option("m", m2)->required();
  ex2->add_option("--logq", logq, "Evaluate the implied dimension bound at this log|q|");
  ex2->callback([&] { action = [&] { return cmd_example2(cfg, k2, m2, logq); }; });

  std::string suite = "all";
  std::uint64_t seed = 7;
  auto* ver = app.add_subcommand("verify", "Run invariant suites");
  ver->add_option("suite", suite, "pade | linalg | recurrence | asymptotics | criterion | all")->capture_default_str();
  ver->add_option("--seed", seed)->capture_default_str();
  ver->callback([&] { action = [&] { return cmd_verify(cfg, suite, seed); }; });

  std::string roots, init;
  int rl = 2;
  long n_max = 200;
  auto* recur = app.add_subcommand("recurrence", "Constant-coefficient recurrences");
  recur->require_subcommand(1);
  recur->fallthrough();
  auto* minors = recur->add_subcommand("minors", "nth-root limit of Casoratian minors");
  minors->add_option("--roots", roots, "Comma-separated roots, optional :multiplicity")->required();
  minors->add_option("--init", init, "Initial values (m x l) as JSON or CSV");
  minors->add_option("-l", rl, "Bundle size when --init is omitted")->capture_default_str();
  minors->add_option("--n-max", n_max)->capture_default_str();
  minors->callback([&] { action = [&] { return cmd_recurrence_minors(cfg, roots, init, rl, n_max); }; });

  CriterionArgs ca;
  auto* crit = app.add_subcommand("criterion", "Experimental checks of the determinant criteria");
  crit->require_subcommand(1);
  crit->fallthrough();
  auto family_opts = [&](CLI::App* c) {
    c->add_option("--family", ca.family, "Family JSON file");
    c->add_option("--pade", ca.pade_k, "Pade family with this depth k (needs --alpha)");
    c->add_option("--alpha", ca.alphas, "Comma-separated points");
    c->add_option("--reciprocal", ca.reciprocal, "k M q: points 1/(i q) with integral scaling")->expected(3);
    c->add_option("-l", ca.l, "Minor size")->capture_default_str();
    c->add_flag("--extended", ca.extended, "Columns nu = 0..m");
    c->add_option("--plan", ca.plan, "none | unit | reciprocal | reciprocal-without-lcm")->capture_default_str();
  };
  std::string what;
  const std::vector<std::pair<std::string, std::string>> crit_cmds{
      {"export", "Tabulate q and p over a window as a family file"},
      {"eps", "Matrix of linear forms eps at one index"},
      {"decay", "nth-root limits of the minors of eps over a window"},
      {"probe", "Non-vanishing probes over a window"},
      {"audit", "Integrality audit of the scaled minors under a plan"},
      {"verdict", "Decay, probes and integrality combined into a dimension bound"}};
  for (const auto& [name, help] : crit_cmds) {
    auto* c = crit->add_subcommand(name, help);
    family_opts(c);
    c->add_option("--window", ca.window, "n_start n_end")->expected(2);
    c->add_option("-n", ca.n, "Index for eps and audit")->capture_default_str();
    c->add_option("--mode", ca.mode, "lambda | theta | full | refined | refined-full")->capture_default_str();
    c->add_option("--bound", ca.bound, "Probe entry bound B")->capture_default_str();
    c->add_option("--random", ca.random, "Random probe count R")->capture_default_str();
    c->add_option("--seed", ca.seed)->capture_default_str();
    c->add_option("--lambda", ca.lambda, "Single probe matrix (JSON or CSV)");
    c->add_option("--assume", ca.assume, "Extra hypothesis taken on trust");
    std::string n = name;
    c->callback([&, n] { action = [&, n] { return cmd_criterion(cfg, n, ca); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  try {
    if (cfg.precision < 64) throw UsageError("precision must be at least 64 bits");
    if (!action) throw UsageError("no command given");
    return action();
  } catch (const InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kInternal;
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
