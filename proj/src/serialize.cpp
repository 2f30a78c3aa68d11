#include "lincrit/serialize.hpp"

#include <sstream>
#include <stdexcept>

#ifndef LINCRIT_VERSION
#define LINCRIT_VERSION "unknown"
#endif

namespace lincrit {

std::string lincrit_version() { return LINCRIT_VERSION; }

Json to_json(const Rational& x) { return Json::array({x.get_num().get_str(), x.get_den().get_str()}); }

Rational rational_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw std::invalid_argument("rational pair must have two entries");
    auto part = [](const Json& e) {
      if (e.is_string()) return Integer(e.get<std::string>());
      if (e.is_number_integer()) return Integer(e.get<long>());
      throw std::invalid_argument("rational parts must be decimal strings or integers");
    };
    return make_rational(part(j[0]), part(j[1]));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational");
}

Json to_json(const BigFloat& x) { return x.to_string(); }

Json to_json(const Poly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

Poly poly_from_json(const Json& j) {
  std::vector<Rational> c;
  for (const auto& e : j) c.push_back(rational_from_json(e));
  return Poly(std::move(c));
}

Json to_json(const RatMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
    rows.push_back(r);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

RatMat matrix_from_json(const Json& j) {
  const Json& e = j.is_object() ? j.at("entries") : j;
  if (!e.is_array()) throw std::invalid_argument("matrix entries must be an array of rows");
  std::size_t rows = e.size();
  std::size_t cols = rows ? e[0].size() : 0;
  RatMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (e[i].size() != cols) throw std::invalid_argument("matrix rows differ in length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(e[i][k]);
  }
  if (j.is_object() && j.contains("rows") && (j["rows"].get<std::size_t>() != rows || j["cols"].get<std::size_t>() != cols))
    throw std::invalid_argument("matrix shape does not match its entries");
  return m;
}

std::string matrix_to_csv(const RatMat& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (k) out += ',';
      out += to_string(m(i, k));
    }
    out += '\n';
  }
  return out;
}

RatMat matrix_from_csv(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<Rational> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      auto b = cell.find_first_not_of(" \t");
      auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) throw std::invalid_argument("empty CSV cell");
      row.push_back(parse_rational(cell.substr(b, e - b + 1)));
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw std::invalid_argument("CSV rows differ in length");
    rows.push_back(std::move(row));
  }
  RatMat m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
  return m;
}

Json to_json(const PadeSystem& sys) {
  Json alphas = Json::array();
  for (const auto& a : sys.alphas) alphas.push_back(to_json(a));
  Json W = Json::array();
  for (int i = 1; i <= sys.m; ++i) {
    Json row = Json::array();
    for (int j = 1; j <= sys.k; ++j) row.push_back(to_json(sys.w(i, j)));
    W.push_back(row);
  }
  return Json{{"k", sys.k}, {"m", sys.m}, {"n", sys.n}, {"alphas", alphas}, {"V0", to_json(sys.V0)}, {"W", W}};
}

PadeSystem pade_from_json(const Json& j) {
  PadeSystem s;
  s.k = j.at("k").get<int>();
  s.m = j.at("m").get<int>();
  s.n = j.at("n").get<long>();
  for (const auto& a : j.at("alphas")) s.alphas.push_back(rational_from_json(a));
  validate_pade_input(s.k, s.m, s.n, s.alphas);
  s.V0 = poly_from_json(j.at("V0"));
  const Json& W = j.at("W");
  if (W.size() != static_cast<std::size_t>(s.m)) throw std::invalid_argument("W must have m rows");
  for (const auto& row : W) {
    if (row.size() != static_cast<std::size_t>(s.k)) throw std::invalid_argument("W rows must have k entries");
    std::vector<Poly> r;
    for (const auto& p : row) r.push_back(poly_from_json(p));
    s.W.push_back(std::move(r));
  }
  return s;
}

Json recurrence_to_json(const Recurrence& rec, long n_end) {
  Json table = Json::array();
  for (long n = 0; n <= n_end; ++n) {
    Json row = Json::array();
    for (const auto& c : rec.coeffs(n)) row.push_back(to_json(c));
    table.push_back(row);
  }
  return Json{{"order", rec.order()}, {"coeffs", table}};
}

Recurrence recurrence_from_json(const Json& j) {
  int order = j.at("order").get<int>();
  std::vector<std::vector<Rational>> table;
  for (const auto& row : j.at("coeffs")) {
    std::vector<Rational> r;
    for (const auto& c : row) r.push_back(rational_from_json(c));
    if (r.size() != static_cast<std::size_t>(order + 1))
      throw std::invalid_argument("each coefficient row needs order + 1 entries");
    table.push_back(std::move(r));
  }
  return Recurrence::from_table(order, std::move(table));
}

Json to_json(const Gamma& g) {
  if (g.is_exact()) return Json{{"rational", to_json(*g.exact())}};
  return Json{{"polylog", Json{{"order", g.polylog_order()}, {"arg", to_json(g.polylog_arg())}}}};
}

Gamma gamma_from_json(const Json& j) {
  if (j.contains("rational")) return Gamma::rational(rational_from_json(j["rational"]));
  if (j.contains("polylog"))
    return Gamma::polylog(j["polylog"].at("order").get<unsigned>(), rational_from_json(j["polylog"].at("arg")));
  throw std::invalid_argument("gamma needs a \"rational\" or \"polylog\" entry");
}

Json family_to_json(const ApproximationFamily& fam, long n_start, long n_end) {
  Json gammas = Json::array();
  for (const auto& g : fam.gammas()) gammas.push_back(to_json(g));
  Json q = Json::array(), p = Json::array();
  for (long n = n_start; n <= n_end; ++n) {
    Json qr = Json::array();
    for (int c = 1; c <= fam.columns(); ++c) qr.push_back(to_json(fam.q(n, fam.nu_of(c))));
    q.push_back(qr);
    Json pn = Json::array();
    for (int mu = 1; mu <= fam.m(); ++mu) {
      Json pr = Json::array();
      for (int c = 1; c <= fam.columns(); ++c) pr.push_back(to_json(fam.p(n, mu, fam.nu_of(c))));
      pn.push_back(pr);
    }
    p.push_back(pn);
  }
  return Json{{"m", fam.m()},       {"l", fam.l()}, {"extended", fam.extended()}, {"n_start", n_start},
              {"gammas", gammas}, {"q", q},       {"p", p}};
}

ApproximationFamily family_from_json(const Json& j) {
  int m = j.at("m").get<int>();
  int l = j.at("l").get<int>();
  bool extended = j.value("extended", false);
  long n_start = j.value("n_start", 0L);
  std::vector<Gamma> gammas;
  for (const auto& g : j.at("gammas")) gammas.push_back(gamma_from_json(g));
  std::vector<std::vector<Rational>> q;
  for (const auto& row : j.at("q")) {
    std::vector<Rational> r;
    for (const auto& e : row) r.push_back(rational_from_json(e));
    q.push_back(std::move(r));
  }
  std::vector<std::vector<std::vector<Rational>>> p;
  for (const auto& block : j.at("p")) {
    std::vector<std::vector<Rational>> b;
    for (const auto& row : block) {
      std::vector<Rational> r;
      for (const auto& e : row) r.push_back(rational_from_json(e));
      b.push_back(std::move(r));
    }
    p.push_back(std::move(b));
  }
  return ApproximationFamily::from_tables(m, l, extended, std::move(gammas), n_start, std::move(q), std::move(p));
}

Json to_json(const IndexSet& s) { return Json(s.indices()); }

Json to_json(const CertifiedValue& v) {
  Json j{{"value", to_json(v.value)}, {"error", to_json(v.error)}, {"zero", v.is_zero}, {"nonzero", v.nonzero}};
  if (v.exact) j["exact"] = to_json(*v.exact);
  return j;
}

Json to_json(const LinearForms& lf) {
  Json eps = Json::array(), bound = Json::array(), W = Json::array();
  for (std::size_t i = 0; i < lf.eps.size(); ++i) {
    Json e = Json::array(), b = Json::array(), w = Json::array();
    for (std::size_t j = 0; j < lf.eps[i].size(); ++j) {
      e.push_back(to_json(lf.eps[i][j]));
      b.push_back(to_json(lf.bound[i][j]));
      w.push_back(to_json(lf.W_at_one[i][j]));
    }
    eps.push_back(e);
    bound.push_back(b);
    W.push_back(w);
  }
  return Json{{"V0_at_one", to_json(lf.V0_at_one)}, {"W_at_one", W}, {"eps", eps}, {"bound", bound},
              {"within_bound", lf.within_bound}};
}

Json to_json(const Example1Values& v) {
  Json roots = Json::array();
  for (std::size_t i = 0; i < v.roots.size(); ++i) {
    const auto& r = v.roots[i];
    roots.push_back(Json{{"re", to_json(r.z.re)},
                         {"im", to_json(r.z.im)},
                         {"radius", r.radius.to_string(6)},
                         {"abs_g", to_json(v.abs_g[i])},
                         {"value", to_json(v.values[i])}});
  }
  Json tied = Json::array();
  for (bool t : v.tied) tied.push_back(t);
  return Json{{"q", v.q.get_str()},
              {"roots", roots},
              {"tied", tied},
              {"verdict", {{"full", to_string(v.full)}, {"four_of_five", to_string(v.four_of_five)}}}};
}

Json to_json(const MinQResult& r) {
  return Json{{"mode", to_string(r.mode)},           {"q", r.q},
              {"holds_on_scan", r.holds_on_scan}, {"fails_below", r.fails_below},
              {"scan", r.scan},                   {"evaluations", r.evaluations}};
}

Json to_json(const Example2Table& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json j{{"level", r.level},
           {"threshold", r.threshold.to_string(12)},
           {"ceil", r.rounded.get_str()},
           {"delta", r.delta},
           {"beats_baseline", r.baseline_beaten}};
    if (r.satisfied) j["satisfied"] = *r.satisfied;
    rows.push_back(j);
  }
  Json paths = Json::array();
  for (const auto& [p, th] : t.pathways)
    paths.push_back(Json{{"delta", p.delta}, {"threshold", th.to_string(12)}, {"ceil", ceil_integer(th).get_str()}});
  Json j{{"k", t.k}, {"m", t.m}, {"baseline", t.baseline.to_string(12)}, {"levels", rows}, {"pathways", paths}};
  if (t.logq) j["logq"] = t.logq->to_string(12);
  if (t.best) {
    Json b{{"delta", t.best->delta}, {"source", t.best->source}};
    if (t.best->level) b["level"] = *t.best->level;
    j["best"] = b;
  }
  return j;
}

Json to_json(const MinorDecayReport& r) {
  Json minors = Json::array();
  for (const auto& d : r.minors) {
    Json vals = Json::array();
    for (std::size_t i = 0; i < d.n.size(); ++i)
      vals.push_back(Json{{"n", d.n[i]}, {"value", d.value[i].to_string(20)}, {"error", d.error[i].to_string(6)}});
    minors.push_back(Json{{"mu", to_json(d.mu)},
                          {"cols", to_json(d.cols)},
                          {"values", vals},
                          {"unresolved", d.unresolved},
                          {"limit", d.estimate.limit.to_string(12)},
                          {"zero_sequence", d.estimate.zero_solution},
                          {"decaying", d.decaying}});
  }
  return Json{{"n_start", r.n_start}, {"n_end", r.n_end},     {"scaled", r.scaled},
              {"margin", r.margin},   {"minors", minors}, {"all_decaying", r.all_decaying}};
}

std::string decay_to_csv(const MinorDecayReport& r) {
  std::string out = "n,mu,cols,value,error,nth_root\n";
  auto idx = [](const IndexSet& s) {
    std::string t;
    for (std::size_t i = 0; i < s.size(); ++i) t += (i ? " " : "") + std::to_string(s[i]);
    return t;
  };
  for (const auto& d : r.minors) {
    for (std::size_t i = 0; i < d.n.size(); ++i) {
      std::string root;
      for (std::size_t t = 0; t < d.estimate.indices.size(); ++t)
        if (d.estimate.indices[t] == d.n[i]) root = d.estimate.values[t].to_string(12);
      out += std::to_string(d.n[i]) + "," + idx(d.mu) + "," + idx(d.cols) + "," + d.value[i].to_string(20) + "," +
             d.error[i].to_string(6) + "," + root + "\n";
    }
  }
  return out;
}

Json to_json(const ProbeReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes) {
    Json j{{"random", p.random}, {"nonsingular", p.nonsingular}, {"unresolved", p.unresolved}};
    if (p.matrix.rows()) j["matrix"] = to_json(p.matrix)["entries"];
    probes.push_back(j);
  }
  return Json{{"mode", to_string(r.mode)},
              {"n_start", r.n_start},
              {"n_end", r.n_end},
              {"enumerated", r.enumerated},
              {"random", r.random},
              {"truncated", r.truncated},
              {"exact", r.exact},
              {"nonsingular_somewhere", r.nonsingular_somewhere},
              {"fraction", r.fraction},
              {"probes", probes}};
}

Json to_json(const IntegralityAudit& a) {
  Json v = Json::array();
  for (const auto& x : a.violations)
    v.push_back(Json{{"xi", to_json(x.xi)}, {"cols", to_json(x.cols)}, {"i", x.i}, {"j", x.j}, {"value", to_json(x.value)}});
  return Json{{"n", a.n}, {"ok", a.ok}, {"minors_checked", a.minors_checked}, {"violations", v}};
}

Json to_json(const RefinedMinor& r) {
  return Json{{"n", r.n},
              {"mu", to_json(r.mu)},
              {"cols", to_json(r.cols)},
              {"factor", to_json(r.factor)},
              {"scaled", to_json(r.scaled)},
              {"plan_ok", r.plan.ok},
              {"plan_failures", r.plan.failures},
              {"audit", to_json(r.audit)}};
}

Json to_json(const CriterionReport& r) {
  Json decay = Json::array();
  for (const auto& d : r.decay)
    decay.push_back(Json{{"mu", to_json(d.mu)}, {"cols", to_json(d.cols)}, {"limit", d.limit.to_string(12)},
                         {"decaying", d.decaying}});
  Json hyps = Json::array();
  for (const auto& h : r.hypotheses)
    hyps.push_back(Json{{"name", h.name}, {"evidence", to_string(h.evidence)}, {"detail", h.detail}});
  Json j{{"label", r.label},       {"mode", to_string(r.mode)}, {"m", r.m},
         {"l", r.l},               {"assumed", r.assumed},      {"hypotheses", hyps},
         {"decay", decay},         {"probes", r.probes},        {"probes_nonsingular", r.probes_nonsingular},
         {"extrapolations", r.extrapolations}, {"conclusion", r.conclusion}};
  j["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
  return j;
}

Json report(const std::string& kind, mpfr_prec_t precision_bits, const Json& payload) {
  Json j{{"kind", kind}, {"version", lincrit_version()}, {"precision_bits", precision_bits}};
  for (auto it = payload.begin(); it != payload.end(); ++it) j[it.key()] = it.value();
  return j;
}

}  // namespace lincrit
