#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>
#include <map>
#include <sstream>
#include <utility>

#include "hilbert.hpp"
#include "local_cohomology.hpp"
#include "theorems.hpp"

namespace tcw {

namespace {

using json = nlohmann::ordered_json;

std::string rat_decimal(const Rat& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g",
                static_cast<double>(r.num) / static_cast<double>(r.den));
  return buf;
}

std::string rat_exact(const Rat& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::string rat_text(const Rat& r) { return rat_exact(r) + " (" + rat_decimal(r) + ")"; }

json rat_json(const Rat& r) { return json{{"exact", rat_exact(r)}, {"decimal", rat_decimal(r)}}; }

struct TextTable {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;

  void row(std::vector<std::string> r) { rows.push_back(std::move(r)); }

  std::string render() const {
    std::vector<size_t> width(headers.size());
    for (size_t j = 0; j < headers.size(); ++j) width[j] = headers[j].size();
    for (const auto& r : rows)
      for (size_t j = 0; j < r.size() && j < width.size(); ++j)
        width[j] = std::max(width[j], r[j].size());
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& r) {
      for (size_t j = 0; j < width.size(); ++j) {
        const std::string cell = j < r.size() ? r[j] : "";
        os << "  " << cell << std::string(width[j] - cell.size(), ' ');
      }
      os << '\n';
    };
    emit(headers);
    std::vector<std::string> rule;
    for (size_t w : width) rule.push_back(std::string(w, '-'));
    emit(rule);
    for (const auto& r : rows) emit(r);
    return os.str();
  }
};

struct Context {
  const WorkbenchScript* script = nullptr;
  const RunnerOptions* opt = nullptr;
  std::map<std::string, const RingDecl*> ring_decls;
  std::map<std::string, PresPtr> rings;  // instantiated fibers, keyed by ring name
  std::map<std::string, const IdealDecl*> ideals;
  std::map<std::string, const ElementDecl*> elements;
};

struct TaskResult {
  json payload;
  std::string text;
  std::string summary;  // coarse outcome for model aggregation
  bool undetermined = false;
};

Polynomial poly_from_spec(const PolySpec& spec, const RingPtr& ring) {
  std::vector<Term> terms;
  terms.reserve(spec.terms.size());
  for (const auto& [c, m] : spec.terms) {
    uint32_t r = ring->fp.reduce_i64(c);
    if (r != 0) terms.push_back({r, m});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

const RingDecl& ring_decl_of(const Context& ctx, const std::string& name) {
  auto it = ctx.ring_decls.find(name);
  if (it == ctx.ring_decls.end())
    throw Error(ErrorCode::UnresolvedName, "'" + name + "' is not a declared ring");
  return *it->second;
}

const PresPtr& ring_of(const Context& ctx, const std::string& name) {
  ring_decl_of(ctx, name);
  auto it = ctx.rings.find(name);
  if (it == ctx.rings.end())
    throw Error(ErrorCode::ParameterError,
                "ring " + name + " is an integral family; run it through the models task");
  return it->second;
}

const IdealDecl& ideal_decl_of(const Context& ctx, const std::string& name) {
  auto it = ctx.ideals.find(name);
  if (it == ctx.ideals.end())
    throw Error(ErrorCode::UnresolvedName, "'" + name + "' is not a declared ideal");
  return *it->second;
}

std::vector<Polynomial> ideal_polys(const Context& ctx, const std::string& name,
                                    const PresPtr& expected) {
  const IdealDecl& decl = ideal_decl_of(ctx, name);
  const PresPtr& R = ring_of(ctx, decl.ring);
  if (R != expected)
    throw Error(ErrorCode::RingMismatch,
                "ideal " + name + " lives in ring " + decl.ring + ", not the task's ring");
  std::vector<Polynomial> out;
  for (const PolySpec& g : decl.gens) out.push_back(poly_from_spec(g, R->ambient()));
  return out;
}

Polynomial element_poly(const Context& ctx, const std::string& name, const PresPtr& expected) {
  auto it = ctx.elements.find(name);
  if (it == ctx.elements.end())
    throw Error(ErrorCode::UnresolvedName, "'" + name + "' is not a declared element");
  const PresPtr& R = ring_of(ctx, it->second->ring);
  if (R != expected)
    throw Error(ErrorCode::RingMismatch, "element " + name + " lives in ring " +
                                             it->second->ring + ", not the task's ring");
  return poly_from_spec(it->second->poly, R->ambient());
}

class Words {
 public:
  Words(const TaskDecl& task) : task_(task) {}

  bool done() const { return i_ >= task_.words.size(); }

  const std::string& peek() const {
    static const std::string empty;
    return done() ? empty : task_.words[i_];
  }

  const std::string& next(const std::string& what) {
    if (done())
      throw Error(ErrorCode::ParameterError, "task " + task_.kind + " expects " + what);
    return task_.words[i_++];
  }

  uint64_t next_u64(const std::string& what, uint64_t maxv) {
    const std::string& w = next(what);
    uint64_t v = 0;
    if (w.empty()) throw Error(ErrorCode::ParameterError, "task " + task_.kind + ": " + what);
    for (char c : w) {
      if (c < '0' || c > '9')
        throw Error(ErrorCode::ParameterError,
                    "task " + task_.kind + ": '" + w + "' is not a number for " + what);
      v = v * 10 + static_cast<uint64_t>(c - '0');
      if (v > maxv)
        throw Error(ErrorCode::ParameterError,
                    "task " + task_.kind + ": " + what + " out of range");
    }
    return v;
  }

  bool accept_key(const std::string& key) {
    if (!done() && task_.words[i_] == key) {
      ++i_;
      return true;
    }
    return false;
  }

  std::vector<std::string> drain() {
    std::vector<std::string> rest(task_.words.begin() + i_, task_.words.end());
    i_ = task_.words.size();
    return rest;
  }

  void finish() {
    if (!done())
      throw Error(ErrorCode::ParameterError,
                  "task " + task_.kind + ": unexpected argument '" + task_.words[i_] + "'");
  }

 private:
  const TaskDecl& task_;
  size_t i_ = 0;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

ClosureConfig make_config(const Context& ctx, const PresPtr& R,
                          std::optional<uint32_t> emax_override = {}) {
  ClosureConfig cfg;
  if (emax_override)
    cfg.e_max = *emax_override;
  else if (ctx.opt->e_max)
    cfg.e_max = *ctx.opt->e_max;
  if (ctx.opt->k_power) cfg.k_power = *ctx.opt->k_power;
  if (ctx.opt->assert_test_element)
    cfg.asserted_test_element = element_poly(ctx, *ctx.opt->assert_test_element, R);
  return cfg;
}

// ---------- serialization helpers ----------

json j_verdict(const ClosureVerdict& v) {
  json j;
  j["status"] = closure_status_name(v.status);
  j["route"] = v.route;
  j["certificate"] = v.certificate ? json(v.certificate->render()) : json(nullptr);
  j["e_lo"] = v.e_lo;
  j["e_hi"] = v.e_hi;
  j["chain_stabilized"] = v.chain_stabilized;
  j["colon_degree_cap"] = v.colon_degree_cap;
  j["tail_start"] = v.tail_start;
  j["chain"] = json::array();
  for (const ChainSlice& s : v.chain)
    j["chain"].push_back(json{{"degree", s.degree}, {"dim", s.dim}});
  j["failures"] = json::array();
  for (const OutFailure& f : v.failures)
    j["failures"].push_back(
        json{{"candidate", f.candidate.render()}, {"k", f.k}, {"e", f.e}});
  j["assumptions"] = v.assumptions;
  return j;
}

std::string verdict_line(const ClosureVerdict& v) {
  std::string s = std::string(closure_status_name(v.status)) + "  route=" + v.route;
  if (v.certificate) s += "  certificate=" + v.certificate->render();
  return s;
}

std::string verdict_text(const ClosureVerdict& v) {
  std::ostringstream os;
  os << verdict_line(v) << '\n';
  if (!v.chain.empty()) {
    os << "  chain slices:";
    for (const ChainSlice& s : v.chain) os << " deg " << s.degree << " dim " << s.dim;
    os << (v.chain_stabilized ? "  (stabilized)" : "  (not stabilized)") << '\n';
  }
  for (const OutFailure& f : v.failures)
    os << "  fails: candidate " << f.candidate.render() << ", power " << f.k << ", at e="
       << f.e << "\n";
  for (const std::string& a : v.assumptions) os << "  note: " << a << '\n';
  return os.str();
}

std::string summary_class(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::InProved:
    case ClosureStatus::LikelyIn: return "in";
    case ClosureStatus::OutEvidence: return "out";
    case ClosureStatus::Undetermined: return "undetermined";
  }
  return "undetermined";
}

json j_cert_rows(const std::vector<CertificateRow>& rows) {
  json arr = json::array();
  for (const CertificateRow& r : rows) {
    json j;
    j["e"] = r.e;
    j["q"] = r.q;
    j["holds"] = r.holds ? json(*r.holds) : json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string cert_rows_text(const std::vector<CertificateRow>& rows) {
  TextTable t;
  t.headers = {"e", "q", "holds"};
  for (const CertificateRow& r : rows)
    t.row({std::to_string(r.e), std::to_string(r.q),
           r.holds ? (*r.holds ? "true" : "false") : "budget-exhausted"});
  return t.render();
}

// ---------- task handlers ----------

TaskResult dispatch(const Context& ctx, const TaskDecl& task);

TaskResult task_tc_hull(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> gens = ideal_polys(ctx, w.next("an ideal name"), R);
  int64_t bound;
  if (w.accept_key("bound"))
    bound = static_cast<int64_t>(w.next_u64("bound value", INT32_MAX));
  else if (ctx.opt->bound)
    bound = *ctx.opt->bound;
  else
    throw Error(ErrorCode::ParameterError, "task tc-hull needs 'bound N' or --bound");
  std::optional<uint32_t> emax;
  if (w.accept_key("emax")) emax = static_cast<uint32_t>(w.next_u64("emax value", 16));
  w.finish();

  HullResult hull = tc_hull(R, gens, bound, make_config(ctx, R, emax));

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["input"] = json::array();
  for (const Polynomial& g : hull.input) res.payload["input"].push_back(g.render());
  res.payload["degree_bound"] = hull.degree_bound;
  res.payload["sweeps"] = hull.sweeps;
  res.payload["fixed_point"] = hull.fixed_point;
  res.payload["generators"] = json::array();
  TextTable t;
  t.headers = {"generator", "status", "route", "certificate"};
  std::vector<std::string> names;
  for (const HullGenerator& hg : hull.generators) {
    json g;
    g["generator"] = hg.gen.render();
    g["verdict"] = j_verdict(hg.verdict);
    res.payload["generators"].push_back(std::move(g));
    t.row({hg.gen.render(), closure_status_name(hg.verdict.status), hg.verdict.route,
           hg.verdict.certificate ? hg.verdict.certificate->render() : ""});
    names.push_back(hg.gen.render());
    res.undetermined = res.undetermined || hg.verdict.status == ClosureStatus::Undetermined;
  }
  std::sort(names.begin(), names.end());
  std::string joined;
  for (const std::string& n : names) joined += (joined.empty() ? "" : ",") + n;
  res.summary = joined;
  res.text = t.render();
  std::ostringstream os;
  os << res.text << "hull generated by: " << joined << "  (sweeps " << hull.sweeps << ")\n";
  res.text = os.str();
  return res;
}

TaskResult task_tc_membership(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> gens = ideal_polys(ctx, w.next("an ideal name"), R);
  Polynomial z = element_poly(ctx, w.next("an element name"), R);
  std::optional<uint32_t> emax;
  if (w.accept_key("emax")) emax = static_cast<uint32_t>(w.next_u64("emax value", 16));
  w.finish();

  ClosureVerdict v = tc_membership(R, gens, z, make_config(ctx, R, emax));

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["element"] = z.render();
  res.payload["verdict"] = j_verdict(v);
  res.text = verdict_text(v);
  res.summary = summary_class(v.status);
  res.undetermined = v.status == ClosureStatus::Undetermined;
  return res;
}

TaskResult task_tc_certify(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> gens = ideal_polys(ctx, w.next("an ideal name"), R);
  Polynomial z = element_poly(ctx, w.next("an element name"), R);
  Polynomial c = element_poly(ctx, w.next("a certificate element name"), R);
  uint32_t elo = 1, ehi = 0;
  if (w.accept_key("elo")) elo = static_cast<uint32_t>(w.next_u64("elo value", 16));
  if (w.accept_key("ehi")) ehi = static_cast<uint32_t>(w.next_u64("ehi value", 16));
  w.finish();
  ClosureConfig cfg = make_config(ctx, R);
  if (ehi == 0) ehi = cfg.e_max;

  std::vector<CertificateRow> rows = tc_certificate_check(R, gens, z, c, elo, ehi, cfg);

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["element"] = z.render();
  res.payload["certificate"] = c.render();
  res.payload["rows"] = j_cert_rows(rows);
  bool all_true = !rows.empty(), any_budget = false;
  for (const CertificateRow& r : rows) {
    if (!r.holds) any_budget = true;
    all_true = all_true && r.holds && *r.holds;
  }
  res.payload["all_hold"] = all_true;
  res.text = cert_rows_text(rows);
  res.summary = any_budget ? "budget" : (all_true ? "all-true" : "has-false");
  return res;
}

TaskResult task_persistence(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> gens = ideal_polys(ctx, w.next("an ideal name"), R);
  Polynomial z = element_poly(ctx, w.next("an element name"), R);
  Polynomial c = element_poly(ctx, w.next("a certificate element name"), R);
  Polynomial h = element_poly(ctx, w.next("a cut element name"), R);
  uint32_t elo = 1, ehi = 0;
  if (w.accept_key("elo")) elo = static_cast<uint32_t>(w.next_u64("elo value", 16));
  if (w.accept_key("ehi")) ehi = static_cast<uint32_t>(w.next_u64("ehi value", 16));
  w.finish();
  ClosureConfig cfg = make_config(ctx, R);
  if (ehi == 0) ehi = cfg.e_max;

  std::vector<CertificateRow> rows = persistence_pushforward(R, gens, z, c, h, elo, ehi, cfg);

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["element"] = z.render();
  res.payload["certificate"] = c.render();
  res.payload["cut"] = h.render();
  res.payload["rows"] = j_cert_rows(rows);
  bool all_true = !rows.empty(), any_budget = false;
  for (const CertificateRow& r : rows) {
    if (!r.holds) any_budget = true;
    all_true = all_true && r.holds && *r.holds;
  }
  res.payload["all_hold"] = all_true;
  res.text = cert_rows_text(rows);
  res.summary = any_budget ? "budget" : (all_true ? "all-true" : "has-false");
  return res;
}

TaskResult task_hk(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> gens = ideal_polys(ctx, w.next("an ideal name"), R);
  uint32_t emax = 3;
  if (w.accept_key("emax"))
    emax = static_cast<uint32_t>(w.next_u64("emax value", 12));
  else if (ctx.opt->e_max)
    emax = *ctx.opt->e_max;
  w.finish();

  HKTable table = hk_table(R, gens, emax);

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["dim"] = table.dim;
  res.payload["rows"] = json::array();
  TextTable t;
  t.headers = {"e", "q", "length", "normalized"};
  for (const HKRow& r : table.rows) {
    res.payload["rows"].push_back(json{
        {"e", r.e}, {"q", r.q}, {"length", r.length}, {"normalized", rat_json(r.normalized)}});
    t.row({std::to_string(r.e), std::to_string(r.q), std::to_string(r.length),
           rat_text(r.normalized)});
  }
  res.payload["last_delta"] = rat_json(table.last_delta);
  res.text = t.render() + "last delta " + rat_text(table.last_delta) + "\n";
  res.summary = table.rows.empty() ? "" : rat_exact(table.rows.back().normalized);
  return res;
}

TaskResult task_hs(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> gens = ideal_polys(ctx, w.next("an ideal name"), R);
  uint32_t nmax = 4;
  if (w.accept_key("nmax")) nmax = static_cast<uint32_t>(w.next_u64("nmax value", 64));
  w.finish();

  HSTable table = hs_table(R, gens, nmax);

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["dim"] = table.dim;
  res.payload["rows"] = json::array();
  TextTable t;
  t.headers = {"n", "length", "d!*length/n^d"};
  for (const HSRow& r : table.rows) {
    res.payload["rows"].push_back(
        json{{"n", r.n}, {"length", r.length}, {"normalized", rat_json(r.normalized)}});
    t.row({std::to_string(r.n), std::to_string(r.length), rat_text(r.normalized)});
  }
  res.text = t.render();
  res.summary = table.rows.empty() ? "" : rat_exact(table.rows.back().normalized);
  return res;
}

TaskResult task_hk_compare(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> small = ideal_polys(ctx, w.next("an ideal name"), R);
  std::vector<Polynomial> big = ideal_polys(ctx, w.next("a second ideal name"), R);
  uint32_t emax = 3;
  if (w.accept_key("emax"))
    emax = static_cast<uint32_t>(w.next_u64("emax value", 12));
  else if (ctx.opt->e_max)
    emax = *ctx.opt->e_max;
  w.finish();

  HKCompareTable table = hk_compare(R, small, big, emax);

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["rows"] = json::array();
  TextTable t;
  t.headers = {"e", "q", "length(I)", "length(I')", "equal"};
  for (const HKCompareRow& r : table.rows) {
    res.payload["rows"].push_back(json{{"e", r.e},
                                       {"q", r.q},
                                       {"length_small", r.length_small},
                                       {"length_big", r.length_big},
                                       {"equal", r.equal}});
    t.row({std::to_string(r.e), std::to_string(r.q), std::to_string(r.length_small),
           std::to_string(r.length_big), r.equal ? "yes" : "no"});
  }
  res.payload["all_equal"] = table.all_equal;
  res.text = t.render() + (table.all_equal ? "all rows equal\n" : "rows differ\n");
  res.summary = table.all_equal ? "equal" : "differ";
  return res;
}

TaskResult task_colon_capture(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> xs = ideal_polys(ctx, w.next("a parameter ideal name"), R);
  if (!w.accept_key("index"))
    throw Error(ErrorCode::ParameterError, "task colon-capture needs 'index N'");
  uint32_t index = static_cast<uint32_t>(w.next_u64("index value", 16));
  w.finish();

  ColonCaptureReport report = colon_capture_report(R, xs, index, make_config(ctx, R));

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["index"] = report.index;
  res.payload["colon_generators"] = json::array();
  for (const Polynomial& g : report.colon_generators)
    res.payload["colon_generators"].push_back(g.render());
  res.payload["outside"] = json::array();
  TextTable t;
  t.headers = {"outside generator", "status", "route", "certificate"};
  for (const ColonCaptureEntry& e : report.outside) {
    res.payload["outside"].push_back(
        json{{"generator", e.gen.render()}, {"verdict", j_verdict(e.verdict)}});
    t.row({e.gen.render(), closure_status_name(e.verdict.status), e.verdict.route,
           e.verdict.certificate ? e.verdict.certificate->render() : ""});
    res.undetermined = res.undetermined || e.verdict.status == ClosureStatus::Undetermined;
  }
  res.payload["theorem_respected"] = report.theorem_respected;
  std::ostringstream os;
  os << "colon generators:";
  for (const Polynomial& g : report.colon_generators) os << ' ' << g.render();
  os << '\n'
     << t.render()
     << (report.theorem_respected ? "colon capturing respected\n"
                                  : "colon capturing VIOLATED\n");
  res.text = os.str();
  res.summary = report.theorem_respected ? "respected" : "violated";
  return res;
}

TaskResult task_monomial_colon(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> xs = ideal_polys(ctx, w.next("a parameter ideal name"), R);
  if (!w.accept_key("t"))
    throw Error(ErrorCode::ParameterError, "task monomial-colon needs 't N'");
  uint32_t t = static_cast<uint32_t>(w.next_u64("t value", 64));
  w.finish();

  MonomialColonReport report = monomial_colon_check(R, xs, t, make_config(ctx, R));

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["t"] = report.t;
  res.payload["colon_generators"] = json::array();
  for (const Polynomial& g : report.colon_generators)
    res.payload["colon_generators"].push_back(g.render());
  res.payload["checks"] = json::array();
  TextTable tab;
  tab.headers = {"generator", "status", "route"};
  for (const auto& [g, v] : report.checks) {
    res.payload["checks"].push_back(json{{"generator", g.render()}, {"verdict", j_verdict(v)}});
    tab.row({g.render(), closure_status_name(v.status), v.route});
    res.undetermined = res.undetermined || v.status == ClosureStatus::Undetermined;
  }
  res.payload["worst"] = closure_status_name(report.worst);
  res.text = tab.render() + "worst verdict " + closure_status_name(report.worst) + "\n";
  res.summary = summary_class(report.worst);
  return res;
}

TaskResult task_integral_closure(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> gens = ideal_polys(ctx, w.next("an ideal name"), R);
  uint32_t kmax = 4;
  if (w.accept_key("kmax")) kmax = static_cast<uint32_t>(w.next_u64("kmax value", 16));
  w.finish();

  AmbientIdeal closure = monomial_integral_closure(AmbientIdeal(R->ambient(), gens), kmax);

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["generators"] = json::array();
  std::ostringstream os;
  os << "integral closure generated by:";
  std::string joined;
  for (const Polynomial& g : closure.generators()) {
    res.payload["generators"].push_back(g.render());
    os << ' ' << g.render();
    joined += (joined.empty() ? "" : ",") + g.render();
  }
  os << '\n';
  res.text = os.str();
  res.summary = joined;
  return res;
}

TaskResult task_briancon_skoda(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> gens = ideal_polys(ctx, w.next("an ideal name"), R);
  w.finish();

  BrianconSkodaReport report = briancon_skoda_check(R, gens);

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["mu"] = report.mu;
  res.payload["closure_generators"] = json::array();
  for (const Monomial& m : report.closure_generators)
    res.payload["closure_generators"].push_back(render_monomial(m, R->ambient()->vars));
  res.payload["violators"] = json::array();
  for (const Monomial& m : report.violators)
    res.payload["violators"].push_back(render_monomial(m, R->ambient()->vars));
  res.payload["holds"] = report.holds;
  std::ostringstream os;
  os << "mu " << report.mu << ", closure of the mu-th power has "
     << report.closure_generators.size() << " generators, " << report.violators.size()
     << " outside the ideal\n"
     << (report.holds ? "containment holds\n" : "containment FAILS\n");
  res.text = os.str();
  res.summary = report.holds ? "holds" : "fails";
  return res;
}

TaskResult task_mather(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  Polynomial f = element_poly(ctx, w.next("an element name"), R);
  w.finish();

  MatherReport report = mather_check(R, f);

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["f"] = f.render();
  res.payload["jacobian_generators"] = json::array();
  for (const Polynomial& g : report.jacobian_generators)
    res.payload["jacobian_generators"].push_back(g.render());
  res.payload["holds"] = report.holds;
  res.payload["good_prime"] = report.good_prime;
  res.payload["reduction_steps"] = report.reduction_steps;
  std::ostringstream os;
  os << "f^n " << (report.holds ? "lies in" : "does NOT lie in") << " the Jacobian ideal ("
     << report.reduction_steps << " reduction steps, "
     << (report.good_prime ? "good prime" : "small prime") << ")\n";
  res.text = os.str();
  res.summary = report.holds ? "holds" : "fails";
  return res;
}

TaskResult task_probe(const Context& ctx, const TaskDecl& task, bool rational) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  int64_t bound;
  if (w.accept_key("bound"))
    bound = static_cast<int64_t>(w.next_u64("bound value", INT32_MAX));
  else if (ctx.opt->bound)
    bound = *ctx.opt->bound;
  else
    throw Error(ErrorCode::ParameterError, "task " + task.kind + " needs 'bound N' or --bound");
  if (!w.accept_key("samples"))
    throw Error(ErrorCode::ParameterError, "task " + task.kind + " needs 'samples I1,I2,...'");
  std::vector<std::vector<Polynomial>> samples;
  for (const std::string& name : split_list(w.next("sample ideal names")))
    samples.push_back(ideal_polys(ctx, name, R));
  w.finish();

  ClosureConfig cfg = make_config(ctx, R);
  ProbeReport report = rational ? f_rational_probe(R, samples, bound, cfg)
                                : f_regular_probe(R, samples, bound, cfg);

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["samples"] = json::array();
  TextTable t;
  t.headers = {"sample", "closed", "extra generators"};
  for (size_t i = 0; i < report.samples.size(); ++i) {
    const ProbeSample& s = report.samples[i];
    json js;
    js["ideal"] = json::array();
    for (const Polynomial& g : s.ideal) js["ideal"].push_back(g.render());
    js["closed"] = s.closed;
    js["extra"] = json::array();
    std::string extra;
    for (const Polynomial& g : s.extra) {
      js["extra"].push_back(g.render());
      extra += (extra.empty() ? "" : ",") + g.render();
    }
    res.payload["samples"].push_back(std::move(js));
    t.row({std::to_string(i), s.closed ? "yes" : "no", extra});
  }
  res.payload["counterexample_found"] = report.counterexample_found;
  res.text = t.render() + (report.counterexample_found
                               ? "counterexample found: some sample is not tightly closed\n"
                               : "no counterexample among the samples\n");
  res.summary = report.counterexample_found ? "counterexample" : "clean";
  return res;
}

TaskResult task_lc_zero(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  Polynomial z = element_poly(ctx, w.next("an element name"), R);
  if (!w.accept_key("t"))
    throw Error(ErrorCode::ParameterError, "task lc-zero needs 't N'");
  uint32_t t = static_cast<uint32_t>(w.next_u64("t value", 4096));
  if (!w.accept_key("xs"))
    throw Error(ErrorCode::ParameterError, "task lc-zero needs 'xs NAME'");
  std::vector<Polynomial> xs = ideal_polys(ctx, w.next("a parameter ideal name"), R);
  uint32_t smax = ctx.opt->s_max ? *ctx.opt->s_max : 4;
  if (w.accept_key("smax")) smax = static_cast<uint32_t>(w.next_u64("smax value", 64));
  w.finish();

  CechFraction eta = lc_fraction(R, z, t, xs);
  LCZeroVerdict v = lc_zero_test(eta, smax);

  TaskResult res;
  res.payload["fraction"] = eta.render();
  res.payload["degree"] = eta.degree;
  res.payload["status"] = lc_zero_status_name(v.status);
  res.payload["s"] = v.s;
  res.payload["bound"] = v.bound;
  res.payload["method"] = v.method;
  std::ostringstream os;
  os << eta.render() << "  degree " << eta.degree << "  ->  " << lc_zero_status_name(v.status);
  if (v.status == LCZeroStatus::Zero) os << " (shift " << v.s << ")";
  if (v.status == LCZeroStatus::NonzeroUpTo) os << " (bound " << v.bound << ")";
  os << "  [" << v.method << "]\n";
  res.text = os.str();
  res.summary = lc_zero_status_name(v.status);
  return res;
}

TaskResult task_zero_star(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  Polynomial z = element_poly(ctx, w.next("an element name"), R);
  if (!w.accept_key("t"))
    throw Error(ErrorCode::ParameterError, "task zero-star needs 't N'");
  uint32_t t = static_cast<uint32_t>(w.next_u64("t value", 4096));
  if (!w.accept_key("xs"))
    throw Error(ErrorCode::ParameterError, "task zero-star needs 'xs NAME'");
  std::vector<Polynomial> xs = ideal_polys(ctx, w.next("a parameter ideal name"), R);
  w.finish();

  CechFraction eta = lc_fraction(R, z, t, xs);
  ClosureVerdict v = zero_star_test(eta, make_config(ctx, R));

  TaskResult res;
  res.payload["fraction"] = eta.render();
  res.payload["degree"] = eta.degree;
  res.payload["verdict"] = j_verdict(v);
  res.text = eta.render() + "\n" + verdict_text(v);
  res.summary = summary_class(v.status);
  res.undetermined = v.status == ClosureStatus::Undetermined;
  return res;
}

TaskResult task_a_invariant(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> xs;
  if (w.accept_key("xs")) xs = ideal_polys(ctx, w.next("a parameter ideal name"), R);
  w.finish();

  int64_t a = a_invariant(R, xs);

  TaskResult res;
  res.payload["ring"] = R->name();
  res.payload["a_invariant"] = a;
  res.text = "a-invariant " + std::to_string(a) + "\n";
  res.summary = std::to_string(a);
  return res;
}

TaskResult task_fujita(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  if (!w.accept_key("xs"))
    throw Error(ErrorCode::ParameterError, "task fujita needs 'xs NAME'");
  std::vector<Polynomial> xs = ideal_polys(ctx, w.next("a parameter ideal name"), R);
  if (!w.accept_key("n"))
    throw Error(ErrorCode::ParameterError, "task fujita needs 'n N'");
  int64_t n = static_cast<int64_t>(w.next_u64("n value", 4096));
  if (!w.accept_key("t"))
    throw Error(ErrorCode::ParameterError, "task fujita needs 't N'");
  uint32_t t = static_cast<uint32_t>(w.next_u64("t value", 4096));
  w.finish();

  FujitaReport report = fujita_probe(R, xs, n, t, make_config(ctx, R));

  TaskResult res;
  res.payload["n"] = report.n;
  res.payload["t"] = report.t;
  res.payload["classes"] = json::array();
  TextTable tab;
  tab.headers = {"class", "multiplier", "method", "consistent"};
  for (const FujitaClassReport& cls : report.classes) {
    json jc;
    jc["numerator"] = cls.numerator.render();
    jc["multiplier"] = cls.multiplier ? json(cls.multiplier->render()) : json(nullptr);
    jc["method"] = cls.multiplier_method;
    jc["step_one"] = cls.step_one ? j_verdict(*cls.step_one) : json(nullptr);
    jc["consistent"] = cls.consistent;
    res.payload["classes"].push_back(std::move(jc));
    tab.row({cls.numerator.render(), cls.multiplier ? cls.multiplier->render() : "(none)",
             cls.multiplier ? cls.multiplier_method : "step-one",
             cls.consistent ? "yes" : "no"});
    if (cls.step_one)
      res.undetermined =
          res.undetermined || cls.step_one->status == ClosureStatus::Undetermined;
  }
  res.payload["all_consistent"] = report.all_consistent;
  res.text = tab.render() + (report.all_consistent ? "all classes consistent\n"
                                                   : "inconsistent class found\n");
  res.summary = report.all_consistent ? "consistent" : "inconsistent";
  return res;
}

TaskResult task_kodaira(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  if (!w.accept_key("xs"))
    throw Error(ErrorCode::ParameterError, "task kodaira needs 'xs NAME'");
  std::vector<Polynomial> xs = ideal_polys(ctx, w.next("a parameter ideal name"), R);
  int64_t bound = 0;
  if (w.accept_key("bound"))
    bound = static_cast<int64_t>(w.next_u64("bound value", INT32_MAX));
  else if (ctx.opt->bound)
    bound = *ctx.opt->bound;
  w.finish();

  KodairaReport report = kodaira_tc_check(R, xs, bound, make_config(ctx, R));

  TaskResult res;
  res.payload["degree_sum"] = report.degree_sum;
  res.payload["a_invariant"] = report.a_inv;
  res.payload["slices"] = json::array();
  TextTable t;
  t.headers = {"degree", "checked", "violations"};
  for (const KodairaSlice& s : report.slices) {
    json js;
    js["degree"] = s.degree;
    js["checked"] = s.checked;
    js["violations"] = json::array();
    std::string names;
    for (const Monomial& m : s.violations) {
      js["violations"].push_back(render_monomial(m, R->ambient()->vars));
      names += (names.empty() ? "" : ",") + render_monomial(m, R->ambient()->vars);
    }
    res.payload["slices"].push_back(std::move(js));
    t.row({std::to_string(s.degree), std::to_string(s.checked), names});
  }
  res.payload["holds"] = report.holds;
  res.text = t.render() + (report.holds ? "slice containment holds (heuristic, bound-limited)\n"
                                        : "slice containment VIOLATED\n");
  res.summary = report.holds ? "holds" : "violated";
  return res;
}

TaskResult task_plus_witness(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const PresPtr& R = ring_of(ctx, w.next("a ring name"));
  std::vector<Polynomial> gens = ideal_polys(ctx, w.next("an ideal name"), R);
  Polynomial z = element_poly(ctx, w.next("an element name"), R);
  if (!w.accept_key("target"))
    throw Error(ErrorCode::ParameterError, "task plus-witness needs 'target RING'");
  const PresPtr& T = ring_of(ctx, w.next("a target ring name"));
  PlusWitness witness;
  witness.target = T;
  if (!w.accept_key("images"))
    throw Error(ErrorCode::ParameterError, "task plus-witness needs 'images e1,e2,...'");
  for (const std::string& name : split_list(w.next("image element names")))
    witness.images.push_back(element_poly(ctx, name, T));
  if (!w.accept_key("coeffs"))
    throw Error(ErrorCode::ParameterError, "task plus-witness needs 'coeffs e1,e2,...'");
  for (const std::string& name : split_list(w.next("coefficient element names")))
    witness.coefficients.push_back(element_poly(ctx, name, T));
  w.finish();

  bool ok = plus_closure_witness_check(R, gens, z, witness);

  TaskResult res;
  res.payload["holds"] = ok;
  res.text = ok ? "witness verifies: the element lands in the extension ideal\n"
                : "witness FAILS: the combination does not vanish\n";
  res.summary = ok ? "holds" : "fails";
  return res;
}

TaskResult task_models(const Context& ctx, const TaskDecl& task) {
  Words w(task);
  const std::string ring_name = w.next("a ring name");
  const RingDecl& decl = ring_decl_of(ctx, ring_name);
  if (!decl.integral)
    throw Error(ErrorCode::ParameterError,
                "ring " + ring_name + " has a fixed characteristic; models needs 'char Z'");
  std::vector<uint32_t> primes = ctx.opt->primes;
  if (w.accept_key("primes")) {
    primes.clear();
    for (const std::string& p : split_list(w.next("a prime list"))) {
      uint64_t v = 0;
      for (char c : p) {
        if (c < '0' || c > '9')
          throw Error(ErrorCode::ParameterError, "'" + p + "' is not a prime");
        v = v * 10 + static_cast<uint64_t>(c - '0');
      }
      primes.push_back(static_cast<uint32_t>(v));
    }
  }
  if (primes.empty())
    throw Error(ErrorCode::EmptyFamily, "task models needs 'primes p1,p2,...' or --primes");
  TaskDecl inner;
  inner.kind = w.next("an inner task kind");
  inner.words = w.drain();
  inner.span = task.span;
  if (inner.kind == "models")
    throw Error(ErrorCode::ParameterError, "model tasks do not nest");

  IntPresentation pres;
  pres.vars = decl.vars;
  pres.weights = decl.weights.empty()
                     ? std::vector<int64_t>(decl.vars.size(), 1)
                     : decl.weights;
  for (const PolySpec& rel : decl.relations)
    pres.relations.push_back({rel.terms, render_poly_spec(rel, decl.vars)});
  pres.asserted_domain = decl.domain;
  pres.name = decl.name;

  ModelFamily family = reduce_model_family(pres, primes);

  // Fiber contexts are prepared up front; runs are independent.
  std::vector<Context> fiber_ctx;
  for (const ModelFiber& fiber : family.fibers) {
    Context fc = ctx;
    if (!fiber.skipped) fc.rings[ring_name] = fiber.presentation;
    fiber_ctx.push_back(std::move(fc));
  }
  std::vector<std::optional<TaskResult>> results(family.fibers.size());
  std::vector<json> errors(family.fibers.size());
  auto work = [&](size_t i) {
    if (family.fibers[i].skipped) return;
    try {
      results[i] = dispatch(fiber_ctx[i], inner);
    } catch (const Error& e) {
      errors[i] = json{{"code", error_code_name(e.code())}, {"message", e.detail()}};
    }
  };
  if (ctx.opt->threads > 1) {
    std::vector<std::future<void>> futs;
    for (size_t i = 0; i < family.fibers.size(); ++i)
      futs.push_back(std::async(std::launch::async, work, i));
    for (std::future<void>& f : futs) f.get();
  } else {
    for (size_t i = 0; i < family.fibers.size(); ++i) work(i);
  }

  TaskResult res;
  res.payload["family"] = ring_name;
  res.payload["inner"] = inner.kind;
  res.payload["fibers"] = json::array();
  std::ostringstream os;
  std::optional<std::string> agreed;
  bool unanimous = true;
  for (size_t i = 0; i < family.fibers.size(); ++i) {
    const ModelFiber& fiber = family.fibers[i];
    json jf;
    jf["prime"] = fiber.prime;
    jf["skipped"] = fiber.skipped;
    if (fiber.skipped) {
      jf["reason"] = fiber.skip_reason;
      os << "p=" << fiber.prime << "  skipped: " << fiber.skip_reason << "\n";
    } else if (results[i]) {
      jf["result"] = results[i]->payload;
      jf["summary"] = results[i]->summary;
      os << "p=" << fiber.prime << "  " << results[i]->summary << "\n";
      std::istringstream body(results[i]->text);
      std::string line;
      while (std::getline(body, line)) os << "    " << line << "\n";
      if (!agreed)
        agreed = results[i]->summary;
      else
        unanimous = unanimous && *agreed == results[i]->summary;
      res.undetermined = res.undetermined || results[i]->undetermined;
    } else {
      jf["error"] = errors[i];
      os << "p=" << fiber.prime << "  error: " << errors[i]["message"].get<std::string>()
         << "\n";
      unanimous = false;
    }
    res.payload["fibers"].push_back(std::move(jf));
  }
  unanimous = unanimous && agreed.has_value();
  res.payload["unanimous"] = unanimous;
  res.payload["agreed"] = unanimous ? json(*agreed) : json(nullptr);
  if (unanimous)
    os << "all fibers agree: " << *agreed << "\n";
  else
    os << "fibers disagree or failed; see the per-prime rows\n";
  res.text = os.str();
  res.summary = unanimous ? *agreed : "disagree";
  return res;
}

TaskResult dispatch(const Context& ctx, const TaskDecl& task) {
  if (task.kind == "tc-hull") return task_tc_hull(ctx, task);
  if (task.kind == "tc-membership") return task_tc_membership(ctx, task);
  if (task.kind == "tc-certify") return task_tc_certify(ctx, task);
  if (task.kind == "persistence") return task_persistence(ctx, task);
  if (task.kind == "hk") return task_hk(ctx, task);
  if (task.kind == "hs") return task_hs(ctx, task);
  if (task.kind == "hk-compare") return task_hk_compare(ctx, task);
  if (task.kind == "colon-capture") return task_colon_capture(ctx, task);
  if (task.kind == "monomial-colon") return task_monomial_colon(ctx, task);
  if (task.kind == "integral-closure") return task_integral_closure(ctx, task);
  if (task.kind == "briancon-skoda") return task_briancon_skoda(ctx, task);
  if (task.kind == "mather") return task_mather(ctx, task);
  if (task.kind == "f-regular-probe") return task_probe(ctx, task, false);
  if (task.kind == "f-rational-probe") return task_probe(ctx, task, true);
  if (task.kind == "lc-zero") return task_lc_zero(ctx, task);
  if (task.kind == "zero-star") return task_zero_star(ctx, task);
  if (task.kind == "a-invariant") return task_a_invariant(ctx, task);
  if (task.kind == "fujita") return task_fujita(ctx, task);
  if (task.kind == "kodaira") return task_kodaira(ctx, task);
  if (task.kind == "plus-witness") return task_plus_witness(ctx, task);
  if (task.kind == "models") return task_models(ctx, task);
  throw Error(ErrorCode::ParameterError, "unknown task kind '" + task.kind + "'");
}

Context build_context(const WorkbenchScript& script, const RunnerOptions& opt) {
  if (opt.order != "lex" && opt.order != "grevlex")
    throw Error(ErrorCode::ParameterError, "--order must be lex or grevlex");
  Context ctx;
  ctx.script = &script;
  ctx.opt = &opt;
  OrderKind kind = opt.order == "lex" ? OrderKind::Lex : OrderKind::GrevLex;
  for (const RingDecl& decl : script.rings) {
    ctx.ring_decls[decl.name] = &decl;
    if (decl.integral) continue;
    RingPtr ring = RingCtx::make(decl.prime, decl.vars, decl.weights, kind);
    std::vector<Polynomial> rels;
    for (const PolySpec& spec : decl.relations) {
      Polynomial f = poly_from_spec(spec, ring);
      if (f.is_zero())
        throw Error(ErrorCode::ZeroRing, "relation " + spec.source + " vanishes mod " +
                                             std::to_string(decl.prime));
      rels.push_back(std::move(f));
    }
    ctx.rings[decl.name] = RingPresentation::present(ring, rels, decl.domain, decl.name);
  }
  for (const IdealDecl& decl : script.ideals) ctx.ideals[decl.name] = &decl;
  for (const ElementDecl& decl : script.elements) ctx.elements[decl.name] = &decl;
  return ctx;
}

}  // namespace

RunOutcome run_script(const WorkbenchScript& script, const RunnerOptions& opt) {
  RunOutcome out;
  out.doc["version"] = kWorkbenchVersion;
  out.doc["tasks"] = json::array();
  Context ctx = build_context(script, opt);

  std::ostringstream text;
  bool undetermined = false;
  for (const TaskDecl& task : script.tasks) {
    json entry;
    entry["task"] = task.kind;
    entry["args"] = task.words;
    std::string header = "== task " + task.kind;
    for (const std::string& w : task.words) header += " " + w;
    header += " ==\n";
    auto t0 = std::chrono::steady_clock::now();
    bool failed = false;
    try {
      TaskResult res = dispatch(ctx, task);
      entry["result"] = std::move(res.payload);
      text << header << res.text << "\n";
      undetermined = undetermined || res.undetermined;
    } catch (const Error& e) {
      entry["error"] = json{{"code", error_code_name(e.code())}, {"message", e.detail()}};
      text << header << "error " << error_code_name(e.code()) << ": " << e.detail()
           << "\n\n";
      out.exit_code = 1;
      failed = true;
    }
    if (opt.timings) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      entry["ms"] = static_cast<int64_t>(ms);
    }
    out.doc["tasks"].push_back(std::move(entry));
    if (failed) break;  // stop at the first failing task
  }
  if (out.exit_code == 0 && undetermined) out.exit_code = 2;
  out.text = text.str();
  return out;
}

}  // namespace tcw
