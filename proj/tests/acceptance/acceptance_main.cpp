#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "closure.hpp"
#include "hilbert.hpp"
#include "ideal.hpp"
#include "local_cohomology.hpp"
#include "ring_presentation.hpp"
#include "support.hpp"
#include "theorems.hpp"

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; supporting measurements follow as indented notes. Time budgets and
// all expected values are pinned here, and the exit status is the number of
// failed criteria.

using namespace tcw;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

PresPtr fermat(uint32_t p) {
  auto R = ts::ring(p, "x,y,z");
  return ts::pres(R, "x^3+y^3-z^3", true);
}

// Projective coordinate ring of four points on a line, the standing
// depth-one example of the suites.
PresPtr semigroup_ring() {
  auto R = ts::ring(5, "a,b,c,d");
  return ts::pres(R, "b*c-a*d, b^3-a^2*c, a*c^2-b^2*d, c^3-b*d^2", true);
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

std::vector<std::string> hull_strings(const HullResult& h) {
  std::vector<std::string> out;
  for (const auto& g : h.generators) out.push_back(g.gen.render());
  std::sort(out.begin(), out.end());
  return out;
}

std::string mono_expr(int i, int j) {
  std::string s;
  if (i > 0) s += "x^" + std::to_string(i);
  if (j > 0) {
    if (!s.empty()) s += "*";
    s += "y^" + std::to_string(j);
  }
  return s.empty() ? "1" : s;
}

// ---- criterion 1: the cubic cone hull and its certificate, five primes ----

Outcome criterion1() {
  Outcome o;
  const std::vector<std::string> want = {"x", "y", "z^2"};
  for (uint32_t p : {2u, 5u, 7u, 11u, 13u}) {
    const std::string tag = "p=" + std::to_string(p);
    auto S = fermat(p);
    auto R = S->ambient();
    ClosureConfig cfg;
    cfg.e_max = 5;

    HullResult h = tc_hull(S, ts::pps(R, "x, y"), 3, cfg);
    if (hull_strings(h) != want) {
      o.fail(tag + ": hull is {" + join(hull_strings(h)) + "}, want {x, y, z^2}");
      continue;
    }
    if (!h.fixed_point) o.fail(tag + ": hull sweep did not reach a fixed point");

    auto rows = tc_certificate_check(S, ts::pps(R, "x, y"), ts::pp(R, "z^2"),
                                     ts::pp(R, "x"), 1, 5, cfg);
    if (rows.size() != 5) o.fail(tag + ": expected 5 certificate rows");
    for (const auto& row : rows) {
      if (!row.holds || !*row.holds)
        o.fail(tag + ": certificate row e=" + std::to_string(row.e) + " does not hold");
    }

    auto vz = tc_membership(S, ts::pps(R, "x, y"), ts::pp(R, "z"), cfg);
    if (vz.status != ClosureStatus::OutEvidence)
      o.fail(tag + ": z is " + std::string(closure_status_name(vz.status)) +
             ", want OUT_EVIDENCE");
  }
  if (o.pass)
    o.note("five primes: hull (x, y, z^2) fixed, c=x rows hold for e=1..5, z refuted");
  return o;
}

// ---- criterion 2: hulls never grow in a regular ring ----

Polynomial random_homogeneous(const RingPtr& R, std::mt19937& rng) {
  for (;;) {
    int d = 1 + int(rng() % 3);
    std::string expr;
    for (int i = 0; i <= d; ++i) {
      int c = int(rng() % 5);
      if (c == 0) continue;
      if (!expr.empty()) expr += "+";
      expr += std::to_string(c);
      if (i > 0) expr += "*x^" + std::to_string(i);
      if (d - i > 0) expr += "*y^" + std::to_string(d - i);
    }
    if (!expr.empty()) return ts::pp(R, expr);
  }
}

Outcome criterion2() {
  Outcome o;
  auto F = ts::pres(ts::ring(5, "x,y"), "");
  auto R = F->ambient();
  std::mt19937 rng(20260814);
  int grew = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Polynomial> gens;
    int n = 1 + int(rng() % 3);
    for (int i = 0; i < n; ++i) gens.push_back(random_homogeneous(R, rng));

    HullResult h = tc_hull(F, gens, 4);
    std::vector<Polynomial> out;
    for (const auto& g : h.generators) out.push_back(g.gen);
    if (!ideal_equal(AmbientIdeal(R, out), AmbientIdeal(R, gens))) {
      ++grew;
      o.fail("trial " + std::to_string(trial) + ": hull grew beyond (" +
             ts::rendered(gens) + ")");
    }
  }
  if (o.pass) o.note("50 random homogeneous ideals in F5[x,y], every hull equals its ideal");
  return o;
}

// ---- criterion 3: colon capturing on the depth-one semigroup ring ----

Outcome criterion3() {
  Outcome o;
  auto S = semigroup_ring();
  auto R = S->ambient();
  ClosureConfig cfg;
  cfg.e_max = 5;
  auto rep = colon_capture_report(S, ts::pps(R, "a, d"), 1, cfg);

  if (rep.outside.empty()) {
    o.fail("no colon generator lies outside the plain ideal");
    return o;
  }
  if (!rep.theorem_respected) o.fail("report does not respect colon capturing");
  for (const auto& entry : rep.outside) {
    const std::string tag = entry.gen.render();
    const auto& v = entry.verdict;
    if (v.status != ClosureStatus::InProved && v.status != ClosureStatus::LikelyIn) {
      o.fail(tag + ": verdict " + closure_status_name(v.status) + ", want non-OUT");
      continue;
    }
    if (v.route == "certificate-stabilization") {
      if (!v.chain_stabilized) o.fail(tag + ": colon chain never stabilized");
      if (v.e_lo > 5 || v.e_hi > 5)
        o.fail(tag + ": stabilization window e=" + std::to_string(v.e_lo) + ".." +
               std::to_string(v.e_hi) + " exceeds 5");
    }
  }
  if (o.pass)
    o.note(std::to_string(rep.outside.size()) +
           " colon generator(s) outside (a), all non-OUT with stabilization by e<=5");
  return o;
}

// ---- criterion 4: Briancon-Skoda sweep plus Mather inclusions ----

Outcome criterion4() {
  Outcome o;
  std::vector<std::string> monos;
  for (int d = 1; d <= 4; ++d)
    for (int i = 0; i <= d; ++i) monos.push_back(mono_expr(i, d - i));

  uint64_t checked = 0;
  int reported = 0;
  for (uint32_t p : {2u, 3u, 5u}) {
    auto F = ts::pres(ts::ring(p, "x,y"), "");
    auto R = F->ambient();
    std::vector<Polynomial> basis;
    for (const auto& m : monos) basis.push_back(ts::pp(R, m));

    auto check = [&](std::initializer_list<size_t> idx) {
      std::vector<Polynomial> gens;
      for (size_t i : idx) gens.push_back(basis[i]);
      auto rep = briancon_skoda_check(F, gens);
      ++checked;
      if (!rep.holds || !rep.violators.empty()) {
        if (reported < 5)
          o.fail("p=" + std::to_string(p) + ", I=(" + ts::rendered(gens) + "): " +
                 std::to_string(rep.violators.size()) + " violator(s)");
        ++reported;
      }
    };
    for (size_t a = 0; a < basis.size(); ++a) {
      check({a});
      for (size_t b = a + 1; b < basis.size(); ++b) {
        check({a, b});
        for (size_t c = b + 1; c < basis.size(); ++c) check({a, b, c});
      }
    }
  }
  if (reported > 5) o.fail(std::to_string(reported) + " violating ideals in total");

  auto F2 = ts::pres(ts::ring(7, "x,y"), "");
  auto R2 = F2->ambient();
  auto F3 = ts::pres(ts::ring(7, "x,y,z"), "");
  auto R3 = F3->ambient();
  struct MCase {
    PresPtr pres;
    Polynomial f;
  };
  std::vector<MCase> cases = {{F2, ts::pp(R2, "x^3+y^3")},
                              {F3, ts::pp(R3, "x^3+y^3+z^3")},
                              {F2, ts::pp(R2, "x^2*y+x*y^2")}};
  for (const auto& mc : cases) {
    auto rep = mather_check(mc.pres, mc.f);
    if (!rep.holds) o.fail("Mather inclusion fails for " + mc.f.render());
    if (!rep.good_prime) o.fail("p=7 flagged as a bad prime for " + mc.f.render());
  }
  if (o.pass)
    o.note(std::to_string(checked) +
           " monomial ideals over p=2,3,5 with zero violations; 3 Mather cases hold");
  return o;
}

// ---- criterion 5: Hilbert-Kunz tables against the oracle golden file ----

std::map<std::string, std::vector<std::vector<uint64_t>>> load_golden() {
  std::ifstream in(std::string(TCW_TEST_DIR) + "/golden/hk_golden.txt");
  if (!in) throw std::runtime_error("golden file is missing");
  std::map<std::string, std::vector<std::vector<uint64_t>>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    std::vector<uint64_t> vals;
    uint64_t v = 0;
    while (ss >> v) vals.push_back(v);
    rows[key].push_back(vals);
  }
  return rows;
}

Outcome criterion5() {
  Outcome o;
  auto golden = load_golden();
  const auto& plane = golden.at("f3_xy_hk");
  const auto& cubic = golden.at("fermat_p5_hk");
  if (plane.size() != 4 || cubic.size() != 4) {
    o.fail("golden file does not carry four rows per table");
    return o;
  }

  auto F = ts::pres(ts::ring(3, "x,y"), "");
  auto tab = hk_table(F, ts::pps(F->ambient(), "x, y"), 3);
  if (tab.rows.size() != 4) o.fail("plane table does not have rows e=0..3");
  for (size_t e = 0; e < tab.rows.size() && e < plane.size(); ++e) {
    const auto& row = tab.rows[e];
    if (row.q != plane[e][1] || row.length != plane[e][2])
      o.fail("F3[x,y] e=" + std::to_string(e) + ": length " + std::to_string(row.length) +
             ", oracle " + std::to_string(plane[e][2]));
    if (row.length != row.q * row.q)
      o.fail("F3[x,y] e=" + std::to_string(e) + ": length is not q^2");
    if (!(row.normalized == Rat(1)))
      o.fail("F3[x,y] e=" + std::to_string(e) + ": normalized column is not 1");
  }

  auto S = fermat(5);
  auto tab5 = hk_table(S, ts::pps(S->ambient(), "x, y, z"), 3);
  if (tab5.rows.size() != 4) o.fail("cubic table does not have rows e=0..3");
  for (size_t e = 0; e < tab5.rows.size() && e < cubic.size(); ++e) {
    const auto& row = tab5.rows[e];
    if (row.q != cubic[e][1] || row.length != cubic[e][2])
      o.fail("cubic p=5 e=" + std::to_string(e) + ": length " + std::to_string(row.length) +
             ", oracle " + std::to_string(cubic[e][2]));
  }
  if (o.pass) o.note("both tables match the oracle exactly; plane normalized column is 1");
  return o;
}

// ---- criterion 6: Hilbert-Kunz rows under hull enlargement ----

Outcome criterion6() {
  Outcome o;
  auto S = fermat(7);
  auto R = S->ambient();
  auto I = ts::pps(R, "x, y, z^3");
  ClosureConfig cfg;
  cfg.e_max = 5;

  HullResult h = tc_hull(S, I, 3, cfg);
  std::vector<Polynomial> unioned;
  for (const auto& g : h.generators) unioned.push_back(g.gen);
  o.note("hull union: (" + ts::rendered(unioned) + ")");

  auto cmp = hk_compare(S, I, unioned, 3);
  for (const auto& row : cmp.rows)
    o.note("e=" + std::to_string(row.e) + ": " + std::to_string(row.length_small) +
           " vs " + std::to_string(row.length_big) +
           (row.equal ? "" : "  (differs)"));
  if (!cmp.all_equal)
    o.fail("rows are not equal for e<=3; the lengths differ by one standard monomial");

  auto with_z = I;
  with_z.push_back(ts::pp(R, "z"));
  auto cmp_z = hk_compare(S, I, with_z, 3);
  bool dropped = false;
  for (const auto& row : cmp_z.rows)
    if (row.length_big < row.length_small) dropped = true;
  if (!dropped) o.fail("adjoining z does not strictly drop any row");
  else o.note("adjoining z drops every row (e=0: " +
              std::to_string(cmp_z.rows.at(0).length_small) + " -> " +
              std::to_string(cmp_z.rows.at(0).length_big) + ")");
  return o;
}

// ---- criterion 7: local cohomology vanishing against socle combinatorics ----

Outcome criterion7() {
  Outcome o;
  auto F = ts::pres(ts::ring(5, "x,y"), "");
  auto R = F->ambient();
  auto xs = ts::pps(R, "x, y");
  int checked = 0, nonzero = 0;
  for (uint32_t t = 1; t <= 3; ++t) {
    for (int i = 0; i + 0 <= 2 * int(t); ++i) {
      for (int j = 0; i + j <= 2 * int(t); ++j) {
        auto eta = lc_fraction(F, ts::pp(R, mono_expr(i, j)), t, xs);
        auto v = lc_zero_test(eta, 4);
        const bool expect_nonzero = i < int(t) && j < int(t);
        ++checked;
        if (expect_nonzero && v.status != LCZeroStatus::NonzeroProved) {
          o.fail(eta.render() + ": engine says " + lc_zero_status_name(v.status) +
                 ", socle oracle says nonzero");
          continue;
        }
        if (!expect_nonzero && v.status != LCZeroStatus::Zero) {
          o.fail(eta.render() + ": engine says " + lc_zero_status_name(v.status) +
                 ", socle oracle says zero");
          continue;
        }
        if (expect_nonzero) {
          ++nonzero;
          auto zs = zero_star_test(eta);
          if (zs.status == ClosureStatus::InProved || zs.status == ClosureStatus::LikelyIn)
            o.fail(eta.render() + ": nonzero class lands in 0* (" +
                   closure_status_name(zs.status) + ")");
        }
      }
    }
  }
  if (o.pass)
    o.note(std::to_string(checked) + " fractions classified, " + std::to_string(nonzero) +
           " nonzero classes all outside 0*");
  return o;
}

// ---- criterion 8: degree -2 multiples in top local cohomology ----

Outcome criterion8() {
  Outcome o;
  auto S = fermat(7);
  auto R = S->ambient();
  auto xs = ts::pps(R, "x, y");
  const std::pair<int64_t, uint32_t> levels[] = {{3, 2}, {4, 2}, {5, 3}, {6, 3}};
  for (const auto& [n, t] : levels) {
    const std::string tag = "degree -" + std::to_string(n);
    auto rep = fujita_probe(S, xs, n, t);
    if (rep.classes.empty()) {
      o.fail(tag + ": no basis classes found");
      continue;
    }
    if (!rep.all_consistent) o.fail(tag + ": probe reports an inconsistent class");
    for (const auto& cls : rep.classes) {
      if (!cls.multiplier) {
        std::string fallback = cls.step_one
            ? std::string(closure_status_name(cls.step_one->status))
            : std::string("no fallback verdict");
        o.fail(tag + ": class [" + cls.numerator.render() +
               "] has no nonzero degree -2 multiple (fallback: " + fallback + ")");
        continue;
      }
      auto shifted = lc_fraction(S, S->reduce(cls.numerator * *cls.multiplier), t, xs);
      if (shifted.degree != -2)
        o.fail(tag + ": multiple of [" + cls.numerator.render() + "] has degree " +
               std::to_string(shifted.degree));
      auto v = lc_zero_test(shifted, 4);
      if (v.status == LCZeroStatus::Zero)
        o.fail(tag + ": recorded multiple of [" + cls.numerator.render() + "] is zero");
    }
    o.note(tag + ": " + std::to_string(rep.classes.size()) +
           " class(es), every one with a nonzero degree -2 multiple");
  }
  return o;
}

// ---- criterion 9: the integer model family over six primes ----

Outcome criterion9() {
  Outcome o;
  IntPresentation ip;
  ip.vars = {"x", "y", "z"};
  ip.weights = {1, 1, 1};
  ip.relations = {IntRelation{
      {{1, Monomial({3, 0, 0})}, {1, Monomial({0, 3, 0})}, {-1, Monomial({0, 0, 3})}},
      "x^3+y^3-z^3"}};
  ip.asserted_domain = true;
  ip.name = "fermat";

  auto fam = reduce_model_family(ip, {2, 3, 5, 7, 11, 13});
  if (fam.fibers.size() != 6) {
    o.fail("expected six fibers");
    return o;
  }

  const std::vector<std::string> want = {"x", "y", "z^2"};
  ClosureConfig cfg;
  cfg.e_max = 5;
  int agreeing = 0;
  for (const auto& fiber : fam.fibers) {
    const std::string tag = "p=" + std::to_string(fiber.prime);
    if (fiber.prime == 3) {
      if (!fiber.skipped) o.fail("p=3 was not skipped");
      else if (fiber.skip_reason.find("Jacobian") == std::string::npos)
        o.fail("p=3 skipped for the wrong reason: " + fiber.skip_reason);
      continue;
    }
    if (fiber.skipped) {
      o.fail(tag + " skipped: " + fiber.skip_reason);
      continue;
    }
    auto S = fiber.presentation;
    auto R = S->ambient();
    HullResult h = tc_hull(S, ts::pps(R, "x, y"), 3, cfg);
    if (hull_strings(h) != want) {
      o.fail(tag + ": hull is {" + join(hull_strings(h)) + "}");
      continue;
    }
    auto vz = tc_membership(S, ts::pps(R, "x, y"), ts::pp(R, "z"), cfg);
    if (vz.status != ClosureStatus::OutEvidence) {
      o.fail(tag + ": z is " + closure_status_name(vz.status));
      continue;
    }
    ++agreeing;
  }
  if (agreeing != 5) o.fail("only " + std::to_string(agreeing) + " fibers agree");
  if (o.pass) o.note("p=3 skipped on Jacobian degeneration; five fibers agree with criterion 1");
  return o;
}

struct Criterion {
  int id;
  const char* title;
  Outcome (*run)();
  double budget_s;  // 0 means no pinned budget
};

}  // namespace

int main() {
  const Criterion table[] = {
      {1, "cubic cone hull and certificate across five primes", criterion1, 60.0},
      {2, "random ideals of a regular ring are their own hulls", criterion2, 120.0},
      {3, "colon capturing on the depth-one semigroup ring", criterion3, 0.0},
      {4, "Briancon-Skoda sweep and Mather inclusions", criterion4, 0.0},
      {5, "Hilbert-Kunz tables against the oracle golden file", criterion5, 0.0},
      {6, "Hilbert-Kunz rows under hull enlargement", criterion6, 0.0},
      {7, "local cohomology vanishing against socle combinatorics", criterion7, 0.0},
      {8, "degree -2 multiples in top local cohomology", criterion8, 120.0},
      {9, "integer model family over six primes", criterion9, 0.0},
  };

  int failed = 0;
  for (const auto& c : table) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && s > c.budget_s) {
      std::ostringstream why;
      why.setf(std::ios::fixed);
      why.precision(1);
      why << "over the " << c.budget_s << " s budget";
      o.fail(why.str());
    }
    std::printf("[%s] %d. %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, s);
    for (const auto& n : o.notes) std::printf("        %s\n", n.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d/9 criteria passed\n", 9 - failed);
  return failed;
}
