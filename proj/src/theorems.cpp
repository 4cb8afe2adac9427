#include "theorems.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <utility>

namespace tcw {

namespace {

int64_t det_small(const std::vector<std::vector<int64_t>>& m) {
  size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  int64_t d = 0;
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<int64_t>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<int64_t> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    int64_t term = m[0][j] * det_small(minor);
    d += (j % 2 == 0) ? term : -term;
  }
  return d;
}

void for_each_combination(size_t n, size_t k, const std::function<void(const std::vector<size_t>&)>& fn) {
  if (k > n) return;
  std::vector<size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - (k - pos) - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Polynomial partial_derivative(const Polynomial& f, size_t j) {
  const RingPtr& ring = f.ring();
  const FpCtx& fp = ring->fp;
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    uint32_t a = t.m.e[j];
    if (a == 0) continue;
    uint32_t coef = fp.mul(t.c, fp.reduce_u64(a));
    if (coef == 0) continue;
    Monomial m = t.m;
    m.e[j] -= 1;
    out.push_back({coef, std::move(m)});
  }
  return Polynomial::from_terms(ring, std::move(out));
}

std::vector<Monomial> monomial_generators(const std::vector<Polynomial>& gens) {
  std::vector<Monomial> ms;
  for (const Polynomial& g : gens) {
    if (g.is_zero()) continue;
    if (!g.is_monomial())
      throw Error(ErrorCode::NotMonomial, "monomial generators required, got " + g.render());
    ms.push_back(g.terms()[0].m);
  }
  return ms;
}

ClosureStatus worse(ClosureStatus a, ClosureStatus b) {
  auto rank = [](ClosureStatus s) {
    switch (s) {
      case ClosureStatus::InProved: return 0;
      case ClosureStatus::LikelyIn: return 1;
      case ClosureStatus::Undetermined: return 2;
      case ClosureStatus::OutEvidence: return 3;
    }
    return 2;
  };
  return rank(a) >= rank(b) ? a : b;
}

}  // namespace

bool NewtonRegion::contains(const Monomial& m) const {
  if (m.nvars() != nvars || points.empty()) return false;
  for (const Facet& f : facets) {
    int64_t v = 0;
    for (size_t j = 0; j < nvars; ++j) v += f.w[j] * static_cast<int64_t>(m.e[j]);
    if (v < f.c) return false;
  }
  return true;
}

NewtonRegion newton_region(const std::vector<Monomial>& input, size_t nvars) {
  if (nvars == 0 || nvars > 4)
    throw Error(ErrorCode::ParameterError, "Newton regions are built for 1 to 4 variables");
  if (input.empty())
    throw Error(ErrorCode::ParameterError, "Newton region of an empty point set");
  for (const Monomial& m : input)
    if (m.nvars() != nvars)
      throw Error(ErrorCode::RingMismatch, "point with the wrong variable count");

  NewtonRegion region;
  region.nvars = nvars;
  region.points = minimal_monomials(input);

  const std::vector<Monomial>& pts = region.points;
  std::set<std::pair<std::vector<int64_t>, int64_t>> seen;

  // Candidate facet normals come from hyperplanes through s points and
  // parallel to nvars - s coordinate rays; the normal is the generalized
  // cross product of the spanning directions.
  for (size_t s = 1; s <= std::min(nvars, pts.size()); ++s) {
    for_each_combination(pts.size(), s, [&](const std::vector<size_t>& ps) {
      std::vector<size_t> rest;
      for (size_t j = 0; j < nvars; ++j) rest.push_back(j);
      for_each_combination(rest.size(), nvars - s, [&](const std::vector<size_t>& rs) {
        std::vector<std::vector<int64_t>> rows;
        for (size_t i = 1; i < s; ++i) {
          std::vector<int64_t> row(nvars);
          for (size_t j = 0; j < nvars; ++j)
            row[j] = static_cast<int64_t>(pts[ps[i]].e[j]) -
                     static_cast<int64_t>(pts[ps[0]].e[j]);
          rows.push_back(std::move(row));
        }
        for (size_t r : rs) {
          std::vector<int64_t> row(nvars, 0);
          row[rest[r]] = 1;
          rows.push_back(std::move(row));
        }
        // w_j = signed maximal minor obtained by deleting column j
        std::vector<int64_t> w(nvars, 0);
        for (size_t j = 0; j < nvars; ++j) {
          std::vector<std::vector<int64_t>> minor;
          for (const std::vector<int64_t>& row : rows) {
            std::vector<int64_t> r;
            for (size_t c = 0; c < nvars; ++c)
              if (c != j) r.push_back(row[c]);
            minor.push_back(std::move(r));
          }
          int64_t d = det_small(minor);
          w[j] = (j % 2 == 0) ? d : -d;
        }
        int64_t g = 0;
        bool pos = false, neg = false;
        for (int64_t x : w) {
          g = std::gcd(g, x);
          pos = pos || x > 0;
          neg = neg || x < 0;
        }
        if (g == 0 || (pos && neg)) return;
        for (int64_t& x : w) x /= (neg ? -g : g);
        int64_t c = 0;
        for (size_t i = 0; i < pts.size(); ++i) {
          int64_t v = 0;
          for (size_t j = 0; j < nvars; ++j)
            v += w[j] * static_cast<int64_t>(pts[i].e[j]);
          c = (i == 0) ? v : std::min(c, v);
        }
        if (seen.emplace(w, c).second) region.facets.push_back({std::move(w), c});
      });
    });
  }
  return region;
}

AmbientIdeal monomial_integral_closure(const AmbientIdeal& I, uint32_t k_max) {
  const RingPtr& ring = I.ring();
  std::vector<Monomial> ms = monomial_generators(I.generators());
  if (ms.empty())
    throw Error(ErrorCode::ParameterError, "integral closure of the zero ideal");
  NewtonRegion region = newton_region(ms, ring->nvars());

  // Minimal closure generators live in the box spanned by the generator
  // exponents: above the box, dropping a coordinate stays in the region.
  std::vector<uint32_t> box(ring->nvars(), 0);
  uint64_t volume = 1;
  for (size_t j = 0; j < ring->nvars(); ++j) {
    for (const Monomial& m : region.points) box[j] = std::max(box[j], m.e[j]);
    volume *= box[j] + 1;
    if (volume > 4'000'000)
      throw Error(ErrorCode::BudgetExceeded, "integral-closure lattice box too large");
  }

  std::vector<Monomial> inside;
  Monomial cursor(ring->nvars());
  while (true) {
    if (region.contains(cursor)) inside.push_back(cursor);
    size_t j = 0;
    while (j < ring->nvars() && cursor.e[j] == box[j]) cursor.e[j++] = 0;
    if (j == ring->nvars()) break;
    ++cursor.e[j];
  }
  inside = minimal_monomials(std::move(inside));
  std::sort(inside.begin(), inside.end(),
            [&](const Monomial& a, const Monomial& b) { return ring->order.less(a, b); });

  // Definitional re-verification: some power x^{k a} must land in I^k.
  std::vector<AmbientIdeal> powers;
  AmbientIdeal base(ring, I.generators());
  for (const Monomial& m : inside) {
    bool witnessed = false;
    for (uint32_t k = 1; k <= k_max && !witnessed; ++k) {
      while (powers.size() < k) powers.push_back(ideal_power(base, powers.size() + 1));
      Monomial target = m.power(k);
      for (const Polynomial& g : powers[k - 1].generators()) {
        if (g.is_monomial() && g.terms()[0].m.divides(target)) {
          witnessed = true;
          break;
        }
      }
    }
    if (!witnessed)
      throw Error(ErrorCode::InternalError,
                  "integral-closure witness exponent exceeded for " +
                      render_monomial(m, ring->vars));
  }

  std::vector<Polynomial> out;
  for (const Monomial& m : inside) out.push_back(Polynomial::monomial(ring, m));
  return AmbientIdeal(ring, std::move(out));
}

BrianconSkodaReport briancon_skoda_check(const PresPtr& R,
                                         const std::vector<Polynomial>& gens) {
  if (!R->is_regular_presentation())
    throw Error(ErrorCode::ParameterError,
                "the containment is checked over a regular presentation only");
  const RingPtr& ring = R->ambient();
  for (const Polynomial& g : gens) check_same_ring(ring, g.ring());
  std::vector<Monomial> mins = minimal_monomials(monomial_generators(gens));
  if (mins.empty())
    throw Error(ErrorCode::ParameterError, "the zero ideal has no interesting closure");

  BrianconSkodaReport report;
  report.mu = static_cast<uint32_t>(mins.size());
  std::vector<Polynomial> mono;
  for (const Monomial& m : mins) mono.push_back(Polynomial::monomial(ring, m));
  AmbientIdeal power = ideal_power(AmbientIdeal(ring, mono), report.mu);
  AmbientIdeal closure = monomial_integral_closure(power);
  for (const Polynomial& g : closure.generators()) {
    Monomial m = g.terms()[0].m;
    report.closure_generators.push_back(m);
    bool in = false;
    for (const Monomial& b : mins)
      if (b.divides(m)) {
        in = true;
        break;
      }
    if (!in) report.violators.push_back(m);
  }
  report.holds = report.violators.empty();
  return report;
}

ColonCaptureReport colon_capture_report(const PresPtr& R, const std::vector<Polynomial>& xs,
                                        uint32_t index, const ClosureConfig& cfg) {
  const RingPtr& ring = R->ambient();
  for (const Polynomial& x : xs) check_same_ring(ring, x.ring());
  if (xs.empty() || index + 1 > xs.size())
    throw Error(ErrorCode::ParameterError,
                "the colon index must leave at least one later parameter");
  if (!is_parameter_system(R, xs))
    throw Error(ErrorCode::ParameterError, "the given elements fail the parameter test");

  ColonCaptureReport report;
  report.xs = xs;
  report.index = index;
  std::vector<Polynomial> head(xs.begin(), xs.begin() + index);
  AmbientIdeal head_lift = lift_with_relations(R, head);
  AmbientIdeal colon = colon_ideal(head_lift, xs[index]);
  for (const Polynomial& g : colon.generators()) {
    Polynomial r = R->reduce(g);
    if (r.is_zero()) continue;
    report.colon_generators.push_back(r);
    if (head_lift.contains(r)) continue;
    ClosureVerdict verdict = tc_membership(R, head, r, cfg);
    report.outside.push_back({r, std::move(verdict)});
  }
  report.theorem_respected = true;
  for (const ColonCaptureEntry& entry : report.outside)
    report.theorem_respected =
        report.theorem_respected && entry.verdict.status != ClosureStatus::OutEvidence;
  return report;
}

MonomialColonReport monomial_colon_check(const PresPtr& R, const std::vector<Polynomial>& xs,
                                         uint32_t t, const ClosureConfig& cfg) {
  const RingPtr& ring = R->ambient();
  for (const Polynomial& x : xs) check_same_ring(ring, x.ring());
  if (t < 2) throw Error(ErrorCode::ParameterError, "the exponent must be at least 2");
  if (xs.empty() || static_cast<int>(xs.size()) != R->dim())
    throw Error(ErrorCode::ParameterError, "a full system of parameters is required");
  if (!is_parameter_system(R, xs))
    throw Error(ErrorCode::ParameterError, "the given elements fail the parameter test");

  MonomialColonReport report;
  report.t = t;
  std::vector<Polynomial> powered, lowered;
  Polynomial product = xs[0];
  for (size_t i = 0; i < xs.size(); ++i) {
    powered.push_back(xs[i].pow(t));
    lowered.push_back(xs[i].pow(t - 1));
    if (i > 0) product = product * xs[i];
  }
  AmbientIdeal colon = colon_ideal(lift_with_relations(R, powered), product);
  AmbientIdeal lowered_lift = lift_with_relations(R, lowered);
  for (const Polynomial& g : colon.generators()) {
    Polynomial r = R->reduce(g);
    if (r.is_zero()) continue;
    report.colon_generators.push_back(r);
    if (lowered_lift.contains(r)) continue;  // plain members need no verdict
    ClosureVerdict verdict = tc_membership(R, lowered, r, cfg);
    report.worst = worse(report.worst, verdict.status);
    report.checks.emplace_back(r, std::move(verdict));
  }
  return report;
}

MatherReport mather_check(const PresPtr& R, const Polynomial& f) {
  const RingPtr& ring = R->ambient();
  check_same_ring(ring, f.ring());
  if (!R->is_regular_presentation())
    throw Error(ErrorCode::ParameterError,
                "the Jacobian containment is checked over a regular presentation only");
  if (f.is_constant())
    throw Error(ErrorCode::ParameterError, "a nonconstant polynomial is required");

  MatherReport report;
  bool any = false;
  for (size_t j = 0; j < ring->nvars(); ++j) {
    Polynomial d = partial_derivative(f, j);
    any = any || !d.is_zero();
    report.jacobian_generators.push_back(std::move(d));
  }
  if (!any)
    throw Error(ErrorCode::DegenerateJacobian, "every partial derivative vanishes");

  report.good_prime = static_cast<int64_t>(ring->p.p) > f.weighted_degree();
  AmbientIdeal jac(ring, report.jacobian_generators);
  Polynomial target = f.pow(ring->nvars());
  uint64_t steps = 0;
  Polynomial nf = normal_form(target, *jac.basis(), &steps);
  report.reduction_steps = steps;
  report.holds = nf.is_zero();
  return report;
}

namespace {

ProbeReport run_probe(const PresPtr& R, const std::vector<std::vector<Polynomial>>& samples,
                      int64_t degree_bound, const ClosureConfig& cfg, bool parameters_only) {
  if (samples.empty())
    throw Error(ErrorCode::EmptyFamily, "no sample ideals to probe");
  ProbeReport report;
  for (size_t i = 0; i < samples.size(); ++i) {
    const std::vector<Polynomial>& gens = samples[i];
    if (parameters_only) {
      bool ok = !gens.empty() && static_cast<int>(gens.size()) == R->dim();
      if (ok) ok = is_parameter_system(R, gens);
      if (!ok)
        throw Error(ErrorCode::ParameterError,
                    "sample " + std::to_string(i) +
                        " is not a full verified system of parameters");
    }
    int64_t bound = degree_bound;
    for (const Polynomial& g : gens)
      if (!g.is_zero()) bound = std::max(bound, g.weighted_degree());
    HullResult hull = tc_hull(R, gens, bound, cfg);
    ProbeSample sample;
    sample.ideal = gens;
    AmbientIdeal lift = lift_with_relations(R, gens);
    for (const HullGenerator& hg : hull.generators)
      if (!lift.contains(hg.gen)) sample.extra.push_back(hg.gen);
    sample.closed = sample.extra.empty();
    report.counterexample_found = report.counterexample_found || !sample.closed;
    report.samples.push_back(std::move(sample));
  }
  return report;
}

}  // namespace

ProbeReport f_regular_probe(const PresPtr& R,
                            const std::vector<std::vector<Polynomial>>& samples,
                            int64_t degree_bound, const ClosureConfig& cfg) {
  return run_probe(R, samples, degree_bound, cfg, false);
}

ProbeReport f_rational_probe(const PresPtr& R,
                             const std::vector<std::vector<Polynomial>>& samples,
                             int64_t degree_bound, const ClosureConfig& cfg) {
  return run_probe(R, samples, degree_bound, cfg, true);
}

}  // namespace tcw
