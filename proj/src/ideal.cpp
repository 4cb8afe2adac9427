#include "ideal.hpp"

#include <algorithm>

namespace tcw {

AmbientIdeal::AmbientIdeal(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)) {
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    check_same_ring(ring_, g.ring());
    gens_.push_back(std::move(g));
  }
}

std::shared_ptr<const GroebnerBasis> AmbientIdeal::basis(const MonomialOrder& order,
                                                         const GroebnerOptions& opt) const {
  std::string key = order.key();
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->entries.find(key);
    if (it != cache_->entries.end()) return it->second;
  }
  auto computed = std::make_shared<GroebnerBasis>(buchberger(ring_, gens_, order, opt));
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto [it, inserted] = cache_->entries.emplace(key, std::move(computed));
  return it->second;
}

std::shared_ptr<const GroebnerBasis> AmbientIdeal::basis() const {
  return basis(ring_->order);
}

void AmbientIdeal::adopt_basis(std::shared_ptr<const GroebnerBasis> b) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->entries.emplace(b->order.key(), std::move(b));
}

bool AmbientIdeal::contains(const Polynomial& f) const {
  if (f.is_zero()) return true;
  return normal_form(f, *basis()).is_zero();
}

bool AmbientIdeal::is_unit_ideal() const { return basis()->contains_one(); }

AmbientIdeal ideal_sum(const AmbientIdeal& a, const AmbientIdeal& b) {
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return AmbientIdeal(a.ring(), std::move(gens));
}

AmbientIdeal ideal_product(const AmbientIdeal& a, const AmbientIdeal& b) {
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) gens.push_back(f * g);
  return AmbientIdeal(a.ring(), std::move(gens));
}

AmbientIdeal ideal_power(const AmbientIdeal& a, uint32_t n) {
  if (n == 0)
    return AmbientIdeal(a.ring(), {Polynomial::constant(a.ring(), 1)});
  AmbientIdeal acc = a;
  for (uint32_t i = 1; i < n; ++i) {
    AmbientIdeal next = ideal_product(acc, a);
    acc = AmbientIdeal(a.ring(), minimalize_generators(a.ring(), next.generators()));
  }
  return acc;
}

bool ideal_subset(const AmbientIdeal& a, const AmbientIdeal& b) {
  for (const auto& g : a.generators())
    if (!b.contains(g)) return false;
  return true;
}

bool ideal_equal(const AmbientIdeal& a, const AmbientIdeal& b) {
  return ideal_subset(a, b) && ideal_subset(b, a);
}

ElimRing extend_with_aux(const RingPtr& ring) {
  std::vector<std::string> vars = ring->vars;
  vars.push_back("@t");
  std::vector<int64_t> weights = ring->weights;
  weights.push_back(1);
  ElimRing er;
  er.extended = RingCtx::make(ring->p.p, std::move(vars), std::move(weights));
  er.order = MonomialOrder::make(OrderKind::GrevLex, ring->nvars(), ring->weights);
  er.order.elim_last = true;
  return er;
}

Polynomial lift_to_aux(const Polynomial& f, const RingPtr& extended) {
  std::vector<Term> terms;
  terms.reserve(f.nterms());
  for (const auto& t : f.terms()) {
    Monomial m = t.m;
    m.e.push_back(0);
    terms.push_back({t.c, std::move(m)});
  }
  return Polynomial::from_terms(extended, std::move(terms));
}

Polynomial drop_aux(const Polynomial& f, const RingPtr& base) {
  std::vector<Term> terms;
  terms.reserve(f.nterms());
  for (const auto& t : f.terms()) {
    if (t.m.e.back() != 0)
      throw Error(ErrorCode::InternalError, "polynomial still involves the elimination variable");
    Monomial m = t.m;
    m.e.pop_back();
    terms.push_back({t.c, std::move(m)});
  }
  return Polynomial::from_terms(base, std::move(terms));
}

AmbientIdeal ideal_intersection(const AmbientIdeal& I, const AmbientIdeal& J) {
  check_same_ring(I.ring(), J.ring());
  const RingPtr& R = I.ring();
  ElimRing er = extend_with_aux(R);
  Polynomial t = Polynomial::variable(er.extended, R->nvars());
  Polynomial one_minus_t = Polynomial::constant(er.extended, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& f : I.generators()) gens.push_back(t * lift_to_aux(f, er.extended));
  for (const auto& g : J.generators()) gens.push_back(one_minus_t * lift_to_aux(g, er.extended));
  GroebnerBasis B = buchberger(er.extended, gens, er.order);
  std::vector<Polynomial> kept;
  for (const auto& g : B.polynomials()) {
    bool has_aux = false;
    for (const auto& tm : g.terms())
      if (tm.m.e.back() != 0) {
        has_aux = true;
        break;
      }
    if (!has_aux) kept.push_back(drop_aux(g, R));
  }
  return AmbientIdeal(R, minimalize_generators(R, std::move(kept)));
}

namespace {

// g / f for exact division; a single polynomial is a Groebner basis of its
// own ideal, so the division algorithm leaves no remainder when g is in (f).
Polynomial exact_divide(const Polynomial& g, const Polynomial& f) {
  const RingPtr& R = g.ring();
  const MonomialOrder& ord = R->order;
  std::vector<Term> work = order_terms(g, ord);
  std::vector<Term> ft = order_terms(f, ord);
  uint32_t lc_inv = R->fp.inv(ft.front().c);
  std::vector<Term> quot;
  while (!work.empty()) {
    const Term& lead = work.front();
    if (!ft.front().m.divides(lead.m))
      throw Error(ErrorCode::InternalError, "inexact polynomial division");
    uint32_t c = R->fp.mul(lead.c, lc_inv);
    Monomial m = lead.m / ft.front().m;
    quot.push_back({c, m});
    // work -= c*m*f, merging two descending lists.
    std::vector<Term> next;
    next.reserve(work.size() + ft.size());
    size_t i = 0, j = 0;
    while (i < work.size() && j < ft.size()) {
      Monomial fm = ft[j].m * m;
      int cmp = ord.compare(work[i].m, fm);
      if (cmp > 0) {
        next.push_back(work[i++]);
      } else if (cmp < 0) {
        next.push_back({R->fp.neg(R->fp.mul(c, ft[j].c)), std::move(fm)});
        ++j;
      } else {
        uint32_t v = R->fp.sub(work[i].c, R->fp.mul(c, ft[j].c));
        if (v != 0) next.push_back({v, work[i].m});
        ++i;
        ++j;
      }
    }
    for (; i < work.size(); ++i) next.push_back(work[i]);
    for (; j < ft.size(); ++j) next.push_back({R->fp.neg(R->fp.mul(c, ft[j].c)), ft[j].m * m});
    work = std::move(next);
  }
  return Polynomial::from_terms(R, std::move(quot));
}

}  // namespace

AmbientIdeal colon_ideal(const AmbientIdeal& I, const Polynomial& f) {
  if (f.is_zero())
    throw Error(ErrorCode::DivisionByZero, "colon by the zero element");
  check_same_ring(I.ring(), f.ring());
  AmbientIdeal principal(I.ring(), {f});
  AmbientIdeal meet = ideal_intersection(I, principal);
  std::vector<Polynomial> gens;
  for (const auto& g : meet.generators()) gens.push_back(exact_divide(g, f));
  return AmbientIdeal(I.ring(), minimalize_generators(I.ring(), std::move(gens)));
}

AmbientIdeal colon_ideal_ideal(const AmbientIdeal& I, const AmbientIdeal& J) {
  check_same_ring(I.ring(), J.ring());
  if (J.generators().empty())
    return AmbientIdeal(I.ring(), {Polynomial::constant(I.ring(), 1)});
  bool first = true;
  AmbientIdeal acc;
  for (const auto& g : J.generators()) {
    AmbientIdeal part = colon_ideal(I, g);
    acc = first ? part : ideal_intersection(acc, part);
    first = false;
  }
  return acc;
}

std::vector<Monomial> minimal_monomials(std::vector<Monomial> ms) {
  std::vector<Monomial> out;
  std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) {
    return a.plain_degree() < b.plain_degree();
  });
  for (auto& m : ms) {
    bool covered = false;
    for (const auto& k : out)
      if (k.divides(m)) {
        covered = true;
        break;
      }
    if (!covered) out.push_back(std::move(m));
  }
  return out;
}

namespace {

std::optional<uint64_t> staircase_rec(const std::vector<Monomial>& gens, size_t nvars) {
  for (const auto& g : gens) {
    bool unit = true;
    for (size_t i = 0; i < nvars; ++i)
      if (g.e[i] != 0) {
        unit = false;
        break;
      }
    if (unit) return 0;
  }
  if (nvars == 0) return 1;
  if (gens.empty()) return std::nullopt;  // free variable left, infinite
  size_t v = nvars - 1;
  std::vector<uint32_t> cuts;
  for (const auto& g : gens) cuts.push_back(g.e[v]);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  uint64_t total = 0;
  uint32_t seg_start = 0;
  for (size_t ci = 0; ci <= cuts.size(); ++ci) {
    bool last = ci == cuts.size();
    uint32_t seg_end = last ? 0 : cuts[ci];  // [seg_start, seg_end) or [seg_start, inf)
    if (!last && seg_end <= seg_start) {
      seg_start = seg_end;
      // Recompute the fiber at the breakpoint itself on the next pass.
      continue;
    }
    std::vector<Monomial> fiber;
    for (const auto& g : gens)
      if (g.e[v] <= seg_start) fiber.push_back(g);
    auto sub = staircase_rec(minimal_monomials(std::move(fiber)), v);
    if (!sub) return std::nullopt;
    if (last) {
      if (*sub != 0) return std::nullopt;  // infinitely many layers, each nonempty
    } else {
      total += *sub * static_cast<uint64_t>(seg_end - seg_start);
      seg_start = seg_end;
    }
  }
  return total;
}

}  // namespace

std::optional<uint64_t> staircase_count(const std::vector<Monomial>& lead_gens,
                                        size_t nvars) {
  return staircase_rec(minimal_monomials(lead_gens), nvars);
}

int krull_dimension(const AmbientIdeal& I) {
  auto B = I.basis();
  if (B->contains_one()) return KRULL_DIM_UNIT;
  std::vector<Monomial> leads = B->lead_monomials();
  size_t n = I.ring()->nvars();
  int best = 0;
  // Independent sets: S with no leading monomial supported inside S.
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& m : leads) {
      bool inside = true;
      for (size_t i = 0; i < n && inside; ++i)
        if (m.e[i] != 0 && !(mask & (1u << i))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

uint64_t vspace_dimension(const AmbientIdeal& I) {
  auto B = I.basis();
  auto count = staircase_count(B->lead_monomials(), I.ring()->nvars());
  if (!count)
    throw Error(ErrorCode::NotZeroDimensional,
                "quotient is not finite dimensional over the base field");
  return *count;
}

namespace {

void enumerate_slice(const RingPtr& ring, const std::vector<Monomial>& leads,
                     int64_t degree, size_t var, Monomial& current,
                     std::vector<Monomial>& out) {
  if (var == ring->nvars()) {
    if (degree != 0) return;
    for (const auto& l : leads)
      if (l.divides(current)) return;
    out.push_back(current);
    return;
  }
  int64_t w = ring->weights[var];
  for (int64_t k = 0; k * w <= degree; ++k) {
    current.e[var] = static_cast<uint32_t>(k);
    enumerate_slice(ring, leads, degree - k * w, var + 1, current, out);
  }
  current.e[var] = 0;
}

}  // namespace

std::vector<Monomial> degree_slice_basis(const AmbientIdeal& I, int64_t degree) {
  if (degree < 0) return {};
  auto B = I.basis();
  std::vector<Monomial> leads = B->lead_monomials();
  std::vector<Monomial> out;
  Monomial cur(I.ring()->nvars());
  enumerate_slice(I.ring(), leads, degree, 0, cur, out);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    return I.ring()->order.less(a, b);
  });
  return out;
}

std::vector<Polynomial> minimalize_generators(const RingPtr& ring,
                                              std::vector<Polynomial> gens) {
  std::vector<Polynomial> live;
  for (auto& g : gens)
    if (!g.is_zero()) live.push_back(std::move(g));
  std::sort(live.begin(), live.end(), [&](const Polynomial& a, const Polynomial& b) {
    uint64_t da = a.plain_degree(), db = b.plain_degree();
    if (da != db) return da < db;
    int c = ring->order.compare(a.leading_term().m, b.leading_term().m);
    if (c != 0) return c < 0;
    return a.render() < b.render();
  });
  std::vector<Polynomial> kept;
  for (size_t i = 0; i < live.size(); ++i) {
    std::vector<Polynomial> others = kept;
    for (size_t j = i + 1; j < live.size(); ++j) others.push_back(live[j]);
    AmbientIdeal rest(ring, std::move(others));
    if (!rest.contains(live[i])) kept.push_back(live[i]);
  }
  return kept;
}

}  // namespace tcw
