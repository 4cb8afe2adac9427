#include "groebner.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace tcw {

std::vector<Monomial> GroebnerBasis::lead_monomials() const {
  std::vector<Monomial> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(g.front().m);
  return out;
}

std::vector<Polynomial> GroebnerBasis::polynomials() const {
  std::vector<Polynomial> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(terms_to_polynomial(ring, g));
  return out;
}

std::vector<Term> order_terms(const Polynomial& f, const MonomialOrder& order) {
  std::vector<Term> t = f.terms();
  std::sort(t.begin(), t.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.m, b.m); });
  return t;
}

Polynomial terms_to_polynomial(const RingPtr& ring, std::vector<Term> terms) {
  return Polynomial::from_terms(ring, std::move(terms));
}

namespace {

// work -= c * m * g, all lists strictly descending under `order`.
std::vector<Term> sub_scaled(const std::vector<Term>& work, const std::vector<Term>& g,
                             uint32_t c, const Monomial& m, const FpCtx& fp,
                             const MonomialOrder& order) {
  std::vector<Term> out;
  out.reserve(work.size() + g.size());
  size_t i = 0, j = 0;
  while (i < work.size() && j < g.size()) {
    Monomial gm = g[j].m * m;
    int cmp = order.compare(work[i].m, gm);
    if (cmp > 0) {
      out.push_back(work[i++]);
    } else if (cmp < 0) {
      out.push_back({fp.neg(fp.mul(c, g[j].c)), std::move(gm)});
      ++j;
    } else {
      uint32_t v = fp.sub(work[i].c, fp.mul(c, g[j].c));
      if (v != 0) out.push_back({v, work[i].m});
      ++i;
      ++j;
    }
  }
  for (; i < work.size(); ++i) out.push_back(work[i]);
  for (; j < g.size(); ++j) out.push_back({fp.neg(fp.mul(c, g[j].c)), g[j].m * m});
  return out;
}

void charge(uint64_t* steps, uint64_t budget) {
  if (!steps) return;
  ++*steps;
  if (budget != 0 && *steps > budget)
    throw Error(ErrorCode::BudgetExceeded, "reduction step budget exhausted");
}

std::vector<Term> make_monic(std::vector<Term> f, const FpCtx& fp) {
  if (f.empty() || f.front().c == 1) return f;
  uint32_t inv = fp.inv(f.front().c);
  for (auto& t : f) t.c = fp.mul(t.c, inv);
  return f;
}

}  // namespace

std::vector<Term> normal_form_terms(std::vector<Term> f, const GroebnerBasis& B,
                                    uint64_t* steps, uint64_t budget) {
  if (B.gens.empty()) return f;
  const FpCtx& fp = B.ring->fp;
  uint64_t local = 0;
  if (!steps) steps = &local;
  std::vector<Term> done;  // fully reduced prefix, descending
  while (!f.empty()) {
    const Term& lead = f.front();
    bool hit = false;
    for (const auto& g : B.gens) {
      if (!g.front().m.divides(lead.m)) continue;
      charge(steps, budget);
      f = sub_scaled(f, g, lead.c, lead.m / g.front().m, fp, B.order);
      hit = true;
      break;
    }
    if (!hit) {
      done.push_back(f.front());
      f.erase(f.begin());
    }
  }
  return done;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& B, uint64_t* steps,
                       uint64_t budget) {
  return terms_to_polynomial(f.ring(), normal_form_terms(order_terms(f, B.order), B, steps, budget));
}

namespace {

struct Pair {
  size_t i, j;
  Monomial lcm;
  uint64_t sugar;
};

// Deterministic pair selection: sugar first, then the lcm under the active
// order, then the index pair.
struct PairLess {
  const MonomialOrder* order;
  bool operator()(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = order->compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

GroebnerBasis finalize(GroebnerBasis B, uint64_t* steps, uint64_t budget) {
  // Minimalize: drop generators whose lead another lead divides.
  std::sort(B.gens.begin(), B.gens.end(), [&](const auto& a, const auto& b) {
    int c = B.order.compare(a.front().m, b.front().m);
    return c < 0;
  });
  std::vector<std::vector<Term>> kept;
  for (auto& g : B.gens) {
    bool redundant = false;
    for (const auto& k : kept)
      if (k.front().m.divides(g.front().m)) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(std::move(g));
  }
  B.gens = std::move(kept);
  // Interreduce tails; leads are untouched by construction.
  for (size_t i = 0; i < B.gens.size(); ++i) {
    GroebnerBasis others{B.ring, B.order, {}, false};
    for (size_t k = 0; k < B.gens.size(); ++k)
      if (k != i) others.gens.push_back(B.gens[k]);
    B.gens[i] = make_monic(normal_form_terms(std::move(B.gens[i]), others, steps, budget),
                           B.ring->fp);
  }
  B.reduced = true;
  return B;
}

}  // namespace

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens,
                         const MonomialOrder& order, const GroebnerOptions& opt) {
  GroebnerBasis B{ring, order, {}, false};
  const FpCtx& fp = ring->fp;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    check_same_ring(ring, g.ring());
    B.gens.push_back(make_monic(order_terms(g, order), fp));
  }
  uint64_t steps = 0;
  const uint64_t budget = opt.step_budget;

  PairLess less{&B.order};
  std::set<Pair, PairLess> queue(less);
  std::set<std::pair<size_t, size_t>> treated;
  auto sugar_of = [](const std::vector<Term>& f) {
    uint64_t d = 0;
    for (const auto& t : f) d = std::max(d, t.m.plain_degree());
    return d;
  };
  std::vector<uint64_t> sugar;
  for (const auto& g : B.gens) sugar.push_back(sugar_of(g));
  for (size_t j = 1; j < B.gens.size(); ++j)
    for (size_t i = 0; i < j; ++i) {
      Monomial l = B.gens[i].front().m.lcm(B.gens[j].front().m);
      uint64_t s = std::max(sugar[i] + (l / B.gens[i].front().m).plain_degree(),
                            sugar[j] + (l / B.gens[j].front().m).plain_degree());
      queue.insert({i, j, std::move(l), s});
    }

  while (!queue.empty()) {
    Pair pr = *queue.begin();
    queue.erase(queue.begin());
    treated.insert({pr.i, pr.j});
    const Monomial& li = B.gens[pr.i].front().m;
    const Monomial& lj = B.gens[pr.j].front().m;
    // Coprime criterion: S-polynomial reduces to zero for free.
    if (li.coprime(lj)) continue;
    // Chain criterion: skip when a third lead divides the lcm and both
    // subordinate pairs were already treated.
    bool chained = false;
    for (size_t k = 0; k < B.gens.size() && !chained; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!B.gens[k].front().m.divides(pr.lcm)) continue;
      auto key = [&](size_t a, size_t b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
      };
      if (treated.count(key(pr.i, k)) && treated.count(key(pr.j, k))) chained = true;
    }
    if (chained) continue;

    // S-polynomial of two monic generators.
    std::vector<Term> s = sub_scaled(
        [&] {
          std::vector<Term> lifted;
          Monomial mi = pr.lcm / li;
          lifted.reserve(B.gens[pr.i].size());
          for (const auto& t : B.gens[pr.i]) lifted.push_back({t.c, t.m * mi});
          return lifted;
        }(),
        B.gens[pr.j], 1, pr.lcm / lj, fp, B.order);
    charge(&steps, budget);
    s = normal_form_terms(std::move(s), B, &steps, budget);
    if (s.empty()) continue;
    s = make_monic(std::move(s), fp);
    size_t idx = B.gens.size();
    uint64_t su = sugar_of(s);
    B.gens.push_back(std::move(s));
    sugar.push_back(su);
    for (size_t i = 0; i < idx; ++i) {
      Monomial l = B.gens[i].front().m.lcm(B.gens[idx].front().m);
      uint64_t sg = std::max(sugar[i] + (l / B.gens[i].front().m).plain_degree(),
                             sugar[idx] + (l / B.gens[idx].front().m).plain_degree());
      queue.insert({i, idx, std::move(l), sg});
    }
  }
  return finalize(std::move(B), &steps, budget);
}

GroebnerBasis assume_basis(const RingPtr& ring, const std::vector<Polynomial>& gens,
                           const MonomialOrder& order) {
  GroebnerBasis B{ring, order, {}, false};
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    B.gens.push_back(make_monic(order_terms(g, order), ring->fp));
  }
  uint64_t steps = 0;
  return finalize(std::move(B), &steps, 0);
}

}  // namespace tcw
