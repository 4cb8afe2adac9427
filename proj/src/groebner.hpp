#pragma once

#include <cstdint>
#include <vector>

#include "polynomial.hpp"

namespace tcw {

struct GroebnerOptions {
  // Upper bound on single-term reduction steps across the whole run;
  // exceeding it raises BudgetExceeded instead of grinding on.
  uint64_t step_budget = 20'000'000;
};

// Groebner basis under an explicit order (which may differ from the ring's
// canonical one). Generators are monic and sorted strictly descending under
// `order`; the basis list itself is sorted by ascending leading monomial.
struct GroebnerBasis {
  RingPtr ring;
  MonomialOrder order;
  std::vector<std::vector<Term>> gens;
  bool reduced = false;

  bool empty() const { return gens.empty(); }
  const Monomial& lead(size_t i) const { return gens[i].front().m; }
  bool contains_one() const {
    return gens.size() == 1 && gens[0].size() == 1 && gens[0][0].m.is_one();
  }
  std::vector<Monomial> lead_monomials() const;
  std::vector<Polynomial> polynomials() const;
};

std::vector<Term> order_terms(const Polynomial& f, const MonomialOrder& order);
Polynomial terms_to_polynomial(const RingPtr& ring, std::vector<Term> terms);

// Full normal form of f modulo B: no remaining term is divisible by a leading
// term of B. `steps` (when given) accumulates single cancellation steps;
// a nonzero budget raises BudgetExceeded when crossed.
std::vector<Term> normal_form_terms(std::vector<Term> f, const GroebnerBasis& B,
                                    uint64_t* steps = nullptr, uint64_t budget = 0);
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& B,
                       uint64_t* steps = nullptr, uint64_t budget = 0);

// Buchberger with sugar selection, coprime and chain criteria, full tail
// reduction, then minimalization and interreduction. Deterministic for a
// fixed generator sequence.
GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens,
                         const MonomialOrder& order, const GroebnerOptions& opt = {});

// Wrap generators already known to form a Groebner basis under `order`
// (sorted, made monic, tails interreduced; no S-pair processing). The caller
// is responsible for basis-ness; property tests cross-check the uses.
GroebnerBasis assume_basis(const RingPtr& ring, const std::vector<Polynomial>& gens,
                           const MonomialOrder& order);

}  // namespace tcw
