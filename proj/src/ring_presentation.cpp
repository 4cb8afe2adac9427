#include "ring_presentation.hpp"

#include <algorithm>
#include <numeric>

namespace tcw {

std::shared_ptr<const RingPresentation> RingPresentation::present(
    RingPtr ring, std::vector<Polynomial> relations, bool asserted_domain,
    std::string name) {
  auto R = std::make_shared<RingPresentation>();
  R->ring_ = std::move(ring);
  for (const auto& f : relations) {
    if (f.is_zero()) continue;
    if (!f.is_homogeneous())
      throw Error(ErrorCode::GradingError,
                  "relation " + f.render() + " is not homogeneous under the weights");
  }
  R->relations_ = AmbientIdeal(R->ring_, std::move(relations));
  if (R->relations_.is_unit_ideal())
    throw Error(ErrorCode::ZeroRing, "relations generate the unit ideal");
  R->dim_ = krull_dimension(R->relations_);
  R->domain_ = asserted_domain;
  R->name_ = std::move(name);
  return R;
}

Polynomial RingPresentation::reduce(const Polynomial& f) const {
  if (relations_.generators().empty()) return f;
  return normal_form(f, *relations_.basis());
}

std::optional<std::pair<MonomialOrder, std::shared_ptr<const GroebnerBasis>>>
RingPresentation::coprime_priority_basis(const std::vector<Monomial>& monomials) const {
  size_t n = ring_->nvars();
  auto check = [&](const std::shared_ptr<const GroebnerBasis>& B) {
    for (const auto& g : B->gens)
      for (const auto& m : monomials)
        if (!g.front().m.coprime(m)) return false;
    return true;
  };
  if (relations_.generators().empty()) {
    auto B = relations_.basis();
    return std::make_pair(ring_->order, B);
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  // Identity first, then every other priority; bases are cached per order,
  // so repeat queries are cheap.
  std::vector<std::vector<int>> candidates;
  candidates.push_back(perm);
  std::sort(perm.begin(), perm.end());
  do {
    candidates.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (const auto& pr : candidates) {
    MonomialOrder order = MonomialOrder::make(OrderKind::GrevLex, n, ring_->weights, pr);
    std::shared_ptr<const GroebnerBasis> B;
    try {
      B = relations_.basis(order);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BudgetExceeded) continue;
      throw;
    }
    if (check(B)) return std::make_pair(order, B);
  }
  return std::nullopt;
}

namespace {

Polynomial minor_determinant(const RingPtr& ring,
                             const std::vector<std::vector<Polynomial>>& jac,
                             const std::vector<size_t>& rows,
                             const std::vector<size_t>& cols) {
  size_t k = rows.size();
  if (k == 0) return Polynomial::constant(ring, 1);
  if (k == 1) return jac[rows[0]][cols[0]];
  // Laplace expansion along the first row; k stays tiny at desk scale.
  Polynomial det = Polynomial::zero(ring);
  for (size_t j = 0; j < k; ++j) {
    std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
    std::vector<size_t> sub_cols;
    for (size_t t = 0; t < k; ++t)
      if (t != j) sub_cols.push_back(cols[t]);
    Polynomial cof = jac[rows[0]][cols[j]] * minor_determinant(ring, jac, sub_rows, sub_cols);
    det = (j % 2 == 0) ? det + cof : det - cof;
  }
  return det;
}

void subsets_of_size(size_t n, size_t k, std::vector<std::vector<size_t>>& out) {
  std::vector<size_t> cur;
  // Iterative combinations in lexicographic order.
  std::vector<size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    out.push_back(idx);
    size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace

std::vector<Polynomial> RingPresentation::jacobian_candidates() const {
  const auto& rels = relations_.generators();
  size_t n = ring_->nvars();
  size_t r = rels.size();
  int codim = static_cast<int>(n) - dim_;
  if (codim <= 0 || rels.empty()) {
    // Regular presentation: the empty minor is 1.
    return {Polynomial::constant(ring_, 1)};
  }
  size_t k = static_cast<size_t>(codim);
  if (k > r)
    throw Error(ErrorCode::SingularEverywhere,
                "presentation has fewer relations than its codimension");
  std::vector<std::vector<Polynomial>> jac(r, std::vector<Polynomial>());
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < n; ++j) jac[i].push_back(rels[i].derivative(j));
  std::vector<std::vector<size_t>> row_sets, col_sets;
  subsets_of_size(r, k, row_sets);
  subsets_of_size(n, k, col_sets);
  std::vector<Polynomial> out;
  for (const auto& rs : row_sets)
    for (const auto& cs : col_sets) {
      Polynomial d = reduce(minor_determinant(ring_, jac, rs, cs));
      if (d.is_zero()) continue;
      // Monic representative; scalars never matter downstream.
      d = d.scaled(ring_->fp.inv(d.leading_term().c));
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
  if (out.empty())
    throw Error(ErrorCode::SingularEverywhere,
                "every Jacobian minor vanishes in the quotient");
  std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
    int64_t da = a.weighted_degree(), db = b.weighted_degree();
    if (da != db) return da < db;
    return ring_->order.less(a.leading_term().m, b.leading_term().m);
  });
  if (out.size() > 20) out.resize(20);
  return out;
}

QuotientElement make_element(const PresPtr& R, const Polynomial& f) {
  return QuotientElement{R, R->reduce(f)};
}

AmbientIdeal lift_with_relations(const PresPtr& R, const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> all = gens;
  const auto& rels = R->relations().generators();
  all.insert(all.end(), rels.begin(), rels.end());
  return AmbientIdeal(R->ambient(), std::move(all));
}

bool is_parameter_system(const PresPtr& R, const std::vector<Polynomial>& xs) {
  if (xs.size() > static_cast<size_t>(std::max(R->dim(), 0)))
    throw Error(ErrorCode::ParameterError, "more elements than the dimension of the ring");
  for (const auto& x : xs) {
    if (x.is_zero() || R->is_zero_in_quotient(x))
      throw Error(ErrorCode::ParameterError, "parameter candidate is zero in the ring");
    if (!x.is_homogeneous())
      throw Error(ErrorCode::ParameterError, "parameter candidates must be homogeneous");
  }
  int d = krull_dimension(lift_with_relations(R, xs));
  if (d == KRULL_DIM_UNIT) return false;
  return d == R->dim() - static_cast<int>(xs.size());
}

std::vector<bool> regular_sequence_check(const PresPtr& R, const std::vector<Polynomial>& xs) {
  std::vector<bool> report;
  for (size_t i = 0; i < xs.size(); ++i) {
    std::vector<Polynomial> prefix(xs.begin(), xs.begin() + i);
    AmbientIdeal prior = lift_with_relations(R, prefix);
    AmbientIdeal quo = colon_ideal(prior, xs[i]);
    report.push_back(ideal_subset(quo, prior));
  }
  return report;
}

ModelFamily reduce_model_family(const IntPresentation& pres,
                                const std::vector<uint32_t>& primes) {
  if (primes.empty())
    throw Error(ErrorCode::EmptyFamily, "model family needs at least one prime");
  ModelFamily fam;
  fam.source = pres;
  for (uint32_t p : primes) {
    ModelFiber fiber;
    fiber.prime = p;
    RingPtr ring = RingCtx::make(p, pres.vars, pres.weights);
    bool vanished = false;
    std::string vanished_rel;
    std::vector<Polynomial> rels;
    for (const auto& rel : pres.relations) {
      std::vector<Term> terms;
      for (const auto& [c, m] : rel.terms) terms.push_back({ring->fp.reduce_i64(c), m});
      Polynomial f = Polynomial::from_terms(ring, std::move(terms));
      if (f.is_zero()) {
        vanished = true;
        vanished_rel = rel.source;
        break;
      }
      rels.push_back(std::move(f));
    }
    if (vanished) {
      fiber.skipped = true;
      fiber.skip_reason = "relation " + vanished_rel + " vanishes mod " + std::to_string(p);
      fam.fibers.push_back(std::move(fiber));
      continue;
    }
    try {
      fiber.presentation =
          RingPresentation::present(ring, rels, pres.asserted_domain, pres.name);
    } catch (const Error& e) {
      fiber.skipped = true;
      fiber.skip_reason = std::string("presentation fails mod ") + std::to_string(p) + ": " +
                          e.what();
      fam.fibers.push_back(std::move(fiber));
      continue;
    }
    if (!fiber.presentation->is_regular_presentation()) {
      try {
        fiber.presentation->jacobian_candidates();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularEverywhere) throw;
        fiber.jacobian_degenerate = true;
      }
    }
    fam.fibers.push_back(std::move(fiber));
  }
  // A degenerate-Jacobian fiber is dropped when some other fiber of the same
  // family stays smooth; with nothing to compare against it is kept, flagged.
  bool any_smooth = false;
  for (const auto& f : fam.fibers)
    if (!f.skipped && !f.jacobian_degenerate) any_smooth = true;
  if (any_smooth) {
    for (auto& f : fam.fibers) {
      if (f.skipped || !f.jacobian_degenerate) continue;
      f.skipped = true;
      f.skip_reason =
          "Jacobian degenerates mod " + std::to_string(f.prime) + " (smooth fibers exist)";
      f.presentation.reset();
    }
  }
  return fam;
}

}  // namespace tcw
