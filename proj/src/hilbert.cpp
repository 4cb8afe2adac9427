#include "hilbert.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "closure.hpp"

namespace tcw {

namespace {

uint64_t pow_u64(uint64_t base, uint32_t e) {
  return checked_pow_u64(base, e, uint64_t(1) << 62);
}

void require_cofinite(const AmbientIdeal& lift, const char* what) {
  int d = krull_dimension(lift);
  if (d == KRULL_DIM_UNIT || d == 0) return;
  throw Error(ErrorCode::NotCofinite,
              std::string(what) + " needs a finite-colength ideal, quotient has dimension " +
                  std::to_string(d));
}

// K-polynomial of a monomial ideal: N(0) = 1 and
// N(M + m) = N(M) - t^{deg m} * N(M : m), memoized on the generator set.
struct NumeratorCtx {
  const RingPtr& ring;
  std::map<std::string, std::vector<int64_t>> memo;

  std::string key(const std::vector<Monomial>& ms) const {
    std::ostringstream os;
    for (const Monomial& m : ms) {
      for (uint32_t x : m.e) os << x << '.';
      os << ';';
    }
    return os.str();
  }

  std::vector<int64_t> run(std::vector<Monomial> ms) {
    ms = minimal_monomials(std::move(ms));
    std::sort(ms.begin(), ms.end(),
              [&](const Monomial& a, const Monomial& b) { return ring->order.less(a, b); });
    if (ms.empty()) return {1};
    for (const Monomial& m : ms)
      if (m.is_one()) return {0};
    std::string k = key(ms);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;

    Monomial m = ms.back();
    std::vector<Monomial> rest(ms.begin(), ms.end() - 1);
    std::vector<int64_t> head = run(rest);
    std::vector<Monomial> colon;
    colon.reserve(rest.size());
    for (const Monomial& g : rest) colon.push_back(g.saturated_quotient(m));
    std::vector<int64_t> tail = run(std::move(colon));

    int64_t shift = m.weighted_degree(ring->weights);
    std::vector<int64_t> out = std::move(head);
    if (out.size() < tail.size() + static_cast<size_t>(shift))
      out.resize(tail.size() + static_cast<size_t>(shift), 0);
    for (size_t i = 0; i < tail.size(); ++i) out[i + shift] -= tail[i];
    while (!out.empty() && out.back() == 0) out.pop_back();
    if (out.empty()) out.push_back(0);
    memo.emplace(std::move(k), out);
    return out;
  }
};

}  // namespace

HKTable hk_table(const PresPtr& R, const std::vector<Polynomial>& gens, uint32_t e_max) {
  for (const Polynomial& g : gens) check_same_ring(R->ambient(), g.ring());
  require_cofinite(lift_with_relations(R, gens), "Hilbert-Kunz");

  HKTable table;
  table.ideal = gens;
  table.dim = R->dim();
  uint64_t p = R->ambient()->p.p;
  for (uint32_t e = 0; e <= e_max; ++e) {
    HKRow row;
    row.e = e;
    row.q = pow_u64(p, e);
    row.length = vspace_dimension(bracket_power_lift(R, gens, e));
    uint64_t den = pow_u64(row.q, static_cast<uint32_t>(std::max(table.dim, 0)));
    row.normalized = Rat(static_cast<int64_t>(row.length), static_cast<int64_t>(den));
    table.rows.push_back(row);
  }
  if (table.rows.size() >= 2) {
    Rat d = table.rows[table.rows.size() - 1].normalized -
            table.rows[table.rows.size() - 2].normalized;
    if (d.num < 0) d.num = -d.num;
    table.last_delta = d;
  }
  return table;
}

HSTable hs_table(const PresPtr& R, const std::vector<Polynomial>& gens, uint32_t n_max) {
  for (const Polynomial& g : gens) check_same_ring(R->ambient(), g.ring());
  require_cofinite(lift_with_relations(R, gens), "Hilbert-Samuel");
  if (n_max == 0)
    throw Error(ErrorCode::ParameterError, "Hilbert-Samuel needs at least one power");

  const RingPtr& ring = R->ambient();
  HSTable table;
  table.ideal = gens;
  table.dim = R->dim();
  int64_t dfact = 1;
  for (int i = 2; i <= table.dim; ++i) dfact *= i;

  AmbientIdeal base(ring, gens);
  for (uint32_t n = 1; n <= n_max; ++n) {
    AmbientIdeal power = ideal_power(base, n);
    std::vector<Polynomial> lifted = power.generators();
    for (const Polynomial& rel : R->relations().generators()) lifted.push_back(rel);
    HSRow row;
    row.n = n;
    row.length = vspace_dimension(AmbientIdeal(ring, std::move(lifted)));
    uint64_t den = pow_u64(n, static_cast<uint32_t>(std::max(table.dim, 0)));
    row.normalized =
        Rat(dfact, 1) * Rat(static_cast<int64_t>(row.length), static_cast<int64_t>(den));
    table.rows.push_back(row);
  }
  return table;
}

HKCompareTable hk_compare(const PresPtr& R, const std::vector<Polynomial>& gens,
                          const std::vector<Polynomial>& bigger_gens, uint32_t e_max) {
  for (const Polynomial& g : gens) check_same_ring(R->ambient(), g.ring());
  for (const Polynomial& g : bigger_gens) check_same_ring(R->ambient(), g.ring());
  AmbientIdeal small = lift_with_relations(R, gens);
  AmbientIdeal big = lift_with_relations(R, bigger_gens);
  if (!ideal_subset(small, big))
    throw Error(ErrorCode::NotNested, "the first ideal is not contained in the second");
  require_cofinite(small, "Hilbert-Kunz comparison");

  HKCompareTable table;
  for (uint32_t e = 0; e <= e_max; ++e) {
    HKCompareRow row;
    row.e = e;
    row.q = pow_u64(R->ambient()->p.p, e);
    row.length_small = vspace_dimension(bracket_power_lift(R, gens, e));
    row.length_big = vspace_dimension(bracket_power_lift(R, bigger_gens, e));
    row.equal = row.length_small == row.length_big;
    table.rows.push_back(row);
  }
  table.all_equal = true;
  for (const HKCompareRow& row : table.rows) table.all_equal = table.all_equal && row.equal;
  return table;
}

std::vector<int64_t> hilbert_numerator(const PresPtr& R) {
  const RingPtr& ring = R->ambient();
  std::vector<Monomial> leads;
  if (!R->relations().generators().empty())
    leads = R->relations_basis()->lead_monomials();
  NumeratorCtx ctx{ring, {}};
  return ctx.run(std::move(leads));
}

int64_t a_invariant_from_series(const PresPtr& R) {
  std::vector<int64_t> num = hilbert_numerator(R);
  size_t deg = num.size();
  while (deg > 0 && num[deg - 1] == 0) --deg;
  if (deg == 0)
    throw Error(ErrorCode::InternalError, "zero Hilbert numerator for a nonzero ring");
  int64_t a = static_cast<int64_t>(deg - 1);
  for (int64_t w : R->ambient()->weights) a -= w;
  return a;
}

}  // namespace tcw
