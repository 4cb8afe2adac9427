#include "closure.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include "hilbert.hpp"
#include "linalg.hpp"
#include "theorems.hpp"

namespace tcw {

const char* closure_status_name(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::InProved: return "IN_PROVED";
    case ClosureStatus::LikelyIn: return "LIKELY_IN";
    case ClosureStatus::OutEvidence: return "OUT_EVIDENCE";
    case ClosureStatus::Undetermined: return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

namespace {

constexpr uint64_t kExponentLimit = 0x7fffffffull;
constexpr size_t kCombineThreshold = size_t(1) << 21;

uint64_t bracket_q(const PresPtr& R, uint32_t e) {
  return checked_pow_u64(R->ambient()->p.p, e, kExponentLimit);
}

// Sort under `order` and merge equal monomials; the linear-pass normal forms
// below rely on normal_form being k-linear.
std::vector<Term> combine_terms(std::vector<Term> ts, const MonomialOrder& order,
                                const FpCtx& fp) {
  std::sort(ts.begin(), ts.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.m, b.m); });
  std::vector<Term> out;
  out.reserve(ts.size());
  for (Term& t : ts) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c = fp.add(out.back().c, t.c);
      if (out.back().c == 0) out.pop_back();
    } else if (t.c != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

// Normal form computed term by term; sums of small per-term normal forms are
// merged at the end (and periodically, to bound memory). Equivalent to one
// big reduction but avoids quadratic merge costs on wide inputs.
std::vector<Term> nf_termwise(const std::vector<Term>& input, const GroebnerBasis& B,
                              const FpCtx& fp) {
  std::vector<Term> acc;
  for (const Term& t : input) {
    std::vector<Term> r = normal_form_terms({t}, B);
    acc.insert(acc.end(), r.begin(), r.end());
    if (acc.size() > kCombineThreshold) acc = combine_terms(std::move(acc), B.order, fp);
  }
  return combine_terms(std::move(acc), B.order, fp);
}

std::vector<Term> frobenius_terms(const std::vector<Term>& ts, uint32_t p) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const Term& t : ts) out.push_back({t.c, t.m.power(p)});
  return out;
}

struct StagedCache {
  std::mutex mu;
  std::map<std::string, std::shared_ptr<const std::vector<Term>>> entries;
};

StagedCache& staged_cache() {
  static StagedCache* c = new StagedCache;
  return *c;
}

// Reduction machinery for one bracket power of one generator subset.
// strategy 1: relations are empty, so the scaled Groebner basis of the subset
//             is a basis of the bracket ideal.
// strategy 2: monomial generators whose supports avoid every leading term of
//             the relations under some priority order; the powered monomials
//             plus the relation basis form a basis outright, and powers of z
//             are reduced stage by stage.
// strategy 3: budgeted Buchberger on the explicit bracket lift.
struct ReduceCtx {
  int strategy = 0;
  bool usable = false;
  uint64_t q = 1;
  uint64_t mask = 0;
  MonomialOrder order;
  std::shared_ptr<const GroebnerBasis> basis;  // reduction basis at this e
  std::shared_ptr<const GroebnerBasis> base;   // strategy 1: q=1 basis; 2: relations basis
  std::vector<Monomial> trunc;                 // strategy 2 monomial generators
};

class BracketEngine {
 public:
  BracketEngine(PresPtr R, const std::vector<Polynomial>& gens, const ClosureConfig& cfg)
      : R_(std::move(R)), cfg_(cfg) {
    const RingPtr& ring = R_->ambient();
    for (const Polynomial& g : gens) {
      check_same_ring(ring, g.ring());
      if (R_->is_zero_in_quotient(g)) continue;
      gens_.push_back(g);
    }
    homogeneous_ = true;
    for (const Polynomial& g : gens_) {
      int64_t d = 0;
      if (!g.is_homogeneous(&d)) {
        homogeneous_ = false;
        degrees_.clear();
        break;
      }
      degrees_.push_back(d);
    }
  }

  const PresPtr& presentation() const { return R_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool homogeneous_generators() const { return homogeneous_; }

  // c * z^{p^e} in (gens)^{[q]} + J? Inputs must already be reduced mod J;
  // nullopt when the fallback basis ran out of budget.
  std::optional<bool> member_times_power(const Polynomial& c, const Polynomial& z,
                                         uint32_t e) {
    if (c.is_zero() || z.is_zero()) return true;
    ReduceCtx& ctx = context(mask_for(query_degree(c, z, e), e), e);
    if (!ctx.usable) return std::nullopt;
    const FpCtx& fp = R_->ambient()->fp;
    switch (ctx.strategy) {
      case 1: {
        std::vector<Term> w = powered_normal_form(z, ctx, e);
        std::vector<Term> prod = cross_product(order_terms(c, ctx.order), w, fp);
        try {
          return normal_form_terms(std::move(prod), *ctx.basis, nullptr, cfg_.step_budget)
              .empty();
        } catch (const Error& err) {
          if (err.code() != ErrorCode::BudgetExceeded) throw;
          return std::nullopt;
        }
      }
      case 2: {
        std::shared_ptr<const std::vector<Term>> w = staged_power(z, ctx, e);
        std::vector<Term> acc;
        for (const Term& ct : order_terms(c, ctx.order)) {
          for (const Term& wt : *w) {
            Term t{fp.mul(ct.c, wt.c), ct.m * wt.m};
            std::vector<Term> r = normal_form_terms({t}, *ctx.basis);
            acc.insert(acc.end(), r.begin(), r.end());
            if (acc.size() > kCombineThreshold)
              acc = combine_terms(std::move(acc), ctx.order, fp);
          }
        }
        return combine_terms(std::move(acc), ctx.order, fp).empty();
      }
      default: {
        Polynomial f = c * z.frobenius_power(e);
        try {
          return normal_form(f, *ctx.basis, nullptr, cfg_.step_budget).is_zero();
        } catch (const Error& err) {
          if (err.code() != ErrorCode::BudgetExceeded) throw;
          return std::nullopt;
        }
      }
    }
  }

  // Normal form of m * z^{p^e} against the bracket basis; term order in the
  // result is unspecified (coordinates are read off by exponent vector).
  std::optional<std::vector<Term>> slice_image(const Monomial& m, const Polynomial& z,
                                               uint32_t e) {
    const RingPtr& ring = R_->ambient();
    if (z.is_zero()) return std::vector<Term>{};
    int64_t qd = -1;
    int64_t zdeg = 0;
    if (homogeneous_ && z.is_homogeneous(&zdeg)) {
      uint64_t q = bracket_q(R_, e);
      qd = m.weighted_degree(ring->weights) + static_cast<int64_t>(q) * zdeg;
    }
    ReduceCtx& ctx = context(mask_for(qd, e), e);
    if (!ctx.usable) return std::nullopt;
    const FpCtx& fp = ring->fp;
    switch (ctx.strategy) {
      case 1: {
        std::vector<Term> w = powered_normal_form(z, ctx, e);
        for (Term& t : w) t.m = t.m * m;
        try {
          return normal_form_terms(std::move(w), *ctx.basis, nullptr, cfg_.step_budget);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::BudgetExceeded) throw;
          return std::nullopt;
        }
      }
      case 2: {
        std::shared_ptr<const std::vector<Term>> w = staged_power(z, ctx, e);
        std::vector<Term> acc;
        for (const Term& wt : *w) {
          Term t{wt.c, wt.m * m};
          std::vector<Term> r = normal_form_terms({t}, *ctx.basis);
          acc.insert(acc.end(), r.begin(), r.end());
          if (acc.size() > kCombineThreshold)
            acc = combine_terms(std::move(acc), ctx.order, fp);
        }
        return combine_terms(std::move(acc), ctx.order, fp);
      }
      default: {
        Polynomial f = Polynomial::monomial(ring, m) * z.frobenius_power(e);
        try {
          Polynomial nf = normal_form(f, *ctx.basis, nullptr, cfg_.step_budget);
          return order_terms(nf, ctx.order);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::BudgetExceeded) throw;
          return std::nullopt;
        }
      }
    }
  }

 private:
  uint64_t full_mask() const {
    return gens_.size() >= 64 ? ~0ull : ((uint64_t(1) << gens_.size()) - 1);
  }

  // Homogeneous queries only involve bracket generators of degree at most the
  // query degree; everything else may be dropped. qd < 0 disables filtering.
  uint64_t mask_for(int64_t qd, uint32_t e) const {
    if (qd < 0 || !homogeneous_ || gens_.size() >= 64) return full_mask();
    uint64_t q = bracket_q(R_, e);
    uint64_t mask = 0;
    for (size_t i = 0; i < gens_.size(); ++i)
      if (static_cast<int64_t>(q) * degrees_[i] <= qd) mask |= uint64_t(1) << i;
    return mask;
  }

  int64_t query_degree(const Polynomial& c, const Polynomial& z, uint32_t e) const {
    int64_t dc = 0, dz = 0;
    if (!homogeneous_ || !c.is_homogeneous(&dc) || !z.is_homogeneous(&dz)) return -1;
    uint64_t q = bracket_q(R_, e);
    return dc + static_cast<int64_t>(q) * dz;
  }

  std::vector<Polynomial> kept_generators(uint64_t mask) const {
    if (mask == full_mask() && gens_.size() >= 64) return gens_;
    std::vector<Polynomial> kept;
    for (size_t i = 0; i < gens_.size() && i < 64; ++i)
      if (mask & (uint64_t(1) << i)) kept.push_back(gens_[i]);
    return kept;
  }

  static std::vector<Term> cross_product(const std::vector<Term>& a,
                                         const std::vector<Term>& b, const FpCtx& fp) {
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const Term& ta : a)
      for (const Term& tb : b) out.push_back({fp.mul(ta.c, tb.c), ta.m * tb.m});
    return out;
  }

  ReduceCtx& context(uint64_t mask, uint32_t e) {
    auto key = std::make_pair(mask, e);
    auto it = contexts_.find(key);
    if (it != contexts_.end()) return it->second;

    const RingPtr& ring = R_->ambient();
    ReduceCtx ctx;
    ctx.q = bracket_q(R_, e);
    ctx.mask = mask;
    std::vector<Polynomial> kept = kept_generators(mask);

    if (R_->is_regular_presentation()) {
      ctx.strategy = 1;
      ctx.order = ring->order;
      AmbientIdeal& base = kept_ideal(mask);
      ctx.base = base.basis(ring->order, GroebnerOptions{cfg_.step_budget});
      if (e == 0) {
        ctx.basis = ctx.base;
      } else {
        std::vector<Polynomial> scaled;
        for (const Polynomial& g : ctx.base->polynomials())
          scaled.push_back(g.frobenius_power(e));
        ctx.basis = std::make_shared<GroebnerBasis>(assume_basis(ring, scaled, ring->order));
      }
      ctx.usable = true;
    } else if (kept.empty()) {
      ctx.strategy = 3;
      ctx.order = ring->order;
      ctx.basis = R_->relations_basis();
      ctx.usable = true;
    } else {
      bool all_monomial = true;
      std::vector<Monomial> ms;
      for (const Polynomial& g : kept) {
        if (!g.is_monomial()) {
          all_monomial = false;
          break;
        }
        ms.push_back(g.terms()[0].m);
      }
      const std::optional<std::pair<MonomialOrder, std::shared_ptr<const GroebnerBasis>>>*
          found = nullptr;
      if (all_monomial) found = &coprime_basis(mask, ms);
      if (found && found->has_value()) {
        ctx.strategy = 2;
        ctx.order = (*found)->first;
        ctx.base = (*found)->second;
        ctx.trunc = std::move(ms);
        ctx.basis = combined_basis(mask, e, ctx);
        ctx.usable = true;
      } else {
        ctx.strategy = 3;
        ctx.order = ring->order;
        try {
          AmbientIdeal& lift = fallback_ideal(mask, e);
          ctx.basis = lift.basis(ring->order, GroebnerOptions{cfg_.step_budget});
          ctx.usable = true;
        } catch (const Error& err) {
          if (err.code() != ErrorCode::BudgetExceeded) throw;
          ctx.usable = false;
        }
      }
    }
    return contexts_.emplace(key, std::move(ctx)).first->second;
  }

  AmbientIdeal& kept_ideal(uint64_t mask) {
    auto it = kept_ideals_.find(mask);
    if (it != kept_ideals_.end()) return it->second;
    return kept_ideals_.emplace(mask, AmbientIdeal(R_->ambient(), kept_generators(mask)))
        .first->second;
  }

  AmbientIdeal& fallback_ideal(uint64_t mask, uint32_t e) {
    auto key = std::make_pair(mask, e);
    auto it = fallback_ideals_.find(key);
    if (it != fallback_ideals_.end()) return it->second;
    std::vector<Polynomial> lifted;
    for (const Polynomial& g : kept_generators(mask)) lifted.push_back(g.frobenius_power(e));
    for (const Polynomial& rel : R_->relations().generators()) lifted.push_back(rel);
    return fallback_ideals_
        .emplace(key, AmbientIdeal(R_->ambient(), std::move(lifted)))
        .first->second;
  }

  const std::optional<std::pair<MonomialOrder, std::shared_ptr<const GroebnerBasis>>>&
  coprime_basis(uint64_t mask, const std::vector<Monomial>& ms) {
    auto it = coprime_.find(mask);
    if (it != coprime_.end()) return it->second;
    return coprime_.emplace(mask, R_->coprime_priority_basis(ms)).first->second;
  }

  std::shared_ptr<const GroebnerBasis> combined_basis(uint64_t mask, uint32_t stage,
                                                      const ReduceCtx& ctx) {
    auto key = std::make_pair(mask, stage);
    auto it = combined_.find(key);
    if (it != combined_.end()) return it->second;
    const RingPtr& ring = R_->ambient();
    uint64_t qs = bracket_q(R_, stage);
    std::vector<Polynomial> polys;
    for (const Monomial& m : ctx.trunc) polys.push_back(Polynomial::monomial(ring, m.power(qs)));
    for (const Polynomial& g : ctx.base->polynomials()) polys.push_back(g);
    auto B = std::make_shared<const GroebnerBasis>(assume_basis(ring, polys, ctx.order));
    return combined_.emplace(key, std::move(B)).first->second;
  }

  // Strategy 1: the normal form of z^q against the scaled basis is the q-th
  // power of the normal form of z, computed termwise.
  std::vector<Term> powered_normal_form(const Polynomial& z, const ReduceCtx& ctx,
                                        uint32_t e) {
    Polynomial nf = normal_form(z, *ctx.base);
    return order_terms(nf.frobenius_power(e), ctx.order);
  }

  std::string stage_key(uint64_t mask, const Polynomial& z, uint32_t stage,
                        const ReduceCtx& ctx) const {
    std::ostringstream os;
    os << R_->ambient()->fingerprint() << '#';
    for (const Polynomial& rel : R_->relations().generators()) os << rel.render() << ',';
    os << '#' << ctx.order.key() << '#';
    for (const Monomial& m : ctx.trunc) os << render_monomial(m, R_->ambient()->vars) << ',';
    os << '#' << z.render() << '#' << stage << '#' << mask;
    return os.str();
  }

  // Stage-by-stage reduced power of z: w_0 = nf(z), w_{k+1} = nf(w_k^p), each
  // stage reduced against the k-th combined basis. Sound and complete for
  // membership because each combined list is a genuine basis.
  std::shared_ptr<const std::vector<Term>> staged_power(const Polynomial& z, ReduceCtx& ctx,
                                                        uint32_t e) {
    // Find the deepest cached stage, then extend.
    StagedCache& cache = staged_cache();
    uint64_t mask = ctx.mask;
    std::shared_ptr<const std::vector<Term>> w;
    uint32_t start = 0;
    {
      std::lock_guard<std::mutex> lk(cache.mu);
      for (uint32_t k = e + 1; k-- > 0;) {
        auto it = cache.entries.find(stage_key(mask, z, k, ctx));
        if (it != cache.entries.end()) {
          w = it->second;
          start = k + 1;
          break;
        }
      }
    }
    const FpCtx& fp = R_->ambient()->fp;
    uint32_t p = R_->ambient()->p.p;
    for (uint32_t k = start; k <= e; ++k) {
      std::vector<Term> input =
          (k == 0) ? order_terms(z, ctx.order) : frobenius_terms(*w, p);
      std::shared_ptr<const GroebnerBasis> Bk = combined_basis(mask, k, ctx);
      auto next = std::make_shared<std::vector<Term>>(nf_termwise(input, *Bk, fp));
      {
        std::lock_guard<std::mutex> lk(cache.mu);
        cache.entries.emplace(stage_key(mask, z, k, ctx), next);
      }
      w = std::move(next);
    }
    return w;
  }

  PresPtr R_;
  ClosureConfig cfg_;
  std::vector<Polynomial> gens_;
  bool homogeneous_ = false;
  std::vector<int64_t> degrees_;
  std::map<std::pair<uint64_t, uint32_t>, ReduceCtx> contexts_;
  std::map<uint64_t, AmbientIdeal> kept_ideals_;
  std::map<std::pair<uint64_t, uint32_t>, AmbientIdeal> fallback_ideals_;
  std::map<uint64_t, std::optional<std::pair<MonomialOrder, std::shared_ptr<const GroebnerBasis>>>>
      coprime_;
  std::map<std::pair<uint64_t, uint32_t>, std::shared_ptr<const GroebnerBasis>> combined_;
};

ClosureVerdict member_tag() {
  ClosureVerdict v;
  v.status = ClosureStatus::InProved;
  v.route = "member";
  v.e_lo = 0;
  v.e_hi = 0;
  return v;
}

// Route (b1): z inside the Newton region of I^mu certifies membership in the
// integral closure of I^mu ambiently, hence in the hull by the
// Briancon-Skoda containment.
bool briancon_skoda_route(const PresPtr& R, const std::vector<Polynomial>& gens,
                          const Polynomial& z0) {
  const RingPtr& ring = R->ambient();
  if (ring->nvars() > 4 || gens.empty()) return false;
  std::vector<Monomial> ms;
  for (const Polynomial& g : gens) {
    if (g.is_zero()) continue;
    if (!g.is_monomial()) return false;
    ms.push_back(g.terms()[0].m);
  }
  if (ms.empty()) return false;
  std::vector<Monomial> mins = minimal_monomials(ms);
  uint32_t mu = static_cast<uint32_t>(mins.size());
  std::vector<Polynomial> mono_polys;
  for (const Monomial& m : mins) mono_polys.push_back(Polynomial::monomial(ring, m));
  AmbientIdeal power = ideal_power(AmbientIdeal(ring, mono_polys), mu);
  std::vector<Monomial> pts;
  for (const Polynomial& g : power.generators()) {
    if (!g.is_monomial()) return false;
    pts.push_back(g.terms()[0].m);
  }
  if (pts.size() > 120) return false;  // facet enumeration would be too wide
  NewtonRegion region = newton_region(pts, ring->nvars());
  for (const Term& t : z0.terms())
    if (!region.contains(t.m)) return false;
  return true;
}

// Route (b2) support: a subset of the generators that is a verified
// Cohen-Macaulay parameter system generating the ideal, with every degree
// above the a-invariant. Cached per (presentation, generator list).
struct ParamSubsetInfo {
  bool valid = false;
  std::vector<Polynomial> xs;
  int64_t degree_sum = 0;
  int64_t a_inv = 0;
};

ParamSubsetInfo compute_degree_bound_data(const PresPtr& R,
                                          const std::vector<Polynomial>& gens) {
  ParamSubsetInfo info;
  int d = R->dim();
  if (d <= 0 || gens.size() < static_cast<size_t>(d)) return info;
  std::vector<Polynomial> reduced;
  for (const Polynomial& g : gens) {
    Polynomial r = R->reduce(g);
    if (!r.is_zero()) reduced.push_back(r);
  }
  if (reduced.size() < static_cast<size_t>(d)) return info;

  int64_t a = a_invariant_from_series(R);
  AmbientIdeal full = lift_with_relations(R, gens);

  std::vector<size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<Polynomial> xs;
    for (size_t i : idx) xs.push_back(reduced[i]);
    bool ok = true;
    int64_t sum = 0;
    for (const Polynomial& x : xs) {
      int64_t dx = x.weighted_degree();
      if (dx <= a) {
        ok = false;
        break;
      }
      sum += dx;
    }
    if (ok) {
      try {
        ok = is_parameter_system(R, xs);
      } catch (const Error&) {
        ok = false;
      }
    }
    if (ok) ok = ideal_equal(lift_with_relations(R, xs), full);
    if (ok) {
      std::vector<bool> rs = regular_sequence_check(R, xs);
      for (bool b : rs) ok = ok && b;
    }
    if (ok) {
      info.valid = true;
      info.xs = std::move(xs);
      info.degree_sum = sum;
      info.a_inv = a;
      return info;
    }
    // next index combination
    size_t n = reduced.size();
    int pos = d - 1;
    while (pos >= 0 && idx[pos] == n - static_cast<size_t>(d - pos)) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (size_t j = pos + 1; j < static_cast<size_t>(d); ++j) idx[j] = idx[j - 1] + 1;
  }
  return info;
}

ParamSubsetInfo degree_bound_data(const PresPtr& R, const std::vector<Polynomial>& gens) {
  static std::mutex mu;
  static std::map<std::string, ParamSubsetInfo>* cache =
      new std::map<std::string, ParamSubsetInfo>;
  std::ostringstream os;
  os << R->ambient()->fingerprint() << '#';
  for (const Polynomial& rel : R->relations().generators()) os << rel.render() << ',';
  os << '#';
  for (const Polynomial& g : gens) os << g.render() << ',';
  std::string key = os.str();
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache->find(key);
    if (it != cache->end()) return it->second;
  }
  ParamSubsetInfo info = compute_degree_bound_data(R, gens);
  std::lock_guard<std::mutex> lk(mu);
  return cache->emplace(key, std::move(info)).first->second;
}

struct ChainOutcome {
  bool computed = false;
  bool nonzero = false;
  bool stabilized = false;
  std::vector<ChainSlice> dims;
  std::optional<Polynomial> certificate;
  int64_t cap = 0;
  std::string note;
};

int64_t default_colon_cap(const PresPtr& R, const std::vector<Polynomial>& gens) {
  int64_t jmax = 0;
  for (const Polynomial& rel : R->relations().generators())
    jmax = std::max(jmax, rel.weighted_degree());
  int64_t imax = 0;
  for (const Polynomial& g : gens)
    if (!g.is_zero()) imax = std::max(imax, g.weighted_degree());
  return std::max<int64_t>({6, 2 * jmax, imax + 2});
}

// Route (c): slicewise colon chain K_e = (bracket(I,e) : z^{p^e}) in degrees
// up to the cap, intersected over e. A nonzero stabilized intersection
// yields a candidate multiplier; its minimal-degree element becomes the
// certificate.
ChainOutcome colon_chain(BracketEngine& eng, const PresPtr& R, const Polynomial& z0,
                         const ClosureConfig& cfg) {
  ChainOutcome out;
  const RingPtr& ring = R->ambient();
  const FpCtx& fp = ring->fp;
  out.cap = cfg.colon_degree_cap > 0 ? cfg.colon_degree_cap
                                     : default_colon_cap(R, eng.generators());
  if (cfg.tail_start > cfg.e_max) {
    out.note = "empty stage range for the colon chain";
    return out;
  }

  // Coordinates: standard monomials of the relations, stored descending so
  // the reduced basis pivots on the largest monomial.
  std::vector<std::vector<Monomial>> coords(out.cap + 1);
  for (int64_t n = 0; n <= out.cap; ++n) {
    std::vector<Monomial> asc = degree_slice_basis(R->relations(), n);
    coords[n].assign(asc.rbegin(), asc.rend());
  }

  std::vector<std::optional<FpMatrix>> D(out.cap + 1);
  std::vector<std::vector<size_t>> history;
  for (uint32_t e = cfg.tail_start; e <= cfg.e_max; ++e) {
    std::vector<size_t> dims(out.cap + 1, 0);
    for (int64_t n = 0; n <= out.cap; ++n) {
      if (coords[n].empty()) continue;
      if (D[n] && D[n]->rows == 0) continue;  // already dead at this degree
      std::map<std::vector<uint32_t>, size_t> support;
      std::vector<std::vector<Term>> images(coords[n].size());
      for (size_t j = 0; j < coords[n].size(); ++j) {
        std::optional<std::vector<Term>> img = eng.slice_image(coords[n][j], z0, e);
        if (!img) {
          out.note = "colon chain aborted: reduction budget exhausted";
          return out;
        }
        images[j] = std::move(*img);
        for (const Term& t : images[j]) support.emplace(t.m.e, support.size());
      }
      FpMatrix M(fp, support.size(), coords[n].size());
      for (size_t j = 0; j < images.size(); ++j)
        for (const Term& t : images[j]) M.at(support[t.m.e], j) = t.c;
      FpMatrix K(fp, 0, coords[n].size());
      for (std::vector<uint32_t>& v : kernel_basis(std::move(M))) K.add_row(v);
      K = row_space_basis(std::move(K));
      D[n] = D[n] ? row_space_intersection(*D[n], K) : std::move(K);
      dims[n] = D[n]->rows;
    }
    history.push_back(std::move(dims));
  }
  out.computed = true;

  for (int64_t n = 0; n <= out.cap; ++n) {
    if (D[n] && D[n]->rows > 0) {
      out.nonzero = true;
      out.dims.push_back({n, D[n]->rows});
      if (!out.certificate) {
        std::vector<Term> ts;
        for (size_t j = 0; j < coords[n].size(); ++j)
          if (D[n]->at(0, j) != 0) ts.push_back({D[n]->at(0, j), coords[n][j]});
        out.certificate = Polynomial::from_terms(ring, std::move(ts));
      }
    }
  }

  size_t window = cfg.stabilization_window;
  if (history.size() >= window + 1) {
    out.stabilized = true;
    const std::vector<size_t>& last = history.back();
    for (size_t k = history.size() - window - 1; k + 1 < history.size() && out.stabilized;
         ++k)
      out.stabilized = history[k] == last;
  }
  return out;
}

}  // namespace

AmbientIdeal bracket_power_lift(const PresPtr& R, const std::vector<Polynomial>& gens,
                                uint32_t e) {
  std::vector<Polynomial> lifted;
  lifted.reserve(gens.size() + R->relations().generators().size());
  for (const Polynomial& g : gens) {
    check_same_ring(R->ambient(), g.ring());
    lifted.push_back(g.frobenius_power(e));
  }
  for (const Polynomial& rel : R->relations().generators()) lifted.push_back(rel);
  return AmbientIdeal(R->ambient(), std::move(lifted));
}

std::vector<CertificateRow> tc_certificate_check(const PresPtr& R,
                                                 const std::vector<Polynomial>& gens,
                                                 const Polynomial& z, const Polynomial& c,
                                                 uint32_t e_lo, uint32_t e_hi,
                                                 const ClosureConfig& cfg) {
  if (e_hi < e_lo)
    throw Error(ErrorCode::ParameterError, "empty e-range for the certificate table");
  Polynomial c0 = R->reduce(c);
  if (c0.is_zero())
    throw Error(ErrorCode::ZeroCertificate, "certificate is zero in the ring");
  Polynomial z0 = R->reduce(z);
  BracketEngine eng(R, gens, cfg);
  std::vector<CertificateRow> rows;
  for (uint32_t e = e_lo; e <= e_hi; ++e) {
    CertificateRow row;
    row.e = e;
    row.q = bracket_q(R, e);
    row.holds = eng.member_times_power(c0, z0, e);
    rows.push_back(std::move(row));
  }
  return rows;
}

ClosureVerdict tc_membership(const PresPtr& R, const std::vector<Polynomial>& gens,
                             const Polynomial& z, const ClosureConfig& cfg) {
  const RingPtr& ring = R->ambient();
  check_same_ring(ring, z.ring());
  for (const Polynomial& g : gens) check_same_ring(ring, g.ring());

  ClosureVerdict v;
  v.e_lo = 1;
  v.e_hi = cfg.e_max;
  v.tail_start = cfg.tail_start;

  Polynomial z0 = R->reduce(z);
  AmbientIdeal lift = lift_with_relations(R, gens);

  // (a) plain membership, including z = 0 and the unit ideal
  if (z0.is_zero() || lift.contains(z0)) return member_tag();

  BracketEngine eng(R, gens, cfg);
  int64_t zdeg = 0;
  bool homog = eng.homogeneous_generators() && z0.is_homogeneous(&zdeg);

  // (b1) ambient monomial Briancon-Skoda
  if (briancon_skoda_route(R, gens, z0)) {
    v.status = ClosureStatus::InProved;
    v.route = "briancon-skoda";
    v.e_lo = v.e_hi = 0;
    v.assumptions.push_back(
        "Newton-region membership in the mu-th power, pushed down from the ambient ring");
    return v;
  }

  // (b2) degree bound over a verified parameter subset
  if (homog && R->asserted_domain() && R->dim() >= 1) {
    ParamSubsetInfo info = degree_bound_data(R, gens);
    if (info.valid && zdeg >= info.degree_sum) {
      v.status = ClosureStatus::InProved;
      v.route = "degree-bound";
      v.e_lo = v.e_hi = 0;
      std::ostringstream os;
      os << "degree " << zdeg << " >= " << info.degree_sum
         << ", the degree sum of a verified Cohen-Macaulay parameter subset; "
            "a-invariant "
         << info.a_inv;
      v.assumptions.push_back(os.str());
      return v;
    }
  }

  // (c) colon-chain stabilization
  if (homog) {
    ChainOutcome chain = colon_chain(eng, R, z0, cfg);
    v.colon_degree_cap = chain.cap;
    v.chain = chain.dims;
    v.chain_stabilized = chain.stabilized;
    if (!chain.note.empty()) v.assumptions.push_back(chain.note);
    if (chain.computed && chain.nonzero && chain.stabilized) {
      v.status = ClosureStatus::LikelyIn;
      v.route = "certificate-stabilization";
      v.certificate = chain.certificate;
      v.e_lo = cfg.tail_start;
      v.e_hi = cfg.e_max;
      if (!R->asserted_domain())
        v.assumptions.push_back(
            "certificate is nonzero in R, but the ring is not asserted to be a domain");
      if (v.certificate && v.certificate->is_constant())
        v.assumptions.push_back(
            "unit certificate: the element lies in the Frobenius closure over the tested "
            "range");
      return v;
    }
  } else {
    v.assumptions.push_back("inhomogeneous input: the stabilization route was skipped");
  }

  // (d) candidate refutation
  std::vector<Polynomial> candidates;
  bool asserted = false;
  if (cfg.asserted_test_element) {
    Polynomial c0 = R->reduce(*cfg.asserted_test_element);
    if (c0.is_zero())
      throw Error(ErrorCode::ZeroCertificate, "asserted test element is zero in the ring");
    candidates.push_back(std::move(c0));
    asserted = true;
  } else if (R->asserted_domain() || R->is_regular_presentation()) {
    try {
      candidates = R->jacobian_candidates();
    } catch (const Error& err) {
      if (err.code() != ErrorCode::SingularEverywhere) throw;
      v.assumptions.push_back(std::string("no usable Jacobian candidates: ") + err.what());
    }
  } else {
    v.assumptions.push_back(
        "candidate refutation skipped: ring not asserted to be a domain");
  }

  if (!candidates.empty()) {
    uint32_t K = cfg.k_power ? cfg.k_power : ring->p.p;
    bool all_failed = true;
    std::vector<OutFailure> fails;
    for (const Polynomial& c : candidates) {
      Polynomial cK = R->reduce(c.pow(K));
      bool failed = false;
      for (uint32_t e = 1; e <= cfg.e_max && !failed; ++e) {
        std::optional<bool> in = eng.member_times_power(cK, z0, e);
        if (!in) {
          v.assumptions.push_back("candidate scan aborted: reduction budget exhausted");
          all_failed = false;
          break;
        }
        if (!*in) {
          fails.push_back({c, K, e});
          failed = true;
        }
      }
      if (!failed) {
        all_failed = false;
        break;
      }
    }
    if (all_failed && !fails.empty()) {
      v.status = ClosureStatus::OutEvidence;
      v.route = asserted ? "asserted-test-element" : "test-candidate-failure";
      v.failures = std::move(fails);
      v.e_lo = 1;
      v.e_hi = cfg.e_max;
      if (asserted)
        v.assumptions.push_back("sound modulo the asserted test element");
      else if (R->is_regular_presentation())
        v.assumptions.push_back(
            "regular presentation: the unit candidate is a genuine test element");
      else
        v.assumptions.push_back(
            "Jacobian candidates are heuristic; some power of one is expected to be a "
            "test element");
      return v;
    }
  }

  v.status = ClosureStatus::Undetermined;
  v.route = "undetermined";
  return v;
}

HullResult tc_hull(const PresPtr& R, const std::vector<Polynomial>& gens,
                   int64_t degree_bound, const ClosureConfig& cfg) {
  const RingPtr& ring = R->ambient();
  int64_t maxdeg = 0;
  for (const Polynomial& g : gens) {
    check_same_ring(ring, g.ring());
    if (g.is_zero()) continue;
    if (!g.is_homogeneous())
      throw Error(ErrorCode::GradingError,
                  "hull sweeps need homogeneous generators, got " + g.render());
    maxdeg = std::max(maxdeg, g.weighted_degree());
  }
  if (degree_bound < maxdeg)
    throw Error(ErrorCode::DegreeTooSmall,
                "degree bound is below the largest generator degree");

  HullResult res;
  res.input = gens;
  res.degree_bound = degree_bound;

  std::vector<Polynomial> current;
  for (const Polynomial& g : gens) {
    Polynomial r = R->reduce(g);
    if (!r.is_zero()) current.push_back(std::move(r));
  }

  std::vector<HullGenerator> adjoined;
  bool added = true;
  while (added) {
    added = false;
    ++res.sweeps;
    AmbientIdeal lift = lift_with_relations(R, current);
    for (int64_t n = 0; n <= degree_bound; ++n) {
      for (const Monomial& m : degree_slice_basis(lift, n)) {
        Polynomial zm = Polynomial::monomial(ring, m);
        if (lift.contains(zm)) continue;  // adjoined earlier in this degree
        ClosureVerdict verdict = tc_membership(R, current, zm, cfg);
        if (verdict.status == ClosureStatus::InProved ||
            verdict.status == ClosureStatus::LikelyIn) {
          current.push_back(zm);
          adjoined.push_back({zm, std::move(verdict)});
          added = true;
          lift = lift_with_relations(R, current);
        }
      }
    }
  }
  res.fixed_point = true;

  // Minimalize modulo the relations: drop any generator the others already
  // produce in R.
  std::vector<Polynomial> finals = current;
  for (size_t i = finals.size(); i-- > 0;) {
    std::vector<Polynomial> others;
    for (size_t j = 0; j < finals.size(); ++j)
      if (j != i) others.push_back(finals[j]);
    if (lift_with_relations(R, others).contains(finals[i])) finals.erase(finals.begin() + i);
  }
  for (const Polynomial& g : finals) {
    const ClosureVerdict* tag = nullptr;
    for (const HullGenerator& a : adjoined)
      if (a.gen == g) {
        tag = &a.verdict;
        break;
      }
    res.generators.push_back({g, tag ? *tag : member_tag()});
  }
  return res;
}

bool plus_closure_witness_check(const PresPtr& R, const std::vector<Polynomial>& gens,
                                const Polynomial& z, const PlusWitness& w) {
  if (!w.target) throw Error(ErrorCode::MapError, "witness has no target presentation");
  const RingPtr& tring = w.target->ambient();
  if (w.images.size() != R->ambient()->nvars())
    throw Error(ErrorCode::MapError, "one image per source variable is required");
  if (w.coefficients.size() != gens.size())
    throw Error(ErrorCode::MapError, "one coefficient per ideal generator is required");
  for (const Polynomial& f : w.images) check_same_ring(tring, f.ring());
  for (const Polynomial& f : w.coefficients) check_same_ring(tring, f.ring());

  for (const Polynomial& rel : R->relations().generators()) {
    Polynomial img = apply_map(rel, tring, w.images);
    if (!w.target->is_zero_in_quotient(img))
      throw Error(ErrorCode::MapError,
                  "relation " + rel.render() + " does not map to zero in the target");
  }

  Polynomial acc = apply_map(z, tring, w.images);
  for (size_t i = 0; i < gens.size(); ++i)
    acc = acc - w.coefficients[i] * apply_map(gens[i], tring, w.images);
  return w.target->is_zero_in_quotient(acc);
}

std::vector<CertificateRow> persistence_pushforward(const PresPtr& R,
                                                    const std::vector<Polynomial>& gens,
                                                    const Polynomial& z, const Polynomial& c,
                                                    const Polynomial& h, uint32_t e_lo,
                                                    uint32_t e_hi, const ClosureConfig& cfg) {
  check_same_ring(R->ambient(), h.ring());
  std::vector<Polynomial> rels = R->relations().generators();
  rels.push_back(h);
  PresPtr target = RingPresentation::present(
      R->ambient(), std::move(rels), false,
      R->name().empty() ? std::string() : R->name() + "-cut");
  if (target->is_zero_in_quotient(c))
    throw Error(ErrorCode::CertificateKilled,
                "certificate " + c.render() + " maps to zero in the quotient");
  return tc_certificate_check(target, gens, z, c, e_lo, e_hi, cfg);
}

}  // namespace tcw
