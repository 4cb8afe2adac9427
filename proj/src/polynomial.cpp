#include "polynomial.hpp"

#include <algorithm>

namespace tcw {

std::shared_ptr<const RingCtx> RingCtx::make(uint32_t prime,
                                             std::vector<std::string> vars,
                                             std::vector<int64_t> weights,
                                             OrderKind kind) {
  auto r = std::make_shared<RingCtx>();
  r->p = PrimeChar(prime);
  r->fp = FpCtx(r->p);
  if (vars.empty()) throw Error(ErrorCode::ZeroRing, "ring needs at least one variable");
  if (weights.empty()) weights.assign(vars.size(), 1);
  if (weights.size() != vars.size())
    throw Error(ErrorCode::GradingError, "weight count does not match variable count");
  for (int64_t w : weights)
    if (w < 1) throw Error(ErrorCode::GradingError, "grading weights must be positive");
  r->vars = std::move(vars);
  r->weights = weights;
  r->order = MonomialOrder::make(kind, r->vars.size(), std::move(weights));
  return r;
}

std::string RingCtx::fingerprint() const {
  std::string s = "p" + std::to_string(p.p) + ":";
  for (const auto& v : vars) s += v + ",";
  s += "w";
  for (int64_t w : weights) s += std::to_string(w) + ",";
  return s;
}

void check_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (!a || !b || a->fingerprint() != b->fingerprint())
    throw Error(ErrorCode::RingMismatch, "operands live in different rings");
}

Polynomial Polynomial::zero(RingPtr ring) {
  Polynomial f;
  f.ring_ = std::move(ring);
  return f;
}

Polynomial Polynomial::constant(RingPtr ring, int64_t c) {
  uint32_t r = ring->fp.reduce_i64(c);
  Polynomial f;
  f.ring_ = std::move(ring);
  if (r != 0) f.terms_.push_back({r, Monomial(f.ring_->nvars())});
  return f;
}

Polynomial Polynomial::variable(RingPtr ring, size_t index) {
  if (index >= ring->nvars())
    throw Error(ErrorCode::InternalError, "variable index out of range");
  Monomial m(ring->nvars());
  m.e[index] = 1;
  return monomial(std::move(ring), std::move(m), 1);
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, int64_t c) {
  if (m.nvars() != ring->nvars())
    throw Error(ErrorCode::InternalError, "monomial arity does not match ring");
  uint32_t r = ring->fp.reduce_i64(c);
  Polynomial f;
  f.ring_ = std::move(ring);
  if (r != 0) f.terms_.push_back({r, std::move(m)});
  return f;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto& ord = ring->order;
  const auto& fp = ring->fp;
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ord.greater(a.m, b.m); });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    uint32_t c = t.c % ring->p.p;
    if (c == 0) continue;
    if (!out.empty() && out.back().m == t.m) {
      out.back().c = fp.add(out.back().c, c);
      if (out.back().c == 0) out.pop_back();
    } else {
      out.push_back({c, std::move(t.m)});
    }
  }
  Polynomial f;
  f.ring_ = std::move(ring);
  f.terms_ = std::move(out);
  return f;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty())
    throw Error(ErrorCode::InternalError, "leading term of the zero polynomial");
  return terms_.front();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same_ring(ring_, o.ring_);
  const auto& ord = ring_->order;
  const auto& fp = ring_->fp;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int cmp = ord.compare(terms_[i].m, o.terms_[j].m);
    if (cmp > 0) {
      out.push_back(terms_[i++]);
    } else if (cmp < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      uint32_t c = fp.add(terms_[i].c, o.terms_[j].c);
      if (c != 0) out.push_back({c, terms_[i].m});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  Polynomial f;
  f.ring_ = ring_;
  f.terms_ = std::move(out);
  return f;
}

Polynomial Polynomial::operator-() const {
  Polynomial f(*this);
  for (auto& t : f.terms_) t.c = ring_->fp.neg(t.c);
  return f;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_ring(ring_, o.ring_);
  const auto& fp = ring_->fp;
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.push_back({fp.mul(a.c, b.c), a.m * b.m});
  return from_terms(ring_, std::move(prod));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].c != o.terms_[i].c || terms_[i].m != o.terms_[i].m) return false;
  return true;
}

Polynomial Polynomial::scaled(uint32_t c) const {
  uint32_t r = c % ring_->p.p;
  if (r == 0) return zero(ring_);
  Polynomial f(*this);
  for (auto& t : f.terms_) t.c = ring_->fp.mul(t.c, r);
  return f;
}

Polynomial Polynomial::times_monomial(const Monomial& m, uint32_t c) const {
  uint32_t r = c % ring_->p.p;
  if (r == 0) return zero(ring_);
  Polynomial f;
  f.ring_ = ring_;
  f.terms_.reserve(terms_.size());
  for (const auto& t : terms_) f.terms_.push_back({ring_->fp.mul(t.c, r), t.m * m});
  // Multiplying by a fixed monomial preserves the term order.
  return f;
}

Polynomial Polynomial::pow(uint64_t k) const {
  Polynomial acc = constant(ring_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

Polynomial Polynomial::frobenius_power(uint32_t e) const {
  uint64_t q = checked_pow_u64(ring_->p.p, e, 0x7fffffffULL);
  Polynomial f;
  f.ring_ = ring_;
  f.terms_.reserve(terms_.size());
  // Coefficients satisfy c^q = c over the prime field, so only exponents move.
  for (const auto& t : terms_) f.terms_.push_back({t.c, t.m.power(q)});
  return f;
}

Polynomial Polynomial::derivative(size_t var) const {
  std::vector<Term> out;
  const auto& fp = ring_->fp;
  for (const auto& t : terms_) {
    if (t.m.e[var] == 0) continue;
    uint32_t k = fp.reduce_u64(t.m.e[var]);
    if (k == 0) continue;
    Term d = t;
    d.c = fp.mul(d.c, k);
    d.m.e[var] -= 1;
    out.push_back(std::move(d));
  }
  Polynomial f;
  f.ring_ = ring_;
  f.terms_ = std::move(out);
  return f;
}

int64_t Polynomial::weighted_degree() const {
  if (terms_.empty())
    throw Error(ErrorCode::InternalError, "degree of the zero polynomial");
  int64_t d = terms_[0].m.weighted_degree(ring_->weights);
  for (const auto& t : terms_)
    d = std::max(d, t.m.weighted_degree(ring_->weights));
  return d;
}

uint64_t Polynomial::plain_degree() const {
  if (terms_.empty())
    throw Error(ErrorCode::InternalError, "degree of the zero polynomial");
  uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.plain_degree());
  return d;
}

bool Polynomial::is_homogeneous(int64_t* degree_out) const {
  if (terms_.empty()) {
    if (degree_out) *degree_out = 0;
    return true;
  }
  int64_t d = terms_[0].m.weighted_degree(ring_->weights);
  for (const auto& t : terms_)
    if (t.m.weighted_degree(ring_->weights) != d) return false;
  if (degree_out) *degree_out = d;
  return true;
}

std::string Polynomial::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.m.is_one()) {
      out += std::to_string(t.c);
    } else if (t.c == 1) {
      out += render_monomial(t.m, ring_->vars);
    } else {
      out += std::to_string(t.c) + "*" + render_monomial(t.m, ring_->vars);
    }
  }
  return out;
}

Polynomial apply_map(const Polynomial& f, const RingPtr& target,
                     const std::vector<Polynomial>& images) {
  if (images.size() != f.ring()->nvars())
    throw Error(ErrorCode::MapError, "map needs one image per source variable");
  for (const auto& g : images) check_same_ring(g.ring(), target);
  if (f.ring()->p.p != target->p.p)
    throw Error(ErrorCode::MapError, "map must preserve the characteristic");
  Polynomial acc = Polynomial::zero(target);
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(target, t.c);
    for (size_t i = 0; i < images.size(); ++i)
      if (t.m.e[i] > 0) term = term * images[i].pow(t.m.e[i]);
    acc = acc + term;
  }
  return acc;
}

}  // namespace tcw
