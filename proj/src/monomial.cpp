#include "monomial.hpp"

#include <algorithm>
#include <numeric>

namespace tcw {

bool Monomial::is_one() const {
  return std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
}

uint64_t Monomial::plain_degree() const {
  uint64_t d = 0;
  for (uint32_t x : e) d += x;
  return d;
}

int64_t Monomial::weighted_degree(const std::vector<int64_t>& weights) const {
  int64_t d = 0;
  for (size_t i = 0; i < e.size(); ++i) d += weights[i] * static_cast<int64_t>(e[i]);
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (size_t i = 0; i < e.size(); ++i) r.e[i] = checked_exp_add(r.e[i], o.e[i]);
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r(*this);
  for (size_t i = 0; i < e.size(); ++i) {
    if (o.e[i] > r.e[i])
      throw Error(ErrorCode::InternalError, "monomial quotient is not exact");
    r.e[i] -= o.e[i];
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& o) const {
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0 && o.e[i] > 0) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(*this);
  for (size_t i = 0; i < e.size(); ++i) r.e[i] = std::max(r.e[i], o.e[i]);
  return r;
}

Monomial Monomial::saturated_quotient(const Monomial& o) const {
  Monomial r(*this);
  for (size_t i = 0; i < e.size(); ++i) r.e[i] = r.e[i] > o.e[i] ? r.e[i] - o.e[i] : 0;
  return r;
}

Monomial Monomial::power(uint64_t k) const {
  Monomial r(*this);
  for (auto& x : r.e) x = checked_exp_mul(x, k);
  return r;
}

MonomialOrder MonomialOrder::make(OrderKind kind, size_t nvars,
                                  std::vector<int64_t> weights,
                                  std::vector<int> priority) {
  MonomialOrder o;
  o.kind = kind;
  if (weights.empty()) weights.assign(nvars, 1);
  if (priority.empty()) {
    priority.resize(nvars);
    std::iota(priority.begin(), priority.end(), 0);
  }
  o.weights = std::move(weights);
  o.priority = std::move(priority);
  return o;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  size_t n = priority.size();
  if (elim_last) {
    // Last slot is the elimination variable: it dominates the block order.
    uint32_t at = a.e[n], bt = b.e[n];
    if (at != bt) return at < bt ? -1 : 1;
  }
  // Weighted degree over the base block only (the elimination slot, if any,
  // was decided above).
  auto wdeg = [&](const Monomial& m) {
    int64_t d = 0;
    for (size_t i = 0; i < n; ++i) d += weights[i] * static_cast<int64_t>(m.e[i]);
    return d;
  };
  switch (kind) {
    case OrderKind::Lex: {
      for (size_t k = 0; k < n; ++k) {
        int i = priority[k];
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
      }
      return 0;
    }
    case OrderKind::GrLex: {
      int64_t da = wdeg(a), db = wdeg(b);
      if (da != db) return da < db ? -1 : 1;
      for (size_t k = 0; k < n; ++k) {
        int i = priority[k];
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
      }
      return 0;
    }
    case OrderKind::GrevLex: {
      int64_t da = wdeg(a), db = wdeg(b);
      if (da != db) return da < db ? -1 : 1;
      for (size_t k = n; k-- > 0;) {
        int i = priority[k];
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
      }
      return 0;
    }
  }
  return 0;
}

std::string MonomialOrder::key() const {
  std::string k;
  switch (kind) {
    case OrderKind::Lex: k = "lex"; break;
    case OrderKind::GrLex: k = "grlex"; break;
    case OrderKind::GrevLex: k = "grevlex"; break;
  }
  if (elim_last) k += "+elim";
  k += ":";
  for (int i : priority) k += std::to_string(i) + ",";
  k += "w";
  for (int64_t w : weights) k += std::to_string(w) + ",";
  return k;
}

std::string render_monomial(const Monomial& m, const std::vector<std::string>& vars) {
  std::string out;
  for (size_t i = 0; i < m.e.size() && i < vars.size(); ++i) {
    if (m.e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
  }
  if (out.empty()) out = "1";
  return out;
}

}  // namespace tcw
