#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fp.hpp"

namespace tcw {

// Exponent vector. The ambient ring decides how many variables there are;
// a monomial never knows variable names or weights on its own.
struct Monomial {
  std::vector<uint32_t> e;

  Monomial() = default;
  explicit Monomial(size_t nvars) : e(nvars, 0) {}
  explicit Monomial(std::vector<uint32_t> exps) : e(std::move(exps)) {}

  size_t nvars() const { return e.size(); }
  bool is_one() const;
  uint64_t plain_degree() const;
  int64_t weighted_degree(const std::vector<int64_t>& weights) const;

  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }

  Monomial operator*(const Monomial& o) const;
  // Componentwise quotient; requires divisibility.
  Monomial operator/(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  // Componentwise max(0, a-b), the monomial-ideal colon.
  Monomial saturated_quotient(const Monomial& o) const;
  // Raise every exponent to the k-th multiple (Frobenius scaling).
  Monomial power(uint64_t k) const;
  bool shares_support(const Monomial& o) const { return !coprime(o); }
};

enum class OrderKind { Lex, GrLex, GrevLex };

// Monomial order: base kind, a priority permutation (priority[0] is the
// most significant variable index), the grading weights, and optionally a
// trailing elimination block that dominates everything else. The
// elimination variable is always the last slot of the exponent vector.
struct MonomialOrder {
  OrderKind kind = OrderKind::GrevLex;
  std::vector<int> priority;       // permutation of 0..n-1
  std::vector<int64_t> weights;    // one per variable, all >= 1
  bool elim_last = false;

  static MonomialOrder make(OrderKind kind, size_t nvars,
                            std::vector<int64_t> weights = {},
                            std::vector<int> priority = {});

  size_t nvars() const { return priority.size(); }

  // Three-way comparison: negative if a < b, zero iff equal, positive if a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  // Identical comparison behaviour, used as cache keys.
  std::string key() const;

  bool operator==(const MonomialOrder& o) const {
    return kind == o.kind && priority == o.priority && weights == o.weights &&
           elim_last == o.elim_last;
  }
};

std::string render_monomial(const Monomial& m, const std::vector<std::string>& vars);

}  // namespace tcw
