#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fp.hpp"
#include "monomial.hpp"

namespace tcw {

// Ambient polynomial ring data: characteristic, variable names, grading
// weights and the canonical monomial order used for storage and rendering.
// Quotient relations are layered on top elsewhere; a RingCtx is always the
// free polynomial ring.
struct RingCtx {
  PrimeChar p;
  FpCtx fp;
  std::vector<std::string> vars;
  std::vector<int64_t> weights;
  MonomialOrder order;

  static std::shared_ptr<const RingCtx> make(uint32_t prime,
                                             std::vector<std::string> vars,
                                             std::vector<int64_t> weights = {},
                                             OrderKind kind = OrderKind::GrevLex);

  size_t nvars() const { return vars.size(); }
  // Structural identity; rings made separately but identically are compatible.
  std::string fingerprint() const;
};

using RingPtr = std::shared_ptr<const RingCtx>;

void check_same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  uint32_t c = 0;  // residue 0..p-1, nonzero in a normalized polynomial
  Monomial m;
};

// Element of the free ring RingCtx. Terms are kept strictly descending under
// the ring's canonical order with nonzero coefficients; every operation
// restores this form.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial zero(RingPtr ring);
  static Polynomial constant(RingPtr ring, int64_t c);
  static Polynomial variable(RingPtr ring, size_t index);
  static Polynomial monomial(RingPtr ring, Monomial m, int64_t c = 1);
  // Normalizes: reduces coefficients, combines duplicates, drops zeros, sorts.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  size_t nterms() const { return terms_.size(); }
  // Leading term under the canonical order; polynomial must be nonzero.
  const Term& leading_term() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial scaled(uint32_t c) const;          // c * this
  Polynomial times_monomial(const Monomial& m, uint32_t c = 1) const;
  Polynomial pow(uint64_t k) const;
  // f^{p^e}, computed termwise; coefficients are fixed by Frobenius over F_p.
  Polynomial frobenius_power(uint32_t e) const;
  Polynomial derivative(size_t var) const;

  // Weighted degree of the polynomial (max over terms); must be nonzero.
  int64_t weighted_degree() const;
  uint64_t plain_degree() const;
  bool is_homogeneous(int64_t* degree_out = nullptr) const;

  std::string render() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

// Evaluate f at the given images (one per variable of f's ring), producing an
// element of the images' ring. Used for ring maps between presentations.
Polynomial apply_map(const Polynomial& f, const RingPtr& target,
                     const std::vector<Polynomial>& images);

}  // namespace tcw
