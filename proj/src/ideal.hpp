#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "groebner.hpp"

namespace tcw {

// Ideal of the free ambient ring, with a lazily computed Groebner basis per
// monomial order. Copies share the cache; entries are immutable once stored.
class AmbientIdeal {
 public:
  AmbientIdeal() = default;
  AmbientIdeal(RingPtr ring, std::vector<Polynomial> gens);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool has_zero_generators() const { return gens_.empty(); }

  std::shared_ptr<const GroebnerBasis> basis(const MonomialOrder& order,
                                             const GroebnerOptions& opt = {}) const;
  std::shared_ptr<const GroebnerBasis> basis() const;
  // Install a basis computed elsewhere (bracket-power shortcuts).
  void adopt_basis(std::shared_ptr<const GroebnerBasis> b) const;

  bool contains(const Polynomial& f) const;
  bool is_unit_ideal() const;

 private:
  struct CacheBox {
    std::mutex mu;
    std::map<std::string, std::shared_ptr<const GroebnerBasis>> entries;
  };
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<CacheBox> cache_ = std::make_shared<CacheBox>();
};

AmbientIdeal ideal_sum(const AmbientIdeal& a, const AmbientIdeal& b);
AmbientIdeal ideal_product(const AmbientIdeal& a, const AmbientIdeal& b);
// I^n with interreduction after each product step to keep generators small.
AmbientIdeal ideal_power(const AmbientIdeal& a, uint32_t n);

bool ideal_subset(const AmbientIdeal& a, const AmbientIdeal& b);
bool ideal_equal(const AmbientIdeal& a, const AmbientIdeal& b);

// {g : g*f in I} via the intersection-and-divide route; f = 0 is an error.
AmbientIdeal colon_ideal(const AmbientIdeal& I, const Polynomial& f);
// Intersection of (I : g) over the generators g of J.
AmbientIdeal colon_ideal_ideal(const AmbientIdeal& I, const AmbientIdeal& J);
AmbientIdeal ideal_intersection(const AmbientIdeal& I, const AmbientIdeal& J);

// Krull dimension of ambient/I by independent-set search on the leading-term
// ideal. The unit ideal yields the sentinel KRULL_DIM_UNIT.
inline constexpr int KRULL_DIM_UNIT = INT32_MIN;
int krull_dimension(const AmbientIdeal& I);

// Number of standard monomials (monomials outside the leading-term ideal);
// requires a zero-dimensional ideal.
uint64_t vspace_dimension(const AmbientIdeal& I);
// Standard monomials of weighted degree n, ascending under the ring order.
std::vector<Monomial> degree_slice_basis(const AmbientIdeal& I, int64_t degree);

// Drop generators expressible through the others; deterministic sweep by
// ascending degree then ring order.
std::vector<Polynomial> minimalize_generators(const RingPtr& ring,
                                              std::vector<Polynomial> gens);

// Monomial-set helpers shared by the staircase and Newton-polyhedron code.
std::vector<Monomial> minimal_monomials(std::vector<Monomial> ms);
// Counts lattice points under the staircase; nullopt when infinite.
std::optional<uint64_t> staircase_count(const std::vector<Monomial>& lead_gens,
                                        size_t nvars);

// Extension of R by one auxiliary elimination variable (last slot), with the
// matching dominant-block order, and transport in both directions.
struct ElimRing {
  RingPtr extended;
  MonomialOrder order;
};
ElimRing extend_with_aux(const RingPtr& ring);
Polynomial lift_to_aux(const Polynomial& f, const RingPtr& extended);
Polynomial drop_aux(const Polynomial& f, const RingPtr& base);

}  // namespace tcw
