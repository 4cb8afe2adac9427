#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ideal.hpp"

namespace tcw {

// Graded quotient R = F_p[x_1..x_n]/J. The ambient ring and the relation
// ideal are immutable; Groebner bases of J under the orders we try are
// cached inside the relation ideal.
class RingPresentation {
 public:
  static std::shared_ptr<const RingPresentation> present(RingPtr ring,
                                                         std::vector<Polynomial> relations,
                                                         bool asserted_domain,
                                                         std::string name = "");

  const RingPtr& ambient() const { return ring_; }
  const AmbientIdeal& relations() const { return relations_; }
  bool asserted_domain() const { return domain_; }
  const std::string& name() const { return name_; }
  // Krull dimension of the quotient.
  int dim() const { return dim_; }
  bool is_regular_presentation() const { return relations_.generators().empty(); }

  std::shared_ptr<const GroebnerBasis> relations_basis() const {
    return relations_.basis();
  }
  std::shared_ptr<const GroebnerBasis> relations_basis(const MonomialOrder& order) const {
    return relations_.basis(order);
  }

  // Canonical representative modulo J.
  Polynomial reduce(const Polynomial& f) const;
  bool is_zero_in_quotient(const Polynomial& f) const { return reduce(f).is_zero(); }

  // Search variable priorities for a grevlex order under which every leading
  // term of J's basis is coprime to every one of the given monomials; this
  // makes {monomials^[q]} + basis(J) a Groebner basis for free.
  std::optional<std::pair<MonomialOrder, std::shared_ptr<const GroebnerBasis>>>
  coprime_priority_basis(const std::vector<Monomial>& monomials) const;

  // Nonzero elements of the Jacobian ideal of the presentation: size-(n-d)
  // minors reduced mod J, monic, deduplicated, ascending degree, capped.
  std::vector<Polynomial> jacobian_candidates() const;

 private:
  RingPtr ring_;
  AmbientIdeal relations_;
  bool domain_ = false;
  int dim_ = 0;
  std::string name_;
};

using PresPtr = std::shared_ptr<const RingPresentation>;

// Element of the quotient, stored by its canonical representative.
struct QuotientElement {
  PresPtr pres;
  Polynomial rep;

  bool operator==(const QuotientElement& o) const { return rep == o.rep; }
};

QuotientElement make_element(const PresPtr& R, const Polynomial& f);

// Lift of an ideal of R: generators plus the relations.
AmbientIdeal lift_with_relations(const PresPtr& R, const std::vector<Polynomial>& gens);

// True iff krull_dimension(J + lifted xs) = dim R - count.
bool is_parameter_system(const PresPtr& R, const std::vector<Polynomial>& xs);

// Per-index report: colon((x_1..x_i) + J, x_{i+1}) contained in (x_1..x_i)+J.
std::vector<bool> regular_sequence_check(const PresPtr& R, const std::vector<Polynomial>& xs);

// Integer-coefficient presentations, reduced to per-prime fibers.
struct IntRelation {
  std::vector<std::pair<int64_t, Monomial>> terms;
  std::string source;  // as written in the script, for skip messages
};

struct IntPresentation {
  std::vector<std::string> vars;
  std::vector<int64_t> weights;
  std::vector<IntRelation> relations;
  bool asserted_domain = false;
  std::string name;
};

struct ModelFiber {
  uint32_t prime = 0;
  bool skipped = false;
  std::string skip_reason;
  bool jacobian_degenerate = false;  // retained but flagged
  PresPtr presentation;
};

struct ModelFamily {
  IntPresentation source;
  std::vector<ModelFiber> fibers;
};

ModelFamily reduce_model_family(const IntPresentation& pres,
                                const std::vector<uint32_t>& primes);

}  // namespace tcw
