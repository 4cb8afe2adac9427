#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ring_presentation.hpp"

namespace tcw {

enum class ClosureStatus { InProved, LikelyIn, OutEvidence, Undetermined };

const char* closure_status_name(ClosureStatus s);

// Knobs for the membership cascade. A zero k_power means "use p"; a zero
// colon_degree_cap picks max(6, 2*maxdeg(relations), maxdeg(gens)+2).
struct ClosureConfig {
  uint32_t e_max = 5;
  uint32_t k_power = 0;
  uint32_t stabilization_window = 2;
  uint32_t tail_start = 0;
  int64_t colon_degree_cap = 0;
  std::optional<Polynomial> asserted_test_element;
  uint64_t step_budget = 20'000'000;
};

// One row of a certificate table: does c * z^q land in the bracket power?
// `holds` is empty when the fallback Groebner run exhausted its budget.
struct CertificateRow {
  uint32_t e = 0;
  uint64_t q = 1;
  std::optional<bool> holds;
};

// Evidence that a candidate test element rejects z: c^k * z^{p^e} misses the
// bracket power at the recorded e (and therefore for every smaller k too).
struct OutFailure {
  Polynomial candidate;
  uint32_t k = 0;
  uint32_t e = 0;
};

struct ChainSlice {
  int64_t degree = 0;
  size_t dim = 0;
};

struct ClosureVerdict {
  ClosureStatus status = ClosureStatus::Undetermined;
  // "member", "briancon-skoda", "degree-bound", "certificate-stabilization",
  // "test-candidate-failure", "asserted-test-element" or "undetermined".
  std::string route;
  std::optional<Polynomial> certificate;
  uint32_t e_lo = 0, e_hi = 0;
  std::vector<OutFailure> failures;
  // Slice dimensions of the intersected colon chain at the last stage,
  // nonzero degrees only.
  std::vector<ChainSlice> chain;
  bool chain_stabilized = false;
  int64_t colon_degree_cap = 0;
  uint32_t tail_start = 0;
  std::vector<std::string> assumptions;
};

// I^{[p^e]} + J as an explicit ambient ideal (generator q-th powers plus the
// relations). No strategy shortcuts; callers wanting fast membership should
// go through tc_certificate_check / tc_membership instead.
AmbientIdeal bracket_power_lift(const PresPtr& R, const std::vector<Polynomial>& gens,
                                uint32_t e);

// Row-by-row check of c * z^{p^e} in bracket_power(I, e) for e in
// [e_lo, e_hi]. A certificate that is zero in R is rejected outright.
std::vector<CertificateRow> tc_certificate_check(const PresPtr& R,
                                                 const std::vector<Polynomial>& gens,
                                                 const Polynomial& z, const Polynomial& c,
                                                 uint32_t e_lo, uint32_t e_hi,
                                                 const ClosureConfig& cfg = {});

// The membership cascade: plain membership, the two Briancon-Skoda style
// shortcuts, colon-chain stabilization, then candidate-refutation.
ClosureVerdict tc_membership(const PresPtr& R, const std::vector<Polynomial>& gens,
                             const Polynomial& z, const ClosureConfig& cfg = {});

struct HullGenerator {
  Polynomial gen;
  ClosureVerdict verdict;
};

struct HullResult {
  std::vector<Polynomial> input;
  int64_t degree_bound = 0;
  std::vector<HullGenerator> generators;
  // True when the final sweep adjoined nothing; within the degree bound the
  // listed ideal is a fixed point of the sweep.
  bool fixed_point = false;
  uint32_t sweeps = 0;
};

// Fixed-point sweep adjoining every slice element whose verdict is IN or
// LIKELY_IN, degree by degree up to the bound.
HullResult tc_hull(const PresPtr& R, const std::vector<Polynomial>& gens,
                   int64_t degree_bound, const ClosureConfig& cfg = {});

// A hand-supplied finite extension witness: variable images into the target
// presentation and one coefficient per ideal generator.
struct PlusWitness {
  PresPtr target;
  std::vector<Polynomial> images;
  std::vector<Polynomial> coefficients;
};

// Verifies the map kills every relation of R (MapError names the violated
// one), then checks image(z) = sum coefficients[i] * image(gens[i]) in the
// target.
bool plus_closure_witness_check(const PresPtr& R, const std::vector<Polynomial>& gens,
                                const Polynomial& z, const PlusWitness& w);

// Certificate rows pushed through the quotient R -> R/(h). The certificate
// must survive: its image zero means CertificateKilled.
std::vector<CertificateRow> persistence_pushforward(const PresPtr& R,
                                                    const std::vector<Polynomial>& gens,
                                                    const Polynomial& z, const Polynomial& c,
                                                    const Polynomial& h, uint32_t e_lo,
                                                    uint32_t e_hi,
                                                    const ClosureConfig& cfg = {});

}  // namespace tcw
