#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "closure.hpp"

namespace tcw {

// conv(points) + the nonnegative orthant, cut out by facet inequalities
// w . a >= c with w >= 0 primitive integral. Built for <= 4 variables.
struct NewtonRegion {
  struct Facet {
    std::vector<int64_t> w;
    int64_t c = 0;
  };
  size_t nvars = 0;
  std::vector<Monomial> points;
  std::vector<Facet> facets;

  bool contains(const Monomial& m) const;
};

NewtonRegion newton_region(const std::vector<Monomial>& points, size_t nvars);

// Minimal monomial generators of the integral closure of a monomial ideal.
// Every output generator is re-verified against the definitional test
// (x^{k a} in I^k for some k <= k_max); a miss is an internal error.
AmbientIdeal monomial_integral_closure(const AmbientIdeal& I, uint32_t k_max = 4);

struct BrianconSkodaReport {
  uint32_t mu = 0;
  std::vector<Monomial> closure_generators;  // of I^mu
  std::vector<Monomial> violators;           // closure generators outside I
  bool holds = false;
};

// Checks closure(I^mu) inside I for a monomial ideal of a regular
// presentation, generator by generator.
BrianconSkodaReport briancon_skoda_check(const PresPtr& R,
                                         const std::vector<Polynomial>& gens);

struct ColonCaptureEntry {
  Polynomial gen;
  ClosureVerdict verdict;
};

struct ColonCaptureReport {
  std::vector<Polynomial> xs;
  uint32_t index = 0;
  std::vector<Polynomial> colon_generators;
  // Colon generators outside (x_1..x_i) + J, each with its hull-membership
  // verdict; colon capturing predicts none of them is OUT.
  std::vector<ColonCaptureEntry> outside;
  bool theorem_respected = false;
};

ColonCaptureReport colon_capture_report(const PresPtr& R, const std::vector<Polynomial>& xs,
                                        uint32_t index, const ClosureConfig& cfg = {});

struct MonomialColonReport {
  uint32_t t = 0;
  std::vector<Polynomial> colon_generators;
  std::vector<std::pair<Polynomial, ClosureVerdict>> checks;
  ClosureStatus worst = ClosureStatus::InProved;
};

// (x_0^t..x_d^t) : (x_0 x_1 .. x_d) against membership in (x_0^{t-1}..)*.
MonomialColonReport monomial_colon_check(const PresPtr& R, const std::vector<Polynomial>& xs,
                                         uint32_t t, const ClosureConfig& cfg = {});

struct MatherReport {
  std::vector<Polynomial> jacobian_generators;
  bool holds = false;
  uint64_t reduction_steps = 0;  // witness metadata from the membership run
  bool good_prime = true;        // p > deg f
};

// f^n in (partial derivatives of f) over a regular presentation.
MatherReport mather_check(const PresPtr& R, const Polynomial& f);

struct ProbeSample {
  std::vector<Polynomial> ideal;
  bool closed = false;
  std::vector<Polynomial> extra;  // hull generators beyond the plain ideal
};

struct ProbeReport {
  std::vector<ProbeSample> samples;
  bool counterexample_found = false;
};

// Hull sweeps over sample ideals; "no counterexample" is never a proof of
// F-regularity. The rational probe insists every sample is generated by a
// full verified parameter system.
ProbeReport f_regular_probe(const PresPtr& R,
                            const std::vector<std::vector<Polynomial>>& samples,
                            int64_t degree_bound, const ClosureConfig& cfg = {});
ProbeReport f_rational_probe(const PresPtr& R,
                             const std::vector<std::vector<Polynomial>>& samples,
                             int64_t degree_bound, const ClosureConfig& cfg = {});

}  // namespace tcw
