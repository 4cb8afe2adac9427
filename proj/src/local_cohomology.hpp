#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "closure.hpp"

namespace tcw {

// Class in top graded local cohomology, written as a fraction over the
// t-th powers of a full degree-one parameter system x_0..x_d. The degree
// bookkeeping is exact: deg = deg z - t*(d+1).
struct CechFraction {
  PresPtr S;
  Polynomial z;
  std::vector<Polynomial> xs;
  uint32_t t = 1;
  int64_t degree = 0;

  std::string render() const;
};

CechFraction lc_fraction(const PresPtr& S, const Polynomial& z, uint32_t t,
                         const std::vector<Polynomial>& xs);

enum class LCZeroStatus { Zero, NonzeroProved, NonzeroUpTo };

const char* lc_zero_status_name(LCZeroStatus s);

// Zero carries the witness shift s (x^s z lands in the lifted powers, with
// s = 0 on the Cohen-Macaulay fast path). NonzeroProved is exact and only
// issued on that fast path; NonzeroUpTo records the exhausted search bound.
struct LCZeroVerdict {
  LCZeroStatus status = LCZeroStatus::NonzeroUpTo;
  uint32_t s = 0;
  uint32_t bound = 0;
  std::string method;
};

LCZeroVerdict lc_zero_test(const CechFraction& eta, uint32_t s_max);

CechFraction lc_frobenius(const CechFraction& eta, uint32_t e);

// Fact-level test: eta lies in 0* exactly when its numerator lies in the
// tight closure of the powered parameter ideal.
ClosureVerdict zero_star_test(const CechFraction& eta, const ClosureConfig& cfg = {});

// a-invariant from the graded series, gated behind a Cohen-Macaulay
// certificate: either a regular presentation, or a full parameter system
// that passes the regular-sequence check.
int64_t a_invariant(const PresPtr& S, const std::vector<Polynomial>& xs = {});

struct FujitaClassReport {
  Polynomial numerator;
  std::optional<Polynomial> multiplier;  // degree n-d-1, nonzero multiple found
  std::string multiplier_method;
  std::optional<ClosureVerdict> step_one;  // fallback when every multiple dies
  bool consistent = false;
};

struct FujitaReport {
  int64_t n = 0;
  uint32_t t = 0;
  std::vector<FujitaClassReport> classes;
  bool all_consistent = true;
};

// Probes the degree -n part of top local cohomology: every class should
// admit a nonzero multiple of degree -(d+1), and any class with all
// multiples zero must at least avoid OUT in the 0* test.
FujitaReport fujita_probe(const PresPtr& S, const std::vector<Polynomial>& xs, int64_t n,
                          uint32_t t, const ClosureConfig& cfg = {});

struct KodairaSlice {
  int64_t degree = 0;
  uint64_t checked = 0;
  std::vector<Monomial> violations;
};

struct KodairaReport {
  std::vector<Polynomial> xs;
  int64_t degree_sum = 0;  // D, the slice cutoff
  int64_t a_inv = 0;
  std::vector<KodairaSlice> slices;
  bool holds = false;  // heuristic: hulls are bound-limited
};

// Slice-wise containment of (x_0..x_k)* inside the sum of the hulls with
// one x_i omitted, below the degree sum D.
KodairaReport kodaira_tc_check(const PresPtr& S, const std::vector<Polynomial>& xs,
                               int64_t degree_bound, const ClosureConfig& cfg = {});

}  // namespace tcw
