#pragma once

#include <cstdint>
#include <vector>

#include "rational.hpp"
#include "ring_presentation.hpp"

namespace tcw {

// Hilbert-Kunz rows: length of R/I^{[q]} with the q^d-normalized column.
struct HKRow {
  uint32_t e = 0;
  uint64_t q = 1;
  uint64_t length = 0;
  Rat normalized;
};

struct HKTable {
  std::vector<Polynomial> ideal;
  int dim = 0;
  std::vector<HKRow> rows;
  // |normalized(e_max) - normalized(e_max - 1)|, the reported Cauchy gap;
  // zero when fewer than two rows.
  Rat last_delta;
};

HKTable hk_table(const PresPtr& R, const std::vector<Polynomial>& gens, uint32_t e_max);

// Hilbert-Samuel rows: length of R/I^n with d! * length / n^d.
struct HSRow {
  uint32_t n = 1;
  uint64_t length = 0;
  Rat normalized;
};

struct HSTable {
  std::vector<Polynomial> ideal;
  int dim = 0;
  std::vector<HSRow> rows;
};

HSTable hs_table(const PresPtr& R, const std::vector<Polynomial>& gens, uint32_t n_max);

struct HKCompareRow {
  uint32_t e = 0;
  uint64_t q = 1;
  uint64_t length_small = 0;
  uint64_t length_big = 0;
  bool equal = false;
};

struct HKCompareTable {
  std::vector<HKCompareRow> rows;
  bool all_equal = false;
};

// Rows of HK lengths for I inside I_bigger; NotNested unless I is contained
// in I_bigger modulo the relations.
HKCompareTable hk_compare(const PresPtr& R, const std::vector<Polynomial>& gens,
                          const std::vector<Polynomial>& bigger_gens, uint32_t e_max);

// Numerator coefficients of the graded Hilbert series of R over the
// denominator prod_i (1 - t^{w_i}), computed from the leading-term ideal of
// the relations by the standard colon recursion. Index = degree.
std::vector<int64_t> hilbert_numerator(const PresPtr& R);

// deg(numerator) - sum(weights). No Cohen-Macaulay certification happens
// here; callers owning a certified parameter system may read this as the
// a-invariant.
int64_t a_invariant_from_series(const PresPtr& R);

}  // namespace tcw
