#pragma once

#include <cstdint>

#include "error.hpp"

namespace tcw {

bool is_prime_u32(uint32_t n);

// Validated prime characteristic. Primes are capped below 2^31 so that
// products of two residues fit comfortably in 64 bits.
struct PrimeChar {
  uint32_t p = 0;

  PrimeChar() = default;
  explicit PrimeChar(uint32_t prime);

  bool operator==(const PrimeChar& o) const { return p == o.p; }
};

// Arithmetic context for one prime: Barrett-style reduction, no divisions
// in the hot path beyond the precomputed reciprocal.
class FpCtx {
 public:
  FpCtx() = default;
  explicit FpCtx(PrimeChar ch);

  uint32_t p() const { return p_; }

  uint32_t reduce_u64(uint64_t t) const {
    uint64_t q = static_cast<uint64_t>((static_cast<unsigned __int128>(t) * rcp_) >> 64);
    uint64_t r = t - q * p_;
    if (r >= p_) r -= p_;
    return static_cast<uint32_t>(r);
  }

  uint32_t reduce_i64(int64_t v) const {
    int64_t m = v % static_cast<int64_t>(p_);
    if (m < 0) m += p_;
    return static_cast<uint32_t>(m);
  }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }

  uint32_t sub(uint32_t a, uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }

  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }

  uint32_t mul(uint32_t a, uint32_t b) const {
    return reduce_u64(static_cast<uint64_t>(a) * b);
  }

  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t inv(uint32_t a) const;

 private:
  uint32_t p_ = 0;
  uint64_t rcp_ = 0;  // floor(2^64 / p)
};

// Scalar in F_p carrying its characteristic, for API-level arithmetic where
// operands may come from different rings and must be cross-checked.
struct Fp {
  uint32_t v = 0;
  uint32_t p = 0;

  Fp() = default;
  Fp(int64_t value, PrimeChar ch);

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp operator/(const Fp& o) const;
  Fp operator-() const;
  bool operator==(const Fp& o) const { return v == o.v && p == o.p; }
  bool is_zero() const { return v == 0; }

  Fp pow(uint64_t e) const;
  Fp frobenius(uint32_t e) const;  // v^(p^e); identity on the prime field
};

// Checked exponent helpers. Monomial exponents live in uint32_t; anything
// escaping that range raises ExponentOverflow rather than wrapping.
uint32_t checked_exp_add(uint32_t a, uint32_t b);
uint32_t checked_exp_mul(uint32_t a, uint64_t k);
uint64_t checked_pow_u64(uint32_t base, uint32_t e, uint64_t limit);

}  // namespace tcw
