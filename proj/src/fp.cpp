#include "fp.hpp"

namespace tcw {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t q : {2u, 3u, 5u, 7u}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin: bases 2, 3, 5, 7 cover everything below
  // 3,215,031,751, which exceeds the 2^31 cap on characteristics.
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimeChar::PrimeChar(uint32_t prime) : p(prime) {
  if (prime >= (1u << 31))
    throw Error(ErrorCode::InvalidPrime, "characteristic must be below 2^31");
  if (!is_prime_u32(prime))
    throw Error(ErrorCode::InvalidPrime, std::to_string(prime) + " is not prime");
}

FpCtx::FpCtx(PrimeChar ch) : p_(ch.p) {
  rcp_ = static_cast<uint64_t>((static_cast<unsigned __int128>(1) << 64) / p_);
}

uint32_t FpCtx::pow(uint32_t a, uint64_t e) const {
  uint32_t r = p_ == 1 ? 0 : 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint32_t FpCtx::inv(uint32_t a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return pow(a, p_ - 2);
}

Fp::Fp(int64_t value, PrimeChar ch) : p(ch.p) {
  int64_t m = value % static_cast<int64_t>(ch.p);
  if (m < 0) m += ch.p;
  v = static_cast<uint32_t>(m);
}

namespace {
void check_char(const Fp& a, const Fp& b) {
  if (a.p != b.p)
    throw Error(ErrorCode::CharMismatch,
                "operands live in F_" + std::to_string(a.p) + " and F_" + std::to_string(b.p));
}
}  // namespace

Fp Fp::operator+(const Fp& o) const {
  check_char(*this, o);
  Fp r;
  r.p = p;
  uint32_t s = v + o.v;
  r.v = s >= p ? s - p : s;
  return r;
}

Fp Fp::operator-(const Fp& o) const {
  check_char(*this, o);
  Fp r;
  r.p = p;
  r.v = v >= o.v ? v - o.v : v + p - o.v;
  return r;
}

Fp Fp::operator*(const Fp& o) const {
  check_char(*this, o);
  Fp r;
  r.p = p;
  r.v = static_cast<uint32_t>(static_cast<uint64_t>(v) * o.v % p);
  return r;
}

Fp Fp::operator/(const Fp& o) const {
  check_char(*this, o);
  if (o.v == 0) throw Error(ErrorCode::DivisionByZero, "division by zero scalar");
  FpCtx ctx{PrimeChar{p}};
  Fp r;
  r.p = p;
  r.v = ctx.mul(v, ctx.inv(o.v));
  return r;
}

Fp Fp::operator-() const {
  Fp r;
  r.p = p;
  r.v = v == 0 ? 0 : p - v;
  return r;
}

Fp Fp::pow(uint64_t e) const {
  FpCtx ctx{PrimeChar{p}};
  Fp r;
  r.p = p;
  r.v = ctx.pow(v, e);
  return r;
}

Fp Fp::frobenius(uint32_t) const {
  // a^(p^e) = a for a in the prime field.
  return *this;
}

uint32_t checked_exp_add(uint32_t a, uint32_t b) {
  uint64_t s = static_cast<uint64_t>(a) + b;
  if (s > 0x7fffffffu)
    throw Error(ErrorCode::ExponentOverflow, "exponent sum exceeds supported range");
  return static_cast<uint32_t>(s);
}

uint32_t checked_exp_mul(uint32_t a, uint64_t k) {
  uint64_t s = static_cast<uint64_t>(a) * k;
  if (s > 0x7fffffffu)
    throw Error(ErrorCode::ExponentOverflow, "exponent product exceeds supported range");
  return static_cast<uint32_t>(s);
}

uint64_t checked_pow_u64(uint32_t base, uint32_t e, uint64_t limit) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) {
    r *= base;
    if (r > limit)
      throw Error(ErrorCode::ExponentOverflow, "p^e exceeds supported range");
  }
  return r;
}

}  // namespace tcw
