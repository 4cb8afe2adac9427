#pragma once

#include <cstdint>
#include <cstdio>
#include <numeric>
#include <string>

#include "error.hpp"

namespace tcw {

// Exact rational with 64-bit parts, reduced, positive denominator. Table
// columns like length/q^d stay far below the overflow guard at desk scale.
struct Rat {
  int64_t num = 0;
  int64_t den = 1;

  Rat() = default;
  Rat(int64_t n, int64_t d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw Error(ErrorCode::ExponentOverflow, "rational arithmetic overflow");
    return static_cast<int64_t>(v);
  }

  Rat operator+(const Rat& o) const {
    __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
    __int128 d = static_cast<__int128>(den) * o.den;
    return Rat(checked(n), checked(d));
  }
  Rat operator-(const Rat& o) const { return *this + Rat(-o.num, o.den); }
  Rat operator*(const Rat& o) const {
    __int128 n = static_cast<__int128>(num) * o.num;
    __int128 d = static_cast<__int128>(den) * o.den;
    return Rat(checked(n), checked(d));
  }
  Rat operator/(const Rat& o) const {
    if (o.num == 0) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
    __int128 n = static_cast<__int128>(num) * o.den;
    __int128 d = static_cast<__int128>(den) * o.num;
    return Rat(checked(n), checked(d));
  }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
  }

  // Exact text form: "3/2", or just "3" when integral.
  std::string render_exact() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Six significant digits, always with a decimal point. Display only; no
  // decision reads this back.
  std::string render_decimal() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", static_cast<double>(num) / static_cast<double>(den));
    std::string s(buf);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
      s += ".0";
    return s;
  }
};

}  // namespace tcw
