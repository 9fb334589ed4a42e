#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "symstab/errors.hpp"

namespace symstab {

using i64 = long long;
using i128 = __int128;

namespace detail {

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i64 fit64(i128 v, const char* what) {
  if (v > i128(std::numeric_limits<i64>::max()) || v < i128(std::numeric_limits<i64>::min()))
    fail(Errc::Overflow, std::string(what) + " exceeds the exact 64-bit range");
  return static_cast<i64>(v);
}

}  // namespace detail

// Exact rational, canonical: den > 0 and gcd(|num|, den) = 1.  All arithmetic
// goes through 128-bit intermediates and fails loudly instead of wrapping.
struct Rat {
  i64 num = 0;
  i64 den = 1;

  static Rat make(i128 n, i128 d) {
    if (d == 0) fail(Errc::Validation, "rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = detail::gcd128(n, d);
    if (g == 0) g = 1;
    n /= g;
    d /= g;
    return Rat{detail::fit64(n, "rational numerator"), detail::fit64(d, "rational denominator")};
  }

  Rat operator+(const Rat& o) const {
    return make(i128(num) * o.den + i128(o.num) * den, i128(den) * o.den);
  }
  Rat operator-(const Rat& o) const {
    return make(i128(num) * o.den - i128(o.num) * den, i128(den) * o.den);
  }
  Rat operator*(const Rat& o) const { return make(i128(num) * o.num, i128(den) * o.den); }
  Rat operator/(const Rat& o) const {
    if (o.num == 0) fail(Errc::Validation, "rational division by zero");
    return make(i128(num) * o.den, i128(den) * o.num);
  }
  Rat operator-() const { return Rat{-num, den}; }

  bool operator==(const Rat&) const = default;
  std::strong_ordering operator<=>(const Rat& o) const {
    i128 l = i128(num) * o.den;
    i128 r = i128(o.num) * den;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// Exact rational reduced into [0, 1): a coordinate of the torsion group Q/Z.
// Canonical form makes equality structural and the additive order equal den.
struct RatMod1 {
  i64 num = 0;
  i64 den = 1;

  static RatMod1 make(i128 n, i128 d) {
    if (d == 0) fail(Errc::Validation, "torsion coordinate with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    n %= d;
    if (n < 0) n += d;
    i128 g = detail::gcd128(n, d);
    if (g == 0) g = 1;
    n /= g;
    d /= g;
    return RatMod1{detail::fit64(n, "torsion coordinate"), detail::fit64(d, "torsion coordinate")};
  }

  RatMod1 operator+(const RatMod1& o) const {
    return make(i128(num) * o.den + i128(o.num) * den, i128(den) * o.den);
  }
  RatMod1 operator-(const RatMod1& o) const {
    return make(i128(num) * o.den - i128(o.num) * den, i128(den) * o.den);
  }
  RatMod1 operator-() const { return make(-i128(num), den); }
  RatMod1 scaled(i64 t) const { return make(i128(t) * num, den); }

  i64 order() const { return den; }
  bool is_zero() const { return num == 0; }

  bool operator==(const RatMod1&) const = default;
  std::strong_ordering operator<=>(const RatMod1& o) const {
    i128 l = i128(num) * o.den;
    i128 r = i128(o.num) * den;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Wire form is "p/q" with q >= 1; zero prints as "0/1".  Parsing also
  // accepts a bare integer and negative numerators (reduced mod 1).
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  static RatMod1 parse(const std::string& s) {
    if (s.empty()) fail(Errc::Validation, "empty rational literal");
    auto parse_int = [](const std::string& part) -> i64 {
      if (part.empty()) fail(Errc::Validation, "malformed rational literal");
      std::size_t pos = 0;
      i64 v = 0;
      try {
        v = std::stoll(part, &pos);
      } catch (const std::exception&) {
        fail(Errc::Validation, "malformed rational literal '" + part + "'");
      }
      if (pos != part.size()) fail(Errc::Validation, "malformed rational literal '" + part + "'");
      return v;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) return make(parse_int(s), 1);
    i64 n = parse_int(s.substr(0, slash));
    i64 d = parse_int(s.substr(slash + 1));
    if (d == 0) fail(Errc::Validation, "rational literal with zero denominator");
    return make(n, d);
  }
};

inline i64 lcm_checked(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  i128 g = detail::gcd128(a, b);
  return detail::fit64(i128(a) / g * b, "lcm");
}

}  // namespace symstab
