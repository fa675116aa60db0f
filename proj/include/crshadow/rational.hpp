#pragma once
// Exact rational arithmetic on normalized 64-bit fractions.
// Intermediates run through __int128; anything that does not fit back into
// int64 after gcd reduction throws instead of wrapping. No floating point.

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace crshadow {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;  // invariant: den > 0, gcd(|num|, den) == 1

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  static Rational make(__int128 n, __int128 d);

  bool is_zero() const { return num == 0; }
  bool is_negative() const { return num < 0; }

  friend Rational operator+(Rational a, Rational b) {
    return make((__int128)a.num * b.den + (__int128)b.num * a.den,
                (__int128)a.den * b.den);
  }
  friend Rational operator-(Rational a, Rational b) {
    return make((__int128)a.num * b.den - (__int128)b.num * a.den,
                (__int128)a.den * b.den);
  }
  friend Rational operator*(Rational a, Rational b) {
    return make((__int128)a.num * b.num, (__int128)a.den * b.den);
  }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num == 0) throw std::domain_error("rational division by zero");
    return make((__int128)a.num * b.den, (__int128)a.den * b.num);
  }
  Rational operator-() const { return make(-(__int128)num, den); }
  Rational& operator+=(Rational o) { return *this = *this + o; }
  Rational& operator-=(Rational o) { return *this = *this - o; }
  Rational& operator*=(Rational o) { return *this = *this * o; }
  Rational& operator/=(Rational o) { return *this = *this / o; }

  friend bool operator==(Rational a, Rational b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(Rational a, Rational b) { return !(a == b); }
  friend bool operator<(Rational a, Rational b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator>(Rational a, Rational b) { return b < a; }
  friend bool operator<=(Rational a, Rational b) { return !(b < a); }
  friend bool operator>=(Rational a, Rational b) { return !(a < b); }

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, Rational r) {
    return os << r.str();
  }
};

Rational abs(Rational r);
Rational min(Rational a, Rational b);
Rational max(Rational a, Rational b);

// Accepts "p/q", plain integers, and decimal strings like "0.25" or "-1.5".
Rational parse_rational(const std::string& text);

// 2^-k as an exact rational; k is capped well inside int64 range.
Rational pow2_inverse(int k);

}  // namespace crshadow

template <>
struct std::hash<crshadow::Rational> {
  std::size_t operator()(const crshadow::Rational& r) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(r.num);
    return h ^ (std::hash<std::int64_t>{}(r.den) + 0x9e3779b97f4a7c15ULL +
                (h << 6) + (h >> 2));
  }
};
