#include "crshadow/rational.hpp"

#include <limits>

namespace crshadow {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("rational overflow past 64 bits");
  return (std::int64_t)v;
}

}  // namespace

Rational Rational::make(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num = narrow(n);
  r.den = narrow(d);
  return r;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational abs(Rational r) { return r.num < 0 ? -r : r; }
Rational min(Rational a, Rational b) { return b < a ? b : a; }
Rational max(Rational a, Rational b) { return a < b ? b : a; }

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') {
    neg = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::size_t& p) -> __int128 {
    if (p >= text.size() || text[p] < '0' || text[p] > '9')
      throw std::invalid_argument("bad rational literal: " + text);
    __int128 v = 0;
    while (p < text.size() && text[p] >= '0' && text[p] <= '9') {
      v = v * 10 + (text[p] - '0');
      if (v > (__int128)std::numeric_limits<std::int64_t>::max() * 1000)
        throw std::overflow_error("rational literal too large: " + text);
      ++p;
    }
    return v;
  };
  __int128 whole = digits(pos);
  __int128 num = whole, den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = digits(pos);
  } else if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t start = pos;
    __int128 frac = digits(pos);
    for (std::size_t i = start; i < pos; ++i) den *= 10;
    num = whole * den + frac;
  }
  if (pos != text.size())
    throw std::invalid_argument("bad rational literal: " + text);
  return Rational::make(neg ? -num : num, den);
}

Rational pow2_inverse(int k) {
  if (k < 0 || k > 62) throw std::overflow_error("2^-k out of exact range");
  return Rational(1, (std::int64_t)1 << k);
}

}  // namespace crshadow
