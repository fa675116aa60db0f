#pragma once
// Finite representation of eventually periodic sequences: a prefix followed
// by a forever-repeated cycle. Canonical form is the unique minimal one
// (shortest prefix, primitive cycle) denoting the same infinite sequence;
// canonicalization never changes the sequence itself.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace crshadow {

template <class T>
struct Lasso {
  std::vector<T> prefix;
  std::vector<T> cycle;  // invariant: non-empty

  Lasso() = default;
  Lasso(std::vector<T> p, std::vector<T> c)
      : prefix(std::move(p)), cycle(std::move(c)) {
    if (cycle.empty()) throw std::invalid_argument("lasso with empty cycle");
  }

  const T& at(std::size_t k) const {
    if (k < prefix.size()) return prefix[k];
    return cycle[(k - prefix.size()) % cycle.size()];
  }
  std::size_t size() const { return prefix.size() + cycle.size(); }

  std::vector<T> unroll(std::size_t n) const {
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(at(k));
    return out;
  }

  // Reduce the cycle to its primitive period, then absorb any prefix tail
  // that duplicates the cycle (rotating the cycle right with each step).
  void canonicalize() {
    for (std::size_t p = 1; p < cycle.size(); ++p) {
      if (cycle.size() % p != 0) continue;
      bool rep = true;
      for (std::size_t k = p; k < cycle.size() && rep; ++k)
        rep = cycle[k] == cycle[k % p];
      if (rep) {
        cycle.resize(p);
        break;
      }
    }
    while (!prefix.empty() && prefix.back() == cycle.back()) {
      prefix.pop_back();
      cycle.insert(cycle.begin(), cycle.back());
      cycle.pop_back();
    }
  }

  Lasso canonical() const {
    Lasso c = *this;
    c.canonicalize();
    return c;
  }

  friend bool operator==(const Lasso& a, const Lasso& b) {
    Lasso ca = a.canonical(), cb = b.canonical();
    return ca.prefix == cb.prefix && ca.cycle == cb.cycle;
  }
  friend bool operator!=(const Lasso& a, const Lasso& b) { return !(a == b); }
  friend bool operator<(const Lasso& a, const Lasso& b) {
    Lasso ca = a.canonical(), cb = b.canonical();
    if (ca.prefix != cb.prefix) return ca.prefix < cb.prefix;
    return ca.cycle < cb.cycle;
  }
};

// Drops the head of the sequence: (x0, x1, ...) becomes (x1, x2, ...).
template <class T>
Lasso<T> shift_apply(const Lasso<T>& w) {
  Lasso<T> out = w;
  if (!out.prefix.empty()) {
    out.prefix.erase(out.prefix.begin());
  } else {
    out.cycle.push_back(out.cycle.front());
    out.cycle.erase(out.cycle.begin());
    out.canonicalize();
  }
  return out;
}

}  // namespace crshadow
