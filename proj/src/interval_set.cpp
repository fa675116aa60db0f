#include "crshadow/interval_set.hpp"

#include <algorithm>

namespace crshadow {
namespace {

// A cut is a rational with an infinitesimal offset: tag -1 sits just below
// the value, 0 at it, +1 just above. Lower bounds use tags {0,+1}, upper
// bounds {-1,0}; an interval is nonempty iff lower-cut <= upper-cut.
struct Cut {
  Rational v;
  int tag;
};

bool cut_lt(const Cut& a, const Cut& b) {
  if (a.v != b.v) return a.v < b.v;
  return a.tag < b.tag;
}
bool cut_le(const Cut& a, const Cut& b) { return !cut_lt(b, a); }

Cut lower_cut(const Interval& iv) { return {iv.lo, iv.locl ? 0 : 1}; }
Cut upper_cut(const Interval& iv) { return {iv.hi, iv.hicl ? 0 : -1}; }

// Successor in the cut order, as far as lower-bound tags can reach.
Cut bump(const Cut& c) { return {c.v, c.tag + 1}; }

Interval from_cuts(const Cut& lo, const Cut& hi) {
  return {lo.v, hi.v, lo.tag == 0, hi.tag == 0};
}

}  // namespace

bool Interval::nonempty() const {
  return cut_le(lower_cut(*this), upper_cut(*this));
}

bool Interval::contains(const Rational& x) const {
  Cut c{x, 0};
  return cut_le(lower_cut(*this), c) && cut_le(c, upper_cut(*this));
}

std::string Interval::str() const {
  if (lo == hi && locl && hicl) return "{" + lo.str() + "}";
  std::string s = locl ? "[" : "(";
  s += lo.str() + "," + hi.str();
  s += hicl ? "]" : ")";
  return s;
}

IntervalSet IntervalSet::of(std::vector<Interval> raw) {
  std::vector<Interval> kept;
  for (auto& iv : raw)
    if (iv.nonempty()) kept.push_back(iv);
  std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
    return cut_lt(lower_cut(a), lower_cut(b));
  });
  IntervalSet out;
  for (auto& iv : kept) {
    if (!out.comps.empty()) {
      Interval& last = out.comps.back();
      // Merge when iv starts no later than just past last's end; this fuses
      // overlaps and flag-complementary adjacencies like [a,b) u [b,c].
      if (cut_le(lower_cut(iv), bump(upper_cut(last)))) {
        if (cut_lt(upper_cut(last), upper_cut(iv)))
          last = from_cuts(lower_cut(last), upper_cut(iv));
        continue;
      }
    }
    out.comps.push_back(iv);
  }
  return out;
}

bool IntervalSet::contains(const Rational& x) const {
  for (auto& iv : comps)
    if (iv.contains(x)) return true;
  return false;
}

std::string IntervalSet::str() const {
  if (comps.empty()) return "{}";
  std::string s;
  for (size_t i = 0; i < comps.size(); i++) {
    if (i) s += " u ";
    s += comps[i].str();
  }
  return s;
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all = a.comps;
  all.insert(all.end(), b.comps.begin(), b.comps.end());
  return IntervalSet::of(std::move(all));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  for (auto& p : a.comps)
    for (auto& q : b.comps) {
      Cut lo = cut_lt(lower_cut(p), lower_cut(q)) ? lower_cut(q) : lower_cut(p);
      Cut hi = cut_lt(upper_cut(p), upper_cut(q)) ? upper_cut(p) : upper_cut(q);
      if (cut_le(lo, hi)) out.push_back(from_cuts(lo, hi));
    }
  return IntervalSet::of(std::move(out));
}

IntervalSet subtract(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  for (auto& p : a.comps) {
    // Sweep b across p, emitting the uncovered pieces.
    Cut lo = lower_cut(p);
    const Cut hi = upper_cut(p);
    for (auto& q : b.comps) {
      if (cut_lt(hi, lower_cut(q))) break;
      if (cut_lt(upper_cut(q), lo)) continue;
      if (cut_lt(lo, lower_cut(q))) {
        // Piece before q: [lo, just-below q's start].
        Cut end{q.lo, q.locl ? -1 : 0};
        if (cut_le(lo, end)) out.push_back(from_cuts(lo, end));
      }
      Cut next{q.hi, q.hicl ? 1 : 0};  // just past q's end
      if (cut_lt(lo, next)) lo = next;
      if (cut_lt(hi, lo)) break;
    }
    if (cut_le(lo, hi)) out.push_back(from_cuts(lo, hi));
  }
  return IntervalSet::of(std::move(out));
}

bool subset(const IntervalSet& a, const IntervalSet& b) {
  return subtract(a, b).is_empty();
}

IntervalSet affine_image(const IntervalSet& s, const Rational& a,
                         const Rational& b) {
  std::vector<Interval> out;
  const Rational zero{0, 1};
  for (auto& iv : s.comps) {
    if (a == zero) {
      out.push_back(Interval::point(b));
    } else if (zero < a) {
      out.push_back({a * iv.lo + b, a * iv.hi + b, iv.locl, iv.hicl});
    } else {
      out.push_back({a * iv.hi + b, a * iv.lo + b, iv.hicl, iv.locl});
    }
  }
  return IntervalSet::of(std::move(out));
}

IntervalSet strict_ball(const Rational& c, const Rational& eps,
                        const IntervalSet& domain) {
  IntervalSet ball;
  ball.comps.push_back(Interval::open(c - eps, c + eps));
  return intersect(ball, domain);
}

IntervalSet closed_ball(const Rational& c, const Rational& eps,
                        const IntervalSet& domain) {
  IntervalSet ball;
  ball.comps.push_back(Interval::closed(c - eps, c + eps));
  return intersect(ball, domain);
}

std::vector<Rational> endpoints(const IntervalSet& s) {
  std::vector<Rational> out;
  for (auto& iv : s.comps) {
    out.push_back(iv.lo);
    out.push_back(iv.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Rational> sample_points(const IntervalSet& s) {
  std::vector<Rational> out;
  for (auto& iv : s.comps) {
    out.push_back(iv.lo);
    out.push_back(iv.hi);
    out.push_back((iv.lo + iv.hi) / Rational{2, 1});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Rational> inf_dist(const IntervalSet& s, const Rational& x) {
  if (s.is_empty()) return std::nullopt;
  std::optional<Rational> best;
  for (auto& iv : s.comps) {
    Rational d;
    if (x < iv.lo)
      d = iv.lo - x;
    else if (iv.hi < x)
      d = x - iv.hi;
    else
      d = Rational{0, 1};
    if (!best || d < *best) best = d;
  }
  return best;
}

std::optional<Rational> sup_dist(const IntervalSet& s, const Rational& x) {
  if (s.is_empty()) return std::nullopt;
  std::optional<Rational> best;
  for (auto& iv : s.comps) {
    Rational d = max(abs(iv.lo - x), abs(iv.hi - x));
    if (!best || *best < d) best = d;
  }
  return best;
}

}  // namespace crshadow
