#include "crshadow/planar_relation.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace crshadow {
namespace {

const Rational kZero{0, 1};
const Rational kOne{1, 1};

bool degenerate(const Interval& iv) { return iv.lo == iv.hi; }

bool closed_iv(const Interval& iv) { return iv.locl && iv.hicl; }

bool closed_set(const IntervalSet& s) {
  for (auto& iv : s.comps)
    if (!closed_iv(iv)) return false;
  return true;
}

// Containment of closed intervals.
bool iv_subset(const Interval& p, const Interval& q) {
  return !(p.lo < q.lo) && !(q.hi < p.hi);
}

IntervalSet as_set(const Interval& iv) { return IntervalSet::of({iv}); }

// Image of a closed interval under x -> a*x + b.
Interval affine_iv(const Interval& iv, const Rational& a, const Rational& b) {
  if (a == kZero) return Interval::point(b);
  Rational u = a * iv.lo + b, v = a * iv.hi + b;
  return kZero < a ? Interval::closed(u, v) : Interval::closed(v, u);
}

std::tuple<int, Rational, Rational, Rational, Rational> order_key(
    const Primitive& p) {
  if (p.graph) return {1, p.xs.lo, p.xs.hi, p.a, p.b};
  return {0, p.xs.lo, p.xs.hi, p.ys.lo, p.ys.hi};
}

// p inside q, for canonical (classified) primitives.
bool prim_subset(const Primitive& p, const Primitive& q) {
  if (!p.graph && !q.graph)
    return iv_subset(p.xs, q.xs) && iv_subset(p.ys, q.ys);
  if (p.graph && q.graph)
    return p.a == q.a && p.b == q.b && iv_subset(p.xs, q.xs);
  if (p.graph)
    return iv_subset(p.xs, q.xs) && iv_subset(affine_iv(p.xs, p.a, p.b), q.ys);
  // Product inside a graph: only single points can fit.
  return degenerate(p.xs) && degenerate(p.ys) && q.contains(p.xs.lo, p.ys.lo);
}

std::vector<Primitive> classify(std::vector<Primitive> prims) {
  for (auto& p : prims) {
    if (!p.graph) continue;
    if (p.a == kZero) {
      p = Primitive::box(p.xs, Interval::point(p.b));
    } else if (degenerate(p.xs)) {
      p = Primitive::point(p.xs.lo, p.a * p.xs.lo + p.b);
    } else if (p.a == kOne && p.b == kZero) {
      // canonical diag form is just the graph with a=1, b=0; nothing to do
    }
  }
  return prims;
}

std::vector<Primitive> merge_families(std::vector<Primitive> prims) {
  std::vector<Primitive> out;
  // Products sharing a y-side merge along x, then the dual pass; graphs
  // sharing coefficients merge along x.
  std::map<std::pair<Rational, Rational>, IntervalSet> by_ys, by_a_b;
  for (auto& p : prims) {
    if (p.graph) {
      auto& acc = by_a_b[{p.a, p.b}];
      acc = unite(acc, as_set(p.xs));
    } else {
      auto& acc = by_ys[{p.ys.lo, p.ys.hi}];
      acc = unite(acc, as_set(p.xs));
    }
  }
  std::map<std::pair<Rational, Rational>, IntervalSet> by_xs;
  for (auto& [ys, xset] : by_ys)
    for (auto& iv : xset.comps) {
      auto& acc = by_xs[{iv.lo, iv.hi}];
      acc = unite(acc, as_set(Interval::closed(ys.first, ys.second)));
    }
  for (auto& [xs, yset] : by_xs)
    for (auto& iv : yset.comps)
      out.push_back(Primitive::box(Interval::closed(xs.first, xs.second), iv));
  for (auto& [ab, xset] : by_a_b)
    for (auto& iv : xset.comps)
      out.push_back(Primitive::affine(iv, ab.first, ab.second));
  return out;
}

std::vector<Primitive> canonical_prims(std::vector<Primitive> prims) {
  prims = classify(std::move(prims));
  for (int pass = 0; pass < 16; pass++) {
    auto merged = classify(merge_families(prims));
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    if (merged == prims) break;
    prims = std::move(merged);
  }
  // Drop pieces dominated by another primitive.
  std::vector<Primitive> kept;
  for (size_t i = 0; i < prims.size(); i++) {
    bool dominated = false;
    for (size_t j = 0; j < prims.size() && !dominated; j++)
      if (i != j && prim_subset(prims[i], prims[j]) &&
          !(prim_subset(prims[j], prims[i]) && j > i))
        dominated = true;
    if (!dominated) kept.push_back(prims[i]);
  }
  return kept;
}

}  // namespace

Primitive Primitive::box(Interval I, Interval J) {
  Primitive p;
  p.graph = false;
  p.xs = I;
  p.ys = J;
  return p;
}
Primitive Primitive::vline(Rational c, Interval J) {
  return box(Interval::point(c), J);
}
Primitive Primitive::hline(Interval I, Rational c) {
  return box(I, Interval::point(c));
}
Primitive Primitive::point(Rational x, Rational y) {
  return box(Interval::point(x), Interval::point(y));
}
Primitive Primitive::diag(Interval I) { return affine(I, kOne, kZero); }
Primitive Primitive::affine(Interval I, Rational a, Rational b) {
  Primitive p;
  p.graph = true;
  p.xs = I;
  p.a = a;
  p.b = b;
  return p;
}

bool Primitive::contains(const Rational& x, const Rational& y) const {
  if (!xs.contains(x)) return false;
  if (graph) return y == a * x + b;
  return ys.contains(y);
}

std::string Primitive::kind() const {
  if (graph) {
    if (a == kZero) return "hline";
    if (degenerate(xs)) return "point";
    if (a == kOne && b == kZero) return "diag";
    return "affine";
  }
  if (degenerate(xs) && degenerate(ys)) return "point";
  if (degenerate(xs)) return "vline";
  if (degenerate(ys)) return "hline";
  return "box";
}

std::string Primitive::str() const {
  std::string k = kind();
  if (k == "point") {
    Rational y = graph ? a * xs.lo + b : ys.lo;
    return "point(" + xs.lo.str() + "," + y.str() + ")";
  }
  if (graph) {
    if (k == "diag") return "diag" + xs.str();
    return "affine(" + xs.str() + "," + a.str() + "," + b.str() + ")";
  }
  if (k == "vline") return "vline(" + xs.lo.str() + "," + ys.str() + ")";
  if (k == "hline") return "hline(" + xs.str() + "," + ys.lo.str() + ")";
  return "box(" + xs.str() + "x" + ys.str() + ")";
}

bool Primitive::operator==(const Primitive& o) const {
  return order_key(*this) == order_key(o);
}
bool Primitive::operator<(const Primitive& o) const {
  return order_key(*this) < order_key(o);
}

PlanarRelation PlanarRelation::make(IntervalSet domain,
                                    std::vector<Primitive> prims) {
  if (domain.is_empty()) throw FlaggedSystem("empty domain");
  if (!closed_set(domain)) throw FlaggedSystem("domain must be closed");
  if (prims.empty()) throw FlaggedSystem("empty relation");
  for (auto& p : prims) {
    if (!closed_iv(p.xs) || !p.xs.nonempty())
      throw FlaggedSystem("primitive x-side must be a nonempty closed piece");
    if (!p.graph && (!closed_iv(p.ys) || !p.ys.nonempty()))
      throw FlaggedSystem("primitive y-side must be a nonempty closed piece");
    Interval yside = p.graph ? affine_iv(p.xs, p.a, p.b) : p.ys;
    if (!subset(as_set(p.xs), domain) || !subset(as_set(yside), domain))
      throw FlaggedSystem("primitive escapes the domain");
  }
  PlanarRelation r;
  r.domain = std::move(domain);
  r.prims = canonical_prims(std::move(prims));
  return r;
}

bool PlanarRelation::member(const Rational& x, const Rational& y) const {
  for (auto& p : prims)
    if (p.contains(x, y)) return true;
  return false;
}

IntervalSet image(const PlanarRelation& r, const IntervalSet& s) {
  IntervalSet out;
  for (auto& p : r.prims) {
    IntervalSet hit = intersect(s, as_set(p.xs));
    if (hit.is_empty()) continue;
    out = unite(out, p.graph ? affine_image(hit, p.a, p.b) : as_set(p.ys));
  }
  return out;
}

IntervalSet preimage_exists(const PlanarRelation& r, const IntervalSet& s) {
  IntervalSet out;
  for (auto& p : r.prims) {
    if (p.graph) {
      if (p.a == kZero) {
        if (s.contains(p.b)) out = unite(out, as_set(p.xs));
      } else {
        Rational inv_a = kOne / p.a;
        IntervalSet pre = affine_image(s, inv_a, kZero - p.b * inv_a);
        out = unite(out, intersect(pre, as_set(p.xs)));
      }
    } else {
      if (!intersect(s, as_set(p.ys)).is_empty())
        out = unite(out, as_set(p.xs));
    }
  }
  return out;
}

IntervalSet nd_set(const PlanarRelation& r) {
  return preimage_exists(r, r.domain);
}

IntervalSet universal_preimage(const PlanarRelation& r, const IntervalSet& s) {
  IntervalSet bad = preimage_exists(r, subtract(r.domain, s));
  return subtract(nd_set(r), bad);
}

LegalResult legal_iterate(const PlanarRelation& r, int maxIter) {
  LegalResult res;
  res.set = nd_set(r);
  for (int m = 1; m <= maxIter; m++) {
    IntervalSet next = intersect(res.set, preimage_exists(r, res.set));
    res.iterations = m;
    if (next == res.set) {
      res.converged = true;
      break;
    }
    res.set = std::move(next);
  }
  return res;
}

PlanarRelation restrict_to(const PlanarRelation& r, const IntervalSet& a) {
  if (!closed_set(a)) throw FlaggedSystem("restriction set must be closed");
  std::vector<Primitive> out;
  for (auto& p : r.prims) {
    if (p.graph) {
      IntervalSet xs;
      if (p.a == kZero) {
        xs = a.contains(p.b) ? intersect(as_set(p.xs), a) : IntervalSet{};
      } else {
        Rational inv_a = kOne / p.a;
        IntervalSet pre = affine_image(a, inv_a, kZero - p.b * inv_a);
        xs = intersect(intersect(as_set(p.xs), a), pre);
      }
      for (auto& iv : xs.comps) out.push_back(Primitive::affine(iv, p.a, p.b));
    } else {
      IntervalSet xs = intersect(as_set(p.xs), a);
      IntervalSet ys = intersect(as_set(p.ys), a);
      for (auto& ix : xs.comps)
        for (auto& iy : ys.comps) out.push_back(Primitive::box(ix, iy));
    }
  }
  return PlanarRelation::make(r.domain, std::move(out));
}

PlanarRelation compose(const PlanarRelation& g, const PlanarRelation& h) {
  if (!(g.domain == h.domain)) throw FlaggedSystem("domain mismatch");
  std::vector<Primitive> out;
  for (auto& p1 : h.prims)
    for (auto& p2 : g.prims) {
      if (!p1.graph && !p2.graph) {
        IntervalSet mid = intersect(as_set(p1.ys), as_set(p2.xs));
        if (!mid.is_empty()) out.push_back(Primitive::box(p1.xs, p2.ys));
      } else if (!p1.graph && p2.graph) {
        IntervalSet mid = intersect(as_set(p1.ys), as_set(p2.xs));
        for (auto& iv : mid.comps)
          out.push_back(Primitive::box(p1.xs, affine_iv(iv, p2.a, p2.b)));
      } else if (p1.graph && !p2.graph) {
        IntervalSet xs;
        if (p1.a == kZero) {
          xs = p2.xs.contains(p1.b) ? as_set(p1.xs) : IntervalSet{};
        } else {
          Rational inv_a = kOne / p1.a;
          IntervalSet pre =
              affine_image(as_set(p2.xs), inv_a, kZero - p1.b * inv_a);
          xs = intersect(as_set(p1.xs), pre);
        }
        for (auto& iv : xs.comps) out.push_back(Primitive::box(iv, p2.ys));
      } else {
        if (p1.a == kZero) {
          if (p2.xs.contains(p1.b))
            out.push_back(Primitive::box(
                p1.xs, Interval::point(p2.a * p1.b + p2.b)));
        } else {
          Rational inv_a = kOne / p1.a;
          IntervalSet pre =
              affine_image(as_set(p2.xs), inv_a, kZero - p1.b * inv_a);
          IntervalSet xs = intersect(as_set(p1.xs), pre);
          for (auto& iv : xs.comps)
            out.push_back(
                Primitive::affine(iv, p2.a * p1.a, p2.a * p1.b + p2.b));
        }
      }
    }
  return PlanarRelation::make(g.domain, std::move(out));
}

PlanarRelation planar_power(const PlanarRelation& r, int k) {
  if (k < 1) throw FlaggedSystem("power must be >= 1");
  PlanarRelation acc = r;
  for (int m = 2; m <= k; m++) acc = compose(r, acc);
  return acc;
}

bool same_relation(const PlanarRelation& a, const PlanarRelation& b) {
  return a.domain == b.domain && a.prims == b.prims;
}

}  // namespace crshadow
