// ideal.hpp
//
// Monomial ideal algebra in the homogeneous coordinates of the model:
// minimal staircase generators, Newton polyhedra, integral closure, and
// Howald-style multiplier ideals.
//
// Two backing representations keep desk-scale runs exact AND feasible:
//   - explicit minimal generators (an antichain in N^n);
//   - a "Howald region": the up-set of lattice points v with v + (1,..,1)
//     strictly inside a scaled Newton polyhedron. Membership is a few facet
//     tests, so asymptotic multiplier ideals of large degrees never
//     materialize; generators are extracted lazily under a cap.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "oklab/cone.hpp"
#include "oklab/core.hpp"
#include "oklab/errors.hpp"
#include "oklab/expvec.hpp"
#include "oklab/polytope.hpp"
#include "oklab/series.hpp"

namespace oklab {

struct IdealLimits {
  size_t max_generators = 2'000'000;  // materialization cap
};

inline IdealLimits& ideal_limits() {
  static IdealLimits limits;
  return limits;
}

/// conv(points) + nonnegative orthant, by facets <a, x> >= b (a >= 0) plus
/// the coordinate bounds, with the generating points kept for containment
/// tests (their hull spans the compact part).
struct NewtonRegion {
  size_t nvars = 0;
  std::vector<std::pair<IntVec, Rational>> facets;  // <a, x> >= b
  std::vector<QVec> span_points;                    // generating points

  bool contains(const QVec& x) const {
    for (const auto& [a, b] : facets) {
      Rational s = 0;
      for (size_t i = 0; i < nvars; ++i) s += Rational(a[i]) * x[i];
      if (s < b) return false;
    }
    return true;
  }

  bool contains_strictly(const QVec& x) const {
    for (size_t i = 0; i < nvars; ++i)
      if (x[i] <= 0) return false;
    for (const auto& [a, b] : facets) {
      bool trivial = true;  // facets with a = 0..0 and b <= 0 carry nothing
      for (const auto& c : a)
        if (c != 0) trivial = false;
      if (trivial) continue;
      Rational s = 0;
      for (size_t i = 0; i < nvars; ++i) s += Rational(a[i]) * x[i];
      if (s <= b) return false;
    }
    return true;
  }

  /// Machine-integer facet data for hot membership loops; empty when any
  /// coefficient overflows the fast range.
  struct IntFacet {
    std::vector<std::int64_t> a;
    std::int64_t num, den;
  };
  std::vector<IntFacet> int_facets() const {
    constexpr std::int64_t cap = 1'000'000'000;
    std::vector<IntFacet> out;
    for (const auto& [a, b] : facets) {
      IntFacet f;
      f.a.resize(nvars);
      for (size_t i = 0; i < nvars; ++i) {
        if (int_abs(a[i]) > cap) return {};
        f.a[i] = static_cast<std::int64_t>(a[i]);
      }
      if (int_abs(num(b)) > cap || den(b) > cap) return {};
      f.num = static_cast<std::int64_t>(num(b));
      f.den = static_cast<std::int64_t>(den(b));
      out.push_back(std::move(f));
    }
    return out;
  }

  NewtonRegion scaled(const Rational& c) const {
    NewtonRegion out;
    out.nvars = nvars;
    out.facets = facets;
    for (auto& [a, b] : out.facets) b *= c;
    out.span_points = span_points;
    for (auto& p : out.span_points)
      for (auto& x : p) x *= c;
    return out;
  }

  /// Region containment: the span points decide it, since both recession
  /// cones are the orthant.
  bool subset_of(const NewtonRegion& other) const {
    for (const auto& p : span_points)
      if (!other.contains(p)) return false;
    return true;
  }

  bool equals(const NewtonRegion& other) const {
    return subset_of(other) && other.subset_of(*this);
  }

  /// Componentwise ceiling of the span maximum; minimal generators of the
  /// associated up-sets live inside this box.
  ExpVec corner_box() const {
    ExpVec box(nvars, 0);
    for (const auto& p : span_points)
      for (size_t i = 0; i < nvars; ++i)
        box[i] = std::max(box[i], static_cast<std::int64_t>(ceil_rat(p[i])));
    return box;
  }
};

/// Newton polyhedron of a point set: lift the points to height 1, add the
/// coordinate rays at height 0, and read facets off the cone hull.
inline NewtonRegion newton_region_of_points(const std::vector<ExpVec>& pts, size_t nvars) {
  if (pts.empty()) throw EmptyInput("newton_region_of_points: no points");
  NewtonRegion out;
  out.nvars = nvars;
  std::vector<ExpVec> gens;
  ExpSet dedup(pts.begin(), pts.end());
  for (const auto& p : extreme_points(dedup)) {
    ExpVec lifted(p);
    lifted.push_back(1);
    gens.push_back(std::move(lifted));
    out.span_points.push_back(to_qvec(p));
  }
  for (size_t j = 0; j < nvars; ++j) {
    ExpVec ray(nvars + 1, 0);
    ray[j] = 1;
    gens.push_back(std::move(ray));
  }
  PolyCone cone = cone_from_generators(gens);
  for (const auto& h : cone.halfspaces) {
    IntVec a(h.begin(), h.begin() + nvars);
    bool zero = std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
    Rational b = -Rational(h[nvars]);
    if (zero && b <= 0) continue;  // vacuous
    out.facets.push_back({std::move(a), b});
  }
  return out;
}

namespace detail {

/// Minimal lattice points of an up-closed set (membership oracle) inside
/// [0, box]. Recurses on the last coordinate; because the set is up-closed,
/// a candidate can only be dominated by points with smaller last coordinate,
/// which are already in the output.
using UpsetPred = std::function<bool(const ExpVec&)>;

inline std::vector<ExpVec> minimal_points_of_upset(const UpsetPred& member, const ExpVec& box,
                                                   size_t& budget) {
  size_t n = box.size();
  if (n == 0) {
    ExpVec e;
    return member(e) ? std::vector<ExpVec>{e} : std::vector<ExpVec>{};
  }
  std::vector<ExpVec> out;
  ExpVec sub_box(box.begin(), box.end() - 1);
  for (std::int64_t t = 0; t <= box[n - 1]; ++t) {
    UpsetPred slice_member = [&member, t](const ExpVec& v) {
      ExpVec full(v);
      full.push_back(t);
      return member(full);
    };
    for (auto& v : minimal_points_of_upset(slice_member, sub_box, budget)) {
      if (budget-- == 0) throw CapExceeded("minimal_points: generator budget exhausted");
      v.push_back(t);
      bool dominated = false;
      for (const auto& q : out)
        if (dominates(v, q)) {
          dominated = true;
          break;
        }
      if (!dominated) out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace detail

class MonomialIdeal;
using MonomialIdealPtr = std::shared_ptr<const MonomialIdeal>;

class MonomialIdeal {
 public:
  enum class Kind { Zero, Gens, Howald };

  static MonomialIdeal zero(size_t nvars) {
    MonomialIdeal i;
    i.nvars_ = nvars;
    i.kind_ = Kind::Zero;
    return i;
  }

  static MonomialIdeal unit(size_t nvars) {
    return from_generators({ExpVec(nvars, 0)}, nvars);
  }

  static MonomialIdeal from_generators(std::vector<ExpVec> gens, size_t nvars) {
    MonomialIdeal i;
    i.nvars_ = nvars;
    if (gens.empty()) {
      i.kind_ = Kind::Zero;
      return i;
    }
    for (const auto& g : gens)
      if (g.size() != nvars || !all_nonnegative(g))
        throw PreconditionFailed("monomial ideal: bad generator");
    i.kind_ = Kind::Gens;
    i.gens_ = minimal_elements(std::move(gens));
    return i;
  }

  /// Up-set {v : v + (1,...,1) strictly inside region}. This is exactly the
  /// multiplier ideal of the region's staircase data.
  static MonomialIdeal from_howald_region(NewtonRegion region) {
    MonomialIdeal i;
    i.nvars_ = region.nvars;
    i.kind_ = Kind::Howald;
    i.region_ = std::move(region);
    return i;
  }

  /// Nonzero ideal with deferred generator materialization; the Newton
  /// region carries the membership geometry until generators are demanded.
  static MonomialIdeal from_deferred(std::function<std::vector<ExpVec>()> thunk,
                                     NewtonRegion region, size_t nvars) {
    MonomialIdeal i;
    i.nvars_ = nvars;
    i.kind_ = Kind::Gens;
    i.gens_thunk_ = std::move(thunk);
    i.attached_region_ = std::move(region);
    return i;
  }

  size_t nvars() const { return nvars_; }
  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::Zero; }

  bool contains(const ExpVec& v) const {
    if (kind_ == Kind::Zero) return false;
    if (kind_ == Kind::Gens) {
      for (const auto& g : generators())
        if (dominates(v, g)) return true;
      return false;
    }
    QVec q(nvars_);
    for (size_t i = 0; i < nvars_; ++i) q[i] = v[i] + 1;
    return region_->contains_strictly(q);
  }

  bool is_unit() const { return !is_zero() && contains(ExpVec(nvars_, 0)); }

  /// Minimal generators; materialized on demand for deferred and
  /// region-backed ideals.
  const std::vector<ExpVec>& generators() const {
    if (kind_ == Kind::Zero) {
      static const std::vector<ExpVec> none;
      return none;
    }
    if (gens_.empty()) {
      if (gens_thunk_) {
        gens_ = minimal_elements(gens_thunk_());
        gens_thunk_ = nullptr;
      } else if (kind_ == Kind::Howald) {
        ExpVec box = region_->corner_box();
        for (auto& b : box) b += 1;  // margin for the +1 shift
        size_t budget = ideal_limits().max_generators;
        auto member = [this](const ExpVec& v) { return contains(v); };
        gens_ = minimal_elements(detail::minimal_points_of_upset(member, box, budget));
      }
    }
    return gens_;
  }

  /// Newton polyhedron of the ideal.
  const NewtonRegion& newton() const {
    if (is_zero()) throw EmptyInput("newton: zero ideal");
    if (!newton_.has_value()) {
      if (kind_ == Kind::Gens && attached_region_)
        newton_ = *attached_region_;
      else
        newton_ = newton_region_of_points(generators(), nvars_);
    }
    return *newton_;
  }

  /// Exact Newton region supplied by a caller that knows it (e.g. dilations
  /// of a fixed polytope); avoids materializing generators for the hull.
  void attach_newton(NewtonRegion r) { attached_region_ = std::move(r); }

  /// The defining region of a Howald-backed ideal, nullptr otherwise.
  const NewtonRegion* howald_region() const {
    return kind_ == Kind::Howald ? &*region_ : nullptr;
  }

  bool subset_of(const MonomialIdeal& other) const {
    if (is_zero()) return true;
    if (other.is_zero()) return false;
    for (const auto& g : generators())
      if (!other.contains(g)) return false;
    return true;
  }

  bool equals(const MonomialIdeal& other) const {
    if (kind_ == Kind::Zero || other.kind_ == Kind::Zero)
      return kind_ == other.kind_;
    if (kind_ == Kind::Howald && other.kind_ == Kind::Howald &&
        region_->equals(*other.region_))
      return true;
    if (kind_ == Kind::Gens && other.kind_ == Kind::Gens)
      return generators() == other.generators();  // minimal generating sets are unique
    return subset_of(other) && other.subset_of(*this);
  }

  MonomialIdeal product(const MonomialIdeal& other) const {
    if (is_zero() || other.is_zero()) return zero(nvars_);
    std::vector<ExpVec> sums;
    for (const auto& a : generators())
      for (const auto& b : other.generators()) sums.push_back(vec_add(a, b));
    return from_generators(std::move(sums), nvars_);
  }

  MonomialIdeal power(std::int64_t k) const {
    if (k < 1) throw PreconditionFailed("ideal power: k >= 1");
    MonomialIdeal acc = *this;
    for (std::int64_t i = 2; i <= k; ++i) acc = acc.product(*this);
    return acc;
  }

  /// Multiplication by the monomial x^n (the twist by -N in the model).
  MonomialIdeal translate(const ExpVec& n) const {
    if (is_zero()) return *this;
    std::vector<ExpVec> gens;
    for (const auto& g : generators()) gens.push_back(vec_add(g, n));
    return from_generators(std::move(gens), nvars_);
  }

  /// min over the ideal of <w, v>; for w >= 0 the minimum sits on a
  /// generator.
  Int valuation_min(const ExpVec& w) const {
    if (is_zero()) throw EmptyInput("valuation of the zero ideal");
    std::optional<Int> best;
    for (const auto& g : generators()) {
      Int s = 0;
      for (size_t i = 0; i < nvars_; ++i) s += Int(w[i]) * g[i];
      if (!best || s < *best) best = s;
    }
    return *best;
  }

 private:
  size_t nvars_ = 0;
  Kind kind_ = Kind::Zero;
  mutable std::vector<ExpVec> gens_;
  mutable std::function<std::vector<ExpVec>()> gens_thunk_;
  std::optional<NewtonRegion> region_;            // Howald data
  std::optional<NewtonRegion> attached_region_;   // known Newton polyhedron
  mutable std::optional<NewtonRegion> newton_;
};

/// The ideal generated by the homogenized degree-p sections. Generators
/// materialize lazily; the Newton polyhedron comes from the extreme sections
/// alone (homogenizing is affine on a fixed degree, so hulls commute).
inline MonomialIdeal base_ideal(const GradedSeries& s, std::int64_t p) {
  size_t n = s.dim() + 1;
  if (!s.known_nonempty(p)) return MonomialIdeal::zero(n);
  std::int64_t deg = p * s.degree_bound();
  auto homogenize = [n, deg](const ExpVec& a) {
    ExpVec g(n);
    g[0] = deg - coord_sum(a);
    for (size_t i = 0; i + 1 < n; ++i) g[i + 1] = a[i];
    return g;
  };
  std::vector<ExpVec> extremes;
  for (const auto& a : s.extreme_sections(p)) extremes.push_back(homogenize(a));
  NewtonRegion region = newton_region_of_points(extremes, n);
  GradedSeries keep = s;
  auto thunk = [keep, p, homogenize]() {
    std::vector<ExpVec> gens;
    const ExpSet& sp = keep.at(p);
    gens.reserve(sp.size());
    for (const auto& a : sp) gens.push_back(homogenize(a));
    return gens;
  };
  return MonomialIdeal::from_deferred(std::move(thunk), std::move(region), n);
}

/// Integral closure: minimal lattice points of the Newton polyhedron.
inline MonomialIdeal integral_closure(const MonomialIdeal& i) {
  if (i.is_zero()) throw EmptyInput("integral_closure: zero ideal");
  const NewtonRegion& region = i.newton();
  ExpVec box = region.corner_box();
  size_t budget = ideal_limits().max_generators;
  auto member = [&region, &i](const ExpVec& v) {
    QVec q(i.nvars());
    for (size_t j = 0; j < i.nvars(); ++j) q[j] = v[j];
    return region.contains(q);
  };
  auto pts = detail::minimal_points_of_upset(member, box, budget);
  return MonomialIdeal::from_generators(minimal_elements(std::move(pts)), i.nvars());
}

/// Multiplier ideal J(c * i) via the Newton-polyhedron interiority rule.
inline MonomialIdeal multiplier_ideal(const MonomialIdeal& i, const Rational& c) {
  if (c <= 0) throw PreconditionFailed("multiplier_ideal: c > 0 required");
  if (i.is_zero()) throw EmptyInput("multiplier_ideal: zero ideal");
  return MonomialIdeal::from_howald_region(i.newton().scaled(c));
}

}  // namespace oklab
