// polytope.hpp
//
// Exact rational polytopes with cross-checked V- and H-representations.
//
// Hull strategy: dedicated chains in dimensions <= 2; in higher dimension an
// incremental restart scheme with exact orientation predicates. Facets of the
// working subset come from exhaustive hyperplane enumeration, which is immune
// to degenerate (coplanar) configurations; rounds add the farthest violator
// per facet until the H-rep certifies every input point. Dimension is capped
// by configuration.

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <vector>

#include "oklab/core.hpp"
#include "oklab/errors.hpp"
#include "oklab/expvec.hpp"
#include "oklab/lattice.hpp"

namespace oklab {

using QVec = std::vector<Rational>;

struct HullLimits {
  size_t max_dim = 6;
  size_t max_subset_evals = 20'000'000;
};

inline HullLimits& hull_limits() {
  static HullLimits limits;
  return limits;
}

/// <a, x> <= b with a primitive integer normal.
struct Halfspace {
  IntVec a;
  Rational b;

  bool operator<(const Halfspace& o) const {
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
  bool operator==(const Halfspace& o) const { return a == o.a && b == o.b; }
};

inline Rational dot_iq(const IntVec& a, const QVec& x) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * x[i];
  return s;
}

inline QVec to_qvec(const ExpVec& v) {
  QVec q(v.size());
  for (size_t i = 0; i < v.size(); ++i) q[i] = v[i];
  return q;
}

/// Clear denominators and divide by the content; zero vectors are rejected.
inline IntVec primitive_normal(const QVec& n) {
  Int l = 1;
  for (const auto& x : n) l = int_lcm(l, den(x));
  IntVec w(n.size());
  Int g = 0;
  for (size_t i = 0; i < n.size(); ++i) {
    w[i] = num(n[i]) * (l / den(n[i]));
    g = int_gcd(g, int_abs(w[i]));
  }
  if (g == 0) throw std::invalid_argument("primitive_normal: zero vector");
  for (auto& x : w) x /= g;
  return w;
}

struct Polytope {
  size_t ambient = 0;
  int aff_dim = -1;  // -1 marks the empty polytope
  std::vector<QVec> vertices;
  std::vector<Halfspace> facets;

  bool empty() const { return aff_dim < 0; }

  bool contains(const QVec& p) const {
    if (empty()) return false;
    for (const auto& f : facets)
      if (dot_iq(f.a, p) > f.b) return false;
    return true;
  }

  bool operator==(const Polytope& o) const {
    return ambient == o.ambient && aff_dim == o.aff_dim && vertices == o.vertices;
  }
};

namespace detail {

/// Gaussian data for the affine frame of a point set: origin, basis
/// directions, the coordinate map y = M(x - origin) and the equations cutting
/// out the affine hull.
struct AffineFrame {
  QVec origin;
  std::vector<QVec> basis;              // k directions in R^d
  std::vector<QVec> coord_map;          // k rows of length d: y_i = <row_i, x - origin>
  std::vector<QVec> null_functionals;   // d-k rows vanishing on the span
};

inline AffineFrame affine_frame(const std::vector<QVec>& pts, size_t d) {
  AffineFrame fr;
  fr.origin = pts.front();
  // row-reduce candidate directions, keeping the independent ones
  std::vector<QVec> rows;       // reduced rows
  std::vector<size_t> pivots;   // pivot column per row
  for (const auto& p : pts) {
    QVec v(d);
    for (size_t i = 0; i < d; ++i) v[i] = p[i] - fr.origin[i];
    for (size_t r = 0; r < rows.size(); ++r) {
      if (v[pivots[r]] == 0) continue;
      Rational f = v[pivots[r]] / rows[r][pivots[r]];
      for (size_t j = 0; j < d; ++j) v[j] -= f * rows[r][j];
    }
    size_t pc = d;
    for (size_t j = 0; j < d; ++j)
      if (v[j] != 0) {
        pc = j;
        break;
      }
    if (pc == d) continue;
    rows.push_back(v);
    pivots.push_back(pc);
    fr.basis.push_back(QVec(d));
    for (size_t i = 0; i < d; ++i) fr.basis.back()[i] = p[i] - fr.origin[i];
    if (fr.basis.size() == d) break;
  }
  size_t k = fr.basis.size();
  // Solve B y = v by eliminating the d x k system once; record the solving
  // rows (M) and the functionals annihilating the column span.
  std::vector<QVec> a(d, QVec(k, Rational(0)));
  for (size_t c = 0; c < k; ++c)
    for (size_t r = 0; r < d; ++r) a[r][c] = fr.basis[c][r];
  std::vector<QVec> t(d, QVec(d, Rational(0)));
  for (size_t r = 0; r < d; ++r) t[r][r] = 1;
  size_t row = 0;
  for (size_t c = 0; c < k; ++c) {
    size_t pr = row;
    while (pr < d && a[pr][c] == 0) ++pr;
    if (pr == d) throw std::logic_error("affine_frame: dependent basis");
    std::swap(a[pr], a[row]);
    std::swap(t[pr], t[row]);
    Rational inv = Rational(1) / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (auto& x : t[row]) x *= inv;
    for (size_t r = 0; r < d; ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (size_t j = 0; j < k; ++j) a[r][j] -= f * a[row][j];
      for (size_t j = 0; j < d; ++j) t[r][j] -= f * t[row][j];
    }
    ++row;
  }
  for (size_t r = 0; r < k; ++r) fr.coord_map.push_back(t[r]);
  for (size_t r = k; r < d; ++r) fr.null_functionals.push_back(t[r]);
  return fr;
}

inline QVec frame_coords(const AffineFrame& fr, const QVec& p) {
  size_t k = fr.coord_map.size(), d = fr.origin.size();
  QVec y(k, Rational(0));
  for (size_t r = 0; r < k; ++r)
    for (size_t j = 0; j < d; ++j) y[r] += fr.coord_map[r][j] * (p[j] - fr.origin[j]);
  return y;
}

/// Monotone chain; returns the ccw vertex cycle of a full-dimensional 2-D set.
inline std::vector<QVec> chain2d(std::vector<QVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto cross = [](const QVec& o, const QVec& a, const QVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  size_t n = pts.size();
  std::vector<QVec> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// Exhaustive facet enumeration of a small full-dimensional point set: every
/// hyperplane spanned by k points that supports the whole set. Degenerate
/// subsets fall out naturally.
inline std::vector<Halfspace> facets_of_small_set(const std::vector<QVec>& s, size_t k,
                                                  size_t& budget) {
  std::map<std::pair<IntVec, Rational>, bool> seen;
  std::vector<Halfspace> out;
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  size_t n = s.size();
  if (n < k) return out;
  while (true) {
    if (budget == 0) throw CapExceeded("hull: subset evaluation budget exhausted");
    --budget;
    // hyperplane through s[idx[0..k-1]]: nullspace of the direction matrix
    std::vector<QVec> rows;
    std::vector<size_t> pivots;
    for (size_t i = 1; i < k; ++i) {
      QVec v(k);
      for (size_t j = 0; j < k; ++j) v[j] = s[idx[i]][j] - s[idx[0]][j];
      for (size_t r = 0; r < rows.size(); ++r) {
        if (v[pivots[r]] == 0) continue;
        Rational f = v[pivots[r]] / rows[r][pivots[r]];
        for (size_t j = 0; j < k; ++j) v[j] -= f * rows[r][j];
      }
      size_t pc = k;
      for (size_t j = 0; j < k; ++j)
        if (v[j] != 0) {
          pc = j;
          break;
        }
      if (pc < k) {
        rows.push_back(v);
        pivots.push_back(pc);
      }
    }
    if (rows.size() == k - 1) {
      // one-dimensional nullspace: free column gets 1, back-substitute
      std::vector<bool> is_pivot(k, false);
      for (auto p : pivots) is_pivot[p] = true;
      size_t free_col = 0;
      while (is_pivot[free_col]) ++free_col;
      QVec nrm(k, Rational(0));
      nrm[free_col] = 1;
      for (size_t r = rows.size(); r-- > 0;) {
        Rational acc = 0;
        for (size_t j = 0; j < k; ++j)
          if (j != pivots[r]) acc += rows[r][j] * nrm[j];
        nrm[pivots[r]] = -acc / rows[r][pivots[r]];
      }
      IntVec a = primitive_normal(nrm);
      Rational b = 0;
      for (size_t j = 0; j < k; ++j) b += Rational(a[j]) * s[idx[0]][j];
      bool any_above = false, any_below = false;
      for (const auto& p : s) {
        Rational v = dot_iq(a, p);
        if (v > b) any_above = true;
        if (v < b) any_below = true;
        if (any_above && any_below) break;
      }
      if (!(any_above && any_below)) {
        if (any_above) {
          for (auto& x : a) x = -x;
          b = -b;
        }
        auto key = std::make_pair(a, b);
        if (!seen.count(key)) {
          seen[key] = true;
          out.push_back({a, b});
        }
      }
    }
    // next k-subset
    size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

/// Full-dimensional hull in dimension k >= 3 by incremental restarts.
inline std::vector<Halfspace> hull_full_dim(const std::vector<QVec>& pts, size_t k) {
  size_t budget = hull_limits().max_subset_evals;
  // seed: coordinate extremes plus an affinely independent core
  std::vector<QVec> seed;
  auto add_seed = [&seed](const QVec& p) {
    if (std::find(seed.begin(), seed.end(), p) == seed.end()) seed.push_back(p);
  };
  for (size_t c = 0; c < k; ++c) {
    const QVec* lo = &pts.front();
    const QVec* hi = &pts.front();
    for (const auto& p : pts) {
      if (p[c] < (*lo)[c]) lo = &p;
      if (p[c] > (*hi)[c]) hi = &p;
    }
    add_seed(*lo);
    add_seed(*hi);
  }
  {
    AffineFrame fr = affine_frame(pts, k);
    add_seed(fr.origin);
    for (const auto& b : fr.basis) {
      QVec p(k);
      for (size_t i = 0; i < k; ++i) p[i] = fr.origin[i] + b[i];
      add_seed(p);
    }
  }
  std::sort(seed.begin(), seed.end());
  while (true) {
    std::vector<Halfspace> facets = facets_of_small_set(seed, k, budget);
    // farthest violator per facet
    std::map<QVec, bool> add;
    for (const auto& f : facets) {
      const QVec* worst = nullptr;
      Rational worst_excess = 0;
      for (const auto& p : pts) {
        Rational e = dot_iq(f.a, p) - f.b;
        if (e > worst_excess || (e > 0 && e == worst_excess && worst && p < *worst)) {
          worst_excess = e;
          worst = &p;
        }
      }
      if (worst) add[*worst] = true;
    }
    if (add.empty()) return facets;
    for (const auto& [p, _] : add) seed.push_back(p);
    std::sort(seed.begin(), seed.end());
    seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
  }
}

}  // namespace detail

/// Convex hull with exact V- and H-representation. Lower-dimensional hulls
/// carry their affine-hull equations as paired inequalities.
inline Polytope hull(const std::vector<QVec>& input) {
  if (input.empty()) throw EmptyInput("hull: no points");
  size_t d = input.front().size();
  for (const auto& p : input)
    if (p.size() != d) throw DimensionMismatch("hull: points of unequal dimension");
  if (d > hull_limits().max_dim) throw CapExceeded("hull: dimension above configured cap");

  std::vector<QVec> pts = input;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Polytope out;
  out.ambient = d;
  detail::AffineFrame fr = detail::affine_frame(pts, d);
  size_t k = fr.basis.size();
  out.aff_dim = static_cast<int>(k);

  // affine-hull equations as opposite halfspace pairs
  for (const auto& nf : fr.null_functionals) {
    IntVec a = primitive_normal(nf);
    Rational b = 0;
    for (size_t j = 0; j < d; ++j) b += Rational(a[j]) * fr.origin[j];
    out.facets.push_back({a, b});
    IntVec na(a.size());
    for (size_t j = 0; j < d; ++j) na[j] = -a[j];
    out.facets.push_back({na, -b});
  }

  if (k == 0) {
    out.vertices.push_back(pts.front());
    std::sort(out.facets.begin(), out.facets.end());
    return out;
  }

  std::vector<QVec> sub(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) sub[i] = detail::frame_coords(fr, pts[i]);

  std::vector<Halfspace> sub_facets;
  std::vector<QVec> sub_vertices;
  if (k == 1) {
    QVec lo = sub.front(), hi = sub.front();
    for (const auto& y : sub) {
      if (y < lo) lo = y;
      if (y > hi) hi = y;
    }
    sub_facets.push_back({IntVec{1}, hi[0]});
    sub_facets.push_back({IntVec{-1}, -lo[0]});
    sub_vertices = {lo, hi};
  } else if (k == 2) {
    std::vector<QVec> cyc = detail::chain2d(sub);
    for (size_t i = 0; i < cyc.size(); ++i) {
      const QVec& v1 = cyc[i];
      const QVec& v2 = cyc[(i + 1) % cyc.size()];
      QVec n{v2[1] - v1[1], v1[0] - v2[0]};  // outward for ccw order
      IntVec a = primitive_normal(n);
      sub_facets.push_back({a, Rational(a[0]) * v1[0] + Rational(a[1]) * v1[1]});
    }
    sub_vertices = cyc;
  } else {
    sub_facets = detail::hull_full_dim(sub, k);
    // vertices: points whose active facet normals span the space
    for (size_t i = 0; i < sub.size(); ++i) {
      HermiteBasis hb(k);
      int active = 0;
      for (const auto& f : sub_facets)
        if (dot_iq(f.a, sub[i]) == f.b) {
          hb.insert(f.a);
          ++active;
        }
      if (active >= static_cast<int>(k) && hb.rank() == static_cast<int>(k))
        sub_vertices.push_back(sub[i]);
    }
  }

  // map facets and vertices back to ambient coordinates
  for (const auto& f : sub_facets) {
    QVec amb(d, Rational(0));
    for (size_t r = 0; r < k; ++r)
      for (size_t j = 0; j < d; ++j) amb[j] += Rational(f.a[r]) * fr.coord_map[r][j];
    IntVec a = primitive_normal(amb);
    // rescale offset to the primitive normal
    Rational scale;
    for (size_t j = 0; j < d; ++j)
      if (a[j] != 0) {
        scale = amb[j] / Rational(a[j]);
        break;
      }
    Rational b = f.b;
    for (size_t r = 0; r < k; ++r)
      for (size_t j = 0; j < d; ++j) b += Rational(f.a[r]) * fr.coord_map[r][j] * fr.origin[j];
    out.facets.push_back({a, b / scale});
  }
  std::sort(out.facets.begin(), out.facets.end());
  out.facets.erase(std::unique(out.facets.begin(), out.facets.end()), out.facets.end());

  std::map<QVec, bool> vset;
  for (const auto& y : sub_vertices) {
    QVec p(d);
    for (size_t j = 0; j < d; ++j) {
      p[j] = fr.origin[j];
      for (size_t r = 0; r < k; ++r) p[j] += y[r] * fr.basis[r][j];
    }
    vset[p] = true;
  }
  for (const auto& [p, _] : vset) out.vertices.push_back(p);

  // construction cross-check: every input point satisfies the H-rep
  for (const auto& p : pts)
    if (!out.contains(p)) throw std::logic_error("hull: H-rep certificate failed");
  return out;
}

inline Polytope hull(const ExpSet& pts) {
  std::vector<QVec> q;
  q.reserve(pts.size());
  for (const auto& p : pts) q.push_back(to_qvec(p));
  return hull(q);
}

inline Rational volume(const Polytope& p);

namespace detail {

/// Monotone chain over int64 coordinates; cross products in 128-bit. Returns
/// the ccw cycle. Large integer point sets (per-degree section sets) hit this
/// instead of the rational chain.
inline std::vector<std::array<std::int64_t, 2>> chain2d_int(
    std::vector<std::array<std::int64_t, 2>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  auto cross = [](const std::array<std::int64_t, 2>& o, const std::array<std::int64_t, 2>& a,
                  const std::array<std::int64_t, 2>& b) {
    return static_cast<__int128>(a[0] - o[0]) * (b[1] - o[1]) -
           static_cast<__int128>(a[1] - o[1]) * (b[0] - o[0]);
  };
  size_t n = pts.size(), k = 0;
  std::vector<std::array<std::int64_t, 2>> h(2 * n);
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace detail

/// Extreme points of an integer point set, without the full H-rep build.
/// Dimensions 1 and 2 run on machine integers; higher dimensions fall back to
/// the exact rational hull.
inline std::vector<ExpVec> extreme_points(const ExpSet& pts) {
  if (pts.empty()) return {};
  size_t d = pts.begin()->size();
  if (d == 0) return {ExpVec{}};
  if (d == 1) {
    std::int64_t lo = (*pts.begin())[0], hi = lo;
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    if (lo == hi) return {ExpVec{lo}};
    return {ExpVec{lo}, ExpVec{hi}};
  }
  if (d == 2) {
    std::vector<std::array<std::int64_t, 2>> v;
    v.reserve(pts.size());
    for (const auto& p : pts) v.push_back({p[0], p[1]});
    auto cyc = detail::chain2d_int(std::move(v));
    std::vector<ExpVec> out;
    out.reserve(cyc.size());
    for (const auto& p : cyc) out.push_back(ExpVec{p[0], p[1]});
    return out;
  }
  Polytope h = hull(pts);
  std::vector<ExpVec> out;
  for (const auto& v : h.vertices) {
    ExpVec e(v.size());
    for (size_t i = 0; i < v.size(); ++i) e[i] = static_cast<std::int64_t>(num(v[i]));
    out.push_back(std::move(e));
  }
  return out;
}

/// Exact volume of conv(pts) for an integer point set: shoelace in 2-D over
/// the integer chain, generic hull volume elsewhere.
inline Rational volume_of_int_hull(const ExpSet& pts) {
  if (pts.empty()) return 0;
  size_t d = pts.begin()->size();
  if (d == 0) return 1;
  if (d == 1) {
    auto ext = extreme_points(pts);
    return ext.size() < 2 ? Rational(0) : Rational(ext[1][0] - ext[0][0]);
  }
  if (d == 2) {
    std::vector<std::array<std::int64_t, 2>> v;
    v.reserve(pts.size());
    for (const auto& p : pts) v.push_back({p[0], p[1]});
    auto cyc = detail::chain2d_int(std::move(v));
    if (cyc.size() < 3) return 0;
    __int128 twice = 0;
    for (size_t i = 0; i < cyc.size(); ++i) {
      const auto& a = cyc[i];
      const auto& b = cyc[(i + 1) % cyc.size()];
      twice += static_cast<__int128>(a[0]) * b[1] - static_cast<__int128>(a[1]) * b[0];
    }
    if (twice < 0) twice = -twice;
    return Rational(int128_to_int(twice), 2);
  }
  return volume(hull(pts));
}

namespace detail {

inline Rational volume_rec(const std::vector<QVec>& pts, size_t d);

/// Pyramid decomposition over the facets opposite a base vertex. Exactness
/// rides on (height * facet measure) staying rational after projecting the
/// facet along a coordinate axis not parallel to it.
inline Rational volume_full(const Polytope& p, size_t d) {
  if (d == 1) {
    Rational lo = p.vertices.front()[0], hi = lo;
    for (const auto& v : p.vertices) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return hi - lo;
  }
  const QVec& c = p.vertices.front();
  Rational total = 0;
  for (const auto& f : p.facets) {
    Rational height = f.b - dot_iq(f.a, c);
    if (height == 0) continue;
    size_t j = 0;
    Int best = 0;
    for (size_t i = 0; i < d; ++i)
      if (int_abs(f.a[i]) > best) {
        best = int_abs(f.a[i]);
        j = i;
      }
    std::vector<QVec> proj;
    for (const auto& v : p.vertices)
      if (dot_iq(f.a, v) == f.b) {
        QVec w;
        w.reserve(d - 1);
        for (size_t i = 0; i < d; ++i)
          if (i != j) w.push_back(v[i]);
        proj.push_back(w);
      }
    total += height * volume_rec(proj, d - 1) / (Rational(d) * Rational(best));
  }
  return total;
}

inline Rational volume_rec(const std::vector<QVec>& pts, size_t d) {
  if (pts.empty()) return 0;
  if (d == 0) return 1;
  Polytope p = hull(pts);
  if (p.aff_dim < static_cast<int>(d)) return 0;
  return volume_full(p, d);
}

}  // namespace detail

/// Exact Euclidean volume; 0 when dimension deficient.
inline Rational volume(const Polytope& p) {
  if (p.empty()) return 0;
  if (p.aff_dim < static_cast<int>(p.ambient)) return 0;
  if (p.ambient == 0) return 1;
  return detail::volume_full(p, p.ambient);
}

inline Polytope scale_polytope(const Polytope& p, const Rational& k) {
  if (k <= 0) throw std::invalid_argument("scale_polytope: factor must be positive");
  std::vector<QVec> vs = p.vertices;
  for (auto& v : vs)
    for (auto& x : v) x *= k;
  return hull(vs);
}

inline Polytope minkowski_polytopes(const Polytope& p, const Polytope& q) {
  if (p.ambient != q.ambient) throw DimensionMismatch("minkowski_polytopes");
  std::vector<QVec> sums;
  for (const auto& a : p.vertices)
    for (const auto& b : q.vertices) {
      QVec s(p.ambient);
      for (size_t i = 0; i < p.ambient; ++i) s[i] = a[i] + b[i];
      sums.push_back(s);
    }
  return hull(sums);
}

/// Containment with an L-infinity slack: p inside q inflated by s.
inline bool contained_within_slack(const Polytope& p, const Polytope& q, const Rational& s) {
  if (p.empty()) return true;
  if (q.empty()) return false;
  for (const auto& v : p.vertices)
    for (const auto& f : q.facets) {
      Rational l1 = 0;
      for (const auto& a : f.a) l1 += Rational(int_abs(a));
      if (dot_iq(f.a, v) > f.b + s * l1) return false;
    }
  return true;
}

inline bool contained_in(const Polytope& p, const Polytope& q) {
  return contained_within_slack(p, q, Rational(0));
}

/// Vertex enumeration of an H-polytope (all basic solutions of d facets).
/// Intended for small systems; throws when the subset budget is exceeded.
inline std::optional<Polytope> polytope_from_halfspaces(const std::vector<Halfspace>& hs,
                                                        size_t d) {
  if (d == 0) throw std::invalid_argument("polytope_from_halfspaces: ambient 0");
  size_t budget = hull_limits().max_subset_evals;
  std::vector<QVec> verts;
  std::vector<size_t> idx(d);
  size_t n = hs.size();
  if (n < d) return std::nullopt;
  for (size_t i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    if (budget-- == 0) throw CapExceeded("polytope_from_halfspaces: budget exhausted");
    // solve the d x d system <a_i, x> = b_i
    std::vector<QVec> m(d, QVec(d + 1));
    for (size_t r = 0; r < d; ++r) {
      for (size_t c = 0; c < d; ++c) m[r][c] = Rational(hs[idx[r]].a[c]);
      m[r][d] = hs[idx[r]].b;
    }
    bool singular = false;
    for (size_t c = 0; c < d && !singular; ++c) {
      size_t pr = c;
      while (pr < d && m[pr][c] == 0) ++pr;
      if (pr == d) {
        singular = true;
        break;
      }
      std::swap(m[pr], m[c]);
      Rational inv = Rational(1) / m[c][c];
      for (auto& x : m[c]) x *= inv;
      for (size_t r = 0; r < d; ++r) {
        if (r == c || m[r][c] == 0) continue;
        Rational f = m[r][c];
        for (size_t j = 0; j <= d; ++j) m[r][j] -= f * m[c][j];
      }
    }
    if (!singular) {
      QVec x(d);
      for (size_t i = 0; i < d; ++i) x[i] = m[i][d];
      bool feasible = true;
      for (const auto& h : hs)
        if (dot_iq(h.a, x) > h.b) {
          feasible = false;
          break;
        }
      if (feasible) verts.push_back(x);
    }
    size_t i = d;
    bool done = true;
    while (i-- > 0) {
      if (idx[i] != i + n - d) {
        ++idx[i];
        for (size_t j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        done = false;
        break;
      }
    }
    if (done) break;
  }
  if (verts.empty()) return std::nullopt;
  return hull(verts);
}

/// Intersect with {x_j = 0 : j in pinned} and project those coordinates away.
inline std::optional<Polytope> polytope_slice(const Polytope& p,
                                              const std::vector<size_t>& pinned) {
  if (p.empty()) return std::nullopt;
  std::vector<bool> pin(p.ambient, false);
  for (auto j : pinned) pin[j] = true;
  size_t nd = p.ambient - pinned.size();
  if (nd == 0) throw std::invalid_argument("polytope_slice: nothing left");
  std::vector<Halfspace> hs;
  for (const auto& f : p.facets) {
    IntVec a;
    for (size_t j = 0; j < p.ambient; ++j)
      if (!pin[j]) a.push_back(f.a[j]);
    bool zero = std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
    if (zero) {
      if (f.b < 0) return std::nullopt;  // 0 <= b violated: empty slice
      continue;
    }
    Int g = 0;
    for (const auto& x : a) g = int_gcd(g, int_abs(x));
    Rational b = f.b;
    if (g > 1) {
      for (auto& x : a) x /= g;
      b /= Rational(g);
    }
    hs.push_back({a, b});
  }
  return polytope_from_halfspaces(hs, nd);
}

}  // namespace oklab
