// Test-only oracles. Each one recomputes a quantity through a route
// independent of the library path it cross-checks.

#pragma once

#include <algorithm>
#include <vector>

#include "oklab/core.hpp"
#include "oklab/polytope.hpp"

namespace oklab::testing {

// ---------------------------------------------------------------------------
// Boundary-triangulation volume: fan the hull boundary into simplices from a
// base vertex and sum |det|/d!. Shares only the facet lists with the library;
// the measure itself comes from raw determinants, not facet pyramids.

inline Rational det_full(std::vector<QVec> m) {
  size_t n = m.size();
  Rational det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t pr = c;
    while (pr < n && m[pr][c] == 0) ++pr;
    if (pr == n) return 0;
    if (pr != c) {
      std::swap(m[pr], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

// simplices as vertex lists; k = dimension of the simplices produced
inline void triangulate_rec(const std::vector<QVec>& pts, size_t k,
                            std::vector<std::vector<QVec>>& out) {
  if (pts.empty()) return;
  if (k == 0) {
    out.push_back({pts.front()});
    return;
  }
  if (k == 1) {
    std::vector<QVec> s = pts;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (size_t i = 0; i + 1 < s.size(); ++i) out.push_back({s[i], s[i + 1]});
    return;
  }
  Polytope h = hull(pts);
  const QVec apex = h.vertices.front();
  for (const auto& f : h.facets) {
    if (dot_iq(f.a, apex) == f.b) continue;
    // facet points, projected along the largest normal coordinate
    size_t j = 0;
    Int best = 0;
    for (size_t i = 0; i < f.a.size(); ++i)
      if (int_abs(f.a[i]) > best) {
        best = int_abs(f.a[i]);
        j = i;
      }
    std::vector<QVec> fpts;
    std::vector<QVec> forig;
    for (const auto& p : pts)
      if (dot_iq(f.a, p) == f.b) {
        QVec w;
        for (size_t i = 0; i < p.size(); ++i)
          if (i != j) w.push_back(p[i]);
        fpts.push_back(w);
        forig.push_back(p);
      }
    std::vector<std::vector<QVec>> sub;
    triangulate_rec(fpts, k - 1, sub);
    for (const auto& simplex : sub) {
      std::vector<QVec> lifted;
      lifted.push_back(apex);
      for (const auto& w : simplex) {
        for (size_t t = 0; t < fpts.size(); ++t)
          if (fpts[t] == w) {
            lifted.push_back(forig[t]);
            break;
          }
      }
      out.push_back(lifted);
    }
  }
}

inline Rational volume_oracle(const std::vector<QVec>& pts, size_t d) {
  if (pts.empty()) return 0;
  Polytope h = hull(pts);
  if (h.aff_dim < static_cast<int>(d)) return 0;
  std::vector<std::vector<QVec>> simplices;
  triangulate_rec(pts, d, simplices);
  Rational total = 0;
  Rational dfact(factorial(static_cast<unsigned>(d)));
  for (const auto& s : simplices) {
    if (s.size() != d + 1) continue;
    std::vector<QVec> m(d, QVec(d));
    for (size_t r = 0; r < d; ++r)
      for (size_t c = 0; c < d; ++c) m[r][c] = s[r + 1][c] - s[0][c];
    Rational det = det_full(m);
    total += (det < 0 ? -det : det) / dfact;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Exact rational LP. Phase-1 simplex with Bland's rule on equality-form
// problems: min c.x  s.t.  A x = b, x >= 0. Small and slow on purpose.

struct SimplexResult {
  bool feasible = false;
  Rational objective = 0;
  std::vector<Rational> x;
};

inline SimplexResult simplex_min(std::vector<std::vector<Rational>> a,
                                 std::vector<Rational> b, std::vector<Rational> c) {
  size_t m = a.size();
  size_t n = m == 0 ? 0 : a[0].size();
  for (size_t r = 0; r < m; ++r)
    if (b[r] < 0) {
      for (auto& x : a[r]) x = -x;
      b[r] = -b[r];
    }
  // tableau with artificial variables
  size_t total = n + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(total + 1, Rational(0)));
  std::vector<size_t> basis(m);
  for (size_t r = 0; r < m; ++r) {
    for (size_t j = 0; j < n; ++j) t[r][j] = a[r][j];
    t[r][n + r] = 1;
    t[r][total] = b[r];
    basis[r] = n + r;
  }
  auto pivot = [&](size_t r, size_t col) {
    Rational inv = Rational(1) / t[r][col];
    for (auto& x : t[r]) x *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || t[i][col] == 0) continue;
      Rational f = t[i][col];
      for (size_t j = 0; j <= total; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = col;
  };
  auto run = [&](const std::vector<Rational>& cost, size_t enter_limit) {
    while (true) {
      size_t enter = enter_limit;
      for (size_t j = 0; j < enter_limit; ++j) {
        Rational rc = cost[j];
        for (size_t r = 0; r < m; ++r) rc -= cost[basis[r]] * t[r][j];
        if (rc < 0) {
          enter = j;
          break;  // Bland: first negative reduced cost
        }
      }
      if (enter == enter_limit) break;
      size_t leave = m;
      Rational best = 0;
      for (size_t r = 0; r < m; ++r) {
        if (t[r][enter] <= 0) continue;
        Rational ratio = t[r][total] / t[r][enter];
        if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == m) return false;  // unbounded
      pivot(leave, enter);
    }
    return true;
  };
  std::vector<Rational> phase1(total, Rational(0));
  for (size_t j = n; j < total; ++j) phase1[j] = 1;
  run(phase1, total);
  Rational art = 0;
  for (size_t r = 0; r < m; ++r)
    if (basis[r] >= n) art += t[r][total];
  SimplexResult res;
  if (art != 0) return res;  // infeasible
  // drive remaining artificials out where possible; zero rows are redundant
  for (size_t r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    size_t col = n;
    for (size_t j = 0; j < n; ++j)
      if (t[r][j] != 0) {
        col = j;
        break;
      }
    if (col < n) pivot(r, col);
  }
  std::vector<Rational> phase2(total, Rational(0));
  for (size_t j = 0; j < n; ++j) phase2[j] = c[j];
  if (!run(phase2, n)) {
    res.feasible = true;  // unbounded below; report without objective
    res.objective = Rational(-1);
    return res;
  }
  res.feasible = true;
  res.x.assign(n, Rational(0));
  for (size_t r = 0; r < m; ++r)
    if (basis[r] < n) res.x[basis[r]] = t[r][total];
  res.objective = 0;
  for (size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

/// Membership p in conv(set) via LP feasibility.
inline bool in_convex_hull_lp(const QVec& p, const std::vector<QVec>& set) {
  if (set.empty()) return false;
  size_t d = p.size(), n = set.size();
  std::vector<std::vector<Rational>> a(d + 1, std::vector<Rational>(n));
  std::vector<Rational> b(d + 1);
  for (size_t r = 0; r < d; ++r) {
    for (size_t j = 0; j < n; ++j) a[r][j] = set[j][r];
    b[r] = p[r];
  }
  for (size_t j = 0; j < n; ++j) a[d][j] = 1;
  b[d] = 1;
  auto res = simplex_min(a, b, std::vector<Rational>(n, Rational(0)));
  return res.feasible;
}

}  // namespace oklab::testing
