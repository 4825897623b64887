// cone.hpp
//
// Polyhedral cones in the nonnegative orthant, as generated by graded
// semigroups. Double description comes from the hull of the generators
// normalized onto the simplex slice {sum x = 1}: slice facets homogenize to
// halfspaces through the origin, slice vertices to extreme rays.

#pragma once

#include <algorithm>
#include <vector>

#include "oklab/core.hpp"
#include "oklab/errors.hpp"
#include "oklab/polytope.hpp"

namespace oklab {

struct PolyCone {
  size_t ambient = 0;
  int dim = 0;                      // linear dimension of the cone
  std::vector<IntVec> rays;         // primitive extreme rays
  std::vector<IntVec> halfspaces;   // <h, x> >= 0 for all cone points

  bool contains(const QVec& x) const {
    for (const auto& h : halfspaces) {
      Rational s = 0;
      for (size_t i = 0; i < ambient; ++i) s += Rational(h[i]) * x[i];
      if (s < 0) return false;
    }
    return true;
  }

  /// Strict membership; meaningful as interiority only when dim == ambient.
  bool contains_strictly(const QVec& x) const {
    for (const auto& h : halfspaces) {
      Rational s = 0;
      for (size_t i = 0; i < ambient; ++i) s += Rational(h[i]) * x[i];
      if (s <= 0) return false;
    }
    return true;
  }
};

inline IntVec primitive_ray(const QVec& v) {
  return primitive_normal(v);
}

/// Cone over a set of nonnegative integer generators.
inline PolyCone cone_from_generators(const std::vector<ExpVec>& gens) {
  if (gens.empty()) throw EmptyInput("cone_from_generators: no generators");
  size_t n = gens.front().size();
  std::vector<QVec> slice;
  for (const auto& g : gens) {
    if (g.size() != n) throw DimensionMismatch("cone_from_generators");
    if (!all_nonnegative(g))
      throw PreconditionFailed("cone_from_generators: negative entry (generators live in N^n)");
    std::int64_t s = coord_sum(g);
    if (s == 0) continue;  // zero vector spans nothing
    QVec q(n);
    for (size_t i = 0; i < n; ++i) q[i] = Rational(g[i], s);
    slice.push_back(q);
  }
  PolyCone cone;
  cone.ambient = n;
  if (slice.empty()) {
    // the zero cone: pinned to the origin by coordinate equalities
    cone.dim = 0;
    for (size_t i = 0; i < n; ++i) {
      IntVec e(n, 0), me(n, 0);
      e[i] = 1;
      me[i] = -1;
      cone.halfspaces.push_back(e);
      cone.halfspaces.push_back(me);
    }
    return cone;
  }
  Polytope q = hull(slice);
  cone.dim = q.aff_dim + 1;
  for (const auto& f : q.facets) {
    // <a,x> <= b on the slice becomes <b*1 - a, x> >= 0 on the cone
    QVec h(n);
    bool zero = true;
    for (size_t i = 0; i < n; ++i) {
      h[i] = f.b - Rational(f.a[i]);
      if (h[i] != 0) zero = false;
    }
    if (!zero) cone.halfspaces.push_back(primitive_normal(h));
  }
  cone.halfspaces.push_back(IntVec(n, 1));  // sum x >= 0 pins the apex side
  std::sort(cone.halfspaces.begin(), cone.halfspaces.end());
  cone.halfspaces.erase(std::unique(cone.halfspaces.begin(), cone.halfspaces.end()),
                        cone.halfspaces.end());
  for (const auto& v : q.vertices) cone.rays.push_back(primitive_ray(v));
  std::sort(cone.rays.begin(), cone.rays.end());
  return cone;
}

/// Fiber {x in R^d : (x, a) in cone} of a cone in R^(d+r) over the last r
/// coordinates. Bounded because every nonzero ray must have a nonzero grading
/// part. Throws EmptyFiber when a lies outside the projection.
inline Polytope cone_fiber(const PolyCone& cone, size_t d, const QVec& a) {
  size_t r = cone.ambient - d;
  if (a.size() != r) throw DimensionMismatch("cone_fiber: grading vector size");
  if (cone.rays.empty()) {
    bool zero = std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
    if (!zero) throw EmptyFiber("cone_fiber: zero cone has only the zero fiber");
    return hull(std::vector<QVec>{QVec(d, Rational(0))});
  }
  size_t nrays = cone.rays.size();
  for (const auto& ray : cone.rays) {
    bool mzero = true;
    for (size_t i = d; i < cone.ambient; ++i)
      if (ray[i] != 0) mzero = false;
    if (mzero) throw PreconditionFailed("cone_fiber: ray with zero grading part (unbounded fiber)");
  }
  // rank of the grading block
  HermiteBasis hb(r);
  for (const auto& ray : cone.rays) {
    IntVec m(ray.begin() + d, ray.end());
    hb.insert(m);
  }
  size_t rho = static_cast<size_t>(hb.rank());

  std::vector<QVec> candidates;
  std::vector<size_t> idx(rho);
  for (size_t i = 0; i < rho; ++i) idx[i] = i;
  if (nrays < rho) throw std::logic_error("cone_fiber: rank exceeds ray count");
  while (true) {
    // solve sum_j lambda_j * m_{idx[j]} = a when the columns are independent
    std::vector<QVec> m(r, QVec(rho + 1));
    for (size_t row = 0; row < r; ++row) {
      for (size_t j = 0; j < rho; ++j) m[row][j] = Rational(cone.rays[idx[j]][d + row]);
      m[row][rho] = a[row];
    }
    size_t rank = 0;
    std::vector<size_t> pivcol;
    for (size_t c = 0; c < rho; ++c) {
      size_t pr = rank;
      while (pr < r && m[pr][c] == 0) ++pr;
      if (pr == r) continue;
      std::swap(m[pr], m[rank]);
      Rational inv = Rational(1) / m[rank][c];
      for (auto& x : m[rank]) x *= inv;
      for (size_t row = 0; row < r; ++row) {
        if (row == rank || m[row][c] == 0) continue;
        Rational f = m[row][c];
        for (size_t j = 0; j <= rho; ++j) m[row][j] -= f * m[rank][j];
      }
      pivcol.push_back(c);
      ++rank;
    }
    if (rank == rho) {
      bool consistent = true;
      for (size_t row = rank; row < r; ++row)
        if (m[row][rho] != 0) consistent = false;
      if (consistent) {
        QVec lambda(rho, Rational(0));
        for (size_t j = 0; j < rank; ++j) lambda[pivcol[j]] = m[j][rho];
        bool nonneg = std::all_of(lambda.begin(), lambda.end(),
                                  [](const Rational& x) { return x >= 0; });
        if (nonneg) {
          QVec x(d, Rational(0));
          for (size_t j = 0; j < rho; ++j)
            for (size_t i = 0; i < d; ++i) x[i] += lambda[j] * Rational(cone.rays[idx[j]][i]);
          candidates.push_back(x);
        }
      }
    }
    size_t i = rho;
    bool done = true;
    while (i-- > 0) {
      if (idx[i] != i + nrays - rho) {
        ++idx[i];
        for (size_t j = i + 1; j < rho; ++j) idx[j] = idx[j - 1] + 1;
        done = false;
        break;
      }
    }
    if (done) break;
  }
  if (candidates.empty()) throw EmptyFiber("cone_fiber: grading vector outside projection");
  return hull(candidates);
}

}  // namespace oklab
