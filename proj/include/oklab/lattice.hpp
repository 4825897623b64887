// lattice.hpp
//
// Integer lattice algebra: Hermite echelon bases, Smith normal form, and the
// rank/index summaries used to normalize counting laws and to measure the
// degree of monomial maps.

#pragma once

#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "oklab/core.hpp"
#include "oklab/expvec.hpp"

namespace oklab {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

struct LatticeSummary {
  int rank = 0;
  std::optional<Int> index;  // engaged iff rank == ambient dimension
  IntMat basis;              // Hermite echelon rows, pivots positive
};

/// Extended gcd: returns (g, s, t) with s*a + t*b == g >= 0.
inline std::tuple<Int, Int, Int> xgcd(Int a, Int b) {
  Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = b;
    b = r;
    Int s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  return {a, s0, t0};
}

/// Row-style Hermite echelon accumulator. Rows may be fed one at a time, so
/// large generating sets reduce on the fly.
class HermiteBasis {
 public:
  explicit HermiteBasis(size_t dim) : dim_(dim), pivot_row_(dim, -1) {}

  void insert(IntVec v) {
    if (v.size() != dim_) throw std::invalid_argument("HermiteBasis: dimension mismatch");
    for (size_t c = 0; c < dim_; ++c) {
      if (v[c] == 0) continue;
      if (pivot_row_[c] < 0) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        pivot_row_[c] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        return;
      }
      IntVec& r = rows_[pivot_row_[c]];
      auto [g, s, t] = xgcd(r[c], v[c]);
      Int rc = r[c] / g, vc = v[c] / g;
      for (size_t j = c; j < dim_; ++j) {
        Int nr = s * r[j] + t * v[j];
        Int nv = rc * v[j] - vc * r[j];
        r[j] = nr;
        v[j] = nv;
      }
    }
  }

  void insert(const ExpVec& v) {
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = v[i];
    insert(std::move(w));
  }

  int rank() const {
    int r = 0;
    for (size_t c = 0; c < dim_; ++c)
      if (pivot_row_[c] >= 0) ++r;
    return r;
  }

  /// Rows ordered by pivot column, entries above each pivot reduced into
  /// [0, pivot) so the basis is canonical.
  IntMat echelon() const {
    IntMat out;
    for (size_t c = 0; c < dim_; ++c)
      if (pivot_row_[c] >= 0) out.push_back(rows_[pivot_row_[c]]);
    for (size_t i = out.size(); i-- > 0;) {
      size_t pc = pivot_col(out[i]);
      for (size_t k = 0; k < i; ++k) {
        Int q = floor_div(out[k][pc], out[i][pc]);
        if (q != 0)
          for (size_t j = 0; j < dim_; ++j) out[k][j] -= q * out[i][j];
      }
    }
    return out;
  }

  size_t dim() const { return dim_; }

 private:
  static size_t pivot_col(const IntVec& r) {
    for (size_t j = 0; j < r.size(); ++j)
      if (r[j] != 0) return j;
    throw std::logic_error("pivot_col: zero row");
  }

  size_t dim_;
  std::vector<int> pivot_row_;
  IntMat rows_;
};

/// Diagonal of the Smith normal form, d1 | d2 | ... | dr, all positive.
inline std::vector<Int> smith_diagonal(IntMat m) {
  std::vector<Int> diag;
  size_t top = 0;
  while (top < m.size()) {
    size_t cols = m[top].size();
    // locate a nonzero entry at or below/right of (top, top)
    size_t pi = top, pj = top;
    bool found = false;
    for (size_t i = top; i < m.size() && !found; ++i)
      for (size_t j = top; j < cols && !found; ++j)
        if (m[i][j] != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    std::swap(m[top], m[pi]);
    for (auto& row : m) std::swap(row[top], row[pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = top + 1; i < m.size(); ++i) {
        if (m[i][top] == 0) continue;
        if (m[i][top] % m[top][top] == 0) {
          Int q = m[i][top] / m[top][top];
          for (size_t j = top; j < cols; ++j) m[i][j] -= q * m[top][j];
        } else {
          auto [g, s, t] = xgcd(m[top][top], m[i][top]);
          Int a = m[top][top] / g, b = m[i][top] / g;
          for (size_t j = top; j < cols; ++j) {
            Int nt = s * m[top][j] + t * m[i][j];
            Int ni = a * m[i][j] - b * m[top][j];
            m[top][j] = nt;
            m[i][j] = ni;
          }
        }
      }
      for (size_t j = top + 1; j < cols; ++j) {
        if (m[top][j] == 0) continue;
        if (m[top][j] % m[top][top] == 0) {
          Int q = m[top][j] / m[top][top];
          for (size_t i = top; i < m.size(); ++i) m[i][j] -= q * m[i][top];
          // pivot row untouched below; no reintroduction from this step
          if (m[top][j] != 0) clean = false;
        } else {
          auto [g, s, t] = xgcd(m[top][top], m[top][j]);
          Int a = m[top][top] / g, b = m[top][j] / g;
          for (size_t i = top; i < m.size(); ++i) {
            Int nt = s * m[i][top] + t * m[i][j];
            Int nj = a * m[i][j] - b * m[i][top];
            m[i][top] = nt;
            m[i][j] = nj;
          }
          clean = false;  // the combine may reintroduce entries below
        }
      }
    }
    // enforce divisibility of the remaining block by the pivot
    Int piv = int_abs(m[top][top]);
    bool redo = false;
    for (size_t i = top + 1; i < m.size() && !redo; ++i)
      for (size_t j = top + 1; j < cols && !redo; ++j)
        if (m[i][j] % piv != 0) {
          for (size_t jj = top; jj < cols; ++jj) m[top][jj] += m[i][jj];
          redo = true;
        }
    if (redo) continue;  // restart this block
    diag.push_back(piv);
    ++top;
  }
  return diag;
}

/// Rank and (if full-rank) index of the subgroup of Z^dim generated by the
/// given vectors, with a Hermite basis.
inline LatticeSummary lattice_summary(const std::vector<IntVec>& vectors, size_t dim) {
  HermiteBasis hb(dim);
  for (const auto& v : vectors) hb.insert(v);
  LatticeSummary out;
  out.basis = hb.echelon();
  out.rank = hb.rank();
  if (static_cast<size_t>(out.rank) == dim) {
    auto d = smith_diagonal(out.basis);
    Int idx = 1;
    for (const auto& x : d) idx *= x;
    out.index = idx;
  }
  return out;
}

inline LatticeSummary lattice_summary(const std::vector<ExpVec>& vectors, size_t dim) {
  std::vector<IntVec> vs;
  vs.reserve(vectors.size());
  for (const auto& v : vectors) {
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = v[i];
    vs.push_back(std::move(w));
  }
  return lattice_summary(vs, dim);
}

/// Lattice of differences a - a0 of a point set; generates the same group as
/// all pairwise differences.
inline LatticeSummary difference_lattice(const ExpSet& pts, size_t dim) {
  HermiteBasis hb(dim);
  if (!pts.empty()) {
    const ExpVec& base = *pts.begin();
    for (const auto& p : pts) {
      if (p == base) continue;
      hb.insert(vec_sub(p, base));
    }
  }
  LatticeSummary out;
  out.basis = hb.echelon();
  out.rank = hb.rank();
  if (static_cast<size_t>(out.rank) == dim) {
    auto d = smith_diagonal(out.basis);
    Int idx = 1;
    for (const auto& x : d) idx *= x;
    out.index = idx;
  }
  return out;
}

/// Given generators of a lattice L in Z^(1+d) whose FIRST coordinate is the
/// grading, return the slice {v in Z^d : (0, v) in L} as a lattice summary
/// over Z^d. Rows of an echelon basis with zero leading coordinate generate
/// exactly the slice.
inline LatticeSummary lattice_slice_zero(const std::vector<IntVec>& vectors, size_t d) {
  HermiteBasis hb(d + 1);
  for (const auto& v : vectors) hb.insert(v);
  IntMat rows = hb.echelon();
  std::vector<IntVec> slice;
  for (const auto& r : rows)
    if (r[0] == 0) slice.push_back(IntVec(r.begin() + 1, r.end()));
  return lattice_summary(slice, d);
}

}  // namespace oklab
