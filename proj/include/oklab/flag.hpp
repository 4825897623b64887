// flag.hpp
//
// Torus-invariant coordinate flags. Valuation of a monomial section along
// such a flag just reads off permuted (optionally unimodularly transformed)
// exponents of the homogenized monomial.

#pragma once

#include <optional>
#include <vector>

#include "oklab/core.hpp"
#include "oklab/errors.hpp"
#include "oklab/expvec.hpp"
#include "oklab/lattice.hpp"

namespace oklab {

struct Flag {
  size_t ambient_dim = 0;                 // d
  size_t dehomogenizing_index = 0;        // in [0, d]
  std::vector<size_t> permutation;        // of the d kept coordinates, 0-based
  std::optional<std::vector<ExpVec>> unimodular;  // d x d, det = +-1

  static Flag identity(size_t d) {
    Flag f;
    f.ambient_dim = d;
    f.permutation.resize(d);
    for (size_t i = 0; i < d; ++i) f.permutation[i] = i;
    return f;
  }

  /// True when the valuation is the identity on dehomogenized exponents.
  bool is_trivial() const {
    if (dehomogenizing_index != 0 || unimodular) return false;
    for (size_t i = 0; i < permutation.size(); ++i)
      if (permutation[i] != i) return false;
    return true;
  }

  void validate() const {
    if (dehomogenizing_index > ambient_dim)
      throw PreconditionFailed("flag: dehomogenizing index out of range");
    if (permutation.size() != ambient_dim)
      throw PreconditionFailed("flag: permutation size mismatch");
    std::vector<bool> seen(ambient_dim, false);
    for (auto p : permutation) {
      if (p >= ambient_dim || seen[p]) throw PreconditionFailed("flag: not a permutation");
      seen[p] = true;
    }
    if (unimodular) {
      const auto& u = *unimodular;
      if (u.size() != ambient_dim) throw PreconditionFailed("flag: matrix shape");
      IntMat m;
      for (const auto& row : u) {
        if (row.size() != ambient_dim) throw PreconditionFailed("flag: matrix shape");
        IntVec r(row.begin(), row.end());
        m.push_back(r);
      }
      auto diag = smith_diagonal(m);
      Int det = 1;
      for (const auto& x : diag) det *= x;
      if (diag.size() != ambient_dim || det != 1)
        throw PreconditionFailed("flag: matrix is not unimodular");
    }
  }
};

/// Successive vanishing orders of a monomial section along the flag.
/// `section` is the dehomogenized exponent vector on chart 0; `m_times_bound`
/// is the homogeneous degree, reconstructing the dropped exponent.
inline ExpVec valuation(const ExpVec& section, std::int64_t m_times_bound, const Flag& flag) {
  size_t d = flag.ambient_dim;
  if (section.size() != d) throw DimensionMismatch("valuation: section dimension");
  std::int64_t s = coord_sum(section);
  if (s > m_times_bound || !all_nonnegative(section))
    throw PreconditionFailed("valuation: not a valid section exponent at this degree");
  // homogenize, then drop the flag's chart coordinate
  std::vector<std::int64_t> homog(d + 1);
  homog[0] = m_times_bound - s;
  for (size_t i = 0; i < d; ++i) homog[i + 1] = section[i];
  ExpVec kept;
  kept.reserve(d);
  for (size_t i = 0; i <= d; ++i)
    if (i != flag.dehomogenizing_index) kept.push_back(homog[i]);
  ExpVec permuted(d);
  for (size_t i = 0; i < d; ++i) permuted[i] = kept[flag.permutation[i]];
  if (!flag.unimodular) return permuted;
  ExpVec out(d, 0);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) out[i] += (*flag.unimodular)[i][j] * permuted[j];
  if (!all_nonnegative(out))
    throw InvalidFlag("valuation: transformed exponent left the nonnegative orthant");
  return out;
}

}  // namespace oklab
