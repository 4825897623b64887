// numeric.hpp
//
// The one place where anything non-exact happens: d-th roots for
// log-concavity comparisons. Roots are bracketed by directed rounding, so a
// reported "holds" is certified; ties fall back to exact algebra on rational
// roots. Equality with genuinely irrational roots cannot occur for d <= 3
// (the refinement loop would otherwise be cut off by the iteration cap and
// reported as unresolved rather than guessed).

#pragma once

#include <optional>
#include <vector>

#include "oklab/core.hpp"

namespace oklab {

struct RootCompareResult {
  bool holds = false;        // lhs^(1/d) >= sum_i rhs_i^(1/d)
  bool equality = false;     // certified exact equality
  bool resolved = true;      // false only if the iteration cap was hit
  unsigned digits_used = 0;  // refinement depth that settled the comparison
  Rational lhs_low;          // certified lower bound on lhs^(1/d)
  Rational rhs_high;         // certified upper bound on the sum
};

/// Decide lhs^(1/d) >= sum_i rhs_i^(1/d) with certified direction.
inline RootCompareResult compare_root_sum(const Rational& lhs,
                                          const std::vector<Rational>& rhs, unsigned d) {
  RootCompareResult res;
  // exact path: all roots rational
  {
    Rational lr, acc = 0;
    bool all_exact = exact_root(lhs, d, lr);
    for (const auto& r : rhs) {
      Rational rr;
      if (!exact_root(r, d, rr)) {
        all_exact = false;
        break;
      }
      acc += rr;
    }
    if (all_exact) {
      res.holds = lr >= acc;
      res.equality = lr == acc;
      res.lhs_low = lr;
      res.rhs_high = acc;
      return res;
    }
  }
  for (unsigned digits = 10; digits <= 320; digits *= 2) {
    Rational llo, lhi, sum_lo = 0, sum_hi = 0;
    root_bounds(lhs, d, digits, llo, lhi);
    for (const auto& r : rhs) {
      Rational rlo, rhi;
      root_bounds(r, d, digits, rlo, rhi);
      sum_lo += rlo;
      sum_hi += rhi;
    }
    res.digits_used = digits;
    res.lhs_low = llo;
    res.rhs_high = sum_hi;
    if (llo >= sum_hi) {
      res.holds = true;
      return res;
    }
    if (lhi < sum_lo) {
      res.holds = false;
      return res;
    }
  }
  res.resolved = false;  // irrational tie beyond the cap; see module notes
  return res;
}

}  // namespace oklab
