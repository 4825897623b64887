// valuation.hpp
//
// Toric divisorial valuations v(x^a) = <w, a> on homogeneous exponents, the
// asymptotic order of vanishing along a series, and the boundedness /
// sup-ratio checks available once a comparison witness exists.

#pragma once

#include <optional>

#include "oklab/star.hpp"
#include "oklab/table.hpp"

namespace oklab {

struct MonomialValuation {
  ExpVec weights;  // in N^(d+1), primitive, not all zero

  void validate(size_t nvars) const {
    if (weights.size() != nvars)
      throw DimensionMismatch("valuation weights: wrong variable count");
    if (!all_nonnegative(weights))
      throw PreconditionFailed("valuation weights must be nonnegative");
    std::int64_t g = 0;
    for (auto w : weights) g = std::gcd(g, w);
    if (g != 1) throw PreconditionFailed("valuation weights must be primitive and nonzero");
  }

  Int apply(const ExpVec& a) const {
    Int s = 0;
    for (size_t i = 0; i < weights.size(); ++i) s += Int(weights[i]) * a[i];
    return s;
  }
};

/// v(b_p) without materializing the ideal: the minimum weight over the
/// homogenized degree-p sections.
inline Int base_ideal_valuation(const GradedSeries& s, std::int64_t p,
                                const MonomialValuation& v) {
  const ExpSet& sp = s.at(p);
  if (sp.empty()) throw EmptyInput("base_ideal_valuation: empty degree");
  std::int64_t deg = p * s.degree_bound();
  std::optional<Int> best;
  for (const auto& a : sp) {
    Int val = Int(v.weights[0]) * (deg - coord_sum(a));
    for (size_t i = 0; i < a.size(); ++i) val += Int(v.weights[i + 1]) * a[i];
    if (!best || val < *best) best = val;
  }
  return *best;
}

struct AsymptoticOrderReport {
  ConvergenceTable per_p;  // rows (p, v(b_p)/p)
  Rational infimum = 0;
};

/// Asymptotic order of vanishing: v(b_p)/p along the section semigroup with
/// its running infimum (the limit coincides with the inf).
inline AsymptoticOrderReport asymptotic_order(const GradedSeries& s,
                                              const MonomialValuation& v,
                                              std::int64_t p_max) {
  v.validate(s.dim() + 1);
  AsymptoticOrderReport rep;
  rep.per_p.name = "asymptotic_order";
  rep.per_p.index_label = "p";
  rep.per_p.value_label = "v(b_p)/p";
  std::optional<Rational> inf;
  for (std::int64_t p = 1; p <= p_max; ++p) {
    if (s.at(p).empty()) continue;
    Rational row = Rational(base_ideal_valuation(s, p, v)) / p;
    rep.per_p.add(p, row);
    if (!inf || row < *inf) inf = row;
  }
  if (!inf) throw EmptyInput("asymptotic_order: no sections up to p_max");
  rep.infimum = *inf;
  return rep;
}

struct ValuationChecksReport {
  bool v_bounded_ok = true;      // inf 0 forces v(b_p) <= <w, witness>
  bool v_bounded_applicable = false;
  bool sup_ratio_ok = false;     // |sup v(J_p)/p - inf v(b_p)/p| <= slack
  Rational sup_ratio = 0;
  Rational infimum = 0;
  Rational slack = 0;
  ExpVec witness;
};

/// The two valuation-theoretic consequences of the comparison property:
/// boundedness of v(b_p) when the asymptotic order vanishes, and the
/// sup-ratio identity for the multiplier ideals.
inline ValuationChecksReport valuation_checks(const GradedSeries& s,
                                              const MonomialValuation& v,
                                              std::int64_t p_max, std::int64_t k_cap = 8) {
  v.validate(s.dim() + 1);
  StarWitnessReport star = check_star(s, p_max, k_cap);
  if (!star.witness)
    throw PreconditionFailed("valuation_checks: refused, no comparison witness");
  ValuationChecksReport rep;
  rep.witness = *star.witness;
  AsymptoticOrderReport order = asymptotic_order(s, v, p_max);
  rep.infimum = order.infimum;
  Int witness_weight = v.apply(rep.witness);
  rep.slack = Rational(witness_weight) / p_max;
  if (order.infimum == 0) {
    rep.v_bounded_applicable = true;
    for (std::int64_t p = 1; p <= p_max; ++p) {
      if (s.at(p).empty()) continue;
      if (base_ideal_valuation(s, p, v) > witness_weight) rep.v_bounded_ok = false;
    }
  }
  std::optional<Rational> sup;
  for (std::int64_t p = 1; p <= p_max; ++p) {
    if (s.at(p).empty()) continue;
    MonomialIdeal j = asymptotic_multiplier_ideal(s, p, k_cap).ideal;
    Rational row = j.is_zero() ? Rational(0) : Rational(j.valuation_min(v.weights)) / p;
    if (!sup || row > *sup) sup = row;
  }
  rep.sup_ratio = *sup;
  Rational gap = rep.sup_ratio - rep.infimum;
  if (gap < 0) gap = -gap;
  rep.sup_ratio_ok = (gap <= rep.slack);
  return rep;
}

}  // namespace oklab
