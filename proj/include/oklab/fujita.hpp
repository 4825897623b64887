// fujita.hpp
//
// Single-graded Fujita approximation: the images T_{k,p} of symmetric powers
// (k-fold Minkowski sums in the model) and the search for the degree p0 at
// which they capture the volume up to a prescribed epsilon.

#pragma once

#include <vector>

#include "oklab/series.hpp"
#include "oklab/table.hpp"

namespace oklab {

/// T_{k,p}: the k-fold Minkowski sum of the degree-p sections. Contained in
/// S_{kp} by multiplicativity; the containment is asserted.
inline ExpSet tkp(const GradedSeries& s, std::int64_t k, std::int64_t p) {
  if (k < 1 || p < 1) throw PreconditionFailed("tkp: k,p >= 1 required");
  const ExpSet& sp = s.at(p);
  if (sp.empty()) throw EmptyInput("tkp: S_p is empty");
  ExpSet t = sp;
  for (std::int64_t i = 2; i <= k; ++i) t = minkowski_sum(t, sp);
  const ExpSet& skp = s.at(k * p);
  for (const auto& v : t)
    if (!skp.count(v))
      throw AuditFailure("tkp: T_{k,p} escaped S_{kp} (multiplicativity violated)");
  return t;
}

struct FujitaReport {
  std::int64_t p = 0;          // winning degree (or the last one tried)
  bool p0_reached = false;
  ConvergenceTable ratios;     // k -> card(T_{k,p}) / card(S_{kp}) for the winning p
  Rational limit_estimate = 0; // d! card(T_{k_cap,p}) / (k_cap p)^d
  Rational achieved_epsilon = 0;
  // per-p summary rows: (p, limit estimate, reference estimate, achieved eps)
  std::vector<std::tuple<std::int64_t, Rational, Rational, Rational>> per_p;
  // per-p count tables, for the monotonicity property
  std::vector<std::pair<std::int64_t, std::vector<size_t>>> counts;
};

/// Smallest p <= p_cap whose truncated symmetric-power estimate comes within
/// d!*epsilon of the series' own count estimate at the same degree k_cap*p
/// (matched truncations keep the comparison like-for-like). A missing p0 is
/// an explicit outcome, not an exception.
inline FujitaReport fujita_report(const GradedSeries& s, const Rational& epsilon,
                                  std::int64_t p_cap, std::int64_t k_cap) {
  if (p_cap < 1 || k_cap < 1) throw PreconditionFailed("fujita_report: caps must be >= 1");
  size_t d = s.dim();
  Rational dfact(factorial(static_cast<unsigned>(d)));
  FujitaReport rep;
  for (std::int64_t p = 1; p <= p_cap; ++p) {
    const ExpSet& sp = s.at(p);
    if (sp.empty()) continue;
    ConvergenceTable ratios;
    ratios.name = "tkp_ratio(p=" + std::to_string(p) + ")";
    ratios.index_label = "k";
    ratios.value_label = "card(T_{k,p})/card(S_{kp})";
    std::vector<size_t> count_row;
    ExpSet t = sp;
    Rational limit_est;
    for (std::int64_t k = 1; k <= k_cap; ++k) {
      if (k > 1) t = minkowski_sum(t, sp);
      const ExpSet& skp = s.at(k * p);
      for (const auto& v : t)
        if (!skp.count(v))
          throw AuditFailure("fujita_report: T_{k,p} escaped S_{kp}");
      ratios.add(k, Rational(t.size(), skp.size()));
      count_row.push_back(t.size());
      if (k == k_cap)
        limit_est = dfact * Rational(t.size()) /
                    pow_rat(Rational(k * p), static_cast<unsigned>(d));
    }
    std::int64_t ref_degree = k_cap * p;
    Rational reference = dfact * Rational(s.at(ref_degree).size()) /
                         pow_rat(Rational(ref_degree), static_cast<unsigned>(d));
    Rational achieved = (reference - limit_est) / dfact;
    rep.per_p.push_back({p, limit_est, reference, achieved});
    rep.counts.push_back({p, count_row});
    if (!rep.p0_reached) {
      rep.p = p;
      rep.ratios = ratios;
      rep.limit_estimate = limit_est;
      rep.achieved_epsilon = achieved;
      if (achieved <= epsilon) rep.p0_reached = true;
    }
  }
  return rep;
}

}  // namespace oklab
