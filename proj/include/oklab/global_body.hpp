// global_body.hpp
//
// The global cone of a multi-graded series: generators (nu(s), m) over a
// truncation box, fibers over grading vectors, the fiber-volume scan with
// homogeneity / log-concavity certificates, the sub-series W^(p), and the
// uniform multi-graded Fujita check.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "oklab/cone.hpp"
#include "oklab/fujita.hpp"
#include "oklab/multigraded.hpp"
#include "oklab/numeric.hpp"
#include "oklab/okounkov.hpp"
#include "oklab/series.hpp"

namespace oklab {

struct GFPrimeReport {
  bool ok = false;
  std::string failed_clause;  // names (i)/(ii)/(iii) on failure
  SupportCone support;
  IdxVec witness_a0;
};

/// Condition (GF') for a multi-graded series, tested empirically on a box:
/// (i) full-dimensional support, (ii) nonvanishing along the witness ray,
/// (iii) some interior integral ray induces a generically finite series.
inline GFPrimeReport check_gf_prime(const MultiGradedSeries& w, std::int64_t box,
                                    std::int64_t k_max) {
  GFPrimeReport rep;
  rep.support = support_cone(w, box);
  if (!rep.support.interior_nonempty) {
    rep.failed_clause = "(GF')(i): support cone has empty interior";
    return rep;
  }
  // candidate interior integral vectors, smallest total degree first
  std::vector<IdxVec> candidates;
  for (const auto& m : rep.support.nonempty_indices) {
    QVec q(m.size());
    for (size_t i = 0; i < m.size(); ++i) q[i] = m[i];
    if (rep.support.cone.contains_strictly(q)) candidates.push_back(m);
  }
  std::sort(candidates.begin(), candidates.end(), [](const IdxVec& a, const IdxVec& b) {
    auto ta = total_degree(a), tb = total_degree(b);
    if (ta != tb) return ta < tb;
    return a < b;
  });
  if (candidates.empty()) {
    rep.failed_clause = "(GF')(iii): no interior integral index in the box";
    return rep;
  }
  for (const auto& a : candidates) {
    GradedSeries diag = w.diagonal(a);
    bool gf = false;
    try {
      gf = gf_report(diag, k_max).is_gf;
    } catch (const EmptyInput&) {
      continue;
    }
    if (!gf) continue;
    // clause (ii) on the witness ray: nonvanishing on the tail of the range
    bool tail_ok = true;
    for (std::int64_t k = std::max<std::int64_t>(1, k_max / 2); k <= k_max; ++k)
      if (!diag.nonempty(k)) tail_ok = false;
    if (!tail_ok) {
      rep.failed_clause = "(GF')(ii): W_{k a} vanishes in the tested tail";
      return rep;
    }
    rep.ok = true;
    rep.witness_a0 = a;
    return rep;
  }
  rep.failed_clause = "(GF')(iii): no interior ray is generically finite in the box";
  return rep;
}

struct GlobalBody {
  PolyCone cone;            // in R^(d+r), x-block first
  SupportCone support;      // projection data onto the grading block
  std::int64_t truncation = 0;
  size_t dim = 0;           // d
  size_t arity = 0;         // r
};

/// Cone over {(nu(s), m)} for indices in the truncation box.
inline GlobalBody global_body(const MultiGradedSeries& w, const Flag& flag, std::int64_t box) {
  if (flag.ambient_dim != w.dim()) throw DimensionMismatch("global_body: flag dimension");
  flag.validate();
  GFPrimeReport gfp = check_gf_prime(w, box, std::max<std::int64_t>(2, box));
  if (!gfp.ok) throw PreconditionFailed("global_body: " + gfp.failed_clause);
  GlobalBody out;
  out.support = gfp.support;
  out.truncation = box;
  out.dim = w.dim();
  out.arity = w.arity();
  std::vector<ExpVec> gens;
  for (const auto& m : gfp.support.nonempty_indices) {
    const ExpSet& sec = w.at(m);
    std::int64_t hdeg = w.homog_degree(m);
    // extreme valuation vectors suffice to span the slice
    ExpSet nu;
    for (const auto& a : sec) nu.insert(valuation(a, hdeg, flag));
    for (const auto& v : extreme_points(nu)) {
      ExpVec g(v);
      for (auto mi : m) g.push_back(mi);
      gens.push_back(std::move(g));
    }
  }
  out.cone = cone_from_generators(gens);
  return out;
}

/// Fiber of the global cone over a grading vector in the support cone. The
/// identification with the ray's own Okounkov body is the theorem being
/// checked for interior rays; the closed cone extends it continuously to the
/// boundary, and out-of-support vectors are rejected.
inline Polytope fiber_body(const GlobalBody& gb, const QVec& a) {
  if (a.size() != gb.arity) throw DimensionMismatch("fiber_body: grading arity");
  if (!gb.support.cone.contains(a))
    throw PreconditionFailed("fiber_body: grading vector outside the support cone");
  return cone_fiber(gb.cone, gb.dim, a);
}

struct FiberScanRow {
  QVec a;
  Rational volume;
};

struct FiberScanReport {
  std::vector<FiberScanRow> rows;
  bool homogeneity_ok = true;       // vol(fiber(2a)) == 2^d vol(fiber(a)), exact
  bool log_concavity_ok = true;     // midpoint inequality with certified rounding
  bool all_certified = true;
  std::vector<std::string> notes;
};

/// Fiber volumes on a grid, with the homogeneity and discrete log-concavity
/// certificates from the corollary this models.
inline FiberScanReport fiber_volume_scan(const GlobalBody& gb, const std::vector<QVec>& grid) {
  FiberScanReport rep;
  unsigned d = static_cast<unsigned>(gb.dim);
  for (const auto& a : grid) {
    Polytope f = fiber_body(gb, a);
    rep.rows.push_back({a, volume(f)});
  }
  // exact homogeneity on doubled grid points
  for (const auto& row : rep.rows) {
    QVec doubled(row.a);
    for (auto& x : doubled) x *= 2;
    Polytope f2 = fiber_body(gb, doubled);
    if (volume(f2) != pow_rat(Rational(2), d) * row.volume) {
      rep.homogeneity_ok = false;
      std::string pt;
      for (const auto& x : row.a) pt += (pt.empty() ? "" : ",") + rational_string(x);
      rep.notes.push_back("homogeneity failed at (" + pt + ")");
    }
  }
  // discrete log-concavity between consecutive grid points
  Rational half_pow = pow_rat(Rational(1, 2), d);
  for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    QVec mid(rep.rows[i].a.size());
    for (size_t j = 0; j < mid.size(); ++j)
      mid[j] = (rep.rows[i].a[j] + rep.rows[i + 1].a[j]) / 2;
    Polytope fm = fiber_body(gb, mid);
    Rational vm = volume(fm);
    auto cmp = compare_root_sum(
        vm, {rep.rows[i].volume * half_pow, rep.rows[i + 1].volume * half_pow}, d);
    if (!cmp.resolved) rep.all_certified = false;
    if (!cmp.holds) {
      rep.log_concavity_ok = false;
      rep.notes.push_back("log-concavity failed between grid points " + std::to_string(i) +
                          " and " + std::to_string(i + 1));
    }
  }
  return rep;
}

/// The sub-multi-graded series W^(p): unions of Minkowski products over
/// compositions into parts of total degree p; zero off the divisible locus.
inline MultiGradedSeries multigraded_subseries(const MultiGradedSeries& w, std::int64_t p) {
  if (p < 1) throw PreconditionFailed("multigraded_subseries: p >= 1 required");
  size_t r = w.arity();
  // parts u with |u| = p are enumerated lazily against each queried index
  auto memo = std::make_shared<std::map<IdxVec, ExpSet>>();
  auto mu = std::make_shared<std::mutex>();
  MultiGradedSeries base = w;
  // a recursive lambda via shared std::function
  auto compute = std::make_shared<std::function<ExpSet(const IdxVec&)>>();
  *compute = [memo, mu, base, p, r, compute](const IdxVec& m) -> ExpSet {
    std::int64_t total = total_degree(m);
    if (total == 0) return ExpSet{ExpVec(base.dim(), 0)};
    if (total % p != 0) return {};
    {
      std::lock_guard<std::mutex> lock(*mu);
      auto it = memo->find(m);
      if (it != memo->end()) return it->second;
    }
    ExpSet acc;
    // enumerate parts u <= m with |u| = p
    IdxVec u(r, 0);
    std::function<void(size_t, std::int64_t)> parts = [&](size_t c, std::int64_t left) {
      if (c == r) {
        if (left != 0) return;
        const ExpSet& wu = base.at(u);
        if (wu.empty()) return;
        IdxVec rest(r);
        for (size_t i = 0; i < r; ++i) rest[i] = m[i] - u[i];
        ExpSet prev = (*compute)(rest);
        if (prev.empty()) return;
        ExpSet sum = minkowski_sum(prev, wu);
        acc.insert(sum.begin(), sum.end());
        return;
      }
      std::int64_t cap = std::min(left, m[c]);
      for (std::int64_t v = 0; v <= cap; ++v) {
        u[c] = v;
        parts(c + 1, left - v);
      }
    };
    parts(0, p);
    // containment in W_m is part of the definition; audit it
    const ExpSet& wm = base.at(m);
    for (const auto& x : acc)
      if (!wm.count(x))
        throw AuditFailure("W^(p) escaped W at " + idx_string(m));
    std::lock_guard<std::mutex> lock(*mu);
    auto [it, inserted] = memo->emplace(m, std::move(acc));
    return it->second;
  };
  return MultiGradedSeries::lambda(
      [compute](const IdxVec& m) { return (*compute)(m); },
      "subseries(p=" + std::to_string(p) + "," + w.describe() + ")", w.dim(), w.arity(),
      w.homog_degree(IdxVec(w.arity(), 1)),
      [base](const IdxVec& m) { return base.homog_degree(m); });
}

struct MultiFujitaRow {
  std::int64_t p = 0;
  IdxVec a;
  std::int64_t h = 0;        // truncation step used (index h*a)
  Rational ratio = 0;        // card(W^(p)_{h a}) / card(W_{h a})
  Rational ratio_prev = 0;   // the same ratio one admissible step earlier
  bool still_rising = false; // finite-truncation artifact flag
  bool achieved = false;
};

struct MultiFujitaReport {
  bool p0_reached = false;
  std::int64_t p0 = 0;
  std::vector<MultiFujitaRow> table;
  std::vector<std::pair<IdxVec, std::int64_t>> per_a_p0;  // smallest good p per ray
};

/// Uniform Fujita approximation over a grid of integral rays: the smallest p
/// whose matched-truncation dimension ratio is within epsilon of 1 for every
/// ray simultaneously. "p0 not reached" is an outcome, not an exception.
inline MultiFujitaReport multigraded_fujita_check(const MultiGradedSeries& w,
                                                  const std::vector<IdxVec>& grid,
                                                  const Rational& epsilon, std::int64_t p_cap,
                                                  std::int64_t degree_cap) {
  if (grid.empty()) throw EmptyInput("multigraded_fujita_check: empty grid");
  GFPrimeReport gfp = check_gf_prime(w, degree_cap, std::max<std::int64_t>(2, degree_cap));
  if (!gfp.ok) throw PreconditionFailed("multigraded_fujita_check: " + gfp.failed_clause);
  for (const auto& a : grid) {
    QVec q(a.size());
    for (size_t i = 0; i < a.size(); ++i) q[i] = a[i];
    if (!gfp.support.cone.contains_strictly(q))
      throw PreconditionFailed("multigraded_fujita_check: grid point " + idx_string(a) +
                               " is not interior to the support");
  }
  MultiFujitaReport rep;
  std::map<IdxVec, std::int64_t> first_good;
  for (std::int64_t p = 1; p <= p_cap && !rep.p0_reached; ++p) {
    MultiGradedSeries wp = multigraded_subseries(w, p);
    bool all_good = true;
    for (const auto& a : grid) {
      std::int64_t na = total_degree(a);
      std::int64_t g = std::gcd(p, na);
      std::int64_t step = p / g;  // smallest h with p | h*|a|
      std::int64_t h = (degree_cap / (step * na)) * step;
      MultiFujitaRow row;
      row.p = p;
      row.a = a;
      if (h < 1) {
        row.ratio = 0;
        row.achieved = false;
        all_good = false;
        rep.table.push_back(row);
        continue;
      }
      row.h = h;
      IdxVec idx = idx_scale(a, h);
      const ExpSet& full = w.at(idx);
      const ExpSet& sub = wp.at(idx);
      if (full.empty()) {
        row.ratio = 0;
        row.achieved = false;
      } else {
        row.ratio = Rational(sub.size(), full.size());
        Rational gap = 1 - row.ratio;
        row.achieved = (gap < epsilon);
        // distinguish a genuinely short ratio from one still climbing in the
        // truncation: compare against the previous admissible step
        if (h > step) {
          IdxVec prev_idx = idx_scale(a, h - step);
          const ExpSet& pf = w.at(prev_idx);
          const ExpSet& ps = wp.at(prev_idx);
          if (!pf.empty()) {
            row.ratio_prev = Rational(ps.size(), pf.size());
            row.still_rising = (row.ratio > row.ratio_prev);
          }
        }
      }
      if (row.achieved && !first_good.count(a)) first_good[a] = p;
      if (!row.achieved) all_good = false;
      rep.table.push_back(row);
    }
    if (all_good) {
      rep.p0_reached = true;
      rep.p0 = p;
    }
  }
  for (const auto& [a, p] : first_good) rep.per_a_p0.push_back({a, p});
  return rep;
}

}  // namespace oklab
