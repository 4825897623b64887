// reduced.hpp
//
// Reduced volume: growth of the degree-m sections on a coordinate subvariety
// twisted by the restricted asymptotic multiplier ideal, and the three-way
// comparison with the asymptotic intersection number and the normalized
// restricted volume.

#pragma once

#include <vector>

#include "oklab/okounkov.hpp"
#include "oklab/star.hpp"
#include "oklab/table.hpp"

namespace oklab {

/// Rows (m, d! * #{degree-m monomials on V inside J(||mL||)|_V} / m^d), with
/// d = dim V. Membership on V is tested through the zero-padded exponent, so
/// large multiplier ideals stay region-backed.
inline ConvergenceTable reduced_volume(const GradedSeries& ambient,
                                       const std::vector<size_t>& J, std::int64_t m_max,
                                       std::int64_t k_cap = 8) {
  if (J.size() >= ambient.dim())
    throw PreconditionFailed("reduced_volume: dimension-zero subvariety unsupported");
  size_t d_amb = ambient.dim();
  size_t dv = d_amb - J.size();
  std::vector<bool> pin_homog(d_amb + 1, false);  // homogeneous coordinates 0..d
  for (auto j : J) {
    if (j >= d_amb) throw PreconditionFailed("reduced_volume: coordinate out of range");
    pin_homog[j + 1] = true;
  }
  Rational dfact(factorial(static_cast<unsigned>(dv)));
  ConvergenceTable table;
  table.name = "reduced_volume";
  table.value_label = "d!*sections(V, J(||mL||))/m^d";
  std::int64_t b = ambient.degree_bound();
  for (std::int64_t m = 1; m <= m_max; ++m) {
    if (!ambient.known_nonempty(m)) continue;
    MonomialIdeal jm = asymptotic_multiplier_ideal(ambient, m, k_cap).ideal;
    // count monomials of homogeneous degree m*b supported off the pinned
    // coordinates whose padded exponent lies in the ideal
    const NewtonRegion* region = jm.howald_region();
    std::vector<NewtonRegion::IntFacet> fast;
    if (region) fast = region->int_facets();
    auto member = [&](const ExpVec& padded) {
      if (!fast.empty()) {
        // v + 1 strictly inside the region; positivity is automatic
        for (const auto& f : fast) {
          __int128 dot = 0;
          for (size_t i = 0; i <= d_amb; ++i)
            dot += static_cast<__int128>(f.a[i]) * (padded[i] + 1);
          bool trivial = true;
          for (auto c : f.a)
            if (c != 0) trivial = false;
          if (trivial) continue;
          if (dot * f.den <= static_cast<__int128>(f.num)) return false;
        }
        return true;
      }
      return jm.contains(padded);
    };
    std::int64_t count = 0;
    ExpVec padded(d_amb + 1, 0);
    std::vector<size_t> kept;
    for (size_t i = 0; i <= d_amb; ++i)
      if (!pin_homog[i]) kept.push_back(i);
    std::function<void(size_t, std::int64_t)> rec = [&](size_t idx, std::int64_t left) {
      if (idx + 1 == kept.size()) {
        padded[kept[idx]] = left;
        if (member(padded)) ++count;
        padded[kept[idx]] = 0;
        return;
      }
      for (std::int64_t t = 0; t <= left; ++t) {
        padded[kept[idx]] = t;
        rec(idx + 1, left - t);
      }
      padded[kept[idx]] = 0;
    };
    rec(0, m * b);
    table.add(m, dfact * Rational(count) / pow_rat(Rational(m), static_cast<unsigned>(dv)));
  }
  if (table.empty()) throw EmptyInput("reduced_volume: no sections up to m_max");
  return table;
}

struct MuAinReport {
  ConvergenceTable mu_rows;
  ConvergenceTable ain_rows;
  ConvergenceTable dvol_rows;      // delta * normalized restricted volume
  Int delta = 0;
  Rational mu = 0, ain = 0, dvol = 0;   // final rows
  Rational residual_mu_ain = 0;
  Rational residual_mu_dvol = 0;
  Rational residual_ain_dvol = 0;
  bool mu_ge_ain_rowwise = true;   // the one-sided inequality, row by row
};

/// Three estimators of the same limit, refused without a comparison witness
/// on the ambient series.
inline MuAinReport mu_equals_ain_check(const GradedSeries& ambient,
                                       const std::vector<size_t>& J, std::int64_t m_max,
                                       std::int64_t star_p_max = 8, std::int64_t k_cap = 8) {
  StarWitnessReport star = check_star(ambient, star_p_max, k_cap);
  if (!star.witness)
    throw PreconditionFailed(
        "mu_equals_ain_check: refused, ambient series has no comparison witness");
  GradedSeries restricted = restrict_series(ambient, J);
  size_t dv = restricted.dim();
  if (dv == 0) throw PreconditionFailed("mu_equals_ain_check: zero-dimensional subvariety");
  MuAinReport rep;
  rep.mu_rows = reduced_volume(ambient, J, m_max, k_cap);
  Flag f = Flag::identity(dv);
  rep.ain_rows = asymptotic_intersection(restricted, f, m_max);
  GFReport gf = gf_report(restricted, m_max);
  if (!gf.is_gf)
    throw PreconditionFailed("mu_equals_ain_check: restricted series fails (GF)");
  rep.delta = *gf.degree;
  VolumeReport vr = volume_report(restricted, f, m_max);
  Rational dfact(factorial(static_cast<unsigned>(dv)));
  rep.dvol_rows.name = "delta*vol";
  for (size_t i = 0; i < vr.body_volume_sweep.size(); ++i) {
    Rational vol_m = vr.delta_lat
                         ? dfact * vr.body_volume_sweep[i] / Rational(*vr.delta_lat)
                         : Rational(0);
    rep.dvol_rows.add(vr.count_estimates.rows[i].index, Rational(rep.delta) * vol_m);
  }
  rep.mu = rep.mu_rows.last();
  rep.ain = rep.ain_rows.last();
  rep.dvol = rep.dvol_rows.last();
  auto absdiff = [](const Rational& a, const Rational& b) {
    return a >= b ? a - b : b - a;
  };
  rep.residual_mu_ain = absdiff(rep.mu, rep.ain);
  rep.residual_mu_dvol = absdiff(rep.mu, rep.dvol);
  rep.residual_ain_dvol = absdiff(rep.ain, rep.dvol);
  // the one-sided lemma: mu >= ain on every common row
  size_t rows = std::min(rep.mu_rows.rows.size(), rep.ain_rows.rows.size());
  for (size_t i = 0; i < rows; ++i)
    if (rep.mu_rows.rows[i].index == rep.ain_rows.rows[i].index &&
        rep.mu_rows.rows[i].value < rep.ain_rows.rows[i].value)
      rep.mu_ge_ain_rowwise = false;
  return rep;
}

}  // namespace oklab
