#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oklab/okounkov.hpp"

using namespace oklab;

namespace {

GradedSeries complete_on_p2(std::int64_t k) {
  std::vector<QVec> v{{Rational(0), Rational(0)}, {Rational(k), Rational(0)},
                      {Rational(0), Rational(k)}};
  return GradedSeries::complete(hull(v), k);
}

GradedSeries complete_on_p3(std::int64_t k) {
  std::vector<QVec> v{{Rational(0), Rational(0), Rational(0)},
                      {Rational(k), Rational(0), Rational(0)},
                      {Rational(0), Rational(k), Rational(0)},
                      {Rational(0), Rational(0), Rational(k)}};
  return GradedSeries::complete(hull(v), k);
}

GradedSeries squares_series() { return GradedSeries::generated({{{0}, 1}, {{2}, 1}}); }

GradedSeries floor57() {
  return GradedSeries::rule("floor_ratio", {{"num", 5}, {"den", 7}, {"coord", 1}}, 2, 1);
}

Polytope floor57_target() {
  std::vector<QVec> v{{Rational(0), Rational(0)},
                      {Rational(5, 7), Rational(0)},
                      {Rational(5, 7), Rational(2, 7)},
                      {Rational(0), Rational(1)}};
  return hull(v);
}

}  // namespace

TEST_CASE("okounkov_body: complete O(1) on P^2 is the exact standard simplex") {
  OkounkovBody b = okounkov_body(complete_on_p2(1), Flag::identity(2), 5);
  CHECK(b.exact);
  CHECK(volume(b.body) == Rational(1, 2));
  CHECK(b.body.vertices.size() == 3);
}

TEST_CASE("okounkov_body: squares series has exact body [0,2] and lattice index 2") {
  OkounkovBody b = okounkov_body(squares_series(), Flag::identity(1), 6);
  CHECK(b.exact);
  CHECK(volume(b.body) == 2);
  REQUIRE(b.lattice.index.has_value());
  CHECK(*b.lattice.index == 2);  // SNF of {(0,1),(2,1)}
}

TEST_CASE("okounkov_body: floor-5/7 rule attains the cut simplex at m_max=70") {
  OkounkovBody b = okounkov_body(floor57(), Flag::identity(2), 70);
  CHECK_FALSE(b.exact);
  CHECK(b.body == floor57_target());
}

TEST_CASE("okounkov_body: inner approximations are monotone") {
  GradedSeries s = floor57();
  Flag f = Flag::identity(2);
  OkounkovBody b10 = okounkov_body(s, f, 10);
  OkounkovBody b25 = okounkov_body(s, f, 25);
  CHECK(contained_in(b10.body, b25.body));
  CHECK(contained_in(b25.body, floor57_target()));
}

TEST_CASE("volume_report: complete O(1) on P^2, law at m=200") {
  VolumeReport r = volume_report(complete_on_p2(1), Flag::identity(2), 200);
  REQUIRE(r.delta_lat.has_value());
  CHECK(*r.delta_lat == 1);
  // closed-form count: d!*#Gamma_m/m^2 = (m+1)(m+2)/m^2
  CHECK(r.count_estimates.last() == Rational(201 * 202, 200 * 200));
  REQUIRE(r.normalized_target.has_value());
  CHECK(*r.normalized_target == 1);
  Rational err = r.count_estimates.last() - 1;
  CHECK(err * 50 < 1);  // within 2%
  CHECK(r.hull_estimates.last() == 1);
}

TEST_CASE("volume_report: squares series normalized law") {
  VolumeReport r = volume_report(squares_series(), Flag::identity(1), 24);
  REQUIRE(r.delta_lat.has_value());
  CHECK(*r.delta_lat == 2);
  CHECK(r.count_estimates.last() == Rational(25, 24));  // (m+1)/m
  CHECK(r.hull_estimates.last() == 2);
  CHECK(*r.normalized_target == 1);  // 2*1 = d!*vol(Delta) = 2
}

TEST_CASE("volume_report: trivial series estimates vanish") {
  GradedSeries t = GradedSeries::generated({{{0, 0}, 1}});
  VolumeReport r = volume_report(t, Flag::identity(2), 10);
  CHECK(r.count_estimates.last() == Rational(2, 100));  // 2*1/m^2 at m=10
  CHECK(r.hull_estimates.last() == 0);
  CHECK_FALSE(r.delta_lat.has_value());
}

TEST_CASE("volume_report: empirical C/m bound for the normalized law") {
  VolumeReport r = volume_report(complete_on_p2(1), Flag::identity(2), 60);
  REQUIRE(r.normalized_target.has_value());
  Rational c_fit = 0;
  for (const auto& row : r.count_estimates.rows) {
    Rational err = row.value - *r.normalized_target;
    if (err < 0) err = -err;
    Rational scaled = err * Rational(row.index);
    c_fit = std::max(c_fit, scaled);
  }
  // reported, not asserted a priori; for the simplex, err*m = (3m+2)/m <= 5
  CHECK(c_fit <= 5);
  CHECK(c_fit >= 3);
}

TEST_CASE("restricted_volume: O(3) on P^3 to a coordinate plane") {
  VolumeReport r = restricted_volume(complete_on_p3(3), {2}, Flag::identity(2), 100);
  // closed form: d!*#/(m^2) with # = (3m+1)(3m+2)/2
  CHECK(r.count_estimates.last() == Rational(301 * 302, 100 * 100));
  Rational err = r.count_estimates.last() - 9;
  CHECK(err * 100 < 3 * 9);  // within 3% of target 9
  CHECK(r.hull_estimates.last() == 9);
}

TEST_CASE("restricted_volume: O(1) on P^2 to a line, and the point guard") {
  VolumeReport r = restricted_volume(complete_on_p2(1), {1}, Flag::identity(1), 50);
  CHECK(r.hull_estimates.last() == 1);
  CHECK_THROWS_AS(restricted_volume(complete_on_p2(1), {0, 1}, Flag::identity(0), 10),
                  PreconditionFailed);
}

TEST_CASE("asymptotic_intersection: complete O(1) is constant 1") {
  ConvergenceTable t = asymptotic_intersection(complete_on_p2(1), Flag::identity(2), 30);
  for (const auto& row : t.rows) CHECK(row.value == 1);
}

TEST_CASE("asymptotic_intersection: squares series is constant 2") {
  ConvergenceTable t = asymptotic_intersection(squares_series(), Flag::identity(1), 30);
  for (const auto& row : t.rows) CHECK(row.value == 2);
}

TEST_CASE("asymptotic_intersection: floor-5/7 hits 45/49 at m=140") {
  ConvergenceTable t = asymptotic_intersection(floor57(), Flag::identity(2), 140);
  CHECK(t.rows.back().value == Rational(45, 49));  // closed-form area, exact at 7|m
  // and within 2% on the tail
  Rational err = t.rows[t.rows.size() - 2].value - Rational(45, 49);
  if (err < 0) err = -err;
  CHECK(err * 50 < Rational(45, 49));
}

TEST_CASE("asymptotic_intersection requires (GF)") {
  GradedSeries line = GradedSeries::lambda(
      [](std::int64_t m) {
        ExpSet s;
        for (std::int64_t i = 0; i <= m; ++i) s.insert({i, 0});
        return s;
      },
      "rank-deficient", 2, 1);
  CHECK_THROWS_AS(asymptotic_intersection(line, Flag::identity(2), 10), PreconditionFailed);
}

TEST_CASE("check_fujita_identity: squares series has residual exactly 0 at every m") {
  FujitaIdentityReport rep = check_fujita_identity(squares_series(), Flag::identity(1), 40);
  CHECK(rep.delta == 2);
  CHECK(*rep.delta_lat == 2);
  CHECK_FALSE(rep.delta_mismatch);
  for (const auto& row : rep.residual_rows.rows) CHECK(row.value == 0);
  for (const auto& row : rep.vol_rows.rows) CHECK(row.value == 1);
}

TEST_CASE("check_fujita_identity: complete O(2) on P^2") {
  FujitaIdentityReport rep = check_fujita_identity(complete_on_p2(2), Flag::identity(2), 30);
  CHECK(rep.delta == 1);
  CHECK(*rep.delta_lat == 1);
  for (const auto& row : rep.residual_rows.rows) CHECK(row.value == 0);
  CHECK(rep.ain_rows.last() == 4);
}

TEST_CASE("check_fujita_identity: rank-deficient input is a precondition error") {
  GradedSeries line = GradedSeries::lambda(
      [](std::int64_t m) {
        ExpSet s;
        for (std::int64_t i = 0; i <= m; ++i) s.insert({i, 0});
        return s;
      },
      "rank-deficient", 2, 1);
  CHECK_THROWS_AS(check_fujita_identity(line, Flag::identity(2), 10), PreconditionFailed);
}

TEST_CASE("check_fujita_identity: floor-5/7 residual small at m=140") {
  FujitaIdentityReport rep = check_fujita_identity(floor57(), Flag::identity(2), 140);
  CHECK(rep.delta == 1);
  CHECK(rep.residual * 50 <= Rational(45, 49));  // within 2% of the closed form
}

TEST_CASE("homogeneity_check: exact for complete and generated modes, h in {1,2,3}") {
  for (std::int64_t h : {1, 2, 3}) {
    HomogeneityReport r1 = homogeneity_check(complete_on_p2(1), Flag::identity(2), h, 12);
    CHECK(r1.holds);
    CHECK(r1.exact_comparison);
    HomogeneityReport r2 = homogeneity_check(squares_series(), Flag::identity(1), h, 12);
    CHECK(r2.holds);
    CHECK(r2.exact_comparison);
    HomogeneityReport r3 = homogeneity_check(complete_on_p2(2), Flag::identity(2), h, 12);
    CHECK(r3.holds);
    CHECK(r3.exact_comparison);
  }
}

TEST_CASE("homogeneity_check: rule mode within slack") {
  HomogeneityReport r = homogeneity_check(floor57(), Flag::identity(2), 2, 42);
  CHECK(r.holds);
}

TEST_CASE("log_concavity_check: same-ray equality cases") {
  LogConcavityReport r = log_concavity_check(complete_on_p2(1), complete_on_p2(2),
                                             Flag::identity(2), 20);
  CHECK(r.holds);
  CHECK(r.equality);  // 9^(1/2) = 1 + 2
  CHECK(r.lhs_volume == 9);
  LogConcavityReport r2 =
      log_concavity_check(squares_series(), squares_series(), Flag::identity(1), 20);
  CHECK(r2.holds);
  CHECK(r2.equality);
}

TEST_CASE("log_concavity_check: strict case O(1) vs floor-5/7") {
  LogConcavityReport r = log_concavity_check(complete_on_p2(1), floor57(),
                                             Flag::identity(2), 42);
  CHECK(r.holds);
  CHECK_FALSE(r.equality);
  CHECK(r.certified);
}

TEST_CASE("positivity criterion: volume > 0 iff veronese-by-exponent is (GF)") {
  // even-degree complete series: e = 2, positive volume
  GradedSeries even = GradedSeries::rule("even_degrees", {}, 1, 1);
  std::int64_t e = exponent(even, 10);
  CHECK(e == 2);
  CHECK(gf_report(veronese(even, e), 5).is_gf);
  VolumeReport vr = volume_report(even, Flag::identity(1), 12);
  CHECK(vr.hull_estimates.last() > 0);
  // rank-deficient series: zero hull estimate, not (GF)
  GradedSeries line = GradedSeries::lambda(
      [](std::int64_t m) {
        ExpSet s;
        for (std::int64_t i = 0; i <= m; ++i) s.insert({i, 0});
        return s;
      },
      "rank-deficient", 2, 1);
  std::int64_t el = exponent(line, 10);
  CHECK_FALSE(gf_report(veronese(line, el), 8).is_gf);
  VolumeReport vl = volume_report(line, Flag::identity(2), 8);
  CHECK(vl.hull_estimates.last() == 0);
}
