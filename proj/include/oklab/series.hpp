// series.hpp
//
// The computable model of a graded linear series: a rule assigning each
// degree m a finite set of dehomogenized exponent vectors, multiplicative
// under Minkowski sum. Modes: complete (lattice points of a dilated
// polytope), generated (semigroup of weighted generators), rule (named
// integer-parameter predicates, the home of irrational-slope examples),
// explicit tables, and structural wrappers (veronese / restriction / sum).

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "oklab/core.hpp"
#include "oklab/errors.hpp"
#include "oklab/expvec.hpp"
#include "oklab/flag.hpp"
#include "oklab/lattice.hpp"
#include "oklab/polytope.hpp"

namespace oklab {

struct SeriesLimits {
  std::int64_t enumeration_cap = 60'000'000;  // lattice scan budget per degree
  std::int64_t audit_degree = 16;             // default multiplicativity audit depth
};

inline SeriesLimits& series_limits() {
  static SeriesLimits limits;
  return limits;
}

namespace detail {

/// Exact floor(m*num/den - sqrt(m)) for the irrational-slope rules.
inline std::int64_t floor_ratio_minus_sqrt(std::int64_t m, std::int64_t num, std::int64_t den) {
  if (m == 0) return 0;
  Int s = isqrt(Int(m));
  std::int64_t t = static_cast<std::int64_t>(floor_div(Int(m) * num - den * s, Int(den))) - 2;
  auto ok = [&](std::int64_t cand) {
    // den*sqrt(m) <= m*num - den*cand  and  den*sqrt(m) > m*num - den*(cand+1)
    Int a = Int(m) * num - Int(den) * cand;
    if (a < 0) return false;
    if (Int(den) * den * m > a * a) return false;
    Int b = a - den;
    return b < 0 || Int(den) * den * m > b * b;
  };
  while (!ok(t)) ++t;
  return t;
}

inline void enumerate_simplex(size_t dim, std::int64_t budget, ExpVec& cur, size_t coord,
                              const std::function<void(const ExpVec&)>& emit) {
  if (coord == dim) {
    emit(cur);
    return;
  }
  for (std::int64_t v = 0; v <= budget; ++v) {
    cur[coord] = v;
    enumerate_simplex(dim, budget - v, cur, coord + 1, emit);
  }
  cur[coord] = 0;
}

}  // namespace detail

class GradedSeries;

namespace series_modes {

struct Complete {
  Polytope polytope;  // rational polytope in the nonnegative orthant (may be empty)
};

struct Generated {
  std::vector<std::pair<ExpVec, std::int64_t>> gens;  // (exponent, degree)
};

struct Rule {
  std::string name;
  std::map<std::string, std::int64_t> params;
};

struct Explicit {
  std::map<std::int64_t, ExpSet> table;
};

struct Lambda {
  std::function<ExpSet(std::int64_t)> eval;
  std::string label;
};

}  // namespace series_modes

struct SeriesImpl;

class GradedSeries {
 public:
  GradedSeries() = default;

  static GradedSeries complete(Polytope p, std::int64_t degree_bound);
  static GradedSeries generated(std::vector<std::pair<ExpVec, std::int64_t>> gens);
  static GradedSeries rule(std::string name, std::map<std::string, std::int64_t> params,
                           size_t dim, std::int64_t degree_bound);
  static GradedSeries explicit_table(std::map<std::int64_t, ExpSet> table, size_t dim,
                                     std::int64_t degree_bound);
  static GradedSeries lambda(std::function<ExpSet(std::int64_t)> eval, std::string label,
                             size_t dim, std::int64_t degree_bound);

  size_t dim() const;
  std::int64_t degree_bound() const;
  std::string describe() const;

  /// Cached per-degree section set; thread-safe compute-then-publish.
  const ExpSet& at(std::int64_t m) const;
  bool nonempty(std::int64_t m) const { return !at(m).empty(); }

  /// Exact Okounkov body for complete/generated modes, nullopt otherwise.
  std::optional<Polytope> exact_body() const;

  /// Extreme points of conv(S_m). Complete series over integrally dilating
  /// polytopes read them off the vertices without enumerating S_m.
  std::vector<ExpVec> extreme_sections(std::int64_t m) const;

  /// Nonemptiness, using the same shortcut where available.
  bool known_nonempty(std::int64_t m) const;

  bool is_complete_mode() const;
  bool is_generated_mode() const;

  /// Throws AuditFailure naming the violating (k, l, exponent) triple.
  void audit_multiplicativity(std::int64_t working_degree) const;

  bool valid() const { return impl_ != nullptr; }

 private:
  explicit GradedSeries(std::shared_ptr<SeriesImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<SeriesImpl> impl_;

  friend GradedSeries veronese(const GradedSeries&, std::int64_t);
  friend GradedSeries restrict_series(const GradedSeries&, const std::vector<size_t>&);
  friend GradedSeries sum_series(const GradedSeries&, const GradedSeries&);
  friend struct SeriesImpl;
};

struct SeriesImpl {
  size_t dim = 0;
  std::int64_t bound = 1;
  std::string label;
  std::variant<series_modes::Complete, series_modes::Generated, series_modes::Rule,
               series_modes::Explicit, series_modes::Lambda>
      mode;

  mutable std::mutex mu;
  mutable std::map<std::int64_t, ExpSet> cache;

  ExpSet compute(std::int64_t m, const GradedSeries& self) const;
  ExpSet enumerate_polytope_points(const Polytope& p, std::int64_t m) const;
};

inline const ExpSet& GradedSeries::at(std::int64_t m) const {
  if (!impl_) throw std::logic_error("GradedSeries: empty handle");
  if (m < 0) throw PreconditionFailed("series degree must be nonnegative");
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->cache.find(m);
    if (it != impl_->cache.end()) return it->second;
  }
  ExpSet fresh = impl_->compute(m, *this);
  // validate the invariants before publishing
  for (const auto& a : fresh) {
    if (a.size() != impl_->dim)
      throw AuditFailure("series: cached exponent of wrong dimension at degree " +
                         std::to_string(m));
    if (!all_nonnegative(a) || coord_sum(a) > m * impl_->bound)
      throw AuditFailure("series: exponent violates degree bound at degree " +
                         std::to_string(m));
  }
  if (m == 0) {
    ExpSet origin{ExpVec(impl_->dim, 0)};
    if (fresh != origin) throw AuditFailure("series: S_0 must be exactly the origin");
  }
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto [it, inserted] = impl_->cache.emplace(m, std::move(fresh));
  return it->second;
}

inline ExpSet SeriesImpl::enumerate_polytope_points(const Polytope& p, std::int64_t m) const {
  ExpSet out;
  if (p.empty()) return out;
  // bounding box of m*P
  std::vector<std::int64_t> lo(dim), hi(dim);
  Int cells = 1;
  for (size_t i = 0; i < dim; ++i) {
    Rational mn = p.vertices.front()[i], mx = mn;
    for (const auto& v : p.vertices) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = static_cast<std::int64_t>(ceil_rat(mn * m));
    hi[i] = static_cast<std::int64_t>(floor_rat(mx * m));
    if (hi[i] < lo[i]) return out;
    cells *= hi[i] - lo[i] + 1;
  }
  if (cells > series_limits().enumeration_cap)
    throw CapExceeded("complete series: lattice enumeration above cap at degree " +
                      std::to_string(m));
  // integer form of the facet tests: <a, x> * den <= num * m
  struct IntFacet {
    std::vector<std::int64_t> a;
    std::int64_t num, den;
  };
  std::vector<IntFacet> int_facets;
  bool int_ok = true;
  constexpr std::int64_t kCoeffCap = 1'000'000;
  for (const auto& f : p.facets) {
    IntFacet g;
    g.a.resize(dim);
    for (size_t i = 0; i < dim; ++i) {
      if (int_abs(f.a[i]) > kCoeffCap) int_ok = false;
      g.a[i] = static_cast<std::int64_t>(f.a[i]);
    }
    if (int_abs(num(f.b)) > kCoeffCap || den(f.b) > kCoeffCap) int_ok = false;
    if (!int_ok) break;
    g.num = static_cast<std::int64_t>(num(f.b));
    g.den = static_cast<std::int64_t>(den(f.b));
    int_facets.push_back(std::move(g));
  }
  ExpVec cur(dim, 0);
  std::function<void(size_t)> rec = [&](size_t c) {
    if (c == dim) {
      if (int_ok) {
        for (const auto& f : int_facets) {
          __int128 dot = 0;
          for (size_t i = 0; i < dim; ++i) dot += static_cast<__int128>(f.a[i]) * cur[i];
          if (dot * f.den > static_cast<__int128>(f.num) * m) return;
        }
      } else {
        QVec q(dim);
        for (size_t i = 0; i < dim; ++i) q[i] = cur[i];
        for (const auto& f : p.facets)
          if (dot_iq(f.a, q) > f.b * m) return;
      }
      out.insert(out.end(), cur);  // box recursion emits in ascending order
      return;
    }
    for (std::int64_t v = lo[c]; v <= hi[c]; ++v) {
      cur[c] = v;
      rec(c + 1);
    }
  };
  rec(0);
  return out;
}

inline ExpSet SeriesImpl::compute(std::int64_t m, const GradedSeries& self) const {
  using namespace series_modes;
  if (m == 0) return ExpSet{ExpVec(dim, 0)};
  if (const auto* c = std::get_if<Complete>(&mode)) {
    return enumerate_polytope_points(c->polytope, m);
  }
  if (const auto* g = std::get_if<Generated>(&mode)) {
    ExpSet out;
    for (const auto& [vec, deg] : g->gens) {
      if (deg > m) continue;
      const ExpSet& prev = self.at(m - deg);
      for (const auto& p : prev) out.insert(vec_add(p, vec));
    }
    return out;
  }
  if (const auto* r = std::get_if<Rule>(&mode)) {
    ExpSet out;
    std::int64_t budget = m * bound;
    auto param = [&](const std::string& key) {
      auto it = r->params.find(key);
      if (it == r->params.end())
        throw PreconditionFailed("rule series: missing parameter '" + key + "'");
      return it->second;
    };
    std::function<bool(const ExpVec&)> keep;
    if (r->name == "floor_ratio") {
      std::int64_t num = param("num"), den = param("den");
      size_t coord = static_cast<size_t>(param("coord")) - 1;
      if (coord >= dim) throw PreconditionFailed("rule series: coord out of range");
      std::int64_t cap = static_cast<std::int64_t>(floor_div(Int(m) * num, Int(den)));
      keep = [coord, cap](const ExpVec& a) { return a[coord] <= cap; };
    } else if (r->name == "floor_ratio_sqrt") {
      std::int64_t num = param("num"), den = param("den");
      size_t coord = static_cast<size_t>(param("coord")) - 1;
      if (coord >= dim) throw PreconditionFailed("rule series: coord out of range");
      std::int64_t cap = std::max<std::int64_t>(
          0, detail::floor_ratio_minus_sqrt(m, num, den));
      keep = [coord, cap](const ExpVec& a) { return a[coord] <= cap; };
    } else if (r->name == "even_degrees") {
      // complete simplex slice on even degrees, empty on odd (exponent 2)
      if (m % 2 != 0) return ExpSet{};
      keep = [](const ExpVec&) { return true; };
    } else {
      throw PreconditionFailed("rule series: unknown rule '" + r->name + "'");
    }
    ExpVec cur(dim, 0);
    detail::enumerate_simplex(dim, budget, cur, 0, [&](const ExpVec& a) {
      if (keep(a)) out.insert(out.end(), a);  // emitted in ascending order
    });
    return out;
  }
  if (const auto* e = std::get_if<Explicit>(&mode)) {
    auto it = e->table.find(m);
    return it == e->table.end() ? ExpSet{} : it->second;
  }
  const auto& l = std::get<Lambda>(mode);
  return l.eval(m);
}

inline GradedSeries GradedSeries::complete(Polytope p, std::int64_t degree_bound) {
  auto impl = std::make_shared<SeriesImpl>();
  impl->dim = p.ambient;
  if (!p.empty()) {
    for (const auto& v : p.vertices) {
      Rational s = 0;
      for (const auto& x : v) {
        if (x < 0) throw PreconditionFailed("complete series: polytope leaves the orthant");
        s += x;
      }
      if (s > degree_bound)
        throw PreconditionFailed("complete series: polytope exceeds the degree bound");
    }
  }
  impl->bound = degree_bound;
  impl->label = "complete";
  impl->mode = series_modes::Complete{std::move(p)};
  return GradedSeries(impl);
}

inline GradedSeries GradedSeries::generated(std::vector<std::pair<ExpVec, std::int64_t>> gens) {
  if (gens.empty()) throw EmptyInput("generated series: no generators");
  auto impl = std::make_shared<SeriesImpl>();
  impl->dim = gens.front().first.size();
  std::int64_t b = 1;
  for (const auto& [vec, deg] : gens) {
    if (vec.size() != impl->dim) throw DimensionMismatch("generated series");
    if (deg < 1) throw PreconditionFailed("generated series: degrees must be >= 1");
    if (!all_nonnegative(vec)) throw PreconditionFailed("generated series: negative exponent");
    b = std::max(b, static_cast<std::int64_t>(ceil_div(Int(coord_sum(vec)), Int(deg))));
  }
  impl->bound = b;
  impl->label = "generated";
  impl->mode = series_modes::Generated{std::move(gens)};
  return GradedSeries(impl);
}

inline GradedSeries GradedSeries::rule(std::string name,
                                       std::map<std::string, std::int64_t> params, size_t dim,
                                       std::int64_t degree_bound) {
  auto impl = std::make_shared<SeriesImpl>();
  impl->dim = dim;
  impl->bound = degree_bound;
  impl->label = "rule:" + name;
  impl->mode = series_modes::Rule{std::move(name), std::move(params)};
  return GradedSeries(impl);
}

inline GradedSeries GradedSeries::explicit_table(std::map<std::int64_t, ExpSet> table,
                                                 size_t dim, std::int64_t degree_bound) {
  auto impl = std::make_shared<SeriesImpl>();
  impl->dim = dim;
  impl->bound = degree_bound;
  impl->label = "explicit";
  impl->mode = series_modes::Explicit{std::move(table)};
  return GradedSeries(impl);
}

inline GradedSeries GradedSeries::lambda(std::function<ExpSet(std::int64_t)> eval,
                                         std::string label, size_t dim,
                                         std::int64_t degree_bound) {
  auto impl = std::make_shared<SeriesImpl>();
  impl->dim = dim;
  impl->bound = degree_bound;
  impl->label = std::move(label);
  impl->mode = series_modes::Lambda{std::move(eval), impl->label};
  return GradedSeries(impl);
}

inline size_t GradedSeries::dim() const { return impl_->dim; }
inline std::int64_t GradedSeries::degree_bound() const { return impl_->bound; }
inline std::string GradedSeries::describe() const { return impl_->label; }

inline bool GradedSeries::is_complete_mode() const {
  return std::holds_alternative<series_modes::Complete>(impl_->mode);
}
inline bool GradedSeries::is_generated_mode() const {
  return std::holds_alternative<series_modes::Generated>(impl_->mode);
}

inline std::optional<Polytope> GradedSeries::exact_body() const {
  if (const auto* c = std::get_if<series_modes::Complete>(&impl_->mode)) {
    if (c->polytope.empty()) return std::nullopt;
    return c->polytope;
  }
  if (const auto* g = std::get_if<series_modes::Generated>(&impl_->mode)) {
    std::vector<QVec> ratios;
    for (const auto& [vec, deg] : g->gens) {
      QVec q(vec.size());
      for (size_t i = 0; i < vec.size(); ++i) q[i] = Rational(vec[i], deg);
      ratios.push_back(q);
    }
    return hull(ratios);
  }
  return std::nullopt;
}

inline std::vector<ExpVec> GradedSeries::extreme_sections(std::int64_t m) const {
  if (m == 0) return {ExpVec(dim(), 0)};
  if (const auto* c = std::get_if<series_modes::Complete>(&impl_->mode)) {
    if (c->polytope.empty()) return {};
    bool integral = true;
    std::vector<ExpVec> verts;
    for (const auto& v : c->polytope.vertices) {
      ExpVec w(v.size());
      for (size_t i = 0; i < v.size() && integral; ++i) {
        Rational scaled = v[i] * m;
        if (den(scaled) != 1) {
          integral = false;
          break;
        }
        w[i] = static_cast<std::int64_t>(num(scaled));
      }
      if (!integral) break;
      verts.push_back(std::move(w));
    }
    if (integral) {
      ExpSet dedup(verts.begin(), verts.end());
      return extreme_points(dedup);
    }
  }
  return extreme_points(at(m));
}

inline bool GradedSeries::known_nonempty(std::int64_t m) const {
  if (m == 0) return true;
  if (const auto* c = std::get_if<series_modes::Complete>(&impl_->mode)) {
    if (c->polytope.empty()) return false;
    bool integral_vertex = false;
    for (const auto& v : c->polytope.vertices) {
      bool ok = true;
      for (const auto& x : v)
        if (den(Rational(x * m)) != 1) ok = false;
      if (ok) integral_vertex = true;
    }
    if (integral_vertex) return true;
  }
  return nonempty(m);
}

inline void GradedSeries::audit_multiplicativity(std::int64_t working_degree) const {
  for (std::int64_t k = 1; k <= working_degree; ++k) {
    if (at(k).empty()) continue;
    for (std::int64_t l = k; k + l <= working_degree; ++l) {
      if (at(l).empty()) continue;
      const ExpSet& target = at(k + l);
      for (const auto& x : at(k))
        for (const auto& y : at(l)) {
          ExpVec s = vec_add(x, y);
          if (!target.count(s)) {
            std::string msg = "multiplicativity violated at (k=" + std::to_string(k) +
                              ", l=" + std::to_string(l) + ", exponent=(";
            for (size_t i = 0; i < s.size(); ++i)
              msg += (i ? "," : "") + std::to_string(s[i]);
            throw AuditFailure(msg + "))");
          }
        }
    }
  }
}

// --- structural operations --------------------------------------------------

/// W_{h,m} := W_{hm}. Complete mode collapses definitionally to the dilated
/// polytope; other modes stay wrappers.
inline GradedSeries veronese(const GradedSeries& s, std::int64_t h) {
  if (h < 1) throw PreconditionFailed("veronese: h must be >= 1");
  if (h == 1) return s;
  if (s.is_complete_mode()) {
    const auto& c = std::get<series_modes::Complete>(s.impl_->mode);
    Polytope scaled = c.polytope.empty() ? c.polytope : scale_polytope(c.polytope, Rational(h));
    return GradedSeries::complete(std::move(scaled), s.degree_bound() * h);
  }
  GradedSeries base = s;
  return GradedSeries::lambda([base, h](std::int64_t m) { return base.at(h * m); },
                              "veronese(" + s.describe() + "," + std::to_string(h) + ")",
                              s.dim(), s.degree_bound() * h);
}

/// Sections vanishing on the coordinate subvariety {x_j = 0 : j in J},
/// projected to its exponent lattice. J is 0-based here; CLI surfaces 1-based.
inline GradedSeries restrict_series(const GradedSeries& s, const std::vector<size_t>& J) {
  if (J.empty()) return s;
  std::vector<bool> pin(s.dim(), false);
  for (auto j : J) {
    if (j >= s.dim()) throw PreconditionFailed("restrict: coordinate out of range");
    if (pin[j]) throw PreconditionFailed("restrict: repeated coordinate");
    pin[j] = true;
  }
  auto project = [pin](const ExpVec& a) {
    ExpVec out;
    for (size_t i = 0; i < a.size(); ++i)
      if (!pin[i]) out.push_back(a[i]);
    return out;
  };
  if (s.is_complete_mode()) {
    const auto& c = std::get<series_modes::Complete>(s.impl_->mode);
    size_t nd = s.dim() - J.size();
    if (nd == 0) {
      // restriction to the torus-fixed point: sections are the constants iff
      // the polytope reaches the origin
      bool touches = !c.polytope.empty() && c.polytope.contains(QVec(s.dim(), Rational(0)));
      if (touches) {
        Polytope pt = hull(std::vector<QVec>{QVec{}});
        return GradedSeries::complete(pt, s.degree_bound());
      }
      return GradedSeries::lambda([](std::int64_t) { return ExpSet{}; }, "restricted-empty", 0,
                                  s.degree_bound());
    }
    std::vector<size_t> pinned(J.begin(), J.end());
    std::optional<Polytope> sliced =
        c.polytope.empty() ? std::nullopt : polytope_slice(c.polytope, pinned);
    if (!sliced) {
      Polytope empty;
      empty.ambient = nd;
      return GradedSeries::complete(empty, s.degree_bound());
    }
    return GradedSeries::complete(*sliced, s.degree_bound());
  }
  if (s.is_generated_mode()) {
    const auto& g = std::get<series_modes::Generated>(s.impl_->mode);
    std::vector<std::pair<ExpVec, std::int64_t>> kept;
    for (const auto& [vec, deg] : g.gens) {
      bool vanishes = false;
      for (size_t i = 0; i < vec.size(); ++i)
        if (pin[i] && vec[i] != 0) vanishes = true;
      if (!vanishes) kept.push_back({project(vec), deg});
    }
    if (!kept.empty()) return GradedSeries::generated(std::move(kept));
    // no surviving generator: the zero series on the subvariety
    return GradedSeries::lambda([](std::int64_t m) { return ExpSet{}; },
                                "restricted-empty", s.dim() - J.size(), s.degree_bound());
  }
  GradedSeries base = s;
  return GradedSeries::lambda(
      [base, pin, project](std::int64_t m) {
        ExpSet out;
        for (const auto& a : base.at(m)) {
          bool on_subvariety = true;
          for (size_t i = 0; i < a.size(); ++i)
            if (pin[i] && a[i] != 0) on_subvariety = false;
          if (on_subvariety) out.insert(project(a));
        }
        return out;
      },
      "restrict(" + s.describe() + ")", s.dim() - J.size(), s.degree_bound());
}

/// Degreewise Minkowski sum, the model of the product series inside
/// H^0(m(L1+L2)).
inline GradedSeries sum_series(const GradedSeries& s1, const GradedSeries& s2) {
  if (s1.dim() != s2.dim()) throw DimensionMismatch("sum_series");
  GradedSeries a = s1, b = s2;
  return GradedSeries::lambda(
      [a, b](std::int64_t m) { return minkowski_sum(a.at(m), b.at(m)); },
      "sum(" + s1.describe() + "," + s2.describe() + ")", s1.dim(),
      s1.degree_bound() + s2.degree_bound());
}

// --- per-degree reports -------------------------------------------------------

/// Valuation image of the degree-m sections under the flag.
inline ExpSet gamma(const GradedSeries& s, std::int64_t m, const Flag& flag) {
  if (flag.ambient_dim != s.dim()) throw DimensionMismatch("gamma: flag dimension");
  ExpSet out;
  for (const auto& a : s.at(m)) out.insert(valuation(a, m * s.degree_bound(), flag));
  return out;
}

/// gcd of the degrees <= m_max carrying sections.
inline std::int64_t exponent(const GradedSeries& s, std::int64_t m_max) {
  std::int64_t g = 0;
  for (std::int64_t m = 1; m <= m_max; ++m)
    if (s.nonempty(m)) g = g == 0 ? m : std::gcd(g, m);
  if (g == 0) throw EmptyInput("exponent: no sections up to m_max");
  return g;
}

struct GFReport {
  bool is_gf = false;
  std::int64_t witness_degree = 0;
  std::optional<Int> degree;  // delta; engaged iff is_gf
  LatticeSummary difference_lattice;
  // full per-degree sequence (m, rank, index when full-rank)
  std::vector<std::tuple<std::int64_t, int, std::optional<Int>>> per_degree;
};

/// Generic finiteness of the monomial maps: ranks and lattice indexes of the
/// per-degree difference sets. delta is the minimum index over full-rank
/// degrees; the whole sequence is exposed since rule-mode series need not
/// stabilize within the window.
inline GFReport gf_report(const GradedSeries& s, std::int64_t m_max) {
  if (m_max < 1) throw PreconditionFailed("gf_report: m_max >= 1 required");
  GFReport rep;
  bool any = false;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const ExpSet& sm = s.at(m);
    if (sm.empty()) continue;
    any = true;
    LatticeSummary ls = difference_lattice(sm, s.dim());
    rep.per_degree.push_back({m, ls.rank, ls.index});
    if (static_cast<size_t>(ls.rank) == s.dim()) {
      if (!rep.is_gf) {
        rep.is_gf = true;
        rep.witness_degree = m;
        rep.degree = ls.index;
        rep.difference_lattice = ls;
      } else if (*ls.index < *rep.degree) {
        rep.degree = ls.index;
        rep.difference_lattice = ls;
      }
    }
  }
  if (!any) throw EmptyInput("gf_report: no nonempty degree up to m_max");
  if (s.dim() == 0) {
    // zero-dimensional target: every nonempty series is trivially finite
    rep.is_gf = true;
    if (!rep.degree) rep.degree = Int(1);
  }
  return rep;
}

/// Max rank of the difference lattice over m <= m_max; nullopt encodes the
/// minus-infinity branch (all degrees empty).
inline std::optional<int> iitaka_dim(const GradedSeries& s, std::int64_t m_max) {
  std::optional<int> best;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const ExpSet& sm = s.at(m);
    if (sm.empty()) continue;
    LatticeSummary ls = difference_lattice(sm, s.dim());
    if (!best || ls.rank > *best) best = ls.rank;
  }
  return best;
}

}  // namespace oklab
