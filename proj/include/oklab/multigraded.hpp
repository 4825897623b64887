// multigraded.hpp
//
// Multi-graded linear series indexed by vectors in N^r, their support cones,
// and the induced single-graded series along integral rays.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "oklab/cone.hpp"
#include "oklab/series.hpp"

namespace oklab {

using IdxVec = std::vector<std::int64_t>;

inline std::int64_t total_degree(const IdxVec& m) {
  return std::accumulate(m.begin(), m.end(), std::int64_t(0));
}

inline IdxVec idx_scale(const IdxVec& a, std::int64_t k) {
  IdxVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}

inline std::string idx_string(const IdxVec& m) {
  std::string s = "(";
  for (size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + ")";
}

struct MultiImpl;

class MultiGradedSeries {
 public:
  MultiGradedSeries() = default;

  /// W_m = S_1(m_1) + ... + S_r(m_r) (Minkowski), the model of a family
  /// spanned by r divisors with independent gradings.
  static MultiGradedSeries product(std::vector<GradedSeries> components);

  static MultiGradedSeries explicit_table(std::map<IdxVec, ExpSet> table, size_t dim,
                                          size_t arity, std::int64_t degree_bound);

  static MultiGradedSeries lambda(std::function<ExpSet(const IdxVec&)> eval, std::string label,
                                  size_t dim, size_t arity, std::int64_t degree_bound,
                                  std::function<std::int64_t(const IdxVec&)> homog_degree = {});

  size_t dim() const;
  size_t arity() const;
  std::string describe() const;

  const ExpSet& at(const IdxVec& m) const;
  bool nonempty(const IdxVec& m) const { return !at(m).empty(); }

  /// Homogeneous degree of the sections at index m (what a flag valuation
  /// homogenizes against).
  std::int64_t homog_degree(const IdxVec& m) const;

  /// Induced single-graded series W_{a,k} := W_{k a}.
  GradedSeries diagonal(const IdxVec& a) const;

  void audit_multiplicativity(std::int64_t box) const;

  bool valid() const { return impl_ != nullptr; }

 private:
  explicit MultiGradedSeries(std::shared_ptr<MultiImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<MultiImpl> impl_;
  friend struct MultiImpl;
};

struct MultiImpl {
  size_t dim = 0;
  size_t arity = 0;
  std::int64_t bound = 1;
  std::string label;
  std::vector<GradedSeries> components;               // product mode
  std::map<IdxVec, ExpSet> table;                     // explicit mode
  std::function<ExpSet(const IdxVec&)> eval;          // lambda mode
  std::function<std::int64_t(const IdxVec&)> homog;   // optional override
  mutable std::mutex mu;
  mutable std::map<IdxVec, ExpSet> cache;

  ExpSet compute(const IdxVec& m) const {
    if (!components.empty()) {
      ExpSet acc = components[0].at(m[0]);
      for (size_t i = 1; i < components.size(); ++i) {
        if (acc.empty()) return {};
        const ExpSet& next = components[i].at(m[i]);
        if (next.empty()) return {};
        acc = minkowski_sum(acc, next);
      }
      return acc;
    }
    if (eval) return eval(m);
    auto it = table.find(m);
    return it == table.end() ? ExpSet{} : it->second;
  }
};

inline MultiGradedSeries MultiGradedSeries::product(std::vector<GradedSeries> components) {
  if (components.empty()) throw EmptyInput("multigraded product: no components");
  auto impl = std::make_shared<MultiImpl>();
  impl->dim = components[0].dim();
  impl->arity = components.size();
  std::int64_t b = 1;
  std::string label = "product(";
  for (size_t i = 0; i < components.size(); ++i) {
    if (components[i].dim() != impl->dim) throw DimensionMismatch("multigraded product");
    b = std::max(b, components[i].degree_bound());
    label += (i ? "," : "") + components[i].describe();
  }
  impl->bound = b;
  impl->label = label + ")";
  impl->components = std::move(components);
  return MultiGradedSeries(impl);
}

inline MultiGradedSeries MultiGradedSeries::explicit_table(std::map<IdxVec, ExpSet> table,
                                                           size_t dim, size_t arity,
                                                           std::int64_t degree_bound) {
  auto impl = std::make_shared<MultiImpl>();
  impl->dim = dim;
  impl->arity = arity;
  impl->bound = degree_bound;
  impl->label = "explicit-multi";
  impl->table = std::move(table);
  return MultiGradedSeries(impl);
}

inline MultiGradedSeries MultiGradedSeries::lambda(
    std::function<ExpSet(const IdxVec&)> eval, std::string label, size_t dim, size_t arity,
    std::int64_t degree_bound, std::function<std::int64_t(const IdxVec&)> homog_degree) {
  auto impl = std::make_shared<MultiImpl>();
  impl->dim = dim;
  impl->arity = arity;
  impl->bound = degree_bound;
  impl->label = std::move(label);
  impl->eval = std::move(eval);
  impl->homog = std::move(homog_degree);
  return MultiGradedSeries(impl);
}

inline size_t MultiGradedSeries::dim() const { return impl_->dim; }
inline size_t MultiGradedSeries::arity() const { return impl_->arity; }
inline std::string MultiGradedSeries::describe() const { return impl_->label; }

inline const ExpSet& MultiGradedSeries::at(const IdxVec& m) const {
  if (!impl_) throw std::logic_error("MultiGradedSeries: empty handle");
  if (m.size() != impl_->arity) throw DimensionMismatch("multigraded index arity");
  for (auto x : m)
    if (x < 0) throw PreconditionFailed("multigraded index must be nonnegative");
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->cache.find(m);
    if (it != impl_->cache.end()) return it->second;
  }
  ExpSet fresh = impl_->compute(m);
  bool zero = std::all_of(m.begin(), m.end(), [](std::int64_t x) { return x == 0; });
  if (zero) {
    ExpSet origin{ExpVec(impl_->dim, 0)};
    if (!fresh.empty() && fresh != origin)
      throw AuditFailure("multigraded series: W_0 must be the constants");
    fresh = origin;
  }
  for (const auto& a : fresh) {
    if (a.size() != impl_->dim || !all_nonnegative(a))
      throw AuditFailure("multigraded series: bad exponent at " + idx_string(m));
    if (coord_sum(a) > homog_degree(m))
      throw AuditFailure("multigraded series: degree bound violated at " + idx_string(m));
  }
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto [it, inserted] = impl_->cache.emplace(m, std::move(fresh));
  return it->second;
}

inline std::int64_t MultiGradedSeries::homog_degree(const IdxVec& m) const {
  if (impl_->homog) return impl_->homog(m);
  if (!impl_->components.empty()) {
    std::int64_t s = 0;
    for (size_t i = 0; i < impl_->components.size(); ++i)
      s += m[i] * impl_->components[i].degree_bound();
    return s;
  }
  return total_degree(m) * impl_->bound;
}

inline GradedSeries MultiGradedSeries::diagonal(const IdxVec& a) const {
  if (a.size() != arity()) throw DimensionMismatch("diagonal: arity");
  MultiGradedSeries self = *this;
  std::int64_t diag_bound = homog_degree(a);
  if (diag_bound <= 0) diag_bound = 1;
  return GradedSeries::lambda(
      [self, a](std::int64_t k) { return self.at(idx_scale(a, k)); },
      "diagonal(" + describe() + "," + idx_string(a) + ")", dim(), diag_bound);
}

inline void MultiGradedSeries::audit_multiplicativity(std::int64_t box) const {
  std::vector<IdxVec> grid;
  IdxVec cur(arity(), 0);
  std::function<void(size_t)> rec = [&](size_t c) {
    if (c == arity()) {
      grid.push_back(cur);
      return;
    }
    for (std::int64_t v = 0; v <= box; ++v) {
      cur[c] = v;
      rec(c + 1);
    }
  };
  rec(0);
  for (const auto& k : grid)
    for (const auto& l : grid) {
      IdxVec sum(arity());
      bool in_box = true;
      for (size_t i = 0; i < arity(); ++i) {
        sum[i] = k[i] + l[i];
        if (sum[i] > box) in_box = false;
      }
      if (!in_box) continue;
      const ExpSet& a = at(k);
      const ExpSet& b = at(l);
      if (a.empty() || b.empty()) continue;
      const ExpSet& target = at(sum);
      for (const auto& x : a)
        for (const auto& y : b)
          if (!target.count(vec_add(x, y)))
            throw AuditFailure("multigraded multiplicativity violated at " + idx_string(k) +
                               " + " + idx_string(l));
    }
}

struct SupportCone {
  PolyCone cone;
  bool interior_nonempty = false;
  std::vector<IdxVec> nonempty_indices;  // within the scanned box
};

/// Cone over the indices with nonzero sections, scanned over [0, box]^r.
inline SupportCone support_cone(const MultiGradedSeries& w, std::int64_t box) {
  if (box < 1) throw PreconditionFailed("support_cone: box >= 1 required");
  SupportCone out;
  std::vector<ExpVec> gens;
  IdxVec cur(w.arity(), 0);
  std::function<void(size_t)> rec = [&](size_t c) {
    if (c == w.arity()) {
      if (total_degree(cur) == 0) return;
      if (w.nonempty(cur)) {
        out.nonempty_indices.push_back(cur);
        gens.push_back(ExpVec(cur.begin(), cur.end()));
      }
      return;
    }
    for (std::int64_t v = 0; v <= box; ++v) {
      cur[c] = v;
      rec(c + 1);
    }
  };
  rec(0);
  if (gens.empty()) throw EmptyInput("support_cone: no nonzero index in the box");
  out.cone = cone_from_generators(gens);
  out.interior_nonempty = (static_cast<size_t>(out.cone.dim) == w.arity());
  return out;
}

}  // namespace oklab
