// expvec.hpp
//
// ExpVec: the exponent vector of a dehomogenized monomial, doubling as a
// valuation vector. Coordinates are machine integers; every quantity in the
// model is bounded by degree caps that keep them tiny.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace oklab {

using ExpVec = std::vector<std::int64_t>;

inline std::int64_t coord_sum(const ExpVec& a) {
  return std::accumulate(a.begin(), a.end(), std::int64_t(0));
}

inline ExpVec vec_add(const ExpVec& a, const ExpVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add: dimension mismatch");
  ExpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline ExpVec vec_sub(const ExpVec& a, const ExpVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_sub: dimension mismatch");
  ExpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline ExpVec vec_scale(const ExpVec& a, std::int64_t k) {
  ExpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}

inline bool dominates(const ExpVec& a, const ExpVec& b) {
  // a >= b componentwise
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

inline bool all_nonnegative(const ExpVec& a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x >= 0; });
}

/// Deduplicated point set with set semantics; ordered so every consumer
/// iterates deterministically.
using ExpSet = std::set<ExpVec>;

/// Exact pairwise-sum set (the monomial model of multiplying section spaces).
/// Small coordinates in dimensions <= 4 run through a packed hash set.
inline ExpSet minkowski_sum(const ExpSet& a, const ExpSet& b) {
  if (a.empty() || b.empty()) return {};
  size_t d = a.begin()->size();
  if (b.begin()->size() != d) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  bool packable = d >= 1 && d <= 4;
  if (packable) {
    constexpr std::int64_t limit = 1 << 15;
    for (const auto& x : a)
      for (auto c : x)
        if (c < 0 || c >= limit) {
          packable = false;
          break;
        }
    if (packable)
      for (const auto& y : b)
        for (auto c : y)
          if (c < 0 || c >= limit) {
            packable = false;
            break;
          }
  }
  if (packable) {
    auto pack = [d](const ExpVec& v) {
      std::uint64_t key = 0;
      for (size_t i = 0; i < d; ++i) key = (key << 16) | static_cast<std::uint64_t>(v[i]);
      return key;
    };
    std::unordered_set<std::uint64_t> keys;
    keys.reserve(a.size() * 2);
    for (const auto& x : a)
      for (const auto& y : b) keys.insert(pack(vec_add(x, y)));
    std::vector<std::uint64_t> sorted(keys.begin(), keys.end());
    std::sort(sorted.begin(), sorted.end());
    ExpSet out;
    auto hint = out.end();
    for (auto key : sorted) {
      ExpVec v(d);
      for (size_t i = d; i-- > 0;) {
        v[i] = static_cast<std::int64_t>(key & 0xFFFF);
        key >>= 16;
      }
      hint = out.insert(hint, std::move(v));
    }
    return out;
  }
  ExpSet out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(vec_add(x, y));
  return out;
}

/// Componentwise-minimal elements (the staircase corners of an up-set).
inline std::vector<ExpVec> minimal_elements(std::vector<ExpVec> pts) {
  std::sort(pts.begin(), pts.end(), [](const ExpVec& a, const ExpVec& b) {
    auto sa = coord_sum(a), sb = coord_sum(b);
    if (sa != sb) return sa < sb;
    return a < b;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<ExpVec> out;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : out)
      if (dominates(p, q)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oklab
