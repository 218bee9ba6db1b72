#pragma once

#include <zzref/bipartite_matching.hpp>
#include <zzref/error.hpp>
#include <zzref/persistence_diagram.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zzref {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A partial bijection between two finite multisets, stored as index pairs
/// into their expanded point lists (0-based storage positions).
struct Matching {
  std::size_t source_size = 0;
  std::size_t target_size = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  /// Throws unless indices are in range and each side is used at most once.
  void validate() const {
    std::vector<bool> used_s(source_size, false), used_t(target_size, false);
    for (auto [s, t] : pairs) {
      if (s >= source_size || t >= target_size) throw StructuralError("matching index out of range");
      if (used_s[s] || used_t[t]) throw StructuralError("matching uses an element twice");
      used_s[s] = used_t[t] = true;
    }
  }

  friend bool operator==(const Matching&, const Matching&) = default;
};

inline void check_bottleneck_exponent(double p) {
  if (!(p >= 1.0)) throw PreconditionError("exponent p must be in [1, inf]");
}

/// l^p distance between two diagram points (p may be infinite).
inline double lp_distance(Interval a, Interval b, double p) {
  const double x = std::abs(a.birth - b.birth);
  const double y = std::abs(a.death - b.death);
  if (std::isinf(p)) return std::max(x, y);
  if (p == 1.0) return x + y;
  return std::pow(std::pow(x, p) + std::pow(y, p), 1.0 / p);
}

/// Cost of leaving a point unmatched: |d - b| / 2^(1 - 1/p), with 1/inf = 0.
inline double unmatched_penalty(Interval a, double p) {
  return static_cast<double>(a.length()) / std::pow(2.0, 1.0 - 1.0 / p);
}

inline double matching_cost(const std::vector<Interval>& s, const std::vector<Interval>& t, const Matching& m,
                            double p) {
  check_bottleneck_exponent(p);
  if (m.source_size != s.size() || m.target_size != t.size())
    throw StructuralError("matching sizes do not fit the diagrams");
  m.validate();
  std::vector<bool> used_s(s.size(), false), used_t(t.size(), false);
  double c = 0.0;
  for (auto [i, j] : m.pairs) {
    c = std::max(c, lp_distance(s[i], t[j], p));
    used_s[i] = used_t[j] = true;
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!used_s[i]) c = std::max(c, unmatched_penalty(s[i], p));
  for (std::size_t j = 0; j < t.size(); ++j)
    if (!used_t[j]) c = std::max(c, unmatched_penalty(t[j], p));
  return c;
}

inline double matching_cost(const PersistenceDiagram& s, const PersistenceDiagram& t, const Matching& m, double p) {
  return matching_cost(s.expanded(), t.expanded(), m, p);
}

namespace detail {

/// A matching of cost <= eta, if one exists.
inline std::optional<Matching> matching_within(const std::vector<Interval>& s, const std::vector<Interval>& t,
                                               double p, double eta) {
  const std::size_t ns = s.size(), nt = t.size();
  // Left: S then T' (diagonal copies of T). Right: T then S'.
  BipartiteMatcher hk(ns + nt, nt + ns);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nt; ++j)
      if (lp_distance(s[i], t[j], p) <= eta) hk.add_edge(i, j);
    if (unmatched_penalty(s[i], p) <= eta) hk.add_edge(i, nt + i);
  }
  for (std::size_t j = 0; j < nt; ++j) {
    if (unmatched_penalty(t[j], p) <= eta) hk.add_edge(ns + j, j);
    for (std::size_t i = 0; i < ns; ++i) hk.add_edge(ns + j, nt + i);
  }
  if (hk.solve() != ns + nt) return std::nullopt;
  Matching m{ns, nt, {}};
  for (std::size_t i = 0; i < ns; ++i)
    if (const auto r = hk.partner_of_left(i); r < nt) m.pairs.emplace_back(i, r);
  return m;
}

}  // namespace detail

struct BottleneckResult {
  double value = 0.0;
  Matching matching;  // over the expanded point lists
};

/// Exact d_b^p: the least candidate threshold at which a matching exists.
inline BottleneckResult bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, double p) {
  check_bottleneck_exponent(p);
  if (a.length() != b.length()) throw StructuralError("diagrams of different lengths");
  const auto s = a.expanded();
  const auto t = b.expanded();
  std::vector<double> candidates{0.0};
  for (const auto& x : s) {
    candidates.push_back(unmatched_penalty(x, p));
    for (const auto& y : t) candidates.push_back(lp_distance(x, y, p));
  }
  for (const auto& y : t) candidates.push_back(unmatched_penalty(y, p));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // The largest candidate allows leaving everything unmatched, so it is feasible.
  std::size_t lo = 0, hi = candidates.size() - 1;
  std::optional<Matching> best = detail::matching_within(s, t, p, candidates[hi]);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto m = detail::matching_within(s, t, p, candidates[mid])) {
      hi = mid;
      best = std::move(m);
    } else {
      lo = mid + 1;
    }
  }
  if (!best) best = detail::matching_within(s, t, p, candidates[hi]);
  return {matching_cost(s, t, *best, p), std::move(*best)};
}

}  // namespace zzref
