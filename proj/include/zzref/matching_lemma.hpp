#pragma once

#include <zzref/bottleneck.hpp>
#include <zzref/error.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace zzref {

enum class Side : std::uint8_t { source, target };

struct OrbitElement {
  Side side;
  std::size_t index;
  friend bool operator==(const OrbitElement&, const OrbitElement&) = default;
};

/// One alternating f/g orbit. `elements` lists the members of coim(f) and
/// coim(g) from left to right; `terminal` is the end point outside both
/// coimages (absent for periodic orbits). Types follow the five cases:
/// 1 = starts in S, ends in T; 2 = starts in S, ends in S;
/// 3 = starts in T, ends in S; 4 = starts in T, ends in T; 5 = periodic.
struct Orbit {
  int type = 0;
  std::vector<OrbitElement> elements;
  std::optional<OrbitElement> terminal;
};

struct CombinedMatching {
  Matching matching;
  std::vector<Orbit> orbits;
};

/// Given f : S -/-> T and g : T -/-> S, builds M : S -/-> T with
/// coim(f) ⊆ coim(M), coim(g) ⊆ im(M), and every pair of M taken from f or g.
inline CombinedMatching combine_matchings(const Matching& f, const Matching& g) {
  f.validate();
  g.validate();
  if (g.source_size != f.target_size || g.target_size != f.source_size)
    throw StructuralError("combine_matchings: f and g are not between the same two sets");
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  const std::size_t ns = f.source_size, nt = f.target_size;
  std::vector<std::size_t> f_of(ns, none), f_inv(nt, none), g_of(nt, none), g_inv(ns, none);
  for (auto [s, t] : f.pairs) f_of[s] = t, f_inv[t] = s;
  for (auto [t, s] : g.pairs) g_of[t] = s, g_inv[s] = t;

  // Next element to the right: s -> f(s), t -> g(t); previous: the inverses.
  auto next = [&](OrbitElement e) -> std::optional<OrbitElement> {
    const std::size_t i = e.side == Side::source ? f_of[e.index] : g_of[e.index];
    if (i == none) return std::nullopt;
    return OrbitElement{e.side == Side::source ? Side::target : Side::source, i};
  };
  auto prev = [&](OrbitElement e) -> std::optional<OrbitElement> {
    const std::size_t i = e.side == Side::source ? g_inv[e.index] : f_inv[e.index];
    if (i == none) return std::nullopt;
    return OrbitElement{e.side == Side::source ? Side::target : Side::source, i};
  };

  std::vector<bool> seen_s(ns, false), seen_t(nt, false);
  auto seen = [&](OrbitElement e) -> std::vector<bool>::reference {
    return e.side == Side::source ? seen_s[e.index] : seen_t[e.index];
  };

  CombinedMatching out{Matching{ns, nt, {}}, {}};
  auto visit = [&](OrbitElement start) {
    if (seen(start)) return;
    OrbitElement left = start;
    bool periodic = false;
    while (auto p = prev(left)) {
      if (*p == start) {
        periodic = true;
        break;
      }
      left = *p;
    }
    Orbit orbit;
    OrbitElement cur = left;
    while (true) {
      auto nx = next(cur);
      if (!nx) {
        orbit.terminal = cur;
        break;
      }
      orbit.elements.push_back(cur);
      seen(cur) = true;
      cur = *nx;
      if (periodic && cur == left) break;
    }
    const bool starts_s = left.side == Side::source;
    if (periodic)
      orbit.type = 5;
    else if (starts_s)
      orbit.type = orbit.terminal->side == Side::target ? 1 : 2;
    else
      orbit.type = orbit.terminal->side == Side::source ? 3 : 4;
    // Types 1, 2, 5 follow f from every S member; types 3, 4 follow g^-1
    // into every T member.
    for (const auto& e : orbit.elements) {
      if (orbit.type <= 2 || orbit.type == 5) {
        if (e.side == Side::source) out.matching.pairs.emplace_back(e.index, f_of[e.index]);
      } else if (e.side == Side::target) {
        out.matching.pairs.emplace_back(g_of[e.index], e.index);
      }
    }
    out.orbits.push_back(std::move(orbit));
  };

  for (std::size_t s = 0; s < ns; ++s)
    if (f_of[s] != none) visit({Side::source, s});
  for (std::size_t t = 0; t < nt; ++t)
    if (g_of[t] != none) visit({Side::target, t});
  return out;
}

}  // namespace zzref
