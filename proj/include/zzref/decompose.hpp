#pragma once

#include <zzref/error.hpp>
#include <zzref/linalg.hpp>
#include <zzref/persistence_diagram.hpp>
#include <zzref/zigzag_module.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace zzref {

/// The segment V_b <-> ... <-> V_d as a finite diagram (slot j is V_{b+j}).
inline FiniteDiagram segment_diagram(const ZigzagModule& v, int b, int d) {
  FiniteDiagram fd{v.field(), {}, {}};
  for (int i = b; i <= d; ++i) fd.dims.push_back(v.dim(i));
  for (int i = b; i < d; ++i) {
    const auto left = static_cast<std::size_t>(i - b);
    if (v.type()[i] == Arrow::forward)
      fd.arrows.push_back({left, left + 1, v.map(i)});
    else
      fd.arrows.push_back({left + 1, left, v.map(i)});
  }
  return fd;
}

/// Rank of the canonical map lim -> colim of the segment [b, d], computed
/// through the legs at position `slot` (b <= slot <= d).
inline std::size_t segment_rank_via_slot(const ZigzagModule& v, int b, int d, int slot) {
  if (b < 1 || b > d || d > v.length() || slot < b || slot > d)
    throw IndexError("segment [" + std::to_string(b) + "," + std::to_string(d) + "] slot " +
                     std::to_string(slot) + " out of range");
  for (int i = b; i <= d; ++i)
    if (v.dim(i) == 0) return 0;
  const FiniteDiagram fd = segment_diagram(v, b, d);
  const UniversalCone lim = diagram_limit(fd);
  const UniversalCone colim = diagram_colimit(fd);
  if (lim.dim == 0 || colim.dim == 0) return 0;
  const auto j = static_cast<std::size_t>(slot - b);
  return rank(colim.legs[j] * lim.legs[j]);
}

/// rk(b, d): the number of interval summands containing [b, d]. Zero when
/// the segment leaves [1, n].
inline std::size_t segment_rank(const ZigzagModule& v, int b, int d) {
  if (b < 1 || d > v.length() || b > d) return 0;
  return segment_rank_via_slot(v, b, d, b);
}

/// Interval decomposition by inclusion-exclusion over segment ranks:
/// m(b,d) = rk(b,d) - rk(b-1,d) - rk(b,d+1) + rk(b-1,d+1).
inline PersistenceDiagram decompose(const ZigzagModule& v) {
  const int n = v.length();
  // rk[b][d] for 0 <= b <= n+1, 0 <= d <= n+1; out-of-range entries stay 0.
  std::vector<std::vector<long long>> rk(static_cast<std::size_t>(n + 2),
                                         std::vector<long long>(static_cast<std::size_t>(n + 2), 0));
  for (int b = 1; b <= n; ++b)
    for (int d = b; d <= n; ++d) {
      // An interval containing [b, d] also contains [b, d-1]; stop early.
      if (d > b && rk[static_cast<std::size_t>(b)][static_cast<std::size_t>(d - 1)] == 0) break;
      rk[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)] =
          static_cast<long long>(segment_rank(v, b, d));
    }
  auto at = [&](int b, int d) { return rk[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)]; };
  PersistenceDiagram out(n);
  for (int b = 1; b <= n; ++b)
    for (int d = b; d <= n; ++d) {
      const long long m = at(b, d) - at(b - 1, d) - at(b, d + 1) + at(b - 1, d + 1);
      if (m < 0) throw Error("decompose: negative multiplicity at " + to_string(Interval{b, d}));
      if (m > 0) out.add(Interval{b, d}, static_cast<std::size_t>(m));
    }
  return out;
}

}  // namespace zzref
