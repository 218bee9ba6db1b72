#pragma once

#include <zzref/error.hpp>
#include <zzref/orientation.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zzref {

/// Closed integer interval [birth, death], 1-based.
struct Interval {
  int birth = 0;
  int death = 0;

  [[nodiscard]] bool is_simple() const { return birth == death; }
  [[nodiscard]] int length() const { return death - birth; }
  [[nodiscard]] bool contains(int i) const { return birth <= i && i <= death; }

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

inline std::string to_string(Interval iv) {
  return "[" + std::to_string(iv.birth) + "," + std::to_string(iv.death) + "]";
}

struct DiagramPoint {
  Interval interval;
  std::size_t multiplicity = 0;

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Finite multiset of intervals inside [1, n], kept as a sorted list of
/// (interval, multiplicity) with multiplicities >= 1, so equal multisets
/// compare and hash equal.
class PersistenceDiagram {
 public:
  explicit PersistenceDiagram(int n) : n_(n) {
    if (n < 1) throw StructuralError("diagram length must be positive");
  }

  PersistenceDiagram(int n, std::initializer_list<Interval> intervals) : PersistenceDiagram(n) {
    for (auto iv : intervals) add(iv);
  }

  [[nodiscard]] int length() const { return n_; }

  void add(Interval iv, std::size_t multiplicity = 1) {
    if (iv.birth < 1 || iv.birth > iv.death || iv.death > n_)
      throw IndexError("interval " + to_string(iv) + " outside 1 <= b <= d <= " + std::to_string(n_));
    if (multiplicity == 0) return;
    auto it = std::lower_bound(points_.begin(), points_.end(), iv,
                               [](const DiagramPoint& p, Interval v) { return p.interval < v; });
    if (it != points_.end() && it->interval == iv)
      it->multiplicity += multiplicity;
    else
      points_.insert(it, DiagramPoint{iv, multiplicity});
  }

  [[nodiscard]] std::size_t multiplicity(Interval iv) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), iv,
                               [](const DiagramPoint& p, Interval v) { return p.interval < v; });
    return it != points_.end() && it->interval == iv ? it->multiplicity : 0;
  }

  /// Number of points counted with multiplicity.
  [[nodiscard]] std::size_t size() const {
    std::size_t s = 0;
    for (const auto& p : points_) s += p.multiplicity;
    return s;
  }
  [[nodiscard]] bool empty() const { return points_.empty(); }

  [[nodiscard]] std::span<const DiagramPoint> points() const { return points_; }

  /// One entry per point, repeated by multiplicity, in sorted order.
  [[nodiscard]] std::vector<Interval> expanded() const {
    std::vector<Interval> out;
    for (const auto& p : points_) out.insert(out.end(), p.multiplicity, p.interval);
    return out;
  }

  [[nodiscard]] std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (i) s += ", ";
      s += to_string(points_[i].interval);
      if (points_[i].multiplicity > 1) s += "x" + std::to_string(points_[i].multiplicity);
    }
    return s + "}";
  }

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

 private:
  int n_;
  std::vector<DiagramPoint> points_;
};

/// Drops every point on the diagonal (b == d).
inline PersistenceDiagram remove_simple(const PersistenceDiagram& d) {
  PersistenceDiagram out(d.length());
  for (const auto& p : d.points())
    if (!p.interval.is_simple()) out.add(p.interval, p.multiplicity);
  return out;
}

/// Multiset inclusion `sub` ⊆ `super`.
inline bool is_subdiagram(const PersistenceDiagram& sub, const PersistenceDiagram& super) {
  if (sub.length() != super.length()) throw StructuralError("diagrams of different lengths");
  return std::all_of(sub.points().begin(), sub.points().end(), [&](const DiagramPoint& p) {
    return super.multiplicity(p.interval) >= p.multiplicity;
  });
}

/// Multiset union.
inline PersistenceDiagram merged(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.length() != b.length()) throw StructuralError("diagrams of different lengths");
  PersistenceDiagram out = a;
  for (const auto& p : b.points()) out.add(p.interval, p.multiplicity);
  return out;
}

/// A module up to isomorphism: its type and its diagram.
struct SymbolicModule {
  OrientationVector type;
  PersistenceDiagram diagram;

  SymbolicModule(OrientationVector t, PersistenceDiagram d) : type(std::move(t)), diagram(std::move(d)) {
    if (type.length() != diagram.length())
      throw StructuralError("type length " + std::to_string(type.length()) + " != diagram length " +
                            std::to_string(diagram.length()));
  }

  [[nodiscard]] int length() const { return type.length(); }

  friend bool operator==(const SymbolicModule&, const SymbolicModule&) = default;
};

}  // namespace zzref
