#pragma once

// Reflections acting on (type, diagram) pairs. Every interval image is read
// off the concrete functor applied to an interval module, then cached.

#include <zzref/decompose.hpp>
#include <zzref/error.hpp>
#include <zzref/orientation.hpp>
#include <zzref/persistence_diagram.hpp>
#include <zzref/reflection.hpp>
#include <zzref/zigzag_module.hpp>

#include <array>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace zzref {

namespace detail {

// Only arrows k-1 and k matter for the image of an interval under R_k;
// 2 encodes "no such arrow".
using ImageKey = std::array<int, 8>;

inline ImageKey image_key(const ReflectionOp& op, const OrientationVector& tau, Interval iv) {
  const int n = tau.length();
  auto dir = [&](int i) { return i >= 1 && i <= n - 1 ? static_cast<int>(tau[i]) : 2; };
  return {static_cast<int>(op.kind), op.k, op.boundary ? static_cast<int>(*op.boundary) : 2, n,
          dir(op.k - 1),             dir(op.k), iv.birth, iv.death};
}

class ImageCache {
 public:
  std::optional<std::optional<Interval>> find(const ImageKey& key) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  void insert(const ImageKey& key, std::optional<Interval> value) {
    std::unique_lock lock(mutex_);
    table_.emplace(key, value);
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<ImageKey, std::optional<Interval>> table_;
};

inline ImageCache& image_cache() {
  static ImageCache cache;
  return cache;
}

}  // namespace detail

/// The interval [b', d'] with R(I_tau([b,d])) ≅ I([b', d']), or nullopt when
/// the reflection kills the summand.
inline std::optional<Interval> interval_image(const ReflectionOp& op, const OrientationVector& tau, Interval iv) {
  op.validate(tau.length());
  const auto key = detail::image_key(op, tau, iv);
  if (auto hit = detail::image_cache().find(key)) return *hit;

  const PersistenceDiagram image = decompose(reflect(op, interval_module(tau, iv)));
  if (image.size() > 1)
    throw Error("reflection of " + to_string(iv) + " split into " + std::to_string(image.size()) + " summands");
  std::optional<Interval> result;
  if (!image.empty()) result = image.points().front().interval;
  detail::image_cache().insert(key, result);
  return result;
}

/// R acting on a symbolic module, without removing simple summands.
inline SymbolicModule act_raw(const ReflectionOp& op, const SymbolicModule& s) {
  SymbolicModule out{reflected_type(op, s.type), PersistenceDiagram(s.length())};
  for (const auto& p : s.diagram.points())
    if (auto img = interval_image(op, s.type, p.interval)) out.diagram.add(*img, p.multiplicity);
  return out;
}

/// S ∘ R: the step used by reflection sequences.
inline SymbolicModule act(const ReflectionOp& op, const SymbolicModule& s) {
  SymbolicModule out = act_raw(op, s);
  out.diagram = remove_simple(out.diagram);
  return out;
}

/// S ∘ R_l ∘ S ∘ ... ∘ S ∘ R_1 ∘ S.
inline SymbolicModule execute(const ReflectionSequence& seq, SymbolicModule s) {
  s.diagram = remove_simple(s.diagram);
  for (const auto& op : seq) s = act(op, s);
  return s;
}

/// A sequence that reduces the module to zero: repeatedly take the largest
/// surviving interval [b, d] and shrink its right end one step at a time.
inline ReflectionSequence annihilating_sequence(const SymbolicModule& s) {
  const int n = s.length();
  const auto ops = all_reflection_ops(n);
  SymbolicModule state{s.type, remove_simple(s.diagram)};
  ReflectionSequence seq;
  // Every step removes at least one unit of length from the tracked interval;
  // this bound only guards against a table that fails to do so.
  const std::size_t guard = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * (s.diagram.size() + 1);
  while (!state.diagram.empty()) {
    Interval cur = state.diagram.points().back().interval;
    while (!cur.is_simple()) {
      const Interval want{cur.birth, cur.death - 1};
      const ReflectionOp* chosen = nullptr;
      for (const auto& op : ops) {
        if (op.k != cur.death) continue;
        if (interval_image(op, state.type, cur) == want) {
          chosen = &op;
          break;
        }
      }
      if (!chosen) throw Error("annihilating_sequence: no reflection shortens " + to_string(cur));
      seq.push_back(*chosen);
      state = act(*chosen, state);
      cur = want;
      if (seq.size() > guard) throw Error("annihilating_sequence: did not terminate");
    }
  }
  return seq;
}

inline ReflectionSequence annihilating_sequence(const ZigzagModule& v) {
  return annihilating_sequence(SymbolicModule{v.type(), decompose(v)});
}

}  // namespace zzref
