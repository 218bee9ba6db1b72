#pragma once

#include <zzref/error.hpp>
#include <zzref/persistence_diagram.hpp>
#include <zzref/reflection.hpp>
#include <zzref/symbolic.hpp>
#include <zzref/zigzag_module.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <cstring>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace zzref {

inline void check_exponent(double p) {
  if (!(p >= 1.0)) throw PreconditionError("exponent p must be >= 1");
}

/// C_p of a sequence of the given length: length^(1/p), 0 when empty.
inline double cost(std::size_t length, double p) {
  check_exponent(p);
  return length == 0 ? 0.0 : std::pow(static_cast<double>(length), 1.0 / p);
}

inline double cost(const ReflectionSequence& seq, double p) { return cost(seq.size(), p); }

struct SearchOptions {
  bool astar = false;
};

struct SearchResult {
  std::size_t steps = 0;
  ReflectionSequence witness;
  std::size_t states_visited = 0;
};

namespace detail {

/// Search state: simple summands removed, type normalized on flippable arrows.
inline SymbolicModule canonical_state(const SymbolicModule& s) {
  PersistenceDiagram d = remove_simple(s.diagram);
  OrientationVector t = canonical_type(s.type, d);
  return {std::move(t), std::move(d)};
}

inline std::string state_key(const SymbolicModule& s) {
  std::string key;
  const auto bits = s.type.bits();
  key.append(reinterpret_cast<const char*>(&bits), sizeof bits);
  for (const auto& p : s.diagram.points()) {
    const int b = p.interval.birth, d = p.interval.death;
    const auto m = p.multiplicity;
    key.append(reinterpret_cast<const char*>(&b), sizeof b);
    key.append(reinterpret_cast<const char*>(&d), sizeof d);
    key.append(reinterpret_cast<const char*>(&m), sizeof m);
  }
  return key;
}

/// Lower bound on the remaining steps: each step moves a point by at most 1
/// in l1, and a point either dies (needs d - b steps) or lands on a target point.
inline std::size_t remaining_lower_bound(const PersistenceDiagram& d, const PersistenceDiagram& target) {
  int best = 0;
  for (const auto& p : d.points()) {
    int h = p.interval.length();
    for (const auto& q : target.points())
      h = std::min(h, std::abs(p.interval.birth - q.interval.birth) + std::abs(p.interval.death - q.interval.death));
    best = std::max(best, h);
  }
  return static_cast<std::size_t>(best);
}

struct Node {
  SymbolicModule state;
  std::size_t parent;
  ReflectionOp op;
  std::size_t depth;
};

inline ReflectionSequence trace_back(const std::vector<Node>& nodes, std::size_t idx) {
  ReflectionSequence seq;
  while (idx != 0) {
    seq.push_back(nodes[idx].op);
    idx = nodes[idx].parent;
  }
  std::reverse(seq.begin(), seq.end());
  return seq;
}

}  // namespace detail

/// Least l such that some length-l reflection sequence R has R(source) ≾ target.
inline SearchResult min_steps(const SymbolicModule& source, const SymbolicModule& target, SearchOptions opt = {}) {
  if (source.length() != target.length())
    throw StructuralError("min_steps: lengths " + std::to_string(source.length()) + " and " +
                          std::to_string(target.length()));
  const int n = source.length();
  const auto ops = all_reflection_ops(n);
  const SymbolicModule start = detail::canonical_state(source);
  const std::size_t depth_cap = static_cast<std::size_t>(n) * start.diagram.size();

  std::vector<detail::Node> nodes;
  nodes.push_back({start, 0, ReflectionOp{}, 0});
  std::unordered_map<std::string, std::size_t> seen;  // key -> best depth
  seen.emplace(detail::state_key(start), 0);

  auto finish = [&](std::size_t idx) {
    return SearchResult{nodes[idx].depth, detail::trace_back(nodes, idx), nodes.size()};
  };

  if (!opt.astar) {
    // Layer-by-layer BFS; the goal test runs when a state is generated.
    if (is_summand_upto_equiv(start, target)) return finish(0);
    for (std::size_t head = 0; head < nodes.size(); ++head) {
      if (nodes[head].depth >= depth_cap) throw Error("min_steps: depth cap exceeded");
      for (const auto& op : ops) {
        SymbolicModule next = detail::canonical_state(act(op, nodes[head].state));
        if (!seen.emplace(detail::state_key(next), nodes[head].depth + 1).second) continue;
        nodes.push_back({std::move(next), head, op, nodes[head].depth + 1});
        if (is_summand_upto_equiv(nodes.back().state, target)) return finish(nodes.size() - 1);
      }
    }
    throw Error("min_steps: search exhausted without reaching the target");
  }

  // A* with the consistent heuristic above; ties broken by insertion order.
  using Entry = std::pair<std::pair<std::size_t, std::size_t>, std::size_t>;  // ((f, seq), node)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::size_t counter = 0;
  open.push({{detail::remaining_lower_bound(start.diagram, target.diagram), counter++}, 0});
  while (!open.empty()) {
    const std::size_t idx = open.top().second;
    open.pop();
    const std::size_t g = nodes[idx].depth;
    if (seen.at(detail::state_key(nodes[idx].state)) < g) continue;  // stale entry
    if (is_summand_upto_equiv(nodes[idx].state, target)) return finish(idx);
    if (g >= depth_cap) throw Error("min_steps: depth cap exceeded");
    for (const auto& op : ops) {
      SymbolicModule next = detail::canonical_state(act(op, nodes[idx].state));
      auto key = detail::state_key(next);
      auto it = seen.find(key);
      if (it != seen.end() && it->second <= g + 1) continue;
      seen[key] = g + 1;
      const std::size_t h = detail::remaining_lower_bound(next.diagram, target.diagram);
      nodes.push_back({std::move(next), idx, op, g + 1});
      open.push({{g + 1 + h, counter++}, nodes.size() - 1});
    }
  }
  throw Error("min_steps: search exhausted without reaching the target");
}

struct ReflectionDistance {
  double value = 0.0;
  std::size_t steps_forward = 0;   // source -> target
  std::size_t steps_backward = 0;  // target -> source
  ReflectionSequence witness_forward;
  ReflectionSequence witness_backward;
};

/// d_R^p(v, w) = max(C_p(N), C_p(N')) minimized over the two independent sides.
inline ReflectionDistance reflection_distance(const SymbolicModule& v, const SymbolicModule& w, double p,
                                              SearchOptions opt = {}) {
  check_exponent(p);
  SearchResult a = min_steps(v, w, opt);
  SearchResult b = min_steps(w, v, opt);
  ReflectionDistance out;
  out.steps_forward = a.steps;
  out.steps_backward = b.steps;
  out.value = cost(std::max(a.steps, b.steps), p);
  out.witness_forward = std::move(a.witness);
  out.witness_backward = std::move(b.witness);
  return out;
}

}  // namespace zzref
