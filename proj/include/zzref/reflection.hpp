#pragma once

#include <zzref/error.hpp>
#include <zzref/linalg.hpp>
#include <zzref/orientation.hpp>
#include <zzref/zigzag_module.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zzref {

enum class ReflectionKind : std::uint8_t { limit, colimit };

/// One reflection functor: L_k (limit) or C_k (colimit). At k = 1 and k = n
/// the missing neighbour is a zero space, and `boundary` is the direction of
/// the padded arrow read left to right: at k = 1, forward is 0 -> V_1; at
/// k = n, forward is V_n -> 0.
struct ReflectionOp {
  ReflectionKind kind = ReflectionKind::limit;
  int k = 1;
  std::optional<Arrow> boundary;

  static ReflectionOp interior(ReflectionKind kind, int k) { return {kind, k, std::nullopt}; }
  static ReflectionOp endpoint(ReflectionKind kind, int k, Arrow boundary) { return {kind, k, boundary}; }

  /// Throws unless the op is well formed for modules of length n.
  void validate(int n) const {
    if (k < 1 || k > n)
      throw IndexError("reflection index " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    const bool at_end = k == 1 || k == n;
    if (at_end && !boundary)
      throw StructuralError("reflection at endpoint " + std::to_string(k) + " needs a boundary direction");
    if (!at_end && boundary)
      throw StructuralError("boundary direction given for interior index " + std::to_string(k));
  }

  friend auto operator<=>(const ReflectionOp&, const ReflectionOp&) = default;
};

/// "L2", "C1>", "L5<", ...
inline std::string to_string(const ReflectionOp& op) {
  std::string s = op.kind == ReflectionKind::limit ? "L" : "C";
  s += std::to_string(op.k);
  if (op.boundary) s.push_back(arrow_char(*op.boundary));
  return s;
}

using ReflectionSequence = std::vector<ReflectionOp>;

inline std::string to_string(const ReflectionSequence& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += " ";
    s += to_string(seq[i]);
  }
  return s;
}

/// Every well-formed op for length n: four at each endpoint, two inside.
inline std::vector<ReflectionOp> all_reflection_ops(int n) {
  std::vector<ReflectionOp> ops;
  for (int k = 1; k <= n; ++k)
    for (auto kind : {ReflectionKind::limit, ReflectionKind::colimit}) {
      if (k == 1 || k == n) {
        ops.push_back(ReflectionOp::endpoint(kind, k, Arrow::forward));
        ops.push_back(ReflectionOp::endpoint(kind, k, Arrow::backward));
      } else {
        ops.push_back(ReflectionOp::interior(kind, k));
      }
    }
  return ops;
}

inline OrientationVector reflected_type(const ReflectionOp& op, const OrientationVector& tau) {
  op.validate(tau.length());
  return op.kind == ReflectionKind::limit ? extroverted_at(tau, op.k) : introverted_at(tau, op.k);
}

namespace detail {

/// The subdiagram left - V_k - right with zero padding at the ends.
/// Slots 0, 1, 2 are V_{k-1}, V_k, V_{k+1}.
inline FiniteDiagram local_diagram(const ReflectionOp& op, const ZigzagModule& v) {
  const int n = v.length();
  const int k = op.k;
  const Field f = v.field();
  FiniteDiagram fd{f, {k > 1 ? v.dim(k - 1) : 0, v.dim(k), k < n ? v.dim(k + 1) : 0}, {}};
  auto add_arrow = [&](std::size_t left, Arrow dir, const Matrix* m) {
    const std::size_t src = dir == Arrow::forward ? left : left + 1;
    const std::size_t dst = dir == Arrow::forward ? left + 1 : left;
    fd.arrows.push_back({src, dst, m ? *m : Matrix(fd.dims[dst], fd.dims[src], f)});
  };
  if (k > 1)
    add_arrow(0, v.type()[k - 1], &v.map(k - 1));
  else
    add_arrow(0, *op.boundary, nullptr);
  if (k < n)
    add_arrow(1, v.type()[k], &v.map(k));
  else
    add_arrow(1, *op.boundary, nullptr);
  return fd;
}

inline UniversalCone local_cone(const ReflectionOp& op, const ZigzagModule& v) {
  const FiniteDiagram fd = local_diagram(op, v);
  return op.kind == ReflectionKind::limit ? diagram_limit(fd) : diagram_colimit(fd);
}

inline ZigzagModule assemble(const ReflectionOp& op, const ZigzagModule& v, const UniversalCone& cone) {
  const int n = v.length();
  const int k = op.k;
  std::vector<std::size_t> dims(v.dims().begin(), v.dims().end());
  dims[static_cast<std::size_t>(k - 1)] = cone.dim;
  std::vector<Matrix> maps(v.maps().begin(), v.maps().end());
  // Limit legs point out of the apex, colimit legs into it; either way the
  // leg matrix is exactly the new structure map.
  if (k > 1) maps[static_cast<std::size_t>(k - 2)] = cone.legs[0];
  if (k < n) maps[static_cast<std::size_t>(k - 1)] = cone.legs[2];
  return ZigzagModule(reflected_type(op, v.type()), std::move(dims), std::move(maps), v.field());
}

inline Matrix local_components(const ReflectionOp& op, const Morphism& phi) {
  const int n = phi.source.length();
  const int k = op.k;
  const Field f = phi.source.field();
  auto comp = [&](int i) { return phi.components[static_cast<std::size_t>(i - 1)]; };
  Matrix left = k > 1 ? comp(k - 1) : Matrix(0, 0, f);
  Matrix right = k < n ? comp(k + 1) : Matrix(0, 0, f);
  return block_diagonal(block_diagonal(left, comp(k)), right);
}

}  // namespace detail

/// Replaces V_k by the limit (L_k) or colimit (C_k) of its local subdiagram.
inline ZigzagModule reflect(const ReflectionOp& op, const ZigzagModule& v) {
  op.validate(v.length());
  return detail::assemble(op, v, detail::local_cone(op, v));
}

/// The induced morphism R(phi) : R(V) -> R(W). Only component k changes; it
/// is the unique map through the universal property.
inline Morphism reflect(const ReflectionOp& op, const Morphism& phi) {
  op.validate(phi.source.length());
  if (!is_morphism(phi)) throw PreconditionError("reflect: input is not a morphism");
  const Field f = phi.source.field();
  const UniversalCone cv = detail::local_cone(op, phi.source);
  const UniversalCone cw = detail::local_cone(op, phi.target);
  const Matrix big = detail::local_components(op, phi);
  std::optional<Matrix> mid;
  if (op.kind == ReflectionKind::limit) {
    // K_W * mu = Phi * K_V
    mid = solve(cw.stacked_limit_legs(f), big * cv.stacked_limit_legs(f));
  } else {
    // nu * P_V = P_W * Phi, solved transposed.
    const Matrix rhs = (cw.stacked_colimit_legs(f) * big).transposed();
    if (auto t = solve(cv.stacked_colimit_legs(f).transposed(), rhs)) mid = t->transposed();
  }
  if (!mid) throw Error("reflect: universal factorization does not exist");
  Morphism out{detail::assemble(op, phi.source, cv), detail::assemble(op, phi.target, cw), phi.components};
  out.components[static_cast<std::size_t>(op.k - 1)] = std::move(*mid);
  return out;
}

}  // namespace zzref
