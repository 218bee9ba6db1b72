#pragma once

#include <zzref/error.hpp>
#include <zzref/linalg.hpp>
#include <zzref/orientation.hpp>
#include <zzref/persistence_diagram.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zzref {

/// A concrete zigzag module: one space per position and one matrix per
/// arrow. Arrow i (1-based) is a dims[i+1] x dims[i] matrix when forward and
/// dims[i] x dims[i+1] when backward (positions 1-based as well).
class ZigzagModule {
 public:
  ZigzagModule(OrientationVector type, std::vector<std::size_t> dims, std::vector<Matrix> maps,
               Field field = Field{})
      : type_(std::move(type)), dims_(std::move(dims)), maps_(std::move(maps)), field_(field) {
    validate();
  }

  static ZigzagModule zero(OrientationVector type, Field field = Field{}) {
    const int n = type.length();
    std::vector<Matrix> maps(static_cast<std::size_t>(n - 1), Matrix(0, 0, field));
    return ZigzagModule(std::move(type), std::vector<std::size_t>(static_cast<std::size_t>(n), 0),
                        std::move(maps), field);
  }

  [[nodiscard]] const OrientationVector& type() const { return type_; }
  [[nodiscard]] int length() const { return type_.length(); }
  [[nodiscard]] Field field() const { return field_; }

  /// dim V_i, 1 <= i <= n.
  [[nodiscard]] std::size_t dim(int i) const {
    check_position(type_, i);
    return dims_[static_cast<std::size_t>(i - 1)];
  }
  /// Structure map p_i, 1 <= i <= n - 1, oriented as type()[i].
  [[nodiscard]] const Matrix& map(int i) const {
    (void)type_[i];
    return maps_[static_cast<std::size_t>(i - 1)];
  }
  [[nodiscard]] std::span<const std::size_t> dims() const { return dims_; }
  [[nodiscard]] std::span<const Matrix> maps() const { return maps_; }

  [[nodiscard]] std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto d : dims_) s += d;
    return s;
  }
  [[nodiscard]] bool is_zero() const { return total_dim() == 0; }

  /// Dimensions (rows, cols) the i-th map must have.
  [[nodiscard]] std::pair<std::size_t, std::size_t> expected_shape(int i) const {
    const std::size_t a = dims_[static_cast<std::size_t>(i - 1)];
    const std::size_t b = dims_[static_cast<std::size_t>(i)];
    return type_[i] == Arrow::forward ? std::pair{b, a} : std::pair{a, b};
  }

  friend bool operator==(const ZigzagModule&, const ZigzagModule&) = default;

 private:
  void validate() const {
    const auto n = static_cast<std::size_t>(type_.length());
    if (dims_.size() != n)
      throw StructuralError("module of length " + std::to_string(n) + " given " +
                            std::to_string(dims_.size()) + " dimensions");
    if (maps_.size() != n - 1)
      throw StructuralError("module of length " + std::to_string(n) + " given " +
                            std::to_string(maps_.size()) + " maps");
    for (int i = 1; i < static_cast<int>(n); ++i) {
      const auto [r, c] = expected_shape(i);
      const Matrix& m = maps_[static_cast<std::size_t>(i - 1)];
      if (m.rows() != r || m.cols() != c)
        throw StructuralError("map " + std::to_string(i) + " has shape " + m.shape() + ", expected " +
                              std::to_string(r) + "x" + std::to_string(c));
      if (m.field() != field_) throw StructuralError("map " + std::to_string(i) + " over a different field");
    }
  }

  OrientationVector type_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> maps_;
  Field field_;
};

/// A family of component maps phi_i : V_i -> W_i between modules of the
/// same type. Whether the squares commute is checked by is_morphism().
struct Morphism {
  ZigzagModule source;
  ZigzagModule target;
  std::vector<Matrix> components;
};

inline Morphism identity_morphism(const ZigzagModule& v) {
  std::vector<Matrix> comps;
  for (auto d : v.dims()) comps.push_back(Matrix::identity(d, v.field()));
  return {v, v, std::move(comps)};
}

inline Morphism zero_morphism(const ZigzagModule& v, const ZigzagModule& w) {
  std::vector<Matrix> comps;
  for (int i = 1; i <= v.length(); ++i) comps.emplace_back(w.dim(i), v.dim(i), v.field());
  return {v, w, std::move(comps)};
}

/// True iff every square commutes exactly. Throws StructuralError when the
/// components do not have the shapes the two modules require.
inline bool is_morphism(const Morphism& phi) {
  const ZigzagModule& v = phi.source;
  const ZigzagModule& w = phi.target;
  if (v.type() != w.type()) throw StructuralError("morphism between modules of different types");
  const int n = v.length();
  if (phi.components.size() != static_cast<std::size_t>(n))
    throw StructuralError("morphism needs " + std::to_string(n) + " components");
  for (int i = 1; i <= n; ++i) {
    const Matrix& c = phi.components[static_cast<std::size_t>(i - 1)];
    if (c.rows() != w.dim(i) || c.cols() != v.dim(i))
      throw StructuralError("component " + std::to_string(i) + " has shape " + c.shape());
  }
  for (int i = 1; i < n; ++i) {
    const Matrix& left = phi.components[static_cast<std::size_t>(i - 1)];
    const Matrix& right = phi.components[static_cast<std::size_t>(i)];
    if (v.type()[i] == Arrow::forward) {
      if (right * v.map(i) != w.map(i) * left) return false;
    } else {
      if (left * v.map(i) != w.map(i) * right) return false;
    }
  }
  return true;
}

/// psi ∘ phi.
inline Morphism compose(const Morphism& psi, const Morphism& phi) {
  if (!(phi.target == psi.source)) throw StructuralError("morphisms are not composable");
  std::vector<Matrix> comps;
  for (std::size_t i = 0; i < phi.components.size(); ++i)
    comps.push_back(psi.components[i] * phi.components[i]);
  return {phi.source, psi.target, std::move(comps)};
}

/// I_tau([b, d]): F on positions b..d, identities strictly inside.
inline ZigzagModule interval_module(const OrientationVector& type, Interval iv, Field field = Field{}) {
  const int n = type.length();
  if (iv.birth < 1 || iv.birth > iv.death || iv.death > n)
    throw IndexError("interval " + to_string(iv) + " outside 1 <= b <= d <= " + std::to_string(n));
  std::vector<std::size_t> dims(static_cast<std::size_t>(n), 0);
  for (int i = iv.birth; i <= iv.death; ++i) dims[static_cast<std::size_t>(i - 1)] = 1;
  std::vector<Matrix> maps;
  for (int i = 1; i < n; ++i) {
    const std::size_t a = dims[static_cast<std::size_t>(i - 1)];
    const std::size_t b = dims[static_cast<std::size_t>(i)];
    if (a == 1 && b == 1)
      maps.push_back(Matrix::identity(1, field));
    else
      maps.push_back(type[i] == Arrow::forward ? Matrix(b, a, field) : Matrix(a, b, field));
  }
  return ZigzagModule(type, std::move(dims), std::move(maps), field);
}

inline ZigzagModule direct_sum(const ZigzagModule& v, const ZigzagModule& w) {
  if (v.type() != w.type())
    throw StructuralError("direct sum of modules of types " + v.type().str() + " and " + w.type().str());
  if (v.field() != w.field()) throw StructuralError("direct sum over different fields");
  std::vector<std::size_t> dims;
  for (int i = 1; i <= v.length(); ++i) dims.push_back(v.dim(i) + w.dim(i));
  std::vector<Matrix> maps;
  for (int i = 1; i < v.length(); ++i) maps.push_back(block_diagonal(v.map(i), w.map(i)));
  return ZigzagModule(v.type(), std::move(dims), std::move(maps), v.field());
}

/// ⊕ I_tau([b,d]) over the diagram, one summand per point, in sorted order.
inline ZigzagModule synthesize(const OrientationVector& type, const PersistenceDiagram& diagram,
                               Field field = Field{}) {
  if (diagram.length() != type.length())
    throw StructuralError("diagram length " + std::to_string(diagram.length()) + " != type length " +
                          std::to_string(type.length()));
  ZigzagModule out = ZigzagModule::zero(type, field);
  for (const auto& iv : diagram.expanded()) out = direct_sum(out, interval_module(type, iv, field));
  return out;
}

inline ZigzagModule synthesize(const SymbolicModule& s, Field field = Field{}) {
  return synthesize(s.type, s.diagram, field);
}

struct Conjugated {
  ZigzagModule module;
  /// Isomorphism original -> module with components equal to the bases.
  Morphism witness;
};

/// Rewrites every structure map through invertible basis changes B_i so that
/// B = (B_i) is an isomorphism V -> result.
inline Conjugated conjugate(const ZigzagModule& v, std::span<const Matrix> bases) {
  const int n = v.length();
  if (bases.size() != static_cast<std::size_t>(n))
    throw StructuralError("conjugate needs one basis change per position");
  std::vector<Matrix> inverses;
  for (int i = 1; i <= n; ++i) {
    const Matrix& b = bases[static_cast<std::size_t>(i - 1)];
    if (b.rows() != v.dim(i) || b.cols() != v.dim(i))
      throw StructuralError("basis change " + std::to_string(i) + " has shape " + b.shape());
    inverses.push_back(inverse(b));  // throws PreconditionError when singular
  }
  std::vector<Matrix> maps;
  for (int i = 1; i < n; ++i) {
    const auto li = static_cast<std::size_t>(i - 1), ri = static_cast<std::size_t>(i);
    if (v.type()[i] == Arrow::forward)
      maps.push_back(bases[ri] * v.map(i) * inverses[li]);
    else
      maps.push_back(bases[li] * v.map(i) * inverses[ri]);
  }
  std::vector<std::size_t> dims(v.dims().begin(), v.dims().end());
  ZigzagModule w(v.type(), std::move(dims), std::move(maps), v.field());
  Morphism witness{v, w, std::vector<Matrix>(bases.begin(), bases.end())};
  return {std::move(w), std::move(witness)};
}

/// Arrows whose structure map is square and invertible.
inline std::vector<int> iso_positions(const ZigzagModule& v) {
  std::vector<int> out;
  for (int i = 1; i < v.length(); ++i)
    if (is_invertible(v.map(i))) out.push_back(i);
  return out;
}

/// Arrows that are isomorphisms in every module with this diagram: each
/// interval contains both endpoints i, i+1 or neither.
inline std::vector<int> iso_positions(const PersistenceDiagram& d) {
  std::vector<int> out;
  for (int i = 1; i < d.length(); ++i) {
    bool iso = true;
    for (const auto& p : d.points())
      if (p.interval.contains(i) != p.interval.contains(i + 1)) {
        iso = false;
        break;
      }
    if (iso) out.push_back(i);
  }
  return out;
}

/// A_k: replace the invertible p_k by its inverse and flip arrow k.
inline ZigzagModule arrow_reverse(const ZigzagModule& v, int k) {
  const Matrix& p = v.map(k);
  if (!is_invertible(p))
    throw PreconditionError("arrow " + std::to_string(k) + " is not an isomorphism");
  std::vector<Matrix> maps(v.maps().begin(), v.maps().end());
  maps[static_cast<std::size_t>(k - 1)] = inverse(p);
  std::vector<std::size_t> dims(v.dims().begin(), v.dims().end());
  return ZigzagModule(reversed_at(v.type(), k), std::move(dims), std::move(maps), v.field());
}

/// Representative of the arrow-reversal class: every arrow that is an
/// isomorphism for this diagram is turned forward.
inline OrientationVector canonical_type(const OrientationVector& type, const PersistenceDiagram& d) {
  OrientationVector out = type;
  for (int i : iso_positions(d)) out.set(i, Arrow::forward);
  return out;
}

/// v ≾ w on (type, diagram) representatives: v's diagram sits inside w's and
/// the types differ only at arrows that are isomorphisms for v's diagram.
inline bool is_summand_upto_equiv(const SymbolicModule& v, const SymbolicModule& w) {
  if (v.length() != w.length())
    throw StructuralError("comparing modules of lengths " + std::to_string(v.length()) + " and " +
                          std::to_string(w.length()));
  if (!is_subdiagram(v.diagram, w.diagram)) return false;
  return canonical_type(v.type, v.diagram) == canonical_type(w.type, v.diagram);
}

}  // namespace zzref
