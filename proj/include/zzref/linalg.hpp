#pragma once

// Exact dense linear algebra over a prime field GF(p), plus limits and
// colimits of small finite diagrams of vector spaces.

#include <zzref/error.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zzref {

/// Arithmetic in GF(p). The prime is a runtime value so that one binary can
/// work over GF(2), GF(5), ... as configured.
class Field {
 public:
  using value_type = std::uint32_t;

  static constexpr value_type kDefaultPrime = 2;
  static constexpr value_type kMaxPrime = (1u << 31) - 1;

  constexpr Field() = default;

  explicit Field(value_type prime) : prime_(prime) {
    if (!is_prime(prime) || prime > kMaxPrime)
      throw PreconditionError("field characteristic must be a prime below 2^31, got " +
                              std::to_string(prime));
  }

  [[nodiscard]] constexpr value_type prime() const { return prime_; }

  [[nodiscard]] value_type reduce(long long v) const {
    long long r = v % static_cast<long long>(prime_);
    return static_cast<value_type>(r < 0 ? r + prime_ : r);
  }
  [[nodiscard]] value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= prime_ ? s - prime_ : s);
  }
  [[nodiscard]] value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + prime_ - b);
  }
  [[nodiscard]] value_type neg(value_type a) const { return a == 0 ? 0 : prime_ - a; }
  [[nodiscard]] value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} * b) % prime_);
  }
  [[nodiscard]] value_type inv(value_type a) const {
    if (a == 0) throw PreconditionError("division by zero in GF(p)");
    // Fermat: a^(p-2).
    std::uint64_t result = 1, base = a, e = prime_ - 2;
    while (e > 0) {
      if (e & 1) result = (result * base) % prime_;
      base = (base * base) % prime_;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }

  static constexpr bool is_prime(value_type v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
      if (v % d == 0) return false;
    return true;
  }

  friend constexpr bool operator==(Field, Field) = default;

 private:
  value_type prime_ = kDefaultPrime;
};

/// Dense row-major matrix over GF(p). Zero-row and zero-column matrices are
/// valid and represent maps from or to the zero space.
class Matrix {
 public:
  using value_type = Field::value_type;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field = Field{})
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n, Field field = Field{}) {
    Matrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
  }

  /// Builds a matrix from integer rows, reducing each entry modulo p.
  static Matrix from_rows(std::initializer_list<std::initializer_list<long long>> rows,
                          Field field = Field{}) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(r, c, field);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw StructuralError("ragged matrix literal");
      std::size_t j = 0;
      for (long long v : row) m.set(i, j++, v);
      ++i;
    }
    return m;
  }

  static Matrix from_entries(std::size_t rows, std::size_t cols, std::span<const long long> entries,
                             Field field = Field{}) {
    if (entries.size() != rows * cols)
      throw StructuralError("expected " + std::to_string(rows * cols) + " entries, got " +
                            std::to_string(entries.size()));
    Matrix m(rows, cols, field);
    for (std::size_t i = 0; i < entries.size(); ++i) m.data_[i] = field.reduce(entries[i]);
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }
  [[nodiscard]] std::span<const value_type> entries() const { return data_; }

  [[nodiscard]] value_type operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, long long v) { data_[r * cols_ + c] = field_.reduce(v); }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](value_type v) { return v == 0; });
  }

  [[nodiscard]] Matrix transposed() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
    return t;
  }

  /// Rows [first, first + count).
  [[nodiscard]] Matrix row_block(std::size_t first, std::size_t count) const {
    Matrix m(count, cols_, field_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_), count * cols_,
                m.data_.begin());
    return m;
  }

  /// Columns [first, first + count).
  [[nodiscard]] Matrix col_block(std::size_t first, std::size_t count) const {
    Matrix m(rows_, count, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) m.data_[i * count + j] = (*this)(i, first + j);
    return m;
  }

  /// Copies `block` into this matrix with its top-left corner at (r0, c0).
  void place(std::size_t r0, std::size_t c0, const Matrix& block) {
    for (std::size_t i = 0; i < block.rows_; ++i)
      for (std::size_t j = 0; j < block.cols_; ++j)
        data_[(r0 + i) * cols_ + c0 + j] = block(i, j);
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw StructuralError("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
    check_same_field(a, b);
    const Field f = a.field_;
    Matrix c(a.rows_, b.cols_, f);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const value_type aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c.data_[i * c.cols_ + j] = f.add(c.data_[i * c.cols_ + j], f.mul(aik, b(k, j)));
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
    return c;
  }

  [[nodiscard]] Matrix scaled(long long s) const {
    Matrix c = *this;
    const value_type k = field_.reduce(s);
    for (auto& v : c.data_) v = field_.mul(v, k);
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

  [[nodiscard]] std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  static void check_same_field(const Matrix& a, const Matrix& b) {
    if (a.field_ != b.field_) throw StructuralError("matrices over different fields");
  }
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw StructuralError("shape mismatch: " + a.shape() + " vs " + b.shape());
    check_same_field(a, b);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_{};
  std::vector<value_type> data_;
};

/// [a | b]
inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw StructuralError("hstack row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols(), a.field());
  m.place(0, 0, a);
  m.place(0, a.cols(), b);
  return m;
}

/// [a ; b]
inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw StructuralError("vstack column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols(), a.field());
  m.place(0, 0, a);
  m.place(a.rows(), 0, b);
  return m;
}

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols(), a.field());
  m.place(0, 0, a);
  m.place(a.rows(), a.cols(), b);
  return m;
}

/// Reduced row echelon form together with its pivot columns (ascending).
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

inline RowEchelon row_reduce(Matrix m) {
  const Field f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const auto tmp = m(r, j);
        m.set(r, j, m(p, j));
        m.set(p, j, tmp);
      }
    const auto scale = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m.set(r, j, f.mul(m(r, j), scale));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        m.set(i, j, f.sub(m(i, j), f.mul(factor, m(r, j))));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).pivot_cols.size(); }

/// Basis of the null space as the columns of a cols(m) x (cols(m) - rank)
/// matrix. One basis vector per free column, in ascending column order.
inline Matrix kernel_basis(const Matrix& m) {
  const auto [reduced, pivots] = row_reduce(m);
  const Field f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis(m.cols(), m.cols() - pivots.size(), f);
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.set(free, out, 1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      basis.set(pivots[i], out, f.neg(reduced(i, free)));
    ++out;
  }
  return basis;
}

struct Cokernel {
  std::size_t dim = 0;
  /// Quotient map onto coker(m): full row rank, proj * m == 0.
  Matrix proj;
};

inline Cokernel cokernel(const Matrix& m) {
  Matrix proj = kernel_basis(m.transposed()).transposed();
  const std::size_t dim = proj.rows();
  return {dim, std::move(proj)};
}

/// Some X with a * X == b, or nullopt when the system is inconsistent.
/// Free variables are set to zero, so the answer is unique when a has full
/// column rank.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw StructuralError("solve: row mismatch " + a.shape() + " vs " + b.shape());
  const auto [reduced, pivots] = row_reduce(hstack(a, b));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] >= a.cols()) return std::nullopt;
  Matrix x(a.cols(), b.cols(), a.field());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(pivots[i], j, reduced(i, a.cols() + j));
  return x;
}

inline bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

inline Matrix inverse(const Matrix& m) {
  if (!is_invertible(m)) throw PreconditionError("matrix " + m.shape() + " is not invertible");
  return *solve(m, Matrix::identity(m.rows(), m.field()));
}

// ---------------------------------------------------------------------------
// Finite diagrams

struct DiagramArrow {
  std::size_t source;
  std::size_t target;
  Matrix map;  // dim(target) x dim(source)
};

/// A finite diagram of vector spaces given by explicit spaces and arrows.
/// Composites are implied by the arrows; cone conditions on arrows suffice.
struct FiniteDiagram {
  Field field{};
  std::vector<std::size_t> dims;
  std::vector<DiagramArrow> arrows;

  void validate() const {
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      const auto& arr = arrows[a];
      if (arr.source >= dims.size() || arr.target >= dims.size())
        throw StructuralError("diagram arrow " + std::to_string(a) + " references a missing space");
      if (arr.map.cols() != dims[arr.source] || arr.map.rows() != dims[arr.target])
        throw StructuralError("diagram arrow " + std::to_string(a) + " has shape " + arr.map.shape() +
                              ", expected " + std::to_string(dims[arr.target]) + "x" +
                              std::to_string(dims[arr.source]));
      if (arr.map.field() != field) throw StructuralError("diagram arrow over a different field");
    }
  }

  [[nodiscard]] std::vector<std::size_t> offsets() const {
    std::vector<std::size_t> off(dims.size() + 1, 0);
    for (std::size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + dims[i];
    return off;
  }
};

/// A (co)cone with apex dimension `dim`. For a limit, legs[j] maps the apex
/// to space j; for a colimit, legs[j] maps space j to the apex.
struct UniversalCone {
  std::size_t dim = 0;
  std::vector<Matrix> legs;

  /// Legs stacked into one map apex -> (+)_j D(j) (limit) or
  /// (+)_j D(j) -> apex (colimit).
  Matrix stacked_limit_legs(Field f) const {
    Matrix out(0, dim, f);
    for (const auto& leg : legs) out = vstack(out, leg);
    return out;
  }
  Matrix stacked_colimit_legs(Field f) const {
    Matrix out(dim, 0, f);
    for (const auto& leg : legs) out = hstack(out, leg);
    return out;
  }
};

/// Limit as the kernel of the constraint map (+)_j D(j) -> (+)_arrows D(target)
/// sending x to (x_t - M x_s) per arrow; legs are coordinate projections.
inline UniversalCone diagram_limit(const FiniteDiagram& d) {
  d.validate();
  const auto off = d.offsets();
  std::size_t constraint_rows = 0;
  for (const auto& a : d.arrows) constraint_rows += d.dims[a.target];
  Matrix constraint(constraint_rows, off.back(), d.field);
  std::size_t row = 0;
  for (const auto& a : d.arrows) {
    const std::size_t dt = d.dims[a.target];
    // Assemble per-arrow so that self-loops (source == target) accumulate.
    Matrix block(dt, off.back(), d.field);
    for (std::size_t i = 0; i < dt; ++i) block.set(i, off[a.target] + i, 1);
    const Field f = d.field;
    for (std::size_t i = 0; i < dt; ++i)
      for (std::size_t j = 0; j < a.map.cols(); ++j) {
        const std::size_t c = off[a.source] + j;
        block.set(i, c, f.sub(block(i, c), a.map(i, j)));
      }
    constraint.place(row, 0, block);
    row += dt;
  }
  Matrix k = kernel_basis(constraint);
  UniversalCone cone;
  cone.dim = k.cols();
  for (std::size_t j = 0; j < d.dims.size(); ++j) cone.legs.push_back(k.row_block(off[j], d.dims[j]));
  return cone;
}

/// Colimit as the cokernel of the relation map whose columns are
/// inj_s(e) - inj_t(M e) over every arrow and source basis vector e.
inline UniversalCone diagram_colimit(const FiniteDiagram& d) {
  d.validate();
  const auto off = d.offsets();
  std::size_t relation_cols = 0;
  for (const auto& a : d.arrows) relation_cols += d.dims[a.source];
  Matrix relations(off.back(), relation_cols, d.field);
  const Field f = d.field;
  std::size_t col = 0;
  for (const auto& a : d.arrows) {
    for (std::size_t j = 0; j < d.dims[a.source]; ++j, ++col) {
      relations.set(off[a.source] + j, col, f.add(relations(off[a.source] + j, col), 1));
      for (std::size_t i = 0; i < d.dims[a.target]; ++i) {
        const std::size_t r = off[a.target] + i;
        relations.set(r, col, f.sub(relations(r, col), a.map(i, j)));
      }
    }
  }
  auto [dim, proj] = cokernel(relations);
  UniversalCone cocone;
  cocone.dim = dim;
  for (std::size_t j = 0; j < d.dims.size(); ++j) cocone.legs.push_back(proj.col_block(off[j], d.dims[j]));
  return cocone;
}

}  // namespace zzref
