#pragma once

#include <zzref/error.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zzref {

/// Direction of one structure map, read left to right: `forward` is
/// V_i -> V_{i+1}, `backward` is V_i <- V_{i+1}.
enum class Arrow : std::uint8_t { forward, backward };

constexpr Arrow flipped(Arrow a) { return a == Arrow::forward ? Arrow::backward : Arrow::forward; }
constexpr char arrow_char(Arrow a) { return a == Arrow::forward ? '>' : '<'; }

/// The type of a zigzag module of length n: n - 1 arrow directions.
///
/// Positions (where the spaces live) are numbered 1..n and arrows 1..n-1;
/// arrow i joins positions i and i + 1. Every index taken by the public
/// API below is 1-based.
class OrientationVector {
 public:
  static constexpr int kMaxLength = 64;

  explicit OrientationVector(std::vector<Arrow> arrows) : arrows_(std::move(arrows)) {
    if (arrows_.empty()) throw StructuralError("zigzag modules need length n >= 2");
    if (length() > kMaxLength) throw StructuralError("zigzag length above 64 is not supported");
  }

  /// Parses ">" / "<" strings, e.g. "><" is (->, <-).
  static OrientationVector parse(std::string_view s) {
    std::vector<Arrow> arrows;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '>')
        arrows.push_back(Arrow::forward);
      else if (s[i] == '<')
        arrows.push_back(Arrow::backward);
      else
        throw ParseError("type string: unexpected character '" + std::string(1, s[i]) +
                         "' at offset " + std::to_string(i));
    }
    return OrientationVector(std::move(arrows));
  }

  static OrientationVector uniform(int n, Arrow a) {
    if (n < 2) throw StructuralError("zigzag modules need length n >= 2");
    return OrientationVector(std::vector<Arrow>(static_cast<std::size_t>(n - 1), a));
  }

  /// Inverse of bits(): bit i - 1 set means arrow i is backward.
  static OrientationVector from_bits(int n, std::uint64_t bits) {
    std::vector<Arrow> arrows(static_cast<std::size_t>(n - 1), Arrow::forward);
    for (int i = 0; i < n - 1; ++i)
      if ((bits >> i) & 1u) arrows[static_cast<std::size_t>(i)] = Arrow::backward;
    return OrientationVector(std::move(arrows));
  }

  /// Module length n.
  [[nodiscard]] int length() const { return static_cast<int>(arrows_.size()) + 1; }

  /// Direction of arrow i, 1 <= i <= n - 1.
  [[nodiscard]] Arrow operator[](int i) const { return arrows_[checked(i)]; }
  void set(int i, Arrow a) { arrows_[checked(i)] = a; }

  [[nodiscard]] std::string str() const {
    std::string s;
    for (Arrow a : arrows_) s.push_back(arrow_char(a));
    return s;
  }

  [[nodiscard]] std::uint64_t bits() const {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i] == Arrow::backward) b |= std::uint64_t{1} << i;
    return b;
  }

  friend auto operator<=>(const OrientationVector&, const OrientationVector&) = default;
  friend bool operator==(const OrientationVector&, const OrientationVector&) = default;

 private:
  std::size_t checked(int i) const {
    if (i < 1 || i > static_cast<int>(arrows_.size()))
      throw IndexError("arrow index " + std::to_string(i) + " outside [1, " +
                       std::to_string(arrows_.size()) + "]");
    return static_cast<std::size_t>(i - 1);
  }

  std::vector<Arrow> arrows_;
};

enum class TypeTransform : std::uint8_t { reversal, extroversion, introversion };

enum class IndexClass : std::uint8_t { sink, source, forward_flow, backward_flow };

inline void check_position(const OrientationVector& tau, int k) {
  if (k < 1 || k > tau.length())
    throw IndexError("position " + std::to_string(k) + " outside [1, " + std::to_string(tau.length()) + "]");
}

/// r_k: flip arrow k.
inline OrientationVector reversed_at(OrientationVector tau, int k) {
  tau.set(k, flipped(tau[k]));
  return tau;
}

/// sigma_k: make position k a source (arrows k-1 and k point away from k).
inline OrientationVector extroverted_at(OrientationVector tau, int k) {
  check_position(tau, k);
  if (k > 1) tau.set(k - 1, Arrow::backward);
  if (k < tau.length()) tau.set(k, Arrow::forward);
  return tau;
}

/// zeta_k: make position k a sink.
inline OrientationVector introverted_at(OrientationVector tau, int k) {
  check_position(tau, k);
  if (k > 1) tau.set(k - 1, Arrow::forward);
  if (k < tau.length()) tau.set(k, Arrow::backward);
  return tau;
}

inline OrientationVector transform_type(const OrientationVector& tau, TypeTransform kind, int k) {
  switch (kind) {
    case TypeTransform::reversal:
      return reversed_at(tau, k);
    case TypeTransform::extroversion:
      return extroverted_at(tau, k);
    case TypeTransform::introversion:
      return introverted_at(tau, k);
  }
  throw StructuralError("unknown type transform");
}

inline IndexClass classify_index(const OrientationVector& tau, int k) {
  check_position(tau, k);
  const int n = tau.length();
  // Arrow k-1 enters k when forward; arrow k enters k when backward.
  const bool left_in = k > 1 && tau[k - 1] == Arrow::forward;
  const bool left_out = k > 1 && tau[k - 1] == Arrow::backward;
  const bool right_in = k < n && tau[k] == Arrow::backward;
  const bool right_out = k < n && tau[k] == Arrow::forward;
  if (!left_out && !right_out) return IndexClass::sink;
  if (!left_in && !right_in) return IndexClass::source;
  if (k > 1 && k < n && tau[k - 1] == Arrow::forward && tau[k] == Arrow::forward)
    return IndexClass::forward_flow;
  return IndexClass::backward_flow;
}

}  // namespace zzref
