#pragma once

#include <zzref/decompose.hpp>
#include <zzref/linalg.hpp>
#include <zzref/orientation.hpp>
#include <zzref/persistence_diagram.hpp>
#include <zzref/zigzag_module.hpp>

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace zzref {

using Rng = std::mt19937_64;

inline OrientationVector random_type(int n, Rng& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Arrow> arrows;
  for (int i = 1; i < n; ++i) arrows.push_back(coin(rng) ? Arrow::backward : Arrow::forward);
  return OrientationVector(std::move(arrows));
}

/// Uniform over the n(n+1)/2 intervals of [1, n].
inline Interval random_interval(int n, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, n * (n + 1) / 2 - 1);
  int r = pick(rng);
  for (int b = 1; b <= n; ++b) {
    const int count = n - b + 1;
    if (r < count) return {b, b + r};
    r -= count;
  }
  return {n, n};
}

/// Between 0 and max_points points (with multiplicity), uniformly many.
inline PersistenceDiagram random_diagram(int n, std::size_t max_points, Rng& rng) {
  std::uniform_int_distribution<std::size_t> count(0, max_points);
  PersistenceDiagram d(n);
  for (std::size_t c = count(rng); c > 0; --c) d.add(random_interval(n, rng));
  return d;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Field f, Rng& rng) {
  std::uniform_int_distribution<Field::value_type> entry(0, f.prime() - 1);
  Matrix m(rows, cols, f);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, entry(rng));
  return m;
}

/// Rejection sampling; over GF(2) roughly 29% of large matrices are invertible.
inline Matrix random_invertible(std::size_t dim, Field f, Rng& rng) {
  while (true) {
    Matrix m = random_matrix(dim, dim, f, rng);
    if (is_invertible(m)) return m;
  }
}

/// Isomorphic copy of v under random basis changes.
inline ZigzagModule random_conjugate(const ZigzagModule& v, Rng& rng) {
  std::vector<Matrix> bases;
  for (auto d : v.dims()) bases.push_back(random_invertible(d, v.field(), rng));
  return conjugate(v, bases).module;
}

struct GeneratedModule {
  ZigzagModule module;
  SymbolicModule truth;  // the type and diagram it was built from
};

inline GeneratedModule random_module(int n, std::size_t max_points, Field f, Rng& rng) {
  OrientationVector type = random_type(n, rng);
  PersistenceDiagram d = random_diagram(n, max_points, rng);
  ZigzagModule v = random_conjugate(synthesize(type, d, f), rng);
  return {std::move(v), SymbolicModule{std::move(type), std::move(d)}};
}

/// Deterministic in (n, max_points, prime, seed).
inline GeneratedModule generate_random_module(int n, std::size_t max_points, Field::value_type prime,
                                              std::uint64_t seed) {
  Rng rng(seed);
  return random_module(n, max_points, Field(prime), rng);
}

}  // namespace zzref
