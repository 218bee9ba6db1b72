#pragma once

#include <zzref/bottleneck.hpp>
#include <zzref/decompose.hpp>
#include <zzref/io.hpp>
#include <zzref/random.hpp>
#include <zzref/reflection_distance.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <thread>
#include <vector>

namespace zzref {

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  int n = 0;
  bool same_type = false;
  SymbolicModule v{OrientationVector::uniform(2, Arrow::forward), PersistenceDiagram(2)};
  SymbolicModule w{OrientationVector::uniform(2, Arrow::forward), PersistenceDiagram(2)};
  double d_r1 = 0;
  double d_b1 = 0;
  double d_binf = 0;
  bool binf_le_b1 = true;
  bool b1_le_2binf = true;
  bool b1_le_r1 = true;
  bool bilipschitz = true;  // only checked for same-type pairs
  ReflectionSequence witness_vw;
  ReflectionSequence witness_wv;

  [[nodiscard]] bool ok() const { return binf_le_b1 && b1_le_2binf && b1_le_r1 && bilipschitz; }
};

struct ExperimentReport {
  std::vector<TrialRecord> trials;

  [[nodiscard]] std::size_t violations() const {
    return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto& t) { return !t.ok(); }));
  }
  [[nodiscard]] bool ok() const { return violations() == 0; }
};

/// Seed of trial i, derived from the experiment seed alone.
inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (std::uint64_t{words[0]} << 32) | words[1];
}

/// Checks d_b^inf <= d_b^1 <= 2 d_b^inf, d_b^1 <= d_R^1, and for same-type
/// pairs d_R^1 <= n^2 (n + 1) d_b^1 on one random pair. Every third trial
/// uses a common type for both modules.
inline TrialRecord run_trial(std::size_t index, std::uint64_t seed, int max_n, std::size_t max_points,
                             Field field = Field{}) {
  TrialRecord r;
  r.index = index;
  r.seed = trial_seed(seed, index);
  Rng rng(r.seed);
  r.n = std::uniform_int_distribution<int>(2, std::max(2, max_n))(rng);
  r.same_type = index % 3 == 0;
  GeneratedModule gv = random_module(r.n, max_points, field, rng);
  GeneratedModule gw = random_module(r.n, max_points, field, rng);
  OrientationVector wtype = r.same_type ? gv.module.type() : gw.module.type();
  ZigzagModule wmod = r.same_type ? random_conjugate(synthesize(wtype, gw.truth.diagram, field), rng) : gw.module;
  r.v = SymbolicModule{gv.module.type(), decompose(gv.module)};
  r.w = SymbolicModule{wmod.type(), decompose(wmod)};

  ReflectionDistance dr = reflection_distance(r.v, r.w, 1.0);
  r.d_r1 = dr.value;
  r.witness_vw = std::move(dr.witness_forward);
  r.witness_wv = std::move(dr.witness_backward);
  r.d_b1 = bottleneck_distance(r.v.diagram, r.w.diagram, 1.0).value;
  r.d_binf = bottleneck_distance(r.v.diagram, r.w.diagram, kInfinity).value;
  r.binf_le_b1 = r.d_binf <= r.d_b1;
  r.b1_le_2binf = r.d_b1 <= 2.0 * r.d_binf;
  r.b1_le_r1 = r.d_b1 <= r.d_r1;
  if (r.same_type) {
    const double n = r.n;
    r.bilipschitz = r.d_r1 <= n * n * (n + 1) * r.d_b1;
  }
  return r;
}

/// Trials are independent; with threads > 1 they are spread round-robin
/// and the report is still ordered by trial index.
inline ExperimentReport stability_experiment(std::size_t trials, int max_n, std::size_t max_points,
                                             std::uint64_t seed, unsigned threads = 1, Field field = Field{}) {
  std::vector<std::optional<TrialRecord>> slots(trials);
  auto worker = [&](unsigned id, unsigned stride) {
    for (std::size_t i = id; i < trials; i += stride) slots[i] = run_trial(i, seed, max_n, max_points, field);
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
    for (auto& th : pool) th.join();
  }
  ExperimentReport rep;
  for (auto& s : slots) rep.trials.push_back(std::move(*s));
  return rep;
}

inline Json to_json(const TrialRecord& r) {
  Json j;
  j["trial"] = r.index;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["same_type"] = r.same_type;
  j["v"] = to_json(r.v);
  j["w"] = to_json(r.w);
  j["d_R1"] = r.d_r1;
  j["d_b1"] = r.d_b1;
  j["d_binf"] = r.d_binf;
  j["witness_vw"] = to_string(r.witness_vw);
  j["witness_wv"] = to_string(r.witness_wv);
  j["flags"] = {{"dbinf_le_db1", r.binf_le_b1},
                {"db1_le_2dbinf", r.b1_le_2binf},
                {"db1_le_dR1", r.b1_le_r1},
                {"dR1_le_bilipschitz", r.bilipschitz}};
  return j;
}

inline Json to_json(const ExperimentReport& rep) {
  Json j;
  Json trials = Json::array();
  std::size_t same = 0;
  for (const auto& t : rep.trials) {
    trials.push_back(to_json(t));
    same += t.same_type;
  }
  j["summary"] = {{"trials", rep.trials.size()},
                  {"same_type_trials", same},
                  {"violations", rep.violations()},
                  {"ok", rep.ok()}};
  j["trials"] = std::move(trials);
  return j;
}

}  // namespace zzref
