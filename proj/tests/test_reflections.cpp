#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <zzref/zzref.hpp>

using namespace zzref;

namespace {

OrientationVector T(const char* s) { return OrientationVector::parse(s); }

const auto L = ReflectionKind::limit;
const auto C = ReflectionKind::colimit;

bool all_components_injective(const Morphism& phi) {
  for (const auto& c : phi.components)
    if (rank(c) != c.cols()) return false;
  return true;
}

}  // namespace

TEST(ReflectionOp, Validation) {
  EXPECT_NO_THROW(ReflectionOp::interior(L, 2).validate(3));
  EXPECT_THROW(ReflectionOp::interior(L, 1).validate(3), StructuralError);
  EXPECT_THROW(ReflectionOp::endpoint(L, 2, Arrow::forward).validate(3), StructuralError);
  EXPECT_THROW(ReflectionOp::interior(L, 4).validate(3), IndexError);
  EXPECT_EQ(all_reflection_ops(2).size(), 8u);
  EXPECT_EQ(all_reflection_ops(5).size(), 14u);
  EXPECT_EQ(to_string(ReflectionOp::endpoint(C, 1, Arrow::backward)), "C1<");
  EXPECT_EQ(to_string(ReflectionOp::interior(L, 3)), "L3");
}

TEST(Reflect, WorkedExampleConcrete) {
  const PersistenceDiagram d(4, {{1, 4}, {1, 2}, {2, 3}, {2, 3}, {3, 3}});
  const auto v = synthesize(T("><>"), d);
  const auto l2 = reflect(ReflectionOp::interior(L, 2), v);
  EXPECT_EQ(l2.type(), T("<>>"));
  EXPECT_EQ(l2.dim(2), 2u);  // pullback: 2 + 4 - dim(V_2) = 2
  EXPECT_EQ(decompose(l2), PersistenceDiagram(4, {{1, 4}, {1, 1}, {2, 3}, {3, 3}, {3, 3}}));
  const auto c3 = reflect(ReflectionOp::interior(C, 3), v);
  EXPECT_EQ(c3.type(), T(">><"));
  EXPECT_EQ(c3.dim(3), 2u);  // pushout: 4 + 1 - rank 3 = 2
  EXPECT_EQ(decompose(c3), PersistenceDiagram(4, {{1, 4}, {1, 3}, {2, 2}, {2, 2}}));
}

TEST(Reflect, ZeroModuleStaysZero) {
  for (const auto& op : all_reflection_ops(4)) {
    const auto r = reflect(op, ZigzagModule::zero(T("<<>")));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(r.type(), reflected_type(op, T("<<>")));
  }
}

TEST(Reflect, EndpointTables) {
  // Sink at 1 under L1> and source at 1 under C1<: [1,d] <-> [2,d].
  EXPECT_EQ(decompose(reflect(ReflectionOp::endpoint(L, 1, Arrow::forward), interval_module(T("<>"), {1, 3}))),
            PersistenceDiagram(3, {{2, 3}}));
  EXPECT_EQ(decompose(reflect(ReflectionOp::endpoint(C, 1, Arrow::backward), interval_module(T(">>"), {2, 3}))),
            PersistenceDiagram(3, {{1, 3}}));
  // Sink at n under Ln<: [b,n] -> [b,n-1].
  EXPECT_EQ(decompose(reflect(ReflectionOp::endpoint(L, 3, Arrow::backward), interval_module(T(">>"), {1, 3}))),
            PersistenceDiagram(3, {{1, 2}}));
}

TEST(ReflectMorphism, IdentityGoesToIdentity) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_module(2 + trial % 5, 4, Field(trial % 2 ? 2 : 5), rng);
    for (const auto& op : all_reflection_ops(g.module.length())) {
      const auto r = reflect(op, identity_morphism(g.module));
      EXPECT_EQ(r.source, reflect(op, g.module));
      EXPECT_TRUE(is_morphism(r));
      for (int i = 1; i <= r.source.length(); ++i)
        EXPECT_EQ(r.components[static_cast<std::size_t>(i - 1)], Matrix::identity(r.source.dim(i), r.source.field()));
    }
  }
}

TEST(ReflectMorphism, MonomorphismsStayMonomorphisms) {
  Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    const Field f(trial % 2 ? 2 : 5);
    const auto a = random_module(n, 3, f, rng).module;
    const auto x = random_conjugate(synthesize(a.type(), random_diagram(n, 3, rng), f), rng);
    const auto inc = gen::inclusion(a, x);
    ASSERT_TRUE(is_morphism(inc));
    for (const auto& op : all_reflection_ops(n)) {
      const auto r = reflect(op, inc);
      EXPECT_TRUE(is_morphism(r));
      EXPECT_TRUE(all_components_injective(r)) << to_string(op);
    }
  }
}

TEST(ReflectMorphism, PreservesComposition) {
  Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 4;
    const Field f(trial % 2 ? 2 : 3);
    const auto t = random_type(n, rng);
    auto mk = [&] { return random_conjugate(synthesize(t, random_diagram(n, 3, rng), f), rng); };
    const auto u = mk(), v = mk(), w = mk();
    const auto phi = gen::random_morphism(u, v, rng);
    const auto psi = gen::random_morphism(v, w, rng);
    ASSERT_TRUE(is_morphism(phi));
    ASSERT_TRUE(is_morphism(psi));
    for (const auto& op : all_reflection_ops(n)) {
      const auto lhs = reflect(op, compose(psi, phi));
      const auto rhs = compose(reflect(op, psi), reflect(op, phi));
      EXPECT_EQ(lhs.components, rhs.components) << to_string(op);
      EXPECT_TRUE(is_morphism(lhs));
    }
  }
}

TEST(ReflectMorphism, RejectsNonMorphisms) {
  const auto v = interval_module(T(">"), {1, 2}, Field(5));
  Morphism bad = identity_morphism(v);
  bad.components[0] = bad.components[0].scaled(2);
  EXPECT_THROW(reflect(ReflectionOp::endpoint(L, 1, Arrow::forward), bad), PreconditionError);
}

TEST(Reflect, Additivity) {
  Rng rng(34);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    const Field f(trial % 2 ? 2 : 5);
    const auto t = random_type(n, rng);
    const auto a = random_conjugate(synthesize(t, random_diagram(n, 3, rng), f), rng);
    const auto b = random_conjugate(synthesize(t, random_diagram(n, 3, rng), f), rng);
    for (const auto& op : all_reflection_ops(n))
      EXPECT_EQ(decompose(reflect(op, direct_sum(a, b))),
                merged(decompose(reflect(op, a)), decompose(reflect(op, b))));
  }
}

TEST(Reflect, IsomorphicInputsGiveIsomorphicOutputs) {
  Rng rng(35);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = random_module(2 + trial % 5, 4, Field(trial % 2 ? 2 : 5), rng);
    const auto h = random_conjugate(g.module, rng);
    for (const auto& op : all_reflection_ops(g.module.length()))
      EXPECT_EQ(decompose(reflect(op, g.module)), decompose(reflect(op, h)));
  }
}

TEST(Act, PreservesSummandsAndPrecsim) {
  Rng rng(36);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + trial % 5;
    const auto t = random_type(n, rng);
    const auto dw = random_diagram(n, 5, rng);
    PersistenceDiagram dv(n);
    for (const auto& iv : dw.expanded())
      if (rng() % 2) dv.add(iv);
    const SymbolicModule w{t, dw};
    // v: a summand of w after reversing a random subset of its own iso arrows.
    OrientationVector tv = t;
    for (int k : iso_positions(dv))
      if (rng() % 2) tv = reversed_at(tv, k);
    const SymbolicModule v{tv, dv};
    ASSERT_TRUE(is_summand_upto_equiv(v, w));
    for (const auto& op : all_reflection_ops(n)) {
      if (tv == t) { EXPECT_TRUE(is_subdiagram(act_raw(op, v).diagram, act_raw(op, w).diagram)); }
      EXPECT_TRUE(is_summand_upto_equiv(act(op, v), act(op, w))) << to_string(op);
    }
  }
}

TEST(Annihilate, ZeroAndSingleIntervals) {
  EXPECT_TRUE(annihilating_sequence(ZigzagModule::zero(T("<>"))).empty());
  for (int n = 2; n <= 6; ++n)
    for (std::uint64_t bits = 0; bits < (1u << (n - 1)); ++bits) {
      const auto t = OrientationVector::from_bits(n, bits);
      for (int b = 1; b <= n; ++b)
        for (int d = b; d <= n; ++d) {
          const SymbolicModule s{t, PersistenceDiagram(n, {{b, d}})};
          const auto seq = annihilating_sequence(s);
          EXPECT_EQ(seq.size(), static_cast<std::size_t>(d - b));
          EXPECT_TRUE(execute(seq, s).diagram.empty());
        }
    }
}

TEST(Annihilate, WorkedExampleAndRandomModules) {
  const auto v = synthesize(T("><>"), PersistenceDiagram(4, {{1, 4}, {1, 2}, {2, 3}, {2, 3}, {3, 3}}));
  const auto seq = annihilating_sequence(v);
  EXPECT_TRUE(execute(seq, SymbolicModule{v.type(), decompose(v)}).diagram.empty());

  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_module(2 + trial % 7, 5, Field(2), rng);
    const auto s = annihilating_sequence(g.module);
    EXPECT_TRUE(execute(s, g.truth).diagram.empty());
    // The symbolic run agrees with running the functors on matrices.
    auto strip = [](const ZigzagModule& x) { return synthesize(x.type(), remove_simple(decompose(x))); };
    ZigzagModule m = strip(g.module);
    for (const auto& op : s) m = strip(reflect(op, m));
    EXPECT_TRUE(m.is_zero());
  }
}
