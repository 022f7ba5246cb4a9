#include <gtest/gtest.h>

#include <random>

#include "dialnet/dialectica.hpp"
#include "support.hpp"

using namespace dialnet;
using dialnet::oracle::d;

namespace {

DialObject single(Degree value, const char* u = "u", const char* x = "x",
                  Orientation o = Orientation::standard) {
  return DialObject(FinSet::atoms({u}), FinSet::atoms({x}), {value}, o);
}

FinMap only(const FinSet& dom, const FinSet& cod) {
  return FinMap(dom, cod, std::vector<std::size_t>(dom.size(), 0));
}

}  // namespace

TEST(CheckMorphism, SingletonExamples) {
  const auto a = single(d(2, 5));
  const auto b = single(d(7, 10), "v", "y");
  EXPECT_TRUE(check_morphism(a, b, only(a.left(), b.left()), only(b.right(), a.right())).valid());

  const auto a2 = single(d(9, 10));
  const auto b2 = single(d(1, 5), "v", "y");
  const auto v = check_morphism(a2, b2, only(a2.left(), b2.left()), only(b2.right(), a2.right()));
  ASSERT_FALSE(v.valid());
  EXPECT_EQ(v.witness(), (PairWitness{0, 0}));
  EXPECT_THROW(DialMorphism::create(a2, b2, only(a2.left(), b2.left()), only(b2.right(), a2.right())),
               InvalidMorphism);
}

TEST(CheckMorphism, WitnessIsLexicographicallyFirst) {
  const auto u = FinSet::atoms({"u0", "u1"});
  const auto x = FinSet::atoms({"x0"});
  const auto y = FinSet::atoms({"y0", "y1"});
  const DialObject a(u, x, {d(1, 2), Degree::one()});
  const DialObject b(u, y, {Degree::one(), d(1, 4), Degree::zero(), Degree::zero()});
  const auto v = check_morphism(a, b, identity_map(u), only(y, x));
  ASSERT_FALSE(v.valid());
  EXPECT_EQ(v.witness(), (PairWitness{0, 1}));
}

TEST(CheckMorphism, CarrierMismatchIsAnError) {
  const auto a = single(d(1, 2));
  const auto b = DialObject(FinSet::atoms({"v0", "v1"}), FinSet::atoms({"y"}), {d(1, 2), d(1, 2)});
  EXPECT_THROW(check_morphism(a, b, identity_map(a.left()), only(b.right(), a.right())), CarrierMismatch);
  const auto opp = single(d(1, 2), "u", "x", Orientation::opposite);
  EXPECT_THROW(check_morphism(a, opp, identity_map(a.left()), identity_map(a.right())), CarrierMismatch);
}

TEST(CheckMorphism, IdentityIsAlwaysValid) {
  for (const auto o : {Orientation::standard, Orientation::opposite}) {
    for (const auto& a : oracle::all_objects(2, oracle::grid3(), o)) {
      EXPECT_NO_THROW(identity(a));
    }
  }
}

TEST(Compose, IdentityLawsAndDegreeChain) {
  const auto a = single(d(1, 4), "a", "a");
  const auto b = single(d(1, 2), "b", "b");
  const auto c = single(d(3, 4), "c", "c");
  const auto ab = DialMorphism::create(a, b, only(a.left(), b.left()), only(b.right(), a.right()));
  const auto bc = DialMorphism::create(b, c, only(b.left(), c.left()), only(c.right(), b.right()));
  const auto ac = compose(ab, bc);
  EXPECT_EQ(ac.source(), a);
  EXPECT_EQ(ac.target(), c);
  EXPECT_TRUE(check_morphism(a, c, ac.f(), ac.g()).valid());
  EXPECT_EQ(compose(identity(a), ab), ab);
  EXPECT_EQ(compose(ab, identity(b)), ab);
  EXPECT_THROW(compose(bc, ab), EndpointMismatch);
}

TEST(Tensor, CarrierSizesAndEntry) {
  const DialObject a(FinSet::atoms({"u"}), FinSet::atoms({"x0", "x1"}), {d(1, 5), d(4, 5)});
  const DialObject b(FinSet::atoms({"v0", "v1"}), FinSet::atoms({"y"}), {d(3, 5), d(3, 5)});
  const auto t = tensor(a, b);
  EXPECT_EQ(t.left().size(), 2u);
  EXPECT_EQ(t.right().size(), 4u);
  // ((u, v0), (F, G)) with F constantly x0, G(u) = y.
  const Element u = Element::atom("u"), v0 = Element::atom("v0"), y = Element::atom("y");
  const Element x0 = Element::atom("x0");
  const Element fg = Element::pair(
      Element::table({{Element::atom("v0"), x0}, {Element::atom("v1"), x0}}),
      Element::table({{u, y}}));
  EXPECT_EQ(t.at(Element::pair(u, v0), fg), d(1, 5));
}

TEST(Tensor, OppositeOrientationUsesMax) {
  const auto a = single(d(1, 5), "u", "x", Orientation::opposite);
  const auto b = single(d(3, 5), "v", "y", Orientation::opposite);
  EXPECT_EQ(tensor(a, b)(0, 0), d(3, 5));
  EXPECT_THROW(tensor(a, single(d(1, 5))), CarrierMismatch);
}

TEST(UnitObject, Orientations) {
  const auto i = unit_object(Orientation::standard);
  EXPECT_EQ(i(0, 0), Degree::one());
  EXPECT_EQ(unit_object(Orientation::opposite)(0, 0), Degree::zero());
  const auto ii = tensor(i, i);
  EXPECT_EQ(ii.left().size(), 1u);
  EXPECT_EQ(ii.right().size(), 1u);
}

TEST(InternalHom, SingletonEntryIsGoedelResidual) {
  const auto a = single(d(7, 10));
  const auto b = single(d(3, 10), "v", "y");
  const auto h = internal_hom(a, b);
  ASSERT_EQ(h.left().size(), 1u);
  ASSERT_EQ(h.right().size(), 1u);
  EXPECT_EQ(h(0, 0), d(3, 10));
}

TEST(InternalHom, CarrierSizes) {
  // |U| = |Y| = 1, |V| = |X| = 2.
  const DialObject a(FinSet::atoms({"u"}), FinSet::atoms({"x0", "x1"}), {d(1, 2), d(1, 3)});
  const DialObject b(FinSet::atoms({"v0", "v1"}), FinSet::atoms({"y"}), {d(1, 2), d(1, 3)});
  const auto h = internal_hom(a, b);
  EXPECT_EQ(h.left().size(), 4u);
  EXPECT_EQ(h.right().size(), 1u);
}

TEST(InternalHom, DiagonalOfSelfHomIsOne) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::random_object(rng, 2, oracle::grid3());
    const auto h = internal_hom(a, a);
    // The element (id, id) of U^U x X^X.
    std::vector<std::size_t> idu(a.left().size()), idx(a.right().size());
    for (std::size_t i = 0; i < idu.size(); ++i) idu[i] = i;
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const std::size_t l = h.left().pair_index(h.left().left().map_index(idu), h.left().right().map_index(idx));
    for (std::size_t u = 0; u < a.left().size(); ++u) {
      for (std::size_t x = 0; x < a.right().size(); ++x) {
        EXPECT_EQ(h(l, h.right().pair_index(u, x)), Degree::one());
      }
    }
  }
}

TEST(ProductCoproduct, ProjectionsAndInjectionsAreValid) {
  const auto objs = oracle::all_objects(2, oracle::grid3());
  for (const auto& a : objs) {
    for (const auto& b : objs) {
      const auto p = product(a, b);
      EXPECT_EQ(p.right().size(), a.right().size() + b.right().size());
      EXPECT_NO_THROW(projection_first(a, b));
      EXPECT_NO_THROW(projection_second(a, b));
      EXPECT_NO_THROW(injection_first(a, b));
      EXPECT_NO_THROW(injection_second(a, b));
    }
  }
}

// For every cone (m1, m2) there is exactly one h with pi1.h = m1, pi2.h = m2,
// found by brute force over all candidate map pairs; it equals the pairing.
TEST(ProductCoproduct, UniversalPropertiesByBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const auto a = oracle::random_object(rng, 2, oracle::grid3());
    const auto b = oracle::random_object(rng, 2, oracle::grid3());
    const auto c = oracle::random_object(rng, 2, oracle::grid3());
    const auto p = product(a, b);
    const auto p1 = projection_first(a, b), p2 = projection_second(a, b);
    const auto into_p = oracle::brute_morphisms(c, p);
    for (const auto& m1 : oracle::brute_morphisms(c, a)) {
      for (const auto& m2 : oracle::brute_morphisms(c, b)) {
        int hits = 0;
        for (const auto& h : into_p) {
          if (compose(h, p1) == m1 && compose(h, p2) == m2) {
            ++hits;
            EXPECT_EQ(h, pairing(m1, m2));
          }
        }
        EXPECT_EQ(hits, 1);
      }
    }
    const auto s = coproduct(a, b);
    const auto i1 = injection_first(a, b), i2 = injection_second(a, b);
    const auto out_of_s = oracle::brute_morphisms(s, c);
    for (const auto& m1 : oracle::brute_morphisms(a, c)) {
      for (const auto& m2 : oracle::brute_morphisms(b, c)) {
        int hits = 0;
        for (const auto& h : out_of_s) {
          if (compose(i1, h) == m1 && compose(i2, h) == m2) {
            ++hits;
            EXPECT_EQ(h, copairing(m1, m2));
          }
        }
        EXPECT_EQ(hits, 1);
      }
    }
  }
}

TEST(Enumerate, MatchesBruteForceInOrder) {
  const auto objs = oracle::all_objects(2, {Degree::zero(), d(1, 2), Degree::one()});
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto& a = objs[rng() % objs.size()];
    const auto& b = objs[rng() % objs.size()];
    const auto brute = oracle::brute_morphisms(a, b);
    EXPECT_EQ(enumerate_morphisms(a, b), brute);
    EXPECT_EQ(count_morphisms(a, b), brute.size());
  }
}

TEST(Enumerate, Fixtures) {
  const auto a = single(d(1, 2));
  const auto ms = enumerate_morphisms(a, a);
  ASSERT_GE(ms.size(), 1u);
  EXPECT_EQ(ms.front(), identity(a));

  // Target constantly 1: every map pair is valid.
  const DialObject src(FinSet::numbered("u", 2), FinSet::numbered("x", 2),
                       {d(1, 2), Degree::zero(), Degree::one(), d(1, 3)});
  const DialObject top(FinSet::numbered("v", 2), FinSet::numbered("y", 2),
                       std::vector<Degree>(4, Degree::one()));
  EXPECT_EQ(enumerate_morphisms(src, top).size(), 16u);

  // Source constantly 1, target constantly 0, all carriers nonempty: frozen count.
  const DialObject ones(FinSet::numbered("u", 2), FinSet::numbered("x", 1),
                        std::vector<Degree>(2, Degree::one()));
  const DialObject zeros(FinSet::numbered("v", 1), FinSet::numbered("y", 2),
                         std::vector<Degree>(2, Degree::zero()));
  EXPECT_EQ(enumerate_morphisms(ones, zeros).size(), 0u);
  // With an empty right carrier on the target the condition is vacuous.
  const DialObject vac(FinSet::numbered("v", 2), FinSet(), {});
  EXPECT_EQ(enumerate_morphisms(ones, vac).size(), 4u);
}

TEST(Enumerate, RespectsCap) {
  const ScopedCap cap(10);
  const DialObject a(FinSet::numbered("u", 3), FinSet::numbered("x", 1), std::vector<Degree>(3, Degree::zero()));
  const DialObject b(FinSet::numbered("v", 3), FinSet::numbered("y", 1), std::vector<Degree>(3, Degree::one()));
  EXPECT_THROW(enumerate_morphisms(a, b), ResourceLimit);
}

TEST(Curry, SingletonEvaluation) {
  const auto a = single(d(1, 2), "a", "x");
  const auto b = single(d(1, 3), "b", "y");
  const auto c = single(d(1, 2), "c", "z");
  const auto homs = enumerate_morphisms(tensor(a, b), c);
  ASSERT_EQ(homs.size(), 1u);
  const auto curried = curry(homs.front());
  EXPECT_EQ(enumerate_morphisms(a, internal_hom(b, c)), std::vector{curried});
  EXPECT_EQ(uncurry(curried), homs.front());
}

TEST(Curry, RequiresTensorSource) {
  const auto a = single(d(1, 2));
  EXPECT_THROW(curry(identity(a)), EndpointMismatch);
  EXPECT_THROW(uncurry(identity(a)), EndpointMismatch);
  EXPECT_THROW(curry(a, a, identity(a)), EndpointMismatch);
}

// Hom(A (x) B, C) and Hom(A, B -o C) have equal size and curry is a bijection,
// with brute-force counts; both orientations.
TEST(Curry, AdjunctionOnRandomTriples) {
  std::mt19937_64 rng(5);
  for (const auto o : {Orientation::standard, Orientation::opposite}) {
    for (int trial = 0; trial < 120; ++trial) {
      const auto a = oracle::random_object(rng, 2, oracle::grid3(), o);
      const auto b = oracle::random_object(rng, 2, oracle::grid3(), o);
      const auto c = oracle::random_object(rng, 2, oracle::grid3(), o);
      const auto lhs = oracle::brute_morphisms(tensor(a, b), c);
      const auto rhs = oracle::brute_morphisms(a, internal_hom(b, c));
      ASSERT_EQ(lhs.size(), rhs.size());
      for (const auto& m : lhs) {
        const auto cm = curry(a, b, m);
        EXPECT_EQ(uncurry(b, c, cm), m);
      }
      for (const auto& n : rhs) EXPECT_EQ(curry(a, b, uncurry(b, c, n)), n);
    }
  }
}

TEST(Monoidal, StructureMapsAreInverseIsomorphisms) {
  std::mt19937_64 rng(9);
  for (const auto o : {Orientation::standard, Orientation::opposite}) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = oracle::random_object(rng, 2, oracle::grid3(), o);
      const auto b = oracle::random_object(rng, 2, oracle::grid3(), o);
      const auto c = oracle::random_object(rng, 1, oracle::grid3(), o);

      EXPECT_EQ(compose(left_unitor(a), left_unitor_inverse(a)), identity(tensor(unit_object(o), a)));
      EXPECT_EQ(compose(left_unitor_inverse(a), left_unitor(a)), identity(a));
      EXPECT_EQ(compose(right_unitor(a), right_unitor_inverse(a)), identity(tensor(a, unit_object(o))));
      EXPECT_EQ(compose(right_unitor_inverse(a), right_unitor(a)), identity(a));

      EXPECT_EQ(compose(symmetry(a, b), symmetry(b, a)), identity(tensor(a, b)));

      const auto as = associator(a, b, c);
      const auto ai = associator_inverse(a, b, c);
      EXPECT_EQ(compose(as, ai), identity(tensor(tensor(a, b), c)));
      EXPECT_EQ(compose(ai, as), identity(tensor(a, tensor(b, c))));
    }
  }
}

TEST(Monoidal, TensorIsBifunctorial) {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto a = oracle::random_object(rng, 2, oracle::grid3());
    const auto a1 = oracle::random_object(rng, 2, oracle::grid3());
    const auto a2 = oracle::random_object(rng, 1, oracle::grid3());
    const auto b = oracle::random_object(rng, 1, oracle::grid3());
    const auto b1 = oracle::random_object(rng, 2, oracle::grid3());
    const auto b2 = oracle::random_object(rng, 1, oracle::grid3());
    EXPECT_EQ(tensor(identity(a), identity(b)), identity(tensor(a, b)));
    const auto n1s = enumerate_morphisms(a, a1), m1s = enumerate_morphisms(a1, a2);
    const auto n2s = enumerate_morphisms(b, b1), m2s = enumerate_morphisms(b1, b2);
    if (n1s.empty() || m1s.empty() || n2s.empty() || m2s.empty()) continue;
    const auto& n1 = n1s[rng() % n1s.size()];
    const auto& m1 = m1s[rng() % m1s.size()];
    const auto& n2 = n2s[rng() % n2s.size()];
    const auto& m2 = m2s[rng() % m2s.size()];
    EXPECT_EQ(compose(tensor(n1, n2), tensor(m1, m2)), tensor(compose(n1, m1), compose(n2, m2)));
    ++checked;
  }
  EXPECT_GT(checked, 100);
}
