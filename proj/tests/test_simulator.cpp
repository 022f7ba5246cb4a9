#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <set>

#include "dialnet/simulator.hpp"
#include "support.hpp"

using namespace dialnet;
using dialnet::oracle::d;

namespace {

// Classical elementary net on bitmasks: enabled iff pre is a subset of the
// marking, firing gives (M \ pre) | post.
struct ClassicalNet {
  std::vector<std::uint32_t> pre, post;
  bool enabled(std::uint32_t m, std::size_t e) const { return (pre[e] & m) == pre[e]; }
  std::uint32_t fire(std::uint32_t m, std::size_t e) const { return (m & ~pre[e]) | post[e]; }
};

ClassicalNet classical(const std::vector<int>& pre, const std::vector<int>& post, std::size_t ne, std::size_t nb) {
  ClassicalNet c{std::vector<std::uint32_t>(ne, 0), std::vector<std::uint32_t>(ne, 0)};
  for (std::size_t e = 0; e < ne; ++e) {
    for (std::size_t b = 0; b < nb; ++b) {
      if (pre[e * nb + b]) c.pre[e] |= 1u << b;
      if (post[e * nb + b]) c.post[e] |= 1u << b;
    }
  }
  return c;
}

Marking from_mask(const FinSet& conds, std::uint32_t mask) {
  std::vector<Degree> v(conds.size());
  for (std::size_t b = 0; b < v.size(); ++b) v[b] = (mask >> b) & 1 ? Degree::one() : Degree::zero();
  return Marking(conds, v);
}

FuzzyNet producer_consumer() {
  return crisp_net(FinSet::atoms({"produce", "consume"}), FinSet::atoms({"ready", "buffer", "done"}),
                   {1, 0, 0, 0, 1, 0}, {0, 1, 0, 0, 0, 1});
}

std::vector<int> bits(std::uint32_t mask, std::size_t n) {
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (mask >> i) & 1;
  return out;
}

}  // namespace

TEST(Simulator, EnablednessExamples) {
  const auto one = FuzzyNet(FinSet::atoms({"e"}), FinSet::atoms({"b"}), {Degree::one()}, {Degree::zero()});
  EXPECT_EQ(enabledness(one, Marking(one.conditions(), {Degree::one()}), 0), Degree::one());
  const auto n = FuzzyNet(FinSet::atoms({"e"}), FinSet::atoms({"b"}), {d(3, 5)}, {Degree::zero()});
  EXPECT_EQ(enabledness(n, Marking(n.conditions(), {d(2, 5)}), 0), d(2, 5));
  EXPECT_THROW(enabledness(n, Marking(n.conditions(), {d(2, 5)}), Element::atom("x")), UnknownEvent);
  EXPECT_THROW(enabledness(n, Marking(n.conditions(), {d(2, 5)}), 3), UnknownEvent);
}

TEST(Simulator, EmptyConditionsFullyEnabled) {
  const auto n = FuzzyNet(FinSet::atoms({"e"}), FinSet::numbered("b", 0), {}, {});
  EXPECT_EQ(enabledness(n, Marking::empty(n), 0), Degree::one());
}

TEST(Simulator, FireExamples) {
  const auto crisp = crisp_net(FinSet::atoms({"e"}), FinSet::atoms({"b1", "b2"}), {1, 0}, {0, 1});
  const auto after = fire(crisp, Marking(crisp.conditions(), {Degree::one(), Degree::zero()}), 0);
  EXPECT_EQ(after.degrees(), (std::vector<Degree>{Degree::zero(), Degree::one()}));

  const auto n = FuzzyNet(FinSet::atoms({"e"}), FinSet::atoms({"b", "b'"}), {d(3, 5), Degree::zero()},
                          {Degree::zero(), d(9, 10)});
  const Marking m(n.conditions(), {d(2, 5), Degree::zero()});
  EXPECT_EQ(enabledness(n, m, 0), d(2, 5));
  EXPECT_EQ(fire(n, m, 0).degrees(), (std::vector<Degree>{Degree::zero(), d(2, 5)}));

  const auto idle = FuzzyNet(FinSet::atoms({"e"}), FinSet::atoms({"b", "c"}), {Degree::zero(), Degree::zero()},
                             {Degree::zero(), Degree::zero()});
  const Marking m2(idle.conditions(), {d(1, 3), d(5, 7)});
  EXPECT_EQ(fire(idle, m2, 0), m2);
}

TEST(Simulator, NotEnabledReportsDegrees) {
  const auto n = FuzzyNet(FinSet::atoms({"e"}), FinSet::atoms({"b"}), {d(3, 5)}, {Degree::zero()});
  const Marking m(n.conditions(), {d(2, 5)});
  try {
    fire(n, m, 0, d(1, 2));
    FAIL() << "expected NotEnabled";
  } catch (const NotEnabled& err) {
    EXPECT_EQ(err.enabledness, d(2, 5));
    EXPECT_EQ(err.threshold, d(1, 2));
    EXPECT_FALSE(err.step.has_value());
  }
  EXPECT_THROW(fire(n, Marking(n.conditions(), {Degree::zero()}), 0), NotEnabled);
}

TEST(Simulator, ProducerConsumerSchedule) {
  const auto n = producer_consumer();
  const Marking m0(n.conditions(), {Degree::one(), Degree::zero(), Degree::zero()});
  const auto trace = run(n, m0, {0, 1});
  ASSERT_EQ(trace.size(), 2u);
  const auto c = classical({1, 0, 0, 0, 1, 0}, {0, 1, 0, 0, 0, 1}, 2, 3);
  std::uint32_t mask = 1;
  mask = c.fire(mask, 0);
  EXPECT_EQ(trace[0].marking_after, from_mask(n.conditions(), mask));
  mask = c.fire(mask, 1);
  EXPECT_EQ(trace[1].marking_after, from_mask(n.conditions(), mask));
  EXPECT_EQ(trace[1].enabledness, Degree::one());

  EXPECT_TRUE(run(n, m0, {}).empty());
  try {
    run(n, m0, {0, 0});
    FAIL() << "expected NotEnabled";
  } catch (const NotEnabled& err) {
    ASSERT_TRUE(err.step.has_value());
    EXPECT_EQ(*err.step, 1u);
    EXPECT_EQ(err.enabledness, Degree::zero());
  }
}

TEST(Simulator, RunIsReplayable) {
  std::mt19937_64 rng(7);
  const auto grid = degree_grid(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t ne = 1 + rng() % 3, nb = 1 + rng() % 3;
    std::vector<Degree> pre(ne * nb), post(ne * nb), m(nb);
    for (auto& x : pre) x = grid[rng() % grid.size()];
    for (auto& x : post) x = grid[rng() % grid.size()];
    for (auto& x : m) x = grid[rng() % grid.size()];
    const FuzzyNet n(FinSet::numbered("e", ne), FinSet::numbered("b", nb), pre, post);
    Marking cur(n.conditions(), m);
    std::vector<std::size_t> schedule;
    for (int k = 0; k < 6; ++k) {
      std::vector<std::size_t> enabled;
      for (std::size_t e = 0; e < ne; ++e) {
        if (enabledness(n, cur, e).positive()) enabled.push_back(e);
      }
      if (enabled.empty()) break;
      const std::size_t e = enabled[rng() % enabled.size()];
      const auto next = fire(n, cur, e);
      for (std::size_t b = 0; b < nb; ++b) {
        if (pre[e * nb + b].is_zero() && post[e * nb + b].is_zero()) {
          ASSERT_EQ(next[b], cur[b]);
        }
      }
      cur = next;
      schedule.push_back(e);
    }
    const auto t1 = run(n, Marking(n.conditions(), m), schedule);
    const auto t2 = run(n, Marking(n.conditions(), m), schedule);
    ASSERT_EQ(t1.size(), schedule.size());
    for (std::size_t i = 0; i < t1.size(); ++i) {
      ASSERT_EQ(t1[i].marking_after, t2[i].marking_after);
      ASSERT_EQ(t1[i].enabledness, t2[i].enabledness);
    }
    if (!t1.empty()) {
      ASSERT_EQ(t1.back().marking_after, cur);
    }
  }
}

TEST(Simulator, CrispSpecialization) {
  std::size_t cases = 0;
  for (std::size_t ne = 0; ne <= 2; ++ne) {
    for (std::size_t nb = 0; nb <= 3; ++nb) {
      const std::size_t cells = ne * nb;
      const auto events = FinSet::numbered("e", ne);
      const auto conds = FinSet::numbered("b", nb);
      for (std::uint32_t pm = 0; pm < (1u << cells); ++pm) {
        for (std::uint32_t qm = 0; qm < (1u << cells); ++qm) {
          const auto pre = bits(pm, cells), post = bits(qm, cells);
          const auto n = crisp_net(events, conds, pre, post);
          const auto c = classical(pre, post, ne, nb);
          for (std::uint32_t mm = 0; mm < (1u << nb); ++mm) {
            const auto m = from_mask(conds, mm);
            for (std::size_t e = 0; e < ne; ++e) {
              const Degree eps = enabledness(n, m, e);
              ASSERT_TRUE(eps.is_zero() || eps.is_one());
              ASSERT_EQ(eps.is_one(), c.enabled(mm, e));
              if (c.enabled(mm, e)) {
                ASSERT_EQ(fire(n, m, e), from_mask(conds, c.fire(mm, e)));
              }
              ++cases;
            }
          }
        }
      }
    }
  }
  EXPECT_GT(cases, 10000u);
}

TEST(Simulator, ExploreMatchesClassicalReachability) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t ne = 2, nb = 1 + rng() % 3;
    const auto pre = bits(static_cast<std::uint32_t>(rng()), ne * nb);
    const auto post = bits(static_cast<std::uint32_t>(rng()), ne * nb);
    const std::uint32_t m0 = static_cast<std::uint32_t>(rng() % (1u << nb));
    const auto n = crisp_net(FinSet::numbered("e", ne), FinSet::numbered("b", nb), pre, post);
    const auto c = classical(pre, post, ne, nb);
    std::set<std::uint32_t> reached{m0};
    std::set<std::uint32_t> frontier{m0};
    for (int k = 0; k < 2; ++k) {
      std::set<std::uint32_t> next;
      for (const auto m : frontier) {
        for (std::size_t e = 0; e < ne; ++e) {
          if (c.enabled(m, e)) next.insert(c.fire(m, e));
        }
      }
      reached.insert(next.begin(), next.end());
      frontier = next;
    }
    const auto g = explore(n, from_mask(n.conditions(), m0), 2);
    ASSERT_EQ(g.nodes.size(), reached.size());
    for (const auto m : reached) {
      ASSERT_NE(std::find(g.nodes.begin(), g.nodes.end(), from_mask(n.conditions(), m)), g.nodes.end());
    }
    for (const auto& edge : g.edges) {
      ASSERT_LT(g.depth[edge.from], 2u);
      ASSERT_EQ(fire(n, g.nodes[edge.from], edge.event), g.nodes[edge.to]);
    }
  }
}

TEST(Simulator, ExploreCap) {
  const auto n = FuzzyNet(FinSet::numbered("e", 1), FinSet::numbered("b", 1), {d(1, 2)}, {d(1, 3)});
  ScopedCap cap(1);
  EXPECT_THROW(explore(n, Marking(n.conditions(), {Degree::one()}), 3), ResourceLimit);
}

TEST(Simulator, TransportIdentity) {
  const auto n = producer_consumer();
  const Marking m(n.conditions(), {d(1, 2), d(1, 3), Degree::one()});
  for (std::size_t e = 0; e < 2; ++e) {
    const auto r = simulation_transport_report(identity(n), m, e);
    EXPECT_EQ(r.source_enabledness, r.target_enabledness);
    EXPECT_TRUE(r.target_at_least_source);
  }
}

TEST(Simulator, TransportOnCrispSimulations) {
  // For a crisp simulation, pre'(f e, b') = 1 forces pre(e, F b') = 1, so every
  // precondition of f(e) is the image of a precondition of e.
  std::mt19937_64 rng(19);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t ne = 1 + rng() % 2, nb = 1 + rng() % 2, ne2 = 1 + rng() % 2, nb2 = 1 + rng() % 2;
    const auto n = crisp_net(FinSet::numbered("e", ne), FinSet::numbered("b", nb),
                             bits(static_cast<std::uint32_t>(rng()), ne * nb), bits(static_cast<std::uint32_t>(rng()), ne * nb));
    const auto m = crisp_net(FinSet::numbered("e", ne2), FinSet::numbered("b", nb2),
                             bits(static_cast<std::uint32_t>(rng()), ne2 * nb2),
                             bits(static_cast<std::uint32_t>(rng()), ne2 * nb2));
    for (const auto& k : enumerate_simulations(n, m)) {
      for (std::uint32_t mask = 0; mask < (1u << nb); ++mask) {
        for (std::size_t e = 0; e < ne; ++e) {
          const auto r = simulation_transport_report(k, from_mask(n.conditions(), mask), e);
          ASSERT_TRUE(r.target_at_least_source);
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 100);
}
