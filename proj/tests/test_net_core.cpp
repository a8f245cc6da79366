#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ovs;
using ovs::test::tm;

namespace {

std::vector<std::string> enabled_names(const PetriNet& net, const Marking& m) {
  std::vector<std::string> out;
  for (TransitionIndex t : enabled(net, m)) out.push_back(net.transition(t).name);
  return out;
}

}  // namespace

TEST(Support, MarkedPlaces) {
  const Marking m0(std::vector<Marking::Token>{1, 0, 1, 0, 0, 1, 0});
  EXPECT_EQ(m0.support(), (std::vector<PlaceIndex>{0, 2, 5}));
  EXPECT_EQ(test::two_machines().format(m0), "P1P3P6");

  EXPECT_TRUE(Marking(7).support().empty());

  const Marking mi(std::vector<Marking::Token>{0, 1, 1, 0, 0, 0, 1});
  EXPECT_EQ(mi.support(), (std::vector<PlaceIndex>{1, 2, 6}));
  EXPECT_EQ(mi.support_size(), 3u);
}

TEST(Support, RoundTripOverAllMarkings) {
  for (unsigned bits = 0; bits < (1u << 9); ++bits) {
    Marking m(9);
    for (unsigned p = 0; p < 9; ++p) m[p] = (bits >> p) & 1;
    const auto s = m.support();
    EXPECT_EQ(Marking::from_support(9, std::span<const PlaceIndex>(s)), m);
  }
}

TEST(Marking, PartialOrderIsImplication) {
  EXPECT_TRUE(leq(tm({1, 3}), tm({1, 3, 6})));
  EXPECT_FALSE(leq(tm({1, 3, 6}), tm({1, 3})));
  EXPECT_TRUE(leq(tm({4, 6}), tm({2, 4, 6})));
  EXPECT_TRUE(strictly_less(tm({4}), tm({4, 6})));
  EXPECT_FALSE(strictly_less(tm({4, 6}), tm({4, 6})));
  EXPECT_LT(tm({2}), tm({1}));  // lexicographic on place order: [0,1,..] < [1,0,..]
}

TEST(Enabled, TwoMachinesInitial) {
  const auto net = test::two_machines();
  EXPECT_EQ(enabled_names(net, tm({1, 3, 6})), (std::vector<std::string>{"c1", "c2"}));
  EXPECT_EQ(enabled_names(net, tm({2, 3, 7})), (std::vector<std::string>{"c2"}));
}

TEST(Enabled, SourceTransitionAlwaysEnabled) {
  PetriNet net;
  net.add_place("A");
  net.add_transition("src", true, {}, {0});
  EXPECT_EQ(enabled(net, Marking(1)).size(), 1u);
  Marking marked(1);
  marked[0] = 1;
  EXPECT_EQ(enabled(net, marked).size(), 1u);
}

TEST(Enabled, RejectsWrongLength) {
  const auto net = test::two_machines();
  EXPECT_THROW(enabled(net, Marking(3)), Error);
}

TEST(Fire, TwoMachines) {
  const auto net = test::two_machines();
  EXPECT_EQ(fire(net, tm({1, 3, 6}), 0), tm({2, 3, 6}));
  EXPECT_EQ(fire(net, tm({1, 5, 7}), 4), tm({1, 3, 6}));
}

TEST(Fire, SelfLoopIsIdentity) {
  PetriNet net;
  net.add_place("A", 1);
  net.add_transition("loop", true, {0}, {0});
  EXPECT_EQ(fire(net, net.initial(), 0), net.initial());
  EXPECT_EQ(net.self_loops().size(), 1u);
  EXPECT_EQ(net.incidence()(0, 0), 0);
}

TEST(Fire, NotEnabled) {
  const auto net = test::two_machines();
  try {
    fire(net, tm({1, 3, 6}), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotEnabled);
  }
}

TEST(Fire, SafenessViolation) {
  PetriNet net;
  net.add_place("A", 1);
  net.add_place("B", 1);
  net.add_transition("dup", true, {0}, {1});
  net.add_transition("gen", true, {}, {1});
  try {
    fire(net, net.initial(), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SafenessViolation);
  }
  try {
    build_reachability_graph(net);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SafenessViolation);
  }
}

TEST(PetriNet, RejectsWeightedPlantArcs) {
  PetriNet net;
  net.add_place("A");
  net.add_transition("t", true);
  EXPECT_THROW(net.set_pre(0, 0, 2), Error);
  EXPECT_THROW(net.add_place("A"), Error);
  EXPECT_THROW(net.add_transition("t", false), Error);
}

TEST(Reachability, TwoMachinesHasTwelveStates) {
  const auto net = test::two_machines();
  const auto rg = build_reachability_graph(net);
  EXPECT_EQ(rg.state_count(), 12u);
  EXPECT_EQ(rg.state(0), tm({1, 3, 6}));
  // All 2 x 3 x 2 combinations of the three components occur.
  std::set<Marking> states(rg.states().begin(), rg.states().end());
  for (int a : {1, 2})
    for (int b : {3, 4, 5})
      for (int c : {6, 7}) EXPECT_TRUE(states.count(tm({a, b, c}))) << a << b << c;
}

TEST(Reachability, NoTransitions) {
  PetriNet net;
  net.add_place("A", 1);
  const auto rg = build_reachability_graph(net);
  EXPECT_EQ(rg.state_count(), 1u);
  EXPECT_TRUE(rg.edges().empty());
}

TEST(Reachability, SelfLoopNet) {
  PetriNet net;
  net.add_place("A", 1);
  net.add_transition("loop", true, {0}, {0});
  const auto rg = build_reachability_graph(net);
  EXPECT_EQ(rg.state_count(), 1u);
  ASSERT_EQ(rg.edges().size(), 1u);
  EXPECT_EQ(rg.edges()[0], (Edge{0, 0, 0}));
}

TEST(Reachability, StateBudget) {
  const auto net = test::two_machines();
  try {
    build_reachability_graph(net, ExplorationOptions{5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StateBudgetExceeded);
  }
  EXPECT_NO_THROW(build_reachability_graph(net, ExplorationOptions{12}));
}

TEST(Reachability, BreadthFirstNumbering) {
  const auto net = test::two_machines();
  const auto rg = build_reachability_graph(net);
  // m0 --c1--> P2P3P6 is discovered before m0 --c2--> P1P4P6.
  EXPECT_EQ(rg.state(1), tm({2, 3, 6}));
  EXPECT_EQ(rg.state(2), tm({1, 4, 6}));
  // Deterministic across runs.
  const auto again = build_reachability_graph(net);
  EXPECT_EQ(rg.states(), again.states());
  EXPECT_EQ(rg.edges(), again.edges());
}

TEST(Reachability, SoundAndClosedOnRandomNets) {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int iter = 0; iter < 400 && checked < 100; ++iter) {
    PetriNet net;
    const int np = 2 + static_cast<int>(rng() % 6), nt = 1 + static_cast<int>(rng() % 6);
    for (int p = 0; p < np; ++p) net.add_place("P" + std::to_string(p), static_cast<Marking::Token>(rng() % 2));
    for (int t = 0; t < nt; ++t) {
      const auto id = net.add_transition("t" + std::to_string(t), rng() % 2);
      for (int p = 0; p < np; ++p) {
        if (rng() % 3 == 0) net.set_pre(p, id, 1);
        if (rng() % 3 == 0) net.set_post(p, id, 1);
      }
    }
    ReachabilityGraph rg;
    try {
      rg = build_reachability_graph(net);
    } catch (const Error&) {
      continue;  // not safe
    }
    ++checked;
    for (const Edge& e : rg.edges()) {
      EXPECT_TRUE(is_enabled(net, rg.state(e.from), e.transition));
      EXPECT_EQ(fire(net, rg.state(e.from), e.transition), rg.state(e.to));
    }
    for (StateId s = 0; s < rg.state_count(); ++s) {
      EXPECT_TRUE(rg.state(s).is_boolean());
      EXPECT_EQ(rg.out_edges(s).size(), enabled(net, rg.state(s)).size());
    }
    const auto ref = oracle::explore(net);
    EXPECT_EQ(ref.states.size(), rg.state_count());
    EXPECT_EQ(ref.edges.size(), rg.edges().size());
  }
  EXPECT_GE(checked, 50);
}
