#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "seccell/scheduler.hpp"

namespace {

using namespace seccell;

std::vector<double> w3(double a, double b, double c) { return {a, b, c}; }

TEST(BuildIg, DisjointSetsGiveEdgelessGraph) {
  const auto g = build_ig({{0}, {1, 2}, {3}});
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(BuildIg, SharedApGivesCompleteGraph) {
  const auto g = build_ig({{0, 4}, {4}, {1, 4}, {4, 7}});
  EXPECT_EQ(g.num_edges(), 6u);
}

TEST(BuildIg, PathGraph) {
  const auto g = build_ig({{0, 1}, {1, 2}, {2, 3}});
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_TRUE(g.adjacent(1, 2));
  EXPECT_FALSE(g.adjacent(0, 2));
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(BuildIg, EmptyCapableSetIsUnschedulableAndIsolated) {
  const auto g = build_ig({{0}, {}, {0}});
  EXPECT_FALSE(g.schedulable(1));
  EXPECT_TRUE(g.neighbors(1).empty());
  const auto s = greedy_min_weight_is(g, w3(0, -5, 1), {{0}, {}, {0}}, 1);
  EXPECT_EQ(s.scheduled, std::vector<std::size_t>{0});
}

TEST(InterferenceGraph, RejectsSelfLoopAndIgnoresDuplicates) {
  InterferenceGraph g(3);
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
  g.add_edge(0, 2);
  g.add_edge(2, 0);
  EXPECT_EQ(g.num_edges(), 1u);
}

TEST(GreedyMinWeight, EdgelessTakesEveryone) {
  const std::vector<ApSet> cap{{0}, {1}, {2}};
  const auto s = greedy_min_weight_is(build_ig(cap), w3(3, 1, 2), cap, 3);
  EXPECT_EQ(s.scheduled, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(GreedyMinWeight, TriangleTakesLightestVertex) {
  const std::vector<ApSet> cap{{0}, {0}, {0}};
  const auto s = greedy_min_weight_is(build_ig(cap), w3(1, 2, 3), cap, 1);
  EXPECT_EQ(s.scheduled, std::vector<std::size_t>{0});
  EXPECT_TRUE(s.connected(0, 0));
  EXPECT_FALSE(s.connected(0, 1));
}

TEST(GreedyMinWeight, PathHandTrace) {
  const std::vector<ApSet> cap{{0, 1}, {1, 2}, {2, 3}};
  const auto g = build_ig(cap);
  EXPECT_EQ(greedy_min_weight_is(g, w3(5, 1, 5), cap, 4).scheduled, std::vector<std::size_t>{1});
  EXPECT_EQ(greedy_min_weight_is(g, w3(1, 5, 1), cap, 4).scheduled, (std::vector<std::size_t>{0, 2}));
}

TEST(GreedyMinWeight, TiesGoToLowestIndex) {
  const std::vector<ApSet> cap{{0}, {0}, {0}};
  EXPECT_EQ(greedy_min_weight_is(build_ig(cap), w3(2, 2, 2), cap, 1).scheduled,
            std::vector<std::size_t>{0});
}

TEST(GreedyMinWeight, RejectsNonFiniteWeight) {
  const std::vector<ApSet> cap{{0}, {1}};
  EXPECT_THROW(greedy_min_weight_is(build_ig(cap), std::vector<double>{1.0, NAN}, cap, 2),
               std::invalid_argument);
}

TEST(GreedyMaxWeight, TriangleTakesHeaviestVertex) {
  const std::vector<ApSet> cap{{0}, {0}, {0}};
  EXPECT_EQ(greedy_max_weight_is(build_ig(cap), w3(1, 2, 3), cap, 1).scheduled,
            std::vector<std::size_t>{2});
}

// Random capable sets; checks the graph against the overlap definition and
// every greedy schedule for independence, maximality and a collision-free
// connection matrix.
TEST(Greedy, RandomNetworksGiveMaximalInterferenceFreeSchedules) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t ka = 3 + trial % 10, ku = 2 + trial % 13;
    std::vector<ApSet> cap(ku);
    std::bernoulli_distribution in(0.15);
    for (auto& omega : cap)
      for (std::size_t i = 0; i < ka; ++i)
        if (in(rng)) omega.push_back(i);
    const auto g = build_ig(cap);
    for (std::size_t a = 0; a < ku; ++a) {
      for (std::size_t b = a + 1; b < ku; ++b) {
        bool share = false;
        for (std::size_t i : cap[a]) share |= std::count(cap[b].begin(), cap[b].end(), i) > 0;
        ASSERT_EQ(g.adjacent(a, b), share);
      }
    }
    std::normal_distribution<double> nd;
    std::vector<double> w(ku);
    for (auto& x : w) x = nd(rng);
    for (int mode = 0; mode < 2; ++mode) {
      const Schedule s = mode == 0 ? greedy_min_weight_is(g, w, cap, ka) : greedy_max_weight_is(g, w, cap, ka);
      ASSERT_TRUE(is_interference_free(s, g));
      // each AP serves at most one user
      for (std::size_t i = 0; i < ka; ++i) {
        int users = 0;
        for (std::size_t j = 0; j < ku; ++j) users += s.connected(i, j);
        ASSERT_LE(users, 1);
      }
      for (std::size_t v = 0; v < ku; ++v) {
        if (s.is_scheduled[v]) {
          ASSERT_FALSE(cap[v].empty());
          continue;
        }
        if (cap[v].empty()) continue;
        bool blocked = false;
        for (std::size_t u : s.scheduled) blocked |= g.adjacent(u, v);
        ASSERT_TRUE(blocked) << "schedule is not maximal";
      }
    }
  }
}

TEST(InterferenceFree, DetectsCollision) {
  const std::vector<ApSet> cap{{0, 1}, {1}};
  const auto g = build_ig(cap);
  EXPECT_FALSE(is_interference_free(make_schedule({0, 1}, cap, 2), g));
  EXPECT_TRUE(is_interference_free(make_schedule({1}, cap, 2), g));
}

TEST(MrRate, Examples) {
  const double A = 0.14, s2 = 2e-15;
  EXPECT_EQ(mr_rate(std::vector<double>{0.0, 0.0}, A, s2), 0.0);
  const double c0 = 2 * std::numbers::pi * std::exp(1.0) * s2;
  const double h = std::sqrt(c0 / (4 * A * A));
  EXPECT_NEAR(mr_rate(std::vector<double>{h}, A, s2), 0.5 * std::log(2.0), 1e-14);
  const std::vector<double> hv{1e-6, 3e-6, 2e-6};
  const double hh = 14e-12;
  EXPECT_NEAR(mr_rate(hv, A, s2), 0.5 * std::log(1 + 4 * hh * A * A / c0), 1e-12);
}

TEST(PfPriority, Examples) {
  EXPECT_DOUBLE_EQ(pf_priority_update(0.4, 2.5, true, 1.0), 2.5);
  double c = 1.0;
  for (int t = 1; t <= 20; ++t) {
    c = pf_priority_update(c, 9.0, false, 4.0);
    EXPECT_NEAR(c, std::pow(0.75, t), 1e-15);
  }
  c = 0.01;
  for (int t = 0; t < 200; ++t) c = pf_priority_update(pf_priority_update(c, 1.0, false, 2.0), 1.0, true, 2.0);
  EXPECT_NEAR(c, 2.0 / 3.0, 1e-12);
  EXPECT_THROW(pf_priority_update(1.0, 1.0, true, 0.5), std::invalid_argument);
}

TEST(BaselineSchedule, EdgelessSchedulesEveryoneInBothModes) {
  const std::vector<ApSet> cap{{0}, {1}, {2}};
  const auto g = build_ig(cap);
  for (auto mode : {BaselineMode::MaxRate, BaselineMode::ProportionalFair}) {
    EXPECT_EQ(baseline_schedule(mode, g, w3(1, 2, 3), w3(1, 1, 1), cap, 3).scheduled.size(), 3u);
  }
}

TEST(BaselineSchedule, TriangleModes) {
  const std::vector<ApSet> cap{{0}, {0}, {0}};
  const auto g = build_ig(cap);
  EXPECT_EQ(baseline_schedule(BaselineMode::MaxRate, g, w3(1, 2, 3), {}, cap, 1).scheduled,
            std::vector<std::size_t>{2});
  // ratios 1/0.1, 2/1, 3/1: the starved user wins under PF
  EXPECT_EQ(baseline_schedule(BaselineMode::ProportionalFair, g, w3(1, 2, 3), w3(0.1, 1, 1), cap, 1).scheduled,
            std::vector<std::size_t>{0});
}

TEST(QuantileThreshold, SmallSamples) {
  const std::vector<double> v{5, 1, 4, 2, 3, 9, 8, 7, 6, 10};
  EXPECT_EQ(quantile_threshold(v, 0.9), 2.0);
  EXPECT_EQ(quantile_threshold(v, 1.0), 1.0);
  EXPECT_EQ(quantile_threshold(v, 0.1), 10.0);
  EXPECT_THROW(quantile_threshold({}, 0.9), std::invalid_argument);
  EXPECT_THROW(quantile_threshold(v, 0.0), std::invalid_argument);
}

Scenario coarse_room(double reflectance) {
  LayoutSpec layout;
  layout.room = Room{16.0, 16.0, 2.5};
  PhysParams phys;
  phys.reflectance = reflectance;
  return make_grid_scenario(layout, phys, 0.7, WallGrid{0.5, 0.5});
}

TEST(Epsilon, NoReflectionsGiveZero) {
  EXPECT_EQ(epsilon_threshold(coarse_room(0.0)), 0.0);
}

TEST(Epsilon, IsTenthPercentileOfDirectGridSums) {
  const Scenario sc = coarse_room(0.8);
  const EpsilonGrid grid;
  std::vector<double> sums;
  for (double x = 0.25; x < 16.0; x += 0.5) {
    for (double y = 0.25; y < 16.0; y += 0.5) {
      double s = 0.0;
      for (const Vec3& ap : sc.ap_positions) s += nlos_gain(ap, {x, y, 0.5}, sc.phys, sc.room, sc.wall_grid);
      sums.push_back(s);
    }
  }
  ASSERT_EQ(sums.size(), 1024u);
  const double eps = epsilon_threshold(sc, grid);
  EXPECT_GT(eps, 0.0);
  const auto at_least = std::count_if(sums.begin(), sums.end(), [&](double s) { return s >= eps * (1 - 1e-9); });
  const auto above = std::count_if(sums.begin(), sums.end(), [&](double s) { return s > eps * (1 + 1e-9); });
  EXPECT_GE(static_cast<double>(at_least), 0.9 * 1024);
  EXPECT_LT(static_cast<double>(above), 0.9 * 1024);
}

TEST(Epsilon, CoarseGridIsRejected) {
  EpsilonGrid grid;
  grid.spacing = 2.0;
  EXPECT_THROW(epsilon_threshold(coarse_room(0.8), grid), std::invalid_argument);
}

}  // namespace
