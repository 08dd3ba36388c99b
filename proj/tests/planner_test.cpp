#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rhombi/error.hpp"
#include "rhombi/hungarian.hpp"
#include "rhombi/planner.hpp"

using namespace rhombi;

namespace {

Configuration config(std::vector<LatticePos> ps) { return Configuration::from_positions(ps); }

const Configuration kLine = config({{0, 0, 0}, {1, 1, 0}, {2, 2, 0}});
const Configuration kTriangle = config({{0, 0, 0}, {1, 1, 0}, {1, 0, 1}});

}  // namespace

TEST(Hungarian, MatchesBruteForce) {
  std::mt19937 rng(2);
  HungarianSolver solver;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 7;
    std::uniform_int_distribution<std::int64_t> cost(0, trial % 2 ? 5 : 1000);
    std::vector<std::int64_t> m(n * n);
    for (auto& c : m) c = cost(rng);
    std::vector<int> assignment;
    const std::int64_t got = solver.solve(m, n, &assignment);
    ASSERT_EQ(got, oracle::brute_force_assignment(m, n));
    std::vector<int> sorted = assignment;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(sorted[i], static_cast<int>(i));
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += m[i * n + assignment[i]];
    EXPECT_EQ(total, got);
  }
}

TEST(Heuristic, Examples) {
  EXPECT_EQ(heuristic(kLine, kLine), 0);
  const auto one = config({{0, 0, 0}});
  EXPECT_EQ(heuristic(one, config({{2, 2, 2}}), {false, false}), 3);
  EXPECT_EQ(heuristic(one, config({{2, 2, 2}})), 0);
  EXPECT_EQ(heuristic(kLine, translate(kLine, {4, 0, 2})), 0);
  EXPECT_THROW(heuristic(one, kLine), ValidationError);
}

TEST(Heuristic, LowerBoundOnThreeCellInstances) {
  const auto shapes = oracle::connected_shapes(3, 2);
  const oracle::ShapeGraph graph(shapes);
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto dist = graph.distances_from(i);
    const auto start = config(graph.shape(i));
    for (std::size_t j = 0; j < graph.size(); ++j) {
      if (dist[j] < 0) continue;
      ASSERT_LE(heuristic(start, config(graph.shape(j))), dist[j]);
    }
  }
}

TEST(Heuristic, ConsistentAcrossMoves) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = config(oracle::random_connected(rng, 2 + trial % 5));
    const auto goal = config(oracle::random_connected(rng, c.size()));
    const int h = heuristic(c, goal);
    for (const auto& m : legal_moves(c)) EXPECT_LE(h, 1 + heuristic(apply_move(c, m), goal));
  }
}

TEST(Plan, StartEqualsGoal) {
  const auto r = plan(kLine, kLine);
  const auto* p = std::get_if<Plan>(&r);
  ASSERT_NE(p, nullptr);
  EXPECT_TRUE(p->moves.empty());
  EXPECT_EQ(p->stats.states_expanded, 1u);
  EXPECT_EQ(replay(kLine, *p), kLine);
}

TEST(Plan, LineToTriangleMatchesOracle) {
  const oracle::ShapeGraph graph(oracle::connected_shapes(3, 2));
  const int expected = graph.distances_from(graph.index_of(kLine.positions()))[graph.index_of(kTriangle.positions())];
  ASSERT_GT(expected, 0);
  for (auto algorithm : {SearchAlgorithm::AStar, SearchAlgorithm::BFS}) {
    PlannerOptions opts;
    opts.algorithm = algorithm;
    const auto r = plan(kLine, kTriangle, opts);
    const auto* p = std::get_if<Plan>(&r);
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(static_cast<int>(p->moves.size()), expected);
    EXPECT_TRUE(matches_goal(replay(kLine, *p), kTriangle, p->matching));
  }
}

TEST(Plan, ExactPositionMatching) {
  PlannerOptions opts;
  opts.match_up_to_translation = false;
  const auto goal = config({{0, 0, 0}, {1, 1, 0}, {1, 0, 1}});
  const auto r = plan(kLine, goal, opts);
  const auto* p = std::get_if<Plan>(&r);
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(replay(kLine, p->moves).positions(), goal.positions());
}

TEST(Plan, NoPathAndBudget) {
  const auto two = config({{0, 0, 0}, {1, 1, 0}});
  const auto r = plan(two, kLine);
  ASSERT_TRUE(std::holds_alternative<NoPath>(r));
  EXPECT_EQ(std::get<NoPath>(r).reason, NoPathReason::SizeMismatch);

  std::vector<Cell> cells = {{{0, 0, 0}, CellKind::Active}, {{1, 1, 0}}};
  std::vector<Cell> other = {{{0, 0, 0}}, {{1, 1, 0}}};
  PlannerOptions kinds;
  kinds.kind_sensitive = true;
  const auto k = plan(Configuration(cells), Configuration(other), kinds);
  ASSERT_TRUE(std::holds_alternative<NoPath>(k));
  EXPECT_EQ(std::get<NoPath>(k).reason, NoPathReason::KindMismatch);

  PlannerOptions tiny;
  tiny.max_states = 1;
  EXPECT_TRUE(std::holds_alternative<BudgetExhausted>(plan(kLine, kTriangle, tiny)));

  EXPECT_THROW(plan(Configuration{}, Configuration{}), ValidationError);
  EXPECT_THROW(plan(config({{0, 0, 0}, {2, 2, 0}}), config({{0, 0, 0}, {1, 1, 0}})), ValidationError);
}

TEST(Plan, KindSensitiveSwapsRoles) {
  std::vector<Cell> start = {{{0, 0, 0}, CellKind::Active}, {{1, 1, 0}}, {{2, 2, 0}}};
  std::vector<Cell> goal = {{{0, 0, 0}}, {{1, 1, 0}}, {{2, 2, 0}, CellKind::Active}};
  PlannerOptions opts;
  opts.kind_sensitive = true;
  const Configuration s(start), g(goal);
  const auto r = plan(s, g, opts);
  const auto* p = std::get_if<Plan>(&r);
  ASSERT_NE(p, nullptr);
  EXPECT_FALSE(p->moves.empty());
  EXPECT_TRUE(matches_goal(replay(s, *p), g, p->matching));
  opts.kind_sensitive = false;
  EXPECT_TRUE(std::get<Plan>(plan(s, g, opts)).moves.empty());
}

TEST(Plan, Deterministic) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = config(oracle::random_connected(rng, 4));
    const auto b = config(oracle::random_connected(rng, 4));
    const auto r1 = plan(a, b), r2 = plan(a, b);
    ASSERT_EQ(r1.index(), r2.index());
    if (const auto* p = std::get_if<Plan>(&r1)) EXPECT_EQ(p->moves, std::get<Plan>(r2).moves);
  }
}

TEST(Replay, EmptyPlanAndTamperDetection) {
  EXPECT_EQ(replay(kLine, std::vector<PivotMove>{}), kLine);
  const Plan p = std::get<Plan>(plan(kLine, kTriangle));
  ASSERT_FALSE(p.moves.empty());
  for (std::size_t i = 0; i < p.moves.size(); ++i) {
    for (FaceDir to : pivot_destinations(p.moves[i].from)) {
      if (to == p.moves[i].to) continue;
      Plan tampered = p;
      tampered.moves[i].to = to;
      bool detected = false;
      try {
        replay(kLine, tampered);
      } catch (const IllegalMove& e) {
        detected = true;
        EXPECT_EQ(e.step(), i);
      } catch (const GoalMismatch&) {
        detected = true;
      }
      EXPECT_TRUE(detected);
    }
  }
}

TEST(Replay, ReportsFailingStep) {
  const PivotMove bogus = PivotMove::about({0, 0, 0}, *FaceDir::from_vector({-1, -1, 0}),
                                           *FaceDir::from_vector({-1, 0, -1}));
  try {
    replay(kLine, {bogus});
    FAIL() << "expected IllegalMove";
  } catch (const IllegalMove& e) {
    EXPECT_EQ(e.step(), 0u);
    EXPECT_EQ(e.reason(), MoveLegality::MoverAbsent);
  }
}

TEST(Plan, OptimalOnAllThreeCellPairs) {
  const oracle::ShapeGraph graph(oracle::connected_shapes(3, 2));
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto dist = graph.distances_from(i);
    const auto start = config(graph.shape(i));
    for (std::size_t j = 0; j < graph.size(); ++j) {
      const auto r = plan(start, config(graph.shape(j)));
      if (dist[j] < 0) {
        ASSERT_TRUE(std::holds_alternative<NoPath>(r));
        continue;
      }
      const auto& p = std::get<Plan>(r);
      ASSERT_EQ(static_cast<int>(p.moves.size()), dist[j]);
      replay(start, p);
    }
  }
}
