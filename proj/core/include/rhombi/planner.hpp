#pragma once

// Optimal pivot-move planning between two configurations of equal size.

#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

#include "rhombi/error.hpp"
#include "rhombi/kinematics.hpp"
#include "rhombi/lattice.hpp"

namespace rhombi {

enum class SearchAlgorithm { BFS, AStar };

std::string_view to_string(SearchAlgorithm a);

/// How a configuration is compared with the goal.
struct GoalMatching {
  bool up_to_translation = true;
  /// When false, Active and Passive cells are interchangeable.
  bool kind_sensitive = false;
};

struct PlannerOptions {
  std::size_t max_states = 1'000'000;
  SearchAlgorithm algorithm = SearchAlgorithm::AStar;
  bool match_up_to_translation = true;
  bool strict_stability = false;
  bool kind_sensitive = false;

  GoalMatching matching() const { return {match_up_to_translation, kind_sensitive}; }
};

struct SearchStats {
  std::size_t states_expanded = 0;
  std::size_t frontier_peak = 0;
  double wall_seconds = 0.0;
};

struct Plan {
  std::vector<PivotMove> moves;
  Configuration goal;
  GoalMatching matching;
  MoveOptions move_options;
  SearchStats stats;
};

enum class NoPathReason { SizeMismatch, KindMismatch, Unreachable };

std::string_view to_string(NoPathReason r);

struct NoPath {
  NoPathReason reason = NoPathReason::Unreachable;
  SearchStats stats;
};

struct BudgetExhausted {
  SearchStats stats;
};

using PlanResult = std::variant<Plan, NoPath, BudgetExhausted>;

/// Replay ended somewhere other than the recorded goal.
class GoalMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

bool matches_goal(const Configuration& c, const Configuration& goal, const GoalMatching& matching);

/// Lower bound on the number of pivots from `c` to `goal`: the optimal
/// assignment of cells to goal cells under lattice_distance, minimized over
/// goal translations when matching up to translation. Kind-sensitive
/// matching assigns cells only within the same kind. Throws ValidationError
/// on a size mismatch.
int heuristic(const Configuration& c, const Configuration& goal, const GoalMatching& matching = {});

/// Shortest pivot sequence from `start` to `goal`. Both inputs must be
/// nonempty and connected (ValidationError otherwise). Moves are tried in
/// (mover position, from index, to index) order and ties go to the earlier
/// generated state, so results are deterministic.
PlanResult plan(const Configuration& start, const Configuration& goal, const PlannerOptions& opts = {});

/// Applies `moves` in order; throws IllegalMove carrying the failing step.
Configuration replay(const Configuration& start, const std::vector<PivotMove>& moves, const MoveOptions& opts = {});

/// Replays `p` and throws GoalMismatch unless the result matches p.goal.
Configuration replay(const Configuration& start, const Plan& p);

}  // namespace rhombi
