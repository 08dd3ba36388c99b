#include "rhombi/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <limits>
#include <queue>
#include <unordered_map>

#include "rhombi/hungarian.hpp"

namespace rhombi {
namespace {

using StateKey = std::vector<std::int32_t>;

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::int32_t v : k) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

StateKey state_key(const Configuration& c, const GoalMatching& matching) {
  StateKey key;
  key.reserve(c.size() * 4);
  const LatticePos origin = matching.up_to_translation && !c.empty() ? c.cells().front().pos : LatticePos{};
  for (const Cell& cell : c.cells()) {
    const LatticePos p = cell.pos - origin;
    key.insert(key.end(), {p.x, p.y, p.z});
    if (matching.kind_sensitive) key.push_back(static_cast<std::int32_t>(cell.kind));
  }
  return key;
}

void require_plannable(const Configuration& c, const char* which) {
  if (c.empty()) throw ValidationError(std::string(which) + " configuration is empty");
  if (!is_connected(c)) throw ValidationError(std::string(which) + " configuration is not connected");
}

std::vector<CellKind> sorted_kinds(const Configuration& c) {
  std::vector<CellKind> kinds;
  for (const Cell& cell : c.cells()) kinds.push_back(cell.kind);
  std::sort(kinds.begin(), kinds.end());
  return kinds;
}

// Step distance for an even-sum offset; inputs here are already validated.
inline int offset_distance(int dx, int dy, int dz) {
  dx = std::abs(dx);
  dy = std::abs(dy);
  dz = std::abs(dz);
  return std::max(std::max(dx, std::max(dy, dz)), (dx + dy + dz) / 2);
}

// Optimal assignment cost between cells and goal cells with the goal shifted
// by a translation. Offsets between every cell pair are computed once per
// group; each translation then costs one pass over them, abandoned as soon
// as the sum of row minima reaches the cutoff.
class AssignmentBound {
 public:
  AssignmentBound(const std::vector<std::vector<LatticePos>>& from, const std::vector<std::vector<LatticePos>>& to) {
    for (std::size_t g = 0; g < from.size(); ++g) {
      Group grp;
      grp.n = from[g].size();
      for (const auto& a : from[g])
        for (const auto& b : to[g]) grp.offsets.push_back(a - b);
      groups_.push_back(std::move(grp));
    }
  }

  std::int64_t cost(const LatticePos& shift, std::int64_t cutoff) {
    std::int64_t total = 0;
    for (Group& g : groups_) {
      const std::size_t n = g.n;
      matrix_.resize(n * n);
      std::int64_t row_bound = total;
      for (std::size_t i = 0; i < n; ++i) {
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (std::size_t j = 0; j < n; ++j) {
          const LatticePos& o = g.offsets[i * n + j];
          const std::int64_t d = offset_distance(o.x - shift.x, o.y - shift.y, o.z - shift.z);
          matrix_[i * n + j] = d;
          best = std::min(best, d);
        }
        row_bound += best;
        if (row_bound >= cutoff) return cutoff;
      }
      total += solver_.solve(matrix_, n);
      if (total >= cutoff) return cutoff;
    }
    return total;
  }

 private:
  struct Group {
    std::size_t n = 0;
    std::vector<LatticePos> offsets;
  };
  std::vector<Group> groups_;
  std::vector<std::int64_t> matrix_;
  HungarianSolver solver_;
};

}  // namespace

std::string_view to_string(SearchAlgorithm a) { return a == SearchAlgorithm::BFS ? "bfs" : "astar"; }

std::string_view to_string(NoPathReason r) {
  switch (r) {
    case NoPathReason::SizeMismatch: return "SizeMismatch";
    case NoPathReason::KindMismatch: return "KindMismatch";
    case NoPathReason::Unreachable: return "Unreachable";
  }
  return "?";
}

bool matches_goal(const Configuration& c, const Configuration& goal, const GoalMatching& matching) {
  if (c.size() != goal.size()) return false;
  return state_key(c, matching) == state_key(goal, matching);
}

int heuristic(const Configuration& c, const Configuration& goal, const GoalMatching& matching) {
  if (c.size() != goal.size())
    throw ValidationError("heuristic needs equal sizes, got " + std::to_string(c.size()) + " and " +
                          std::to_string(goal.size()));
  if (c.empty()) return 0;

  // Split by kind when kinds matter; otherwise one group.
  std::vector<std::vector<LatticePos>> from(matching.kind_sensitive ? 2 : 1), to(from.size());
  for (const Cell& cell : c.cells())
    from[matching.kind_sensitive ? static_cast<std::size_t>(cell.kind) : 0].push_back(cell.pos);
  for (const Cell& cell : goal.cells())
    to[matching.kind_sensitive ? static_cast<std::size_t>(cell.kind) : 0].push_back(cell.pos);
  for (std::size_t g = 0; g < from.size(); ++g)
    if (from[g].size() != to[g].size()) throw ValidationError("heuristic needs equal cell counts per kind");

  AssignmentBound bound(from, to);
  constexpr std::int64_t kUnbounded = std::numeric_limits<std::int32_t>::max();
  if (!matching.up_to_translation) return static_cast<int>(bound.cost({}, kUnbounded));

  // If every offset along an axis is at most -2 (or at least 2), shifting
  // the goal two steps toward `c` on that axis cannot raise any distance, so
  // the optimum lies in the box [lo - 1, hi + 1] of per-axis offsets.
  LatticePos cmin = c.cells().front().pos, cmax = cmin, gmin = goal.cells().front().pos, gmax = gmin;
  for (const Cell& cell : c.cells()) {
    cmin = {std::min(cmin.x, cell.pos.x), std::min(cmin.y, cell.pos.y), std::min(cmin.z, cell.pos.z)};
    cmax = {std::max(cmax.x, cell.pos.x), std::max(cmax.y, cell.pos.y), std::max(cmax.z, cell.pos.z)};
  }
  for (const Cell& cell : goal.cells()) {
    gmin = {std::min(gmin.x, cell.pos.x), std::min(gmin.y, cell.pos.y), std::min(gmin.z, cell.pos.z)};
    gmax = {std::max(gmax.x, cell.pos.x), std::max(gmax.y, cell.pos.y), std::max(gmax.z, cell.pos.z)};
  }
  const LatticePos lo = cmin - gmax - LatticePos{1, 1, 1};
  const LatticePos hi = cmax - gmin + LatticePos{1, 1, 1};

  // The step metric is a norm, so the cost under translation t is at least
  // the metric of (sum of cells - sum of goal cells - n * t). That bound is
  // cheap and discards most translations before any assignment is built.
  LatticePos sum_c{}, sum_g{};
  for (const Cell& cell : c.cells()) sum_c = sum_c + cell.pos;
  for (const Cell& cell : goal.cells()) sum_g = sum_g + cell.pos;
  const LatticePos drift = sum_c - sum_g;
  const int n = static_cast<int>(c.size());
  auto centroid_bound = [&](const LatticePos& t) -> std::int64_t {
    const int dx = std::abs(drift.x - n * t.x), dy = std::abs(drift.y - n * t.y), dz = std::abs(drift.z - n * t.z);
    return std::max(std::max(dx, std::max(dy, dz)), (dx + dy + dz + 1) / 2);
  };

  // Try the translation aligning the first cells first; it is often optimal.
  const LatticePos aligned = c.cells().front().pos - goal.cells().front().pos;
  std::int64_t best = bound.cost(aligned, kUnbounded);
  for (int x = lo.x; x <= hi.x && best > 0; ++x)
    for (int y = lo.y; y <= hi.y && best > 0; ++y)
      for (int z = lo.z; z <= hi.z && best > 0; ++z) {
        const LatticePos t{x, y, z};
        if (!is_valid(t) || centroid_bound(t) >= best) continue;
        best = std::min(best, bound.cost(t, best));
      }
  return static_cast<int>(best);
}

PlanResult plan(const Configuration& start, const Configuration& goal, const PlannerOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  require_plannable(start, "start");
  require_plannable(goal, "goal");
  if (opts.max_states < 1) throw ValidationError("max_states must be at least 1");

  SearchStats stats;
  auto finish = [&] {
    stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return stats;
  };
  if (start.size() != goal.size()) return NoPath{NoPathReason::SizeMismatch, finish()};
  if (opts.kind_sensitive && sorted_kinds(start) != sorted_kinds(goal))
    return NoPath{NoPathReason::KindMismatch, finish()};

  const GoalMatching matching = opts.matching();
  const MoveOptions move_opts{opts.strict_stability};
  const StateKey goal_key = state_key(goal, matching);
  const bool astar = opts.algorithm == SearchAlgorithm::AStar;

  struct Node {
    Configuration config;
    int parent;
    PivotMove move;
    int g;
  };
  std::vector<Node> nodes;
  std::unordered_map<StateKey, int, StateKeyHash> best_g;

  // Open list entries: (f, insertion sequence, node). BFS uses f = g and the
  // sequence alone orders a FIFO.
  using Entry = std::tuple<int, std::size_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::deque<int> fifo;
  std::size_t seq = 0;

  auto push = [&](Node node) {
    const int h = astar ? heuristic(node.config, goal, matching) : 0;
    const int idx = static_cast<int>(nodes.size());
    const int f = node.g + h;
    nodes.push_back(std::move(node));
    if (astar)
      open.emplace(f, seq++, idx);
    else
      fifo.push_back(idx);
    stats.frontier_peak = std::max(stats.frontier_peak, astar ? open.size() : fifo.size());
  };

  best_g.emplace(state_key(start, matching), 0);
  push({start, -1, PivotMove{}, 0});

  while (astar ? !open.empty() : !fifo.empty()) {
    int idx;
    if (astar) {
      idx = std::get<2>(open.top());
      open.pop();
    } else {
      idx = fifo.front();
      fifo.pop_front();
    }
    const StateKey key = state_key(nodes[idx].config, matching);
    if (best_g.at(key) < nodes[idx].g) continue;  // stale duplicate

    ++stats.states_expanded;
    if (key == goal_key) {
      Plan result;
      for (int n = idx; nodes[n].parent >= 0; n = nodes[n].parent) result.moves.push_back(nodes[n].move);
      std::reverse(result.moves.begin(), result.moves.end());
      result.goal = goal;
      result.matching = matching;
      result.move_options = move_opts;
      result.stats = finish();
      return result;
    }
    if (stats.states_expanded >= opts.max_states) return BudgetExhausted{finish()};

    const Configuration current = nodes[idx].config;
    const int g = nodes[idx].g + 1;
    for (const PivotMove& m : legal_moves(current, move_opts)) {
      Cell moved = *current.find(m.mover);
      moved.pos = m.destination();
      moved.orient = pivot_rotation(m) * moved.orient;
      Configuration next = current.without(m.mover).with(moved);
      auto [it, inserted] = best_g.try_emplace(state_key(next, matching), g);
      if (!inserted) {
        if (it->second <= g) continue;
        it->second = g;
      }
      push({std::move(next), idx, m, g});
    }
  }
  return NoPath{NoPathReason::Unreachable, finish()};
}

Configuration replay(const Configuration& start, const std::vector<PivotMove>& moves, const MoveOptions& opts) {
  Configuration c = start;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const MoveLegality legality = check_move(c, moves[i], opts);
    if (legality != MoveLegality::Legal) throw IllegalMove(legality, i);
    c = apply_move(c, moves[i], opts);
  }
  return c;
}

Configuration replay(const Configuration& start, const Plan& p) {
  Configuration end = replay(start, p.moves, p.move_options);
  if (!matches_goal(end, p.goal, p.matching)) throw GoalMismatch("replayed plan does not reach its goal");
  return end;
}

}  // namespace rhombi
