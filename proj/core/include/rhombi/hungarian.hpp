#pragma once

// Minimum-cost perfect assignment on a square integer cost matrix
// (Kuhn-Munkres with potentials, O(n^3)).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rhombi {

class HungarianSolver {
 public:
  /// `cost` is row-major n x n. Returns the optimal total cost; when
  /// `assignment` is non-null it receives the column chosen for each row.
  std::int64_t solve(std::span<const std::int64_t> cost, std::size_t n, std::vector<int>* assignment = nullptr);

 private:
  std::vector<std::int64_t> u_, v_, minv_;
  std::vector<int> p_, way_;
  std::vector<char> used_;
};

}  // namespace rhombi
