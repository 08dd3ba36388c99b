#include "rhombi/hungarian.hpp"

#include <limits>

#include "rhombi/error.hpp"

namespace rhombi {

std::int64_t HungarianSolver::solve(std::span<const std::int64_t> cost, std::size_t n, std::vector<int>* assignment) {
  if (cost.size() != n * n) throw ValidationError("assignment cost matrix is not square");
  if (n == 0) {
    if (assignment) assignment->clear();
    return 0;
  }
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // 1-based potentials; column 0 is the virtual start.
  u_.assign(n + 1, 0);
  v_.assign(n + 1, 0);
  p_.assign(n + 1, 0);
  way_.assign(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p_[0] = static_cast<int>(i);
    std::size_t j0 = 0;
    minv_.assign(n + 1, kInf);
    used_.assign(n + 1, 0);
    do {
      used_[j0] = 1;
      const std::size_t i0 = static_cast<std::size_t>(p_[j0]);
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used_[j]) continue;
        const std::int64_t cur = cost[(i0 - 1) * n + (j - 1)] - u_[i0] - v_[j];
        if (cur < minv_[j]) {
          minv_[j] = cur;
          way_[j] = static_cast<int>(j0);
        }
        if (minv_[j] < delta) {
          delta = minv_[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used_[j]) {
          u_[static_cast<std::size_t>(p_[j])] += delta;
          v_[j] -= delta;
        } else {
          minv_[j] -= delta;
        }
      }
      j0 = j1;
    } while (p_[j0] != 0);
    do {
      const std::size_t j1 = static_cast<std::size_t>(way_[j0]);
      p_[j0] = p_[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  if (assignment) {
    assignment->assign(n, -1);
    for (std::size_t j = 1; j <= n; ++j) (*assignment)[static_cast<std::size_t>(p_[j]) - 1] = static_cast<int>(j - 1);
  }
  std::int64_t total = 0;
  for (std::size_t j = 1; j <= n; ++j) total += cost[(static_cast<std::size_t>(p_[j]) - 1) * n + (j - 1)];
  return total;
}

}  // namespace rhombi
