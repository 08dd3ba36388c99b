#pragma once

// Convex polytope clipping, used to measure overlap volume between two
// convex cells.

#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace rhombi {

/// Half-space { x : normal . x <= offset }.
struct HalfSpace {
  Eigen::Vector3d normal;
  double offset = 0.0;
};

/// A closed convex polytope stored as its boundary polygons.
struct Polytope {
  std::vector<std::vector<Eigen::Vector3d>> faces;
};

/// Clips `poly` to one half-space. The result is empty when nothing
/// remains.
Polytope clip(const Polytope& poly, const HalfSpace& h, double eps = 1e-12);

/// Volume of a closed convex polytope (independent of face winding).
double volume(const Polytope& poly);

/// Volume of `poly` intersected with the given half-spaces.
double intersection_volume(const Polytope& poly, std::span<const HalfSpace> halfspaces);

}  // namespace rhombi
