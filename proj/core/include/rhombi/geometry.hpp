#pragma once

// Euclidean geometry of the canonical rhombic dodecahedron.
//
// Canonical units: the cell at lattice site p is centered at 2p. Its
// vertices are the eight cube-type points (+-1, +-1, +-1) and the six
// octahedron-type points (+-2, 0, 0), (0, +-2, 0), (0, 0, +-2); the face with
// outward direction d lies in the plane d . x = 2 and is centered at d.

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "rhombi/lattice.hpp"

namespace rhombi {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline Vec3 to_vec3(const LatticePos& p) { return {double(p.x), double(p.y), double(p.z)}; }
inline Vec3 cell_center(const LatticePos& p) { return 2.0 * to_vec3(p); }

/// Real matrix of a lattice rotation.
Mat3 rotation_matrix(Rotation r);

/// Polygon mesh; faces are vertex-index loops, counterclockwise seen from
/// outside.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;
};

/// 14 vertices (8 cube-type in lexicographic order, then 6 octahedron-type
/// in lexicographic order) and 12 faces; face i has outward direction
/// FaceDir::from_index(i).
const Mesh& canonical_cell_mesh();

/// Canonical-mesh vertex indices of face `d`, in winding order.
const std::vector<int>& face_vertices(FaceDir d);

/// Half-diagonals of a canonical rhombic face.
inline constexpr double kLongHalfDiagonal = 1.4142135623730950488;
inline constexpr double kShortHalfDiagonal = 1.0;

struct FaceFrame {
  Vec3 center;
  Vec3 normal;
  Vec3 long_axis;
  Vec3 short_axis;

  /// Face-local (long, short) coordinates to cell-local 3D.
  Vec3 to_cell(const Eigen::Vector2d& uv) const { return center + uv.x() * long_axis + uv.y() * short_axis; }
};

/// Right-handed frame of face `d`: normal = long_axis x short_axis, with
/// long_axis pointing at the lexicographically larger end of the long
/// diagonal.
FaceFrame face_frame(FaceDir d);

Vec3 face_normal(const Mesh& m, std::size_t face);
Vec3 face_centroid(const Mesh& m, std::size_t face);
double face_area(const Mesh& m, std::size_t face);
double mesh_volume(const Mesh& m);
double mesh_surface_area(const Mesh& m);

/// Ordered pairs of faces sharing an edge.
std::vector<std::pair<int, int>> adjacent_face_pairs(const Mesh& m);
/// Every undirected edge appears exactly once in each direction.
bool is_watertight(const Mesh& m);

/// Interior dihedral angle in degrees between two edge-adjacent faces.
double dihedral_angle_between(const Mesh& m, int face_a, int face_b);
/// Interior dihedral angle of the canonical cell, in degrees.
double dihedral_angle();

/// Distance from the cell center to its face planes.
double inradius();
/// Inscribed-sphere volume over cell volume.
double packing_density();

enum class ContactType { Point, Edge, Face };

std::string_view to_string(ContactType t);

struct ContactOptions {
  double eps_z = 1e-6;
};

struct CellContact {
  LatticePos pos;
  /// Empty when the cell does not touch the ground.
  std::optional<ContactType> type;
  /// Canonical-mesh indices of the cell's vertices on the ground.
  std::vector<int> support_vertices;
};

struct GroundContact {
  ContactType type = ContactType::Point;
  std::vector<CellContact> cells;
  /// Distinct support points in world coordinates, after rotation.
  std::vector<Vec3> support_points;
};

/// Throws ValidationError unless `r` is orthonormal with determinant +1.
void require_rotation(const Mat3& r, double tol = 1e-6);

/// Rotation by `degrees` about `axis` (any nonzero length).
Mat3 rotation_from_axis_angle(const Vec3& axis, double degrees);

/// Rotation taking unit vector `from` onto unit vector `to`.
Mat3 rotation_aligning(const Vec3& from, const Vec3& to);

/// Rotates the structure by `world_rot` and classifies how its lowest points
/// touch the plane below it.
GroundContact classify_ground_contact(const Configuration& c, const Mat3& world_rot,
                                      const ContactOptions& opts = {});

/// Union of all cells with faces shared by two occupied cells removed.
/// Vertices are listed in order of first use; faces follow cell order, then
/// FaceDir order.
Mesh structure_mesh(const Configuration& c);

/// The edge a mover rolls over, in canonical units relative to the
/// substrate center: an octahedron-type vertex and a cube-type vertex.
struct PivotEdge {
  LatticePos octa_vertex;
  LatticePos cube_vertex;
};

/// Shared edge of substrate faces `from` and `to`; requires from . to == 1.
PivotEdge pivot_edge(FaceDir from, FaceDir to);

struct SweepOptions {
  double step_degrees = 1.0;
  double overlap_epsilon = 1e-9;
};

/// Lattice offsets (relative to the substrate) of cells that a mover rolling
/// from `from` to `to` passes through with positive volume. Sorted.
/// Throws ValidationError unless from . to == 1.
std::vector<LatticePos> compute_swept_cells(FaceDir from, FaceDir to, const SweepOptions& opts = {});

/// Cached blocker table built with default SweepOptions for all 48 pairs.
const std::vector<LatticePos>& swept_cells(FaceDir from, FaceDir to);

}  // namespace rhombi
