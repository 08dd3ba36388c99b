#include "rhombi/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

#include <Eigen/Geometry>

#include "rhombi/error.hpp"
#include "rhombi/parallel.hpp"
#include "rhombi/polytope.hpp"

namespace rhombi {
namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

struct CanonicalCell {
  Mesh mesh;
  std::vector<LatticePos> int_vertices;

  CanonicalCell() {
    for (int x : {-1, 1})
      for (int y : {-1, 1})
        for (int z : {-1, 1}) int_vertices.push_back({x, y, z});
    for (LatticePos p : {LatticePos{-2, 0, 0}, LatticePos{0, -2, 0}, LatticePos{0, 0, -2},
                         LatticePos{0, 0, 2}, LatticePos{0, 2, 0}, LatticePos{2, 0, 0}})
      int_vertices.push_back(p);
    for (const auto& v : int_vertices) mesh.vertices.push_back(to_vec3(v));

    auto index_of = [&](const LatticePos& v) {
      return static_cast<int>(std::find(int_vertices.begin(), int_vertices.end(), v) - int_vertices.begin());
    };
    for (FaceDir d : FaceDir::all()) {
      const LatticePos v = d.vec();
      const std::array<int, 3> c = {v.x, v.y, v.z};
      std::array<int, 2> nz{};
      int zero = 0;
      for (int axis = 0, n = 0; axis < 3; ++axis) {
        if (c[axis] != 0)
          nz[n++] = axis;
        else
          zero = axis;
      }
      auto axis_point = [](int axis, int value) {
        std::array<int, 3> a{};
        a[axis] = value;
        return LatticePos{a[0], a[1], a[2]};
      };
      const LatticePos octa_i = axis_point(nz[0], 2 * c[nz[0]]);
      const LatticePos octa_j = axis_point(nz[1], 2 * c[nz[1]]);
      const LatticePos cube_p = v + axis_point(zero, 1);
      const LatticePos cube_m = v + axis_point(zero, -1);
      std::vector<int> loop = {index_of(octa_i), index_of(cube_p), index_of(octa_j), index_of(cube_m)};
      const Vec3 n = (mesh.vertices[loop[1]] - mesh.vertices[loop[0]])
                         .cross(mesh.vertices[loop[2]] - mesh.vertices[loop[0]]);
      if (n.dot(to_vec3(v)) < 0) std::reverse(loop.begin(), loop.end());
      mesh.faces.push_back(std::move(loop));
    }
  }
};

const CanonicalCell& canonical() {
  static const CanonicalCell cell;
  return cell;
}

}  // namespace

Mat3 rotation_matrix(Rotation r) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = r.matrix()[i][j];
  return m;
}

const Mesh& canonical_cell_mesh() { return canonical().mesh; }

const std::vector<int>& face_vertices(FaceDir d) { return canonical().mesh.faces[d.index()]; }

FaceFrame face_frame(FaceDir d) {
  const auto& cell = canonical();
  std::vector<LatticePos> octa;
  for (int idx : cell.mesh.faces[d.index()]) {
    const LatticePos& v = cell.int_vertices[idx];
    if (std::abs(v.x) + std::abs(v.y) + std::abs(v.z) == 2) octa.push_back(v);
  }
  std::sort(octa.begin(), octa.end());
  FaceFrame f;
  f.center = to_vec3(d.vec());
  f.normal = f.center.normalized();
  f.long_axis = (to_vec3(octa[1]) - to_vec3(octa[0])).normalized();
  f.short_axis = f.normal.cross(f.long_axis);
  return f;
}

Vec3 face_normal(const Mesh& m, std::size_t face) {
  const auto& loop = m.faces.at(face);
  Vec3 n = Vec3::Zero();
  for (std::size_t i = 0; i < loop.size(); ++i)
    n += m.vertices[loop[i]].cross(m.vertices[loop[(i + 1) % loop.size()]]);
  return n.normalized();
}

Vec3 face_centroid(const Mesh& m, std::size_t face) {
  const auto& loop = m.faces.at(face);
  Vec3 c = Vec3::Zero();
  for (int i : loop) c += m.vertices[i];
  return c / static_cast<double>(loop.size());
}

double face_area(const Mesh& m, std::size_t face) {
  const auto& loop = m.faces.at(face);
  Vec3 n = Vec3::Zero();
  for (std::size_t i = 0; i < loop.size(); ++i)
    n += m.vertices[loop[i]].cross(m.vertices[loop[(i + 1) % loop.size()]]);
  return 0.5 * n.norm();
}

double mesh_volume(const Mesh& m) {
  // Divergence theorem over a fan triangulation of each face.
  double six_v = 0.0;
  for (const auto& loop : m.faces)
    for (std::size_t i = 1; i + 1 < loop.size(); ++i)
      six_v += m.vertices[loop[0]].dot(m.vertices[loop[i]].cross(m.vertices[loop[i + 1]]));
  return six_v / 6.0;
}

double mesh_surface_area(const Mesh& m) {
  double total = 0.0;
  for (std::size_t f = 0; f < m.faces.size(); ++f) total += face_area(m, f);
  return total;
}

std::vector<std::pair<int, int>> adjacent_face_pairs(const Mesh& m) {
  std::map<std::pair<int, int>, std::vector<int>> edge_faces;
  for (int f = 0; f < static_cast<int>(m.faces.size()); ++f) {
    const auto& loop = m.faces[f];
    for (std::size_t i = 0; i < loop.size(); ++i) {
      int a = loop[i], b = loop[(i + 1) % loop.size()];
      edge_faces[{std::min(a, b), std::max(a, b)}].push_back(f);
    }
  }
  std::vector<std::pair<int, int>> out;
  for (const auto& [edge, faces] : edge_faces)
    for (int f : faces)
      for (int g : faces)
        if (f != g) out.emplace_back(f, g);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_watertight(const Mesh& m) {
  std::map<std::pair<int, int>, int> directed;
  for (const auto& loop : m.faces)
    for (std::size_t i = 0; i < loop.size(); ++i) ++directed[{loop[i], loop[(i + 1) % loop.size()]}];
  for (const auto& [edge, count] : directed) {
    if (count != 1) return false;
    auto rev = directed.find({edge.second, edge.first});
    if (rev == directed.end() || rev->second != 1) return false;
  }
  return true;
}

double dihedral_angle_between(const Mesh& m, int face_a, int face_b) {
  const double c = std::clamp(face_normal(m, face_a).dot(face_normal(m, face_b)), -1.0, 1.0);
  return 180.0 - std::acos(c) / kDegree;
}

double dihedral_angle() {
  const Mesh& m = canonical_cell_mesh();
  const auto pairs = adjacent_face_pairs(m);
  return dihedral_angle_between(m, pairs.front().first, pairs.front().second);
}

double inradius() {
  const Mesh& m = canonical_cell_mesh();
  return std::abs(face_normal(m, 0).dot(m.vertices[m.faces[0][0]]));
}

double packing_density() {
  const double r = inradius();
  return (4.0 / 3.0) * std::numbers::pi * r * r * r / mesh_volume(canonical_cell_mesh());
}

std::string_view to_string(ContactType t) {
  switch (t) {
    case ContactType::Point: return "Point";
    case ContactType::Edge: return "Edge";
    case ContactType::Face: return "Face";
  }
  return "?";
}

void require_rotation(const Mat3& r, double tol) {
  if (!r.allFinite()) throw ValidationError("rotation matrix has non-finite entries");
  if ((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() > tol)
    throw ValidationError("rotation matrix is not orthonormal");
  if (r.determinant() < 0) throw ValidationError("rotation matrix is a reflection (determinant -1)");
}

Mat3 rotation_from_axis_angle(const Vec3& axis, double degrees) {
  if (!axis.allFinite() || axis.norm() < 1e-12) throw ValidationError("rotation axis must be nonzero");
  if (!std::isfinite(degrees)) throw ValidationError("rotation angle must be finite");
  return Eigen::AngleAxisd(degrees * kDegree, axis.normalized()).toRotationMatrix();
}

Mat3 rotation_aligning(const Vec3& from, const Vec3& to) {
  return Eigen::Quaterniond::FromTwoVectors(from, to).toRotationMatrix();
}

GroundContact classify_ground_contact(const Configuration& c, const Mat3& world_rot, const ContactOptions& opts) {
  if (c.empty()) throw ValidationError("cannot classify ground contact of an empty configuration");
  require_rotation(world_rot);
  const auto& cell = canonical();
  const Eigen::RowVector3d z_row = world_rot.row(2);

  std::vector<double> vertex_z(cell.int_vertices.size());
  for (std::size_t i = 0; i < vertex_z.size(); ++i) vertex_z[i] = z_row.dot(cell.mesh.vertices[i]);
  const double lowest_offset = *std::min_element(vertex_z.begin(), vertex_z.end());

  double global_min = std::numeric_limits<double>::infinity();
  std::vector<double> center_z;
  for (const Cell& cl : c.cells()) {
    center_z.push_back(z_row.dot(cell_center(cl.pos)));
    global_min = std::min(global_min, center_z.back() + lowest_offset);
  }

  GroundContact out;
  std::set<LatticePos> support_keys;
  int best = -1;
  std::size_t idx = 0;
  for (const Cell& cl : c.cells()) {
    CellContact cc{cl.pos, std::nullopt, {}};
    for (std::size_t v = 0; v < vertex_z.size(); ++v) {
      if (center_z[idx] + vertex_z[v] <= global_min + opts.eps_z) {
        cc.support_vertices.push_back(static_cast<int>(v));
        support_keys.insert(cl.pos + cl.pos + cell.int_vertices[v]);
      }
    }
    if (!cc.support_vertices.empty()) {
      ContactType t = cc.support_vertices.size() == 1   ? ContactType::Point
                      : cc.support_vertices.size() == 2 ? ContactType::Edge
                                                        : ContactType::Face;
      cc.type = t;
      best = std::max(best, static_cast<int>(t));
    }
    out.cells.push_back(std::move(cc));
    ++idx;
  }
  out.type = static_cast<ContactType>(best);
  for (const LatticePos& k : support_keys) out.support_points.push_back(world_rot * to_vec3(k));
  return out;
}

Mesh structure_mesh(const Configuration& c) {
  if (c.empty()) throw ValidationError("cannot build a mesh for an empty configuration");
  const auto& cell = canonical();
  Mesh out;
  std::map<LatticePos, int> vertex_index;
  for (const Cell& cl : c.cells()) {
    for (FaceDir d : FaceDir::all()) {
      if (c.contains(cl.pos + d.vec())) continue;
      std::vector<int> loop;
      for (int v : cell.mesh.faces[d.index()]) {
        const LatticePos world = cl.pos + cl.pos + cell.int_vertices[v];
        auto [it, inserted] = vertex_index.try_emplace(world, static_cast<int>(out.vertices.size()));
        if (inserted) out.vertices.push_back(to_vec3(world));
        loop.push_back(it->second);
      }
      out.faces.push_back(std::move(loop));
    }
  }
  return out;
}

PivotEdge pivot_edge(FaceDir from, FaceDir to) {
  if (from.dot(to) != 1)
    throw ValidationError("faces " + std::to_string(from.index()) + " and " + std::to_string(to.index()) +
                          " do not share an edge");
  const LatticePos a = from.vec();
  const LatticePos b = to.vec();
  // The shared nonzero axis carries the octahedron-type vertex; the cube-type
  // vertex takes the nonzero sign of either face on each axis.
  const LatticePos octa{2 * (a.x == b.x ? a.x : 0), 2 * (a.y == b.y ? a.y : 0), 2 * (a.z == b.z ? a.z : 0)};
  const LatticePos cube{a.x != 0 ? a.x : b.x, a.y != 0 ? a.y : b.y, a.z != 0 ? a.z : b.z};
  return {octa, cube};
}

std::vector<LatticePos> compute_swept_cells(FaceDir from, FaceDir to, const SweepOptions& opts) {
  if (!(opts.step_degrees > 0.0)) throw ValidationError("sweep step must be positive");
  const PivotEdge edge = pivot_edge(from, to);
  const Vec3 pivot = to_vec3(edge.octa_vertex);
  const Vec3 axis = (to_vec3(edge.cube_vertex) - pivot).normalized();
  const Vec3 start_center = cell_center(from.vec());
  const Vec3 end_center = cell_center(to.vec());

  // Roll direction: the sense of rotation that carries the mover onto the
  // destination after 120 degrees.
  double sense = 1.0;
  {
    const Vec3 probe = pivot + Eigen::AngleAxisd(120.0 * kDegree, axis) * (start_center - pivot);
    if ((probe - end_center).norm() > 1e-9) sense = -1.0;
  }

  const Mesh& mesh = canonical_cell_mesh();
  Polytope mover;
  for (const auto& loop : mesh.faces) {
    std::vector<Vec3> poly;
    for (int v : loop) poly.push_back(mesh.vertices[v] + start_center);
    mover.faces.push_back(std::move(poly));
  }

  std::vector<LatticePos> candidates;
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z) {
        const LatticePos q{x, y, z};
        if (!is_valid(q) || q == LatticePos{} || q == from.vec() || q == to.vec()) continue;
        if (lattice_distance(LatticePos{}, q) <= 3) candidates.push_back(q);
      }

  const int steps = static_cast<int>(std::ceil(120.0 / opts.step_degrees - 1e-12));
  std::set<LatticePos> hit;
  for (int s = 0; s <= steps; ++s) {
    const double angle = sense * 120.0 * kDegree * s / steps;
    const Eigen::Matrix3d rot = Eigen::AngleAxisd(angle, axis).toRotationMatrix();
    const Vec3 center = pivot + rot * (start_center - pivot);
    Polytope moved;
    for (const auto& poly : mover.faces) {
      std::vector<Vec3> p;
      for (const auto& v : poly) p.push_back(pivot + rot * (v - pivot));
      moved.faces.push_back(std::move(p));
    }
    for (const LatticePos& q : candidates) {
      if (hit.count(q)) continue;
      const Vec3 qc = cell_center(q);
      // Circumradius of a cell is 2, so centers 4 apart cannot overlap.
      if ((center - qc).norm() >= 4.0 - 1e-12) continue;
      std::array<HalfSpace, FaceDir::kCount> hs;
      for (FaceDir d : FaceDir::all()) {
        const Vec3 n = to_vec3(d.vec());
        hs[d.index()] = {n, n.dot(qc) + 2.0};
      }
      if (intersection_volume(moved, hs) > opts.overlap_epsilon) hit.insert(q);
    }
  }
  return {hit.begin(), hit.end()};
}

const std::vector<LatticePos>& swept_cells(FaceDir from, FaceDir to) {
  // Pairs are indexed by (from, to) over all 144 combinations; only the 48
  // edge-adjacent ones are filled.
  static const auto table = [] {
    std::vector<std::vector<LatticePos>> t(FaceDir::kCount * FaceDir::kCount);
    std::vector<std::pair<FaceDir, FaceDir>> pairs;
    for (FaceDir a : FaceDir::all())
      for (FaceDir b : FaceDir::all())
        if (a.dot(b) == 1) pairs.emplace_back(a, b);
    parallel_for(pairs.size(), [&](std::size_t i) {
      auto [a, b] = pairs[i];
      t[a.index() * FaceDir::kCount + b.index()] = compute_swept_cells(a, b);
    });
    return t;
  }();
  if (from.dot(to) != 1)
    throw ValidationError("faces " + std::to_string(from.index()) + " and " + std::to_string(to.index()) +
                          " do not share an edge");
  return table[from.index() * FaceDir::kCount + to.index()];
}

}  // namespace rhombi
