#include "rhombi/polytope.hpp"

#include <algorithm>
#include <cmath>

namespace rhombi {
namespace {

using Eigen::Vector3d;

Vector3d newell_normal(const std::vector<Vector3d>& poly) {
  Vector3d n = Vector3d::Zero();
  for (std::size_t i = 0; i < poly.size(); ++i) n += poly[i].cross(poly[(i + 1) % poly.size()]);
  return n;
}

void push_unique(std::vector<Vector3d>& pts, const Vector3d& p, double eps) {
  for (const auto& q : pts)
    if ((q - p).squaredNorm() < eps * eps) return;
  pts.push_back(p);
}

}  // namespace

Polytope clip(const Polytope& poly, const HalfSpace& h, double eps) {
  Polytope out;
  std::vector<Vector3d> cap;
  bool face_on_plane = false;
  const double merge = 1e-10;

  for (const auto& face : poly.faces) {
    std::vector<Vector3d> kept;
    const std::size_t n = face.size();
    std::size_t on_plane = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vector3d& a = face[i];
      const Vector3d& b = face[(i + 1) % n];
      const double da = h.normal.dot(a) - h.offset;
      const double db = h.normal.dot(b) - h.offset;
      const bool a_in = da <= eps;
      const bool b_in = db <= eps;
      if (a_in) {
        kept.push_back(a);
        if (std::abs(da) <= eps) {
          push_unique(cap, a, merge);
          ++on_plane;
        }
      }
      if (a_in != b_in && std::abs(da) > eps && std::abs(db) > eps) {
        const Vector3d x = a + (b - a) * (da / (da - db));
        kept.push_back(x);
        push_unique(cap, x, merge);
      }
    }
    if (on_plane == n) face_on_plane = true;
    if (kept.size() >= 3) out.faces.push_back(std::move(kept));
  }

  if (out.faces.empty()) return out;
  if (cap.size() >= 3 && !face_on_plane) {
    Vector3d centroid = Vector3d::Zero();
    for (const auto& p : cap) centroid += p;
    centroid /= static_cast<double>(cap.size());
    const Vector3d n = h.normal.normalized();
    const Vector3d ref = (std::abs(n.x()) < 0.9 ? Vector3d::UnitX() : Vector3d::UnitY());
    const Vector3d u = n.cross(ref).normalized();
    const Vector3d v = n.cross(u);
    std::sort(cap.begin(), cap.end(), [&](const Vector3d& p, const Vector3d& q) {
      return std::atan2((p - centroid).dot(v), (p - centroid).dot(u)) <
             std::atan2((q - centroid).dot(v), (q - centroid).dot(u));
    });
    out.faces.push_back(std::move(cap));
  }
  return out;
}

double volume(const Polytope& poly) {
  if (poly.faces.empty()) return 0.0;
  Vector3d origin = Vector3d::Zero();
  std::size_t count = 0;
  for (const auto& f : poly.faces)
    for (const auto& p : f) {
      origin += p;
      ++count;
    }
  origin /= static_cast<double>(count);

  double total = 0.0;
  for (const auto& f : poly.faces) {
    const Vector3d n = newell_normal(f);
    const double twice_area = n.norm();
    if (twice_area == 0.0) continue;
    const double height = std::abs((f.front() - origin).dot(n / twice_area));
    total += twice_area * 0.5 * height / 3.0;
  }
  return total;
}

double intersection_volume(const Polytope& poly, std::span<const HalfSpace> halfspaces) {
  Polytope current = poly;
  for (const auto& h : halfspaces) {
    current = clip(current, h);
    if (current.faces.empty()) return 0.0;
  }
  return volume(current);
}

}  // namespace rhombi
