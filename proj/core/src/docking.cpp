#include "rhombi/docking.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "rhombi/error.hpp"
#include "rhombi/geometry.hpp"

namespace rhombi {
namespace {

using Eigen::Vector2d;

Vector2d turn(const Vector2d& p, int j, int k) {
  const double angle = 2.0 * std::numbers::pi * j / k;
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x() - s * p.y(), s * p.x() + c * p.y()};
}

template <typename Point>
std::vector<std::pair<int, int>> match_points(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.size() != b.size())
    throw PairingError("faces carry different magnet counts (" + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()) + ")");
  std::vector<std::pair<int, int>> out;
  std::vector<bool> used(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    int partner = -1;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if ((a[i] - b[j]).norm() > kMatchEpsilon) continue;
      if (partner >= 0 || used[j]) throw PairingError("magnet " + std::to_string(i) + " has an ambiguous partner");
      partner = static_cast<int>(j);
    }
    if (partner < 0) throw PairingError("magnet " + std::to_string(i) + " has no partner on the opposing face");
    used[partner] = true;
    out.emplace_back(static_cast<int>(i), partner);
  }
  return out;
}

bool all_opposite(const FaceLayout& a, const FaceLayout& b, const std::vector<std::pair<int, int>>& pairs) {
  return std::all_of(pairs.begin(), pairs.end(), [&](const auto& p) {
    return a.magnets[p.first].polarity != b.magnets[p.second].polarity;
  });
}

FaceLayout positions_only(std::span<const Vector2d> positions) {
  FaceLayout f;
  for (const auto& p : positions) f.magnets.push_back({p, Polarity::N});
  return f;
}

PolarityPattern pattern_from_mask(unsigned mask, std::size_t m) {
  PolarityPattern p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = (mask >> i & 1u) ? Polarity::S : Polarity::N;
  return p;
}

// Calls fn(alignment) for every lattice-realizable face contact, in order of
// contact direction, then A orientation, then B orientation. Stops early when
// fn returns false.
template <typename Fn>
void for_each_lattice_contact(Fn&& fn) {
  for (FaceDir world : FaceDir::all())
    for (Rotation ra : Rotation::all())
      for (Rotation rb : Rotation::all()) {
        const ContactAlignment align{ra.inverse().apply(world), ra, rb.inverse().apply(world.opposite()), rb, 0};
        if (!fn(align)) return;
      }
}

}  // namespace

std::string_view to_string(Polarity p) { return p == Polarity::N ? "N" : "S"; }

std::vector<Vector2d> rhombic_magnet_positions(double a, double b) {
  const double u = a * kLongHalfDiagonal;
  const double v = b * kShortHalfDiagonal;
  return {{u, v}, {u, -v}, {-u, v}, {-u, -v}};
}

FaceLayout make_face_layout(std::span<const Vector2d> positions, std::span<const Polarity> polarities) {
  if (positions.size() != polarities.size())
    throw ValidationError("positions and polarities differ in length");
  FaceLayout f;
  for (std::size_t i = 0; i < positions.size(); ++i) f.magnets.push_back({positions[i], polarities[i]});
  return f;
}

CellLayout uniform_cell_layout(const FaceLayout& face) {
  CellLayout out;
  out.faces.fill(face);
  return out;
}

void validate_positions(std::span<const Vector2d> positions, int k, bool rhombic_face) {
  if (k < 1) throw ValidationError("symmetry order must be positive");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Vector2d& p = positions[i];
    if (!p.allFinite()) throw ValidationError("magnet " + std::to_string(i) + " has a non-finite position");
    if (rhombic_face && std::abs(p.x()) / kLongHalfDiagonal + std::abs(p.y()) / kShortHalfDiagonal >= 1.0)
      throw ValidationError("magnet " + std::to_string(i) + " is not strictly inside the rhombic face");
    for (std::size_t j = 0; j < i; ++j)
      if ((positions[j] - p).norm() <= 2.0 * kMatchEpsilon)
        throw ValidationError("magnets " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Vector2d q = turn(positions[i], 1, k);
    const bool found = std::any_of(positions.begin(), positions.end(),
                                   [&](const Vector2d& p) { return (p - q).norm() <= kMatchEpsilon; });
    if (!found)
      throw ValidationError("magnet positions are not invariant under " + std::to_string(k) + "-fold rotation");
  }
}

void validate_cell_layout(const CellLayout& layout) {
  for (FaceDir d : FaceDir::all()) {
    std::vector<Vector2d> pos;
    for (const auto& m : layout.faces[d.index()].magnets) pos.push_back(m.pos);
    try {
      validate_positions(pos, 2, true);
    } catch (const ValidationError& e) {
      throw ValidationError("face " + std::to_string(d.index()) + ": " + e.what());
    }
  }
}

ContactAlignment alignment_between(const Cell& a, const Cell& b) {
  const auto dir = FaceDir::from_vector(b.pos - a.pos);
  if (!dir) throw ValidationError("cells " + to_string(a.pos) + " and " + to_string(b.pos) + " are not adjacent");
  return {a.orient.inverse().apply(*dir), a.orient, b.orient.inverse().apply(dir->opposite()), b.orient, 0};
}

std::vector<std::pair<int, int>> contact_map(const FaceLayout& a, const FaceLayout& b, const ContactAlignment& align,
                                             int k) {
  if (k < 1) throw ValidationError("symmetry order must be positive");
  const FaceDir world = align.orient_a.apply(align.face_a);
  if (align.orient_b.apply(align.face_b) != world.opposite())
    throw ValidationError("faces are not coincident under this alignment");

  const FaceFrame fa = face_frame(align.face_a);
  const FaceFrame fb = face_frame(align.face_b);
  const Mat3 ra = rotation_matrix(align.orient_a);
  const Mat3 rb = rotation_matrix(align.orient_b);
  const Vec3 offset = cell_center(world.vec());

  std::vector<Vec3> pa, pb;
  for (const auto& m : a.magnets) pa.push_back(ra * fa.to_cell(m.pos));
  for (const auto& m : b.magnets) pb.push_back(offset + rb * fb.to_cell(turn(m.pos, align.symmetry_index, k)));
  return match_points(pa, pb);
}

bool is_attractive_contact(const FaceLayout& a, const FaceLayout& b, const ContactAlignment& align, int k) {
  return all_opposite(a, b, contact_map(a, b, align, k));
}

bool is_attractive_contact(const CellLayout& a, const CellLayout& b, const ContactAlignment& align) {
  return is_attractive_contact(a.faces[align.face_a.index()], b.faces[align.face_b.index()], align);
}

std::vector<std::pair<int, int>> face_contact_map(const FaceLayout& a, const FaceLayout& b, int j, int k) {
  if (k < 1) throw ValidationError("symmetry order must be positive");
  std::vector<Vector2d> pa, pb;
  for (const auto& m : a.magnets) pa.push_back(m.pos);
  for (const auto& m : b.magnets) pb.push_back(turn({m.pos.x(), -m.pos.y()}, j, k));
  return match_points(pa, pb);
}

bool is_attractive_face_contact(const FaceLayout& a, const FaceLayout& b, int j, int k) {
  return all_opposite(a, b, face_contact_map(a, b, j, k));
}

GenderlessReport validate_genderless(const CellLayout& layout) {
  validate_cell_layout(layout);
  GenderlessReport report;
  for_each_lattice_contact([&](const ContactAlignment& align) {
    ++report.contacts_checked;
    if (is_attractive_contact(layout, layout, align)) return true;
    report.valid = false;
    report.counterexample = align;
    return false;
  });
  return report;
}

bool configuration_docks(const Configuration& c, const CellLayout& layout) {
  for (const Cell& a : c.cells())
    for (FaceDir d : FaceDir::all()) {
      const Cell* b = c.find(a.pos + d.vec());
      if (b == nullptr || !(a.pos < b->pos)) continue;
      if (!is_attractive_contact(layout, layout, alignment_between(a, *b))) return false;
    }
  return true;
}

CellLayout rotate_layout(const CellLayout& layout, Rotation g) {
  const Mat3 r = rotation_matrix(g);
  CellLayout out;
  for (FaceDir d : FaceDir::all()) {
    const FaceFrame src = face_frame(d);
    const FaceDir image = g.apply(d);
    const FaceFrame dst = face_frame(image);
    FaceLayout& f = out.faces[image.index()];
    for (const auto& m : layout.faces[d.index()].magnets) {
      const Vec3 q = r * src.to_cell(m.pos) - dst.center;
      f.magnets.push_back({{q.dot(dst.long_axis), q.dot(dst.short_axis)}, m.polarity});
    }
  }
  return out;
}

std::vector<PolarityPattern> enumerate_valid_layouts(std::span<const Vector2d> positions, int k,
                                                     bool share_one_pattern_across_faces, EnumerationTarget target) {
  if (k < 2)
    throw UnsupportedSymmetry("genderless docking needs faces with at least 2-fold rotational symmetry, got k = " +
                              std::to_string(k));
  const std::size_t m = positions.size();
  if (m == 0) throw ValidationError("no magnet positions given");
  if (m > 20) throw ValidationError("too many magnets per face for exhaustive enumeration");

  std::vector<PolarityPattern> out;
  const unsigned patterns = 1u << m;

  if (target == EnumerationTarget::GenericFace) {
    validate_positions(positions, k, false);
    for (unsigned mask = 0; mask < patterns; ++mask) {
      const FaceLayout f = make_face_layout(positions, pattern_from_mask(mask, m));
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) ok = is_attractive_face_contact(f, f, j, k);
      if (ok) out.push_back(pattern_from_mask(mask, m));
    }
    return out;
  }

  if (k != 2) throw ValidationError("rhombic faces have 2-fold symmetry; got k = " + std::to_string(k));
  validate_positions(positions, k, true);

  if (share_one_pattern_across_faces) {
    for (unsigned mask = 0; mask < patterns; ++mask) {
      const auto pattern = pattern_from_mask(mask, m);
      if (validate_genderless(uniform_cell_layout(make_face_layout(positions, pattern))).valid)
        out.push_back(pattern);
    }
    return out;
  }

  // Independent per-face patterns: every lattice contact between faces f and
  // g reduces to one of a few magnet pairings, so collect those once and
  // backtrack over faces.
  const FaceLayout probe = positions_only(positions);
  using Pairing = std::vector<std::pair<int, int>>;
  std::array<std::array<std::set<Pairing>, FaceDir::kCount>, FaceDir::kCount> pairings;
  for_each_lattice_contact([&](const ContactAlignment& align) {
    pairings[align.face_a.index()][align.face_b.index()].insert(contact_map(probe, probe, align));
    return true;
  });

  auto compatible = [&](int fa, unsigned ma, int fb, unsigned mb) {
    for (const Pairing& pairing : pairings[fa][fb])
      for (const auto& [i, j] : pairing)
        if (((ma >> i) & 1u) == ((mb >> j) & 1u)) return false;
    return true;
  };

  std::array<unsigned, FaceDir::kCount> chosen{};
  auto search = [&](auto&& self, int face) -> void {
    if (face == FaceDir::kCount) {
      PolarityPattern full;
      for (unsigned mask : chosen) {
        const auto p = pattern_from_mask(mask, m);
        full.insert(full.end(), p.begin(), p.end());
      }
      out.push_back(std::move(full));
      return;
    }
    for (unsigned mask = 0; mask < patterns; ++mask) {
      if (!compatible(face, mask, face, mask)) continue;
      bool ok = true;
      for (int prev = 0; prev < face && ok; ++prev)
        ok = compatible(face, mask, prev, chosen[prev]) && compatible(prev, chosen[prev], face, mask);
      if (!ok) continue;
      chosen[face] = mask;
      self(self, face + 1);
    }
  };
  search(search, 0);
  return out;
}

CellLayout layout_from_pattern(std::span<const Vector2d> positions, const PolarityPattern& pattern) {
  const std::size_t m = positions.size();
  if (pattern.size() == m) return uniform_cell_layout(make_face_layout(positions, pattern));
  if (pattern.size() != m * FaceDir::kCount)
    throw ValidationError("pattern length matches neither one face nor twelve faces");
  CellLayout out;
  for (int f = 0; f < FaceDir::kCount; ++f)
    out.faces[f] = make_face_layout(positions, std::span(pattern).subspan(f * m, m));
  return out;
}

const CellLayout& standard_cell_layout() {
  static const CellLayout layout = [] {
    const auto positions = rhombic_magnet_positions();
    const auto valid = enumerate_valid_layouts(positions, 2, true);
    if (valid.empty()) throw ValidationError("no genderless layout exists for the default positions");
    return layout_from_pattern(positions, valid.front());
  }();
  return layout;
}

}  // namespace rhombi
