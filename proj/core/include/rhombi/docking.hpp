#pragma once

// Magnet layouts on cell faces and genderless docking checks.
//
// A magnet sits at a 2D point (long, short) in its face frame and shows one
// pole outward. Two faces pressed together see each other mirrored, so a
// magnet at (u, v) on the far face lands on (u, -v) in the near face frame,
// further turned by the in-plane symmetry index j (multiples of 360/k).
// Facing magnets attract when their outward poles differ.

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rhombi/lattice.hpp"

namespace rhombi {

enum class Polarity : std::uint8_t { N, S };

inline Polarity flip(Polarity p) { return p == Polarity::N ? Polarity::S : Polarity::N; }
std::string_view to_string(Polarity p);

inline constexpr double kMatchEpsilon = 1e-6;

struct MagnetSpec {
  Eigen::Vector2d pos;
  Polarity polarity = Polarity::N;
};

struct FaceLayout {
  std::vector<MagnetSpec> magnets;
};

/// One FaceLayout per cell-local FaceDir, indexed by FaceDir::index().
struct CellLayout {
  std::array<FaceLayout, FaceDir::kCount> faces;
};

/// Cell A sits at the origin with orientation orient_a and touches cell B
/// through its local face face_a; B touches back through its local face
/// face_b. B's layout is additionally turned by symmetry_index * 360/k
/// degrees about its face normal before pairing.
struct ContactAlignment {
  FaceDir face_a;
  Rotation orient_a;
  FaceDir face_b;
  Rotation orient_b;
  int symmetry_index = 0;

  /// The same contact seen from B.
  ContactAlignment inverse() const { return {face_b, orient_b, face_a, orient_a, symmetry_index}; }
};

/// Four points mirror-symmetric about the long axis at (+-a, +-b) fractions
/// of the half-diagonals, in the order (+a,+b), (+a,-b), (-a,+b), (-a,-b).
std::vector<Eigen::Vector2d> rhombic_magnet_positions(double a = 0.5, double b = 0.35);

FaceLayout make_face_layout(std::span<const Eigen::Vector2d> positions, std::span<const Polarity> polarities);
CellLayout uniform_cell_layout(const FaceLayout& face);

/// Throws ValidationError when two positions coincide, when the position
/// set is not invariant under the k-fold rotation, or (rhombic faces) when a
/// magnet is not strictly inside the face.
void validate_positions(std::span<const Eigen::Vector2d> positions, int k, bool rhombic_face = true);
void validate_cell_layout(const CellLayout& layout);

/// Alignment of two lattice-adjacent cells; throws ValidationError unless
/// the cells are face-adjacent.
ContactAlignment alignment_between(const Cell& a, const Cell& b);

/// Index pairs (magnet of A, magnet of B) that coincide in 3D. Throws
/// ValidationError when the faces are not coincident under the alignment and
/// PairingError when some magnet has no partner.
std::vector<std::pair<int, int>> contact_map(const FaceLayout& a, const FaceLayout& b, const ContactAlignment& align,
                                             int k = 2);

/// True when every matched pair has opposite poles. Propagates PairingError.
bool is_attractive_contact(const FaceLayout& a, const FaceLayout& b, const ContactAlignment& align, int k = 2);
bool is_attractive_contact(const CellLayout& a, const CellLayout& b, const ContactAlignment& align);

/// Contact of two standalone faces with k-fold symmetry, in face coordinates.
std::vector<std::pair<int, int>> face_contact_map(const FaceLayout& a, const FaceLayout& b, int j, int k);
bool is_attractive_face_contact(const FaceLayout& a, const FaceLayout& b, int j, int k);

struct GenderlessReport {
  bool valid = true;
  std::optional<ContactAlignment> counterexample;
  std::size_t contacts_checked = 0;
};

/// Checks every face-to-face contact two cells carrying `layout` can form on
/// the lattice: all 12 contact directions times 24 x 24 orientations.
GenderlessReport validate_genderless(const CellLayout& layout);

/// True when every face-adjacent pair in `c` docks attractively.
bool configuration_docks(const Configuration& c, const CellLayout& layout);

/// Relabels faces and magnet coordinates after rotating the whole cell by g.
CellLayout rotate_layout(const CellLayout& layout, Rotation g);

enum class EnumerationTarget {
  /// Full lattice check on the rhombic dodecahedron (k must be 2).
  RhombicCell,
  /// Single-face condition: a face attracts a copy of itself under all k
  /// relative turns.
  GenericFace,
};

using PolarityPattern = std::vector<Polarity>;

/// Every polarity assignment that docks genderlessly. A face pattern is
/// ranked by its bitmask (bit i set when magnet i is S); with a shared
/// pattern each result has one entry per position and results come in mask
/// order. Otherwise each result has 12 * positions entries, face-major, in
/// lexicographic order of the per-face masks. GenericFace ignores the share
/// flag. Throws UnsupportedSymmetry for k < 2.
std::vector<PolarityPattern> enumerate_valid_layouts(std::span<const Eigen::Vector2d> positions, int k,
                                                     bool share_one_pattern_across_faces,
                                                     EnumerationTarget target = EnumerationTarget::RhombicCell);

/// CellLayout built from an enumeration result.
CellLayout layout_from_pattern(std::span<const Eigen::Vector2d> positions, const PolarityPattern& pattern);

/// The first valid shared pattern on the default rhombic positions.
const CellLayout& standard_cell_layout();

}  // namespace rhombi
