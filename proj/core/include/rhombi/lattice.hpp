#pragma once

// Integer arithmetic on the face-centered cubic lattice.
//
// A lattice site is an integer triple (x, y, z) with an even coordinate sum.
// In the canonical Euclidean embedding the cell centered at site p sits at
// 2 * p, and its twelve neighbors are p + d for the twelve FaceDir offsets
// (signed permutations of (1, 1, 0)).

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rhombi {

struct LatticePos {
  int x = 0;
  int y = 0;
  int z = 0;

  friend constexpr auto operator<=>(const LatticePos&, const LatticePos&) = default;

  constexpr LatticePos operator+(const LatticePos& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr LatticePos operator-(const LatticePos& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr LatticePos operator-() const { return {-x, -y, -z}; }
  constexpr int dot(const LatticePos& o) const { return x * o.x + y * o.y + z * o.z; }
};

/// True when the coordinate sum is even.
constexpr bool is_valid(const LatticePos& p) { return ((p.x + p.y + p.z) & 1) == 0; }

/// Throws ValidationError when `p` is not an FCC site.
void require_valid(const LatticePos& p);

std::string to_string(const LatticePos& p);

struct LatticePosHash {
  std::size_t operator()(const LatticePos& p) const noexcept;
};

/// One of the twelve face directions of the cell, which double as the
/// neighbor offsets. Indices follow the lexicographic order of the vectors:
///
///   0 (-1,-1, 0)   1 (-1, 0,-1)   2 (-1, 0, 1)   3 (-1, 1, 0)
///   4 ( 0,-1,-1)   5 ( 0,-1, 1)   6 ( 0, 1,-1)   7 ( 0, 1, 1)
///   8 ( 1,-1, 0)   9 ( 1, 0,-1)  10 ( 1, 0, 1)  11 ( 1, 1, 0)
class FaceDir {
 public:
  static constexpr int kCount = 12;

  constexpr FaceDir() = default;

  /// Throws ValidationError for an index outside [0, 12).
  static FaceDir from_index(int index);
  /// Returns nullopt when `v` is not a signed permutation of (1, 1, 0).
  static std::optional<FaceDir> from_vector(const LatticePos& v);
  static const std::array<FaceDir, kCount>& all();

  constexpr int index() const { return index_; }
  LatticePos vec() const;
  FaceDir opposite() const { return FaceDir(kCount - 1 - index_); }
  int dot(FaceDir o) const { return vec().dot(o.vec()); }

  friend constexpr auto operator<=>(const FaceDir&, const FaceDir&) = default;

 private:
  explicit constexpr FaceDir(int index) : index_(static_cast<std::uint8_t>(index)) {}
  std::uint8_t index_ = 0;
};

using IntMat3 = std::array<std::array<int, 3>, 3>;

/// Element of the chiral octahedral group: the 24 signed permutation
/// matrices with determinant +1.
///
/// Enumeration: row permutations of the identity in std::next_permutation
/// order ((0,1,2), (0,2,1), (1,0,2), ...), and for each permutation the sign
/// masks 0..7 where bit i negates row i; masks with determinant -1 are
/// skipped. Index 0 is the identity.
class Rotation {
 public:
  static constexpr int kCount = 24;

  constexpr Rotation() = default;

  static Rotation identity() { return Rotation(); }
  /// Throws ValidationError for an index outside [0, 24).
  static Rotation from_index(int index);
  /// Returns nullopt when `m` is not one of the 24 group elements.
  static std::optional<Rotation> from_matrix(const IntMat3& m);
  static const std::array<Rotation, kCount>& all();

  constexpr int index() const { return index_; }
  const IntMat3& matrix() const;

  /// Composition: (a * b).apply(v) == a.apply(b.apply(v)).
  Rotation operator*(Rotation rhs) const;
  Rotation inverse() const;
  LatticePos apply(const LatticePos& v) const;
  FaceDir apply(FaceDir d) const;

  int trace() const;
  /// Smallest k >= 1 with r^k = identity.
  int order() const;

  friend constexpr auto operator<=>(const Rotation&, const Rotation&) = default;

 private:
  explicit constexpr Rotation(int index) : index_(static_cast<std::uint8_t>(index)) {}
  std::uint8_t index_ = 0;
};

/// Cell orientation applied to a vector.
inline LatticePos apply_rotation(Rotation r, const LatticePos& p) { return r.apply(p); }
inline FaceDir apply_rotation_dir(Rotation r, FaceDir d) { return r.apply(d); }

enum class CellKind : std::uint8_t { Passive, Active };

std::string_view to_string(CellKind kind);
std::optional<CellKind> parse_cell_kind(std::string_view text);

struct Cell {
  LatticePos pos;
  CellKind kind = CellKind::Passive;
  Rotation orient;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// A finite set of cells at distinct lattice sites, stored sorted by
/// position.
class Configuration {
 public:
  Configuration() = default;
  /// Validates every position and rejects duplicates (ValidationError).
  explicit Configuration(std::vector<Cell> cells);

  static Configuration from_positions(std::span<const LatticePos> positions,
                                      CellKind kind = CellKind::Passive);

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  std::span<const Cell> cells() const { return cells_; }
  std::vector<LatticePos> positions() const;

  bool contains(const LatticePos& p) const { return find(p) != nullptr; }
  const Cell* find(const LatticePos& p) const;

  /// Copy without the cell at `p` (no-op when absent).
  Configuration without(const LatticePos& p) const;
  /// Copy with `cell` added; throws ValidationError if occupied.
  Configuration with(const Cell& cell) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  struct Unchecked {};
  Configuration(std::vector<Cell> sorted_cells, Unchecked) : cells_(std::move(sorted_cells)) {}

  std::vector<Cell> cells_;
};

/// The 12 neighbors of `p` in FaceDir index order.
std::array<LatticePos, FaceDir::kCount> neighbors(const LatticePos& p);

bool are_adjacent(const LatticePos& p, const LatticePos& q);

/// Minimal number of FaceDir steps between two sites.
int lattice_distance(const LatticePos& p, const LatticePos& q);

/// Translates by an even-sum offset; throws ValidationError otherwise.
Configuration translate(const Configuration& c, const LatticePos& offset);

/// Translates `c` so that its lexicographically smallest position is the
/// origin. Throws ValidationError for an empty configuration.
Configuration canonicalize(const Configuration& c);

/// True when the face-adjacency graph of `c` has a single component.
bool is_connected(const Configuration& c);
bool is_connected(std::span<const LatticePos> positions);

/// Number of unordered face-adjacent pairs.
std::size_t adjacent_pair_count(const Configuration& c);

}  // namespace rhombi

template <>
struct std::hash<rhombi::LatticePos> : rhombi::LatticePosHash {};
