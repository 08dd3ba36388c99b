#include "rhombi/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <deque>
#include <unordered_set>

#include "rhombi/error.hpp"

namespace rhombi {
namespace {

constexpr std::array<LatticePos, FaceDir::kCount> kFaceVectors = {{
    {-1, -1, 0}, {-1, 0, -1}, {-1, 0, 1}, {-1, 1, 0},
    {0, -1, -1}, {0, -1, 1},  {0, 1, -1}, {0, 1, 1},
    {1, -1, 0},  {1, 0, -1},  {1, 0, 1},  {1, 1, 0},
}};

int determinant(const IntMat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

IntMat3 multiply(const IntMat3& a, const IntMat3& b) {
  IntMat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

struct GroupTables {
  std::array<IntMat3, Rotation::kCount> matrices{};
  std::array<std::array<std::uint8_t, Rotation::kCount>, Rotation::kCount> product{};
  std::array<std::uint8_t, Rotation::kCount> inverse{};
  std::array<std::array<std::uint8_t, FaceDir::kCount>, Rotation::kCount> face_image{};

  GroupTables() {
    std::array<int, 3> perm = {0, 1, 2};
    int n = 0;
    do {
      for (int mask = 0; mask < 8; ++mask) {
        IntMat3 m{};
        for (int row = 0; row < 3; ++row) m[row][perm[row]] = (mask >> row & 1) ? -1 : 1;
        if (determinant(m) == 1) matrices[n++] = m;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto index_of = [&](const IntMat3& m) {
      for (int i = 0; i < Rotation::kCount; ++i)
        if (matrices[i] == m) return i;
      return -1;
    };
    for (int a = 0; a < Rotation::kCount; ++a) {
      for (int b = 0; b < Rotation::kCount; ++b)
        product[a][b] = static_cast<std::uint8_t>(index_of(multiply(matrices[a], matrices[b])));
      IntMat3 t{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = matrices[a][j][i];
      inverse[a] = static_cast<std::uint8_t>(index_of(t));
      for (int d = 0; d < FaceDir::kCount; ++d) {
        const LatticePos& v = kFaceVectors[d];
        const IntMat3& m = matrices[a];
        LatticePos w{m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                     m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                     m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
        face_image[a][d] = static_cast<std::uint8_t>(FaceDir::from_vector(w)->index());
      }
    }
  }
};

const GroupTables& tables() {
  static const GroupTables t;
  return t;
}

}  // namespace

void require_valid(const LatticePos& p) {
  if (!is_valid(p)) throw ValidationError("odd coordinate sum at " + to_string(p));
}

std::string to_string(const LatticePos& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + "," + std::to_string(p.z) + ")";
}

std::size_t LatticePosHash::operator()(const LatticePos& p) const noexcept {
  std::uint64_t h = static_cast<std::uint32_t>(p.x);
  h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(p.y);
  h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(p.z);
  return static_cast<std::size_t>(h ^ (h >> 29));
}

// FaceDir

FaceDir FaceDir::from_index(int index) {
  if (index < 0 || index >= kCount)
    throw ValidationError("face direction index out of range: " + std::to_string(index));
  return FaceDir(index);
}

std::optional<FaceDir> FaceDir::from_vector(const LatticePos& v) {
  auto it = std::lower_bound(kFaceVectors.begin(), kFaceVectors.end(), v);
  if (it == kFaceVectors.end() || *it != v) return std::nullopt;
  return FaceDir(static_cast<int>(it - kFaceVectors.begin()));
}

const std::array<FaceDir, FaceDir::kCount>& FaceDir::all() {
  static const auto dirs = [] {
    std::array<FaceDir, kCount> out;
    for (int i = 0; i < kCount; ++i) out[i] = FaceDir(i);
    return out;
  }();
  return dirs;
}

LatticePos FaceDir::vec() const { return kFaceVectors[index_]; }

// Rotation

Rotation Rotation::from_index(int index) {
  if (index < 0 || index >= kCount)
    throw ValidationError("rotation index out of range: " + std::to_string(index));
  return Rotation(index);
}

std::optional<Rotation> Rotation::from_matrix(const IntMat3& m) {
  const auto& mats = tables().matrices;
  for (int i = 0; i < kCount; ++i)
    if (mats[i] == m) return Rotation(i);
  return std::nullopt;
}

const std::array<Rotation, Rotation::kCount>& Rotation::all() {
  static const auto rots = [] {
    std::array<Rotation, kCount> out;
    for (int i = 0; i < kCount; ++i) out[i] = Rotation(i);
    return out;
  }();
  return rots;
}

const IntMat3& Rotation::matrix() const { return tables().matrices[index_]; }

Rotation Rotation::operator*(Rotation rhs) const { return Rotation(tables().product[index_][rhs.index_]); }

Rotation Rotation::inverse() const { return Rotation(tables().inverse[index_]); }

LatticePos Rotation::apply(const LatticePos& v) const {
  const IntMat3& m = matrix();
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

FaceDir Rotation::apply(FaceDir d) const { return FaceDir::from_index(tables().face_image[index_][d.index()]); }

int Rotation::trace() const {
  const IntMat3& m = matrix();
  return m[0][0] + m[1][1] + m[2][2];
}

int Rotation::order() const {
  Rotation r = *this;
  int k = 1;
  while (r != identity()) {
    r = r * *this;
    ++k;
  }
  return k;
}

// CellKind

std::string_view to_string(CellKind kind) { return kind == CellKind::Active ? "active" : "passive"; }

std::optional<CellKind> parse_cell_kind(std::string_view text) {
  if (text == "active") return CellKind::Active;
  if (text == "passive") return CellKind::Passive;
  return std::nullopt;
}

// Configuration

Configuration::Configuration(std::vector<Cell> cells) : cells_(std::move(cells)) {
  for (const Cell& c : cells_) require_valid(c.pos);
  std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) { return a.pos < b.pos; });
  auto dup = std::adjacent_find(cells_.begin(), cells_.end(),
                                [](const Cell& a, const Cell& b) { return a.pos == b.pos; });
  if (dup != cells_.end()) throw ValidationError("duplicate cell position " + to_string(dup->pos));
}

Configuration Configuration::from_positions(std::span<const LatticePos> positions, CellKind kind) {
  std::vector<Cell> cells;
  cells.reserve(positions.size());
  for (const auto& p : positions) cells.push_back({p, kind, Rotation::identity()});
  return Configuration(std::move(cells));
}

std::vector<LatticePos> Configuration::positions() const {
  std::vector<LatticePos> out;
  out.reserve(cells_.size());
  for (const Cell& c : cells_) out.push_back(c.pos);
  return out;
}

const Cell* Configuration::find(const LatticePos& p) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), p,
                             [](const Cell& c, const LatticePos& q) { return c.pos < q; });
  if (it == cells_.end() || it->pos != p) return nullptr;
  return &*it;
}

Configuration Configuration::without(const LatticePos& p) const {
  std::vector<Cell> out;
  out.reserve(cells_.size());
  for (const Cell& c : cells_)
    if (c.pos != p) out.push_back(c);
  return Configuration(std::move(out), Unchecked{});
}

Configuration Configuration::with(const Cell& cell) const {
  require_valid(cell.pos);
  if (contains(cell.pos)) throw ValidationError("position already occupied " + to_string(cell.pos));
  std::vector<Cell> out = cells_;
  auto it = std::lower_bound(out.begin(), out.end(), cell.pos,
                             [](const Cell& c, const LatticePos& q) { return c.pos < q; });
  out.insert(it, cell);
  return Configuration(std::move(out), Unchecked{});
}

// Free functions

std::array<LatticePos, FaceDir::kCount> neighbors(const LatticePos& p) {
  require_valid(p);
  std::array<LatticePos, FaceDir::kCount> out;
  for (int i = 0; i < FaceDir::kCount; ++i) out[i] = p + kFaceVectors[i];
  return out;
}

bool are_adjacent(const LatticePos& p, const LatticePos& q) { return FaceDir::from_vector(q - p).has_value(); }

int lattice_distance(const LatticePos& p, const LatticePos& q) {
  require_valid(p);
  require_valid(q);
  const int dx = std::abs(p.x - q.x);
  const int dy = std::abs(p.y - q.y);
  const int dz = std::abs(p.z - q.z);
  // The L1 norm of an even-sum offset is even, so the halving is exact.
  return std::max(std::max({dx, dy, dz}), (dx + dy + dz) / 2);
}

Configuration translate(const Configuration& c, const LatticePos& offset) {
  if (!is_valid(offset)) throw ValidationError("translation offset must have even coordinate sum");
  std::vector<Cell> cells(c.cells().begin(), c.cells().end());
  for (Cell& cell : cells) cell.pos = cell.pos + offset;
  return Configuration(std::move(cells));
}

Configuration canonicalize(const Configuration& c) {
  if (c.empty()) throw ValidationError("cannot canonicalize an empty configuration");
  return translate(c, -c.cells().front().pos);
}

bool is_connected(std::span<const LatticePos> positions) {
  if (positions.empty()) throw ValidationError("connectivity of an empty configuration is undefined");
  const std::size_t n = positions.size();
  if (n <= 64) {
    // Bitmask flood fill with pairwise adjacency tests; no allocation.
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::uint64_t seen = 1, frontier = 1;
    while (frontier != 0) {
      const int i = std::countr_zero(frontier);
      frontier &= frontier - 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (seen >> j & 1) continue;
        const LatticePos d = positions[j] - positions[i];
        const int ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
        if (ax <= 1 && ay <= 1 && az <= 1 && ax + ay + az == 2) {
          seen |= std::uint64_t{1} << j;
          frontier |= std::uint64_t{1} << j;
        }
      }
    }
    return seen == all;
  }
  std::unordered_set<LatticePos> remaining(positions.begin(), positions.end());
  std::deque<LatticePos> queue{positions.front()};
  remaining.erase(positions.front());
  while (!queue.empty()) {
    const LatticePos p = queue.front();
    queue.pop_front();
    for (const LatticePos& d : kFaceVectors) {
      auto it = remaining.find(p + d);
      if (it == remaining.end()) continue;
      queue.push_back(*it);
      remaining.erase(it);
    }
  }
  return remaining.empty();
}

bool is_connected(const Configuration& c) {
  const auto positions = c.positions();
  return is_connected(positions);
}

std::size_t adjacent_pair_count(const Configuration& c) {
  std::size_t count = 0;
  for (const Cell& cell : c.cells())
    for (const LatticePos& d : kFaceVectors)
      if (cell.pos < cell.pos + d && c.contains(cell.pos + d)) ++count;
  return count;
}

}  // namespace rhombi
