#include "rhombi/kinematics.hpp"

#include <algorithm>

#include "rhombi/error.hpp"
#include "rhombi/geometry.hpp"

namespace rhombi {
namespace {

bool well_formed(const PivotMove& m) { return m.mover - m.substrate == m.from.vec() && m.from.dot(m.to) == 1; }

bool blocked(const Configuration& c, const PivotMove& m) {
  for (const LatticePos& q : swept_cells(m.from, m.to))
    if (c.contains(m.substrate + q)) return true;
  return false;
}

bool supported(const Configuration& c, const PivotMove& m) {
  const LatticePos dest = m.destination();
  for (FaceDir d : FaceDir::all()) {
    const LatticePos q = dest + d.vec();
    if (q != m.substrate && q != m.mover && c.contains(q)) return true;
  }
  return false;
}

bool connected_without(const Configuration& c, const LatticePos& removed) {
  if (c.size() <= 2) return true;
  std::vector<LatticePos> rest;
  rest.reserve(c.size() - 1);
  for (const Cell& cell : c.cells())
    if (cell.pos != removed) rest.push_back(cell.pos);
  return is_connected(rest);
}

}  // namespace

void require_well_formed(const PivotMove& m) {
  require_valid(m.substrate);
  require_valid(m.mover);
  if (m.mover - m.substrate != m.from.vec())
    throw ValidationError("mover " + to_string(m.mover) + " is not at substrate " + to_string(m.substrate) +
                          " + face " + std::to_string(m.from.index()));
  if (m.from.dot(m.to) != 1)
    throw ValidationError("faces " + std::to_string(m.from.index()) + " and " + std::to_string(m.to.index()) +
                          " do not share an edge");
}

std::string_view to_string(MoveLegality l) {
  switch (l) {
    case MoveLegality::Legal: return "Legal";
    case MoveLegality::MoverAbsent: return "MoverAbsent";
    case MoveLegality::SubstrateAbsent: return "SubstrateAbsent";
    case MoveLegality::DestinationOccupied: return "DestinationOccupied";
    case MoveLegality::DisconnectsStructure: return "DisconnectsStructure";
    case MoveLegality::SweptVolumeBlocked: return "SweptVolumeBlocked";
    case MoveLegality::Unsupported: return "Unsupported";
  }
  return "?";
}

std::array<FaceDir, 4> pivot_destinations(FaceDir d) {
  std::array<FaceDir, 4> out;
  std::size_t n = 0;
  for (FaceDir e : FaceDir::all())
    if (d.dot(e) == 1) out[n++] = e;
  return out;
}

Rotation pivot_rotation(const PivotMove& m) {
  require_well_formed(m);
  // Relative to the pivot vertex, the mover center goes from 2*from to
  // 2*to while the edge direction stays fixed.
  static const auto table = [] {
    std::array<std::array<Rotation, FaceDir::kCount>, FaceDir::kCount> t{};
    for (FaceDir from : FaceDir::all())
      for (FaceDir to : pivot_destinations(from)) {
        const PivotEdge edge = pivot_edge(from, to);
        const LatticePos start = from.vec() + from.vec() - edge.octa_vertex;
        const LatticePos end = to.vec() + to.vec() - edge.octa_vertex;
        const LatticePos axis = edge.cube_vertex - edge.octa_vertex;
        const auto& all = Rotation::all();
        const auto it = std::find_if(all.begin(), all.end(),
                                     [&](Rotation r) { return r.apply(start) == end && r.apply(axis) == axis; });
        if (it == all.end()) throw ValidationError("no lattice rotation realizes this pivot");
        t[from.index()][to.index()] = *it;
      }
    return t;
  }();
  return table[m.from.index()][m.to.index()];
}

MoveLegality check_move(const Configuration& c, const PivotMove& m, const MoveOptions& opts) {
  if (!c.contains(m.mover)) return MoveLegality::MoverAbsent;
  if (!well_formed(m) || m.substrate == m.mover || !c.contains(m.substrate)) return MoveLegality::SubstrateAbsent;
  if (c.contains(m.destination())) return MoveLegality::DestinationOccupied;
  if (!connected_without(c, m.mover)) return MoveLegality::DisconnectsStructure;
  if (blocked(c, m)) return MoveLegality::SweptVolumeBlocked;
  if (opts.strict_stability && !supported(c, m)) return MoveLegality::Unsupported;
  return MoveLegality::Legal;
}

Configuration apply_move(const Configuration& c, const PivotMove& m, const MoveOptions& opts) {
  const MoveLegality legality = check_move(c, m, opts);
  if (legality != MoveLegality::Legal) throw IllegalMove(legality);
  Cell moved = *c.find(m.mover);
  moved.pos = m.destination();
  moved.orient = pivot_rotation(m) * moved.orient;
  return c.without(m.mover).with(moved);
}

std::vector<PivotMove> legal_moves(const Configuration& c, const MoveOptions& opts) {
  std::vector<PivotMove> out;
  for (const Cell& cell : c.cells()) {
    if (!connected_without(c, cell.pos)) continue;
    for (FaceDir from : FaceDir::all()) {
      const LatticePos substrate = cell.pos - from.vec();
      if (!c.contains(substrate)) continue;
      for (FaceDir to : pivot_destinations(from)) {
        const PivotMove m{cell.pos, substrate, from, to};
        if (c.contains(m.destination())) continue;
        if (blocked(c, m)) continue;
        if (opts.strict_stability && !supported(c, m)) continue;
        out.push_back(m);
      }
    }
  }
  return out;
}

}  // namespace rhombi
