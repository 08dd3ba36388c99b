#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "rhombi/error.hpp"
#include "rhombi/geometry.hpp"
#include "rhombi/kinematics.hpp"

using namespace rhombi;

namespace {

FaceDir dir(int x, int y, int z) { return *FaceDir::from_vector({x, y, z}); }

Configuration config(std::vector<LatticePos> ps) { return Configuration::from_positions(ps); }

// Faces sharing an edge with face `d`, read off the canonical mesh.
std::set<int> mesh_edge_neighbors(FaceDir d) {
  std::set<int> out;
  for (auto [a, b] : adjacent_face_pairs(canonical_cell_mesh()))
    if (a == d.index()) out.insert(b);
  return out;
}

}  // namespace

TEST(PivotDestinations, FourPerFaceMatchingMeshEdges) {
  const auto dests = pivot_destinations(dir(1, 1, 0));
  std::set<LatticePos> got;
  for (FaceDir d : dests) got.insert(d.vec());
  EXPECT_EQ(got, (std::set<LatticePos>{{1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}}));
  for (FaceDir d : FaceDir::all()) {
    std::set<int> ids;
    for (FaceDir e : pivot_destinations(d)) {
      ids.insert(e.index());
      const auto back = pivot_destinations(e);
      EXPECT_NE(std::find(back.begin(), back.end(), d), back.end());
    }
    EXPECT_EQ(ids.size(), 4u);
    EXPECT_EQ(ids, mesh_edge_neighbors(d));
  }
}

TEST(PivotRotation, OrderThreeTraceZeroForAllPairs) {
  int pairs = 0;
  for (FaceDir from : FaceDir::all())
    for (FaceDir to : pivot_destinations(from)) {
      ++pairs;
      const PivotMove m = PivotMove::about({0, 0, 0}, from, to);
      const Rotation r = pivot_rotation(m);
      EXPECT_EQ(r.order(), 3);
      EXPECT_EQ(r.trace(), 0);
      EXPECT_EQ(pivot_rotation(m.reversed()), r.inverse());
      const PivotEdge e = pivot_edge(from, to);
      const LatticePos axis = e.cube_vertex - e.octa_vertex;
      EXPECT_EQ(r.apply(axis), axis);
      // The rolled cell lands on its destination, pivoting about the edge.
      const LatticePos start = from.vec() + from.vec() - e.octa_vertex;
      EXPECT_EQ(r.apply(start), to.vec() + to.vec() - e.octa_vertex);
      // Shape symmetry: the vertex set maps onto itself.
      std::set<std::tuple<double, double, double>> before, after;
      for (const Vec3& v : canonical_cell_mesh().vertices) {
        before.insert({v.x(), v.y(), v.z()});
        const Vec3 w = rotation_matrix(r) * v;
        after.insert({w.x() + 0.0, w.y() + 0.0, w.z() + 0.0});
      }
      EXPECT_EQ(before, after);
    }
  EXPECT_EQ(pairs, 48);
}

TEST(PivotRotation, KnownPair) {
  const Rotation r = pivot_rotation(PivotMove::about({0, 0, 0}, dir(1, 1, 0), dir(1, 0, 1)));
  EXPECT_EQ(r.matrix(), (IntMat3{{{0, 0, -1}, {-1, 0, 0}, {0, 1, 0}}}));
}

TEST(CheckMove, Examples) {
  const auto pair = config({{0, 0, 0}, {1, 1, 0}});
  const PivotMove m = PivotMove::about({0, 0, 0}, dir(1, 1, 0), dir(1, 0, 1));
  EXPECT_EQ(check_move(pair, m), MoveLegality::Legal);
  EXPECT_EQ(check_move(config({{0, 0, 0}, {1, 1, 0}, {1, 0, 1}}), m), MoveLegality::DestinationOccupied);

  const auto line = config({{0, 0, 0}, {1, 1, 0}, {2, 2, 0}});
  const PivotMove middle = PivotMove::about({0, 0, 0}, dir(1, 1, 0), dir(1, 0, 1));
  EXPECT_EQ(check_move(line, middle), MoveLegality::DisconnectsStructure);

  EXPECT_EQ(check_move(config({{0, 0, 0}}), m), MoveLegality::MoverAbsent);
  EXPECT_EQ(check_move(config({{1, 1, 0}}), m), MoveLegality::SubstrateAbsent);
  EXPECT_EQ(check_move(pair.with(Cell{{0, 1, 1}}), m), MoveLegality::SweptVolumeBlocked);
  EXPECT_EQ(check_move(pair.with(Cell{{2, 0, 0}}), m), MoveLegality::DisconnectsStructure);
}

TEST(CheckMove, StrictStabilityNeedsSecondSupport) {
  const auto pair = config({{0, 0, 0}, {1, 1, 0}});
  const PivotMove m = PivotMove::about({0, 0, 0}, dir(1, 1, 0), dir(1, 0, 1));
  EXPECT_EQ(check_move(pair, m, {true}), MoveLegality::Unsupported);
  EXPECT_EQ(check_move(pair.with(Cell{{0, -1, 1}}), m, {true}), MoveLegality::Legal);
}

TEST(ApplyMove, UpdatesPositionAndOrientation) {
  const auto pair = config({{0, 0, 0}, {1, 1, 0}});
  const PivotMove m = PivotMove::about({0, 0, 0}, dir(1, 1, 0), dir(1, 0, 1));
  const Configuration after = apply_move(pair, m);
  EXPECT_EQ(after.positions(), (std::vector<LatticePos>{{0, 0, 0}, {1, 0, 1}}));
  EXPECT_EQ(after.find({1, 0, 1})->orient, pivot_rotation(m));
  EXPECT_THROW(apply_move(after, m), IllegalMove);
}

TEST(ApplyMove, ReverseRestoresAndLegalityIsSymmetric) {
  std::mt19937 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = config(oracle::random_connected(rng, 2 + trial % 8));
    for (const PivotMove& m : legal_moves(c)) {
      const Configuration next = apply_move(c, m);
      EXPECT_EQ(next.size(), c.size());
      EXPECT_TRUE(is_connected(next));
      ASSERT_EQ(check_move(next, m.reversed()), MoveLegality::Legal);
      const Configuration back = apply_move(next, m.reversed());
      EXPECT_EQ(back, c);
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(LegalMoves, AgreesWithCheckMoveOverAllCandidates) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = config(oracle::random_connected(rng, 1 + trial % 9));
    const MoveOptions opts{trial % 2 == 1};
    std::vector<PivotMove> expected;
    for (const Cell& cell : c.cells())
      for (FaceDir from : FaceDir::all())
        for (FaceDir to : pivot_destinations(from)) {
          const PivotMove m{cell.pos, cell.pos - from.vec(), from, to};
          if (check_move(c, m, opts) == MoveLegality::Legal) expected.push_back(m);
        }
    ASSERT_EQ(legal_moves(c, opts), expected);
  }
}

TEST(PivotMove, MalformedMovesAreRejected) {
  const PivotMove bad{{2, 0, 0}, {0, 0, 0}, dir(1, 1, 0), dir(1, 0, 1)};
  EXPECT_THROW(require_well_formed(bad), ValidationError);
  EXPECT_THROW(pivot_rotation(bad), ValidationError);
  EXPECT_EQ(check_move(config({{0, 0, 0}, {2, 0, 0}}), bad), MoveLegality::SubstrateAbsent);
  const PivotMove opposite = PivotMove::about({0, 0, 0}, dir(1, 1, 0), dir(-1, -1, 0));
  EXPECT_THROW(require_well_formed(opposite), ValidationError);
}
