#pragma once

// The 120-degree edge pivot: a mover cell attached to a substrate cell
// through substrate face `from` rolls over the edge that face shares with
// substrate face `to`, ending up attached through `to`.

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rhombi/lattice.hpp"

namespace rhombi {

struct PivotMove {
  LatticePos mover;
  LatticePos substrate;
  FaceDir from;
  FaceDir to;

  /// Move of the cell at substrate + from over to substrate + to.
  static PivotMove about(const LatticePos& substrate, FaceDir from, FaceDir to) {
    return {substrate + from.vec(), substrate, from, to};
  }

  LatticePos destination() const { return substrate + to.vec(); }
  /// The move that rolls the mover back.
  PivotMove reversed() const { return {destination(), substrate, to, from}; }

  friend bool operator==(const PivotMove&, const PivotMove&) = default;
};

/// Throws ValidationError unless mover - substrate == from and
/// from . to == 1.
void require_well_formed(const PivotMove& m);

enum class MoveLegality {
  Legal,
  MoverAbsent,
  SubstrateAbsent,
  DestinationOccupied,
  DisconnectsStructure,
  SweptVolumeBlocked,
  /// Only reported with MoveOptions::strict_stability.
  Unsupported,
};

std::string_view to_string(MoveLegality l);

struct MoveOptions {
  /// Also require the destination to touch at least one occupied cell other
  /// than the substrate.
  bool strict_stability = false;
};

class IllegalMove : public std::runtime_error {
 public:
  IllegalMove(MoveLegality reason, std::size_t step = 0)
      : std::runtime_error("illegal move at step " + std::to_string(step) + ": " +
                           std::string(to_string(reason))),
        reason_(reason),
        step_(step) {}

  MoveLegality reason() const noexcept { return reason_; }
  std::size_t step() const noexcept { return step_; }

 private:
  MoveLegality reason_;
  std::size_t step_;
};

/// The four faces sharing an edge with `d`, in FaceDir index order.
std::array<FaceDir, 4> pivot_destinations(FaceDir d);

/// Orientation change of the mover: the 120-degree rotation about the pivot
/// edge direction. Throws ValidationError for a malformed move.
Rotation pivot_rotation(const PivotMove& m);

/// First failing check in the order MoverAbsent, SubstrateAbsent,
/// DestinationOccupied, DisconnectsStructure, SweptVolumeBlocked
/// (then Unsupported when strict); Legal otherwise. Malformed moves report
/// SubstrateAbsent.
MoveLegality check_move(const Configuration& c, const PivotMove& m, const MoveOptions& opts = {});

/// Applies a legal move; throws IllegalMove otherwise.
Configuration apply_move(const Configuration& c, const PivotMove& m, const MoveOptions& opts = {});

/// All legal moves of `c`, ordered by (mover position, from index, to index).
std::vector<PivotMove> legal_moves(const Configuration& c, const MoveOptions& opts = {});

}  // namespace rhombi
