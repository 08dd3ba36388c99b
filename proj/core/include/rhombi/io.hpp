#pragma once

// File formats: JSON structures, layouts, positions, plans and design
// metadata; CSV trajectories; Wavefront OBJ meshes.
//
// Every JSON document carries "format_version": 1 (assumed when absent).
// Face directions are stored as FaceDir indices.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rhombi/analytics.hpp"
#include "rhombi/docking.hpp"
#include "rhombi/geometry.hpp"
#include "rhombi/planner.hpp"

namespace rhombi {

inline constexpr int kFormatVersion = 1;

/// { "scale_cm_per_unit": number?, "cells": [ { "pos": [x,y,z],
///   "kind": "active"|"passive", "orient": 0..23? } ] }
struct StructureDoc {
  Configuration config;
  std::optional<double> scale_cm_per_unit;
};

StructureDoc parse_structure(std::string_view json_text);
std::string write_structure(const StructureDoc& doc);

/// { "faces": [ { "dir": i, "magnets": [ { "pos": [u,v], "polarity": "N"|"S" } ] } x12 ] }
/// or { "shared_face": { "magnets": [...] } } for one pattern on every face.
CellLayout parse_layout(std::string_view json_text);
std::string write_layout(const CellLayout& layout);

/// { "positions": [ [u,v], ... ] }
std::vector<Eigen::Vector2d> parse_positions(std::string_view json_text);

/// { "start": structure, "goal": structure?, "matching": {...}?,
///   "strict_stability": bool?, "moves": [ { "mover": [x,y,z],
///   "substrate": [x,y,z], "from": i, "to": j } ], "stats": {...}? }
struct PlanDoc {
  Configuration start;
  std::vector<PivotMove> moves;
  std::optional<Configuration> goal;
  GoalMatching matching;
  MoveOptions move_options;
  std::optional<SearchStats> stats;
};

PlanDoc parse_plan(std::string_view json_text);
/// Wall time is left out so identical searches give identical files.
std::string write_plan(const PlanDoc& doc);
PlanDoc make_plan_doc(const Configuration& start, const Plan& plan);

/// Header `trial_id,t,x,y[,heading]`; LF or CRLF line ends. Trials keep the
/// order of first appearance.
std::vector<Trajectory> parse_trajectories_csv(std::string_view csv_text);

struct DesignSpec {
  DesignMetadata meta;
  /// Trial ids belonging to this design; empty means every trial.
  std::vector<std::string> trial_ids;
};

/// { "designs": [ { "name", "passive", "active", "body_length_cm",
///   "body_weight_g", "contact": "point"|"edge"|"face", "trials": [...]? } ] }
/// or a single design object.
std::vector<DesignSpec> parse_designs(std::string_view json_text);

/// `v x y z` lines with six decimals, then 1-based `f` lines.
std::string export_obj(const Mesh& mesh, double scale_cm_per_unit = 1.0);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace rhombi
