#pragma once

// Locomotion metrics over tracked center-of-mass trajectories and the
// per-design summary table.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rhombi/geometry.hpp"

namespace rhombi {

struct TrajectorySample {
  double t = 0.0;  // seconds
  double x = 0.0;  // cm
  double y = 0.0;  // cm
  std::optional<double> heading;  // radians
};

struct Trajectory {
  std::string trial_id;
  std::vector<TrajectorySample> samples;
};

/// Throws ValidationError unless there are at least two samples with
/// strictly increasing finite timestamps.
void validate_trajectory(const Trajectory& tr);

/// Sum of the distances between consecutive samples (cm).
double path_length(const Trajectory& tr);
/// Distance from the first to the last sample (cm).
double net_displacement(const Trajectory& tr);

enum class TurnDirection { CW, CCW, Indeterminate };

std::string_view to_string(TurnDirection r);

struct RotationOptions {
  /// Net turning needed to call a direction, radians.
  double min_turn = 3.14159265358979323846;
  /// Steps shorter than this (cm) are ignored when estimating heading.
  double min_step = 0.05;
};

/// Net turning of the track: per-sample headings when every sample has one,
/// otherwise the direction of travel between samples.
double net_turning(const Trajectory& tr, const RotationOptions& opts = {});
TurnDirection rotation_direction(const Trajectory& tr, const RotationOptions& opts = {});

struct TrialStats {
  std::string trial_id;
  double distance = 0.0;
  double net_displacement = 0.0;
  TurnDirection rotation = TurnDirection::Indeterminate;
  double duration = 0.0;
};

TrialStats trial_stats(const Trajectory& tr, const RotationOptions& opts = {});

struct DesignMetadata {
  std::string name;
  int passive = 0;
  int active = 0;
  double body_length_cm = 0.0;
  double body_weight_g = 0.0;
  ContactType contact = ContactType::Point;
};

struct MeanSd {
  double mean = 0.0;
  /// Sample standard deviation (divisor N - 1); absent for a single trial.
  std::optional<double> sd;
};

struct DesignSummary {
  DesignMetadata design;
  MeanSd distance;
  MeanSd net_displacement;
  std::size_t trials = 0;
  std::size_t clockwise = 0;
  std::size_t counterclockwise = 0;
  std::size_t indeterminate = 0;
};

MeanSd mean_sd(std::span<const double> values);

/// Throws ValidationError for an empty trial list.
DesignSummary summarize(std::span<const TrialStats> trials, const DesignMetadata& design);

/// Number with at most `max_decimals` decimals and trailing zeros removed:
/// 2.333 -> "2.33", 2.5 -> "2.5", 2.0 -> "2".
std::string format_compact(double value, int max_decimals = 2);
/// "2.33 to 1" style passive-to-active ratio.
std::string format_ratio(int passive, int active);
/// "126 +/- 34 SD", or "126" without a standard deviation.
std::string format_mean_sd(const MeanSd& v);

enum class TableFormat { Markdown, Csv };

/// Summary table, one column per design, rows in the order: passive count,
/// active count, ratio, body length, body weight, contact type, distance,
/// net displacement, trials.
std::string report_table(std::span<const DesignSummary> summaries, TableFormat format);

}  // namespace rhombi
