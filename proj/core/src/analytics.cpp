#include "rhombi/analytics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "rhombi/error.hpp"

namespace rhombi {
namespace {

double wrap_angle(double a) {
  // Into (-pi, pi].
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

struct Row {
  std::string label;
  std::vector<std::string> cells;
};

std::vector<Row> table_rows(std::span<const DesignSummary> summaries) {
  std::vector<Row> rows = {{"No. of passive cells", {}},    {"No. of active cells", {}},
                           {"Ratio of passive to active", {}}, {"Body length (cm)", {}},
                           {"Body weight (g)", {}},         {"Type of surface contacts", {}},
                           {"Avg. distance traveled (cm)", {}}, {"Avg. net displacement (cm)", {}},
                           {"No. of trials", {}}};
  for (const auto& s : summaries) {
    rows[0].cells.push_back(std::to_string(s.design.passive));
    rows[1].cells.push_back(std::to_string(s.design.active));
    rows[2].cells.push_back(format_ratio(s.design.passive, s.design.active));
    rows[3].cells.push_back(format_compact(s.design.body_length_cm));
    rows[4].cells.push_back(format_compact(s.design.body_weight_g));
    rows[5].cells.push_back(std::string(to_string(s.design.contact)));
    rows[6].cells.push_back(format_mean_sd(s.distance));
    rows[7].cells.push_back(format_mean_sd(s.net_displacement));
    rows[8].cells.push_back(std::to_string(s.trials));
  }
  return rows;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void validate_trajectory(const Trajectory& tr) {
  if (tr.samples.size() < 2)
    throw ValidationError("trajectory '" + tr.trial_id + "' needs at least 2 samples");
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    const auto& s = tr.samples[i];
    if (!std::isfinite(s.t) || !std::isfinite(s.x) || !std::isfinite(s.y))
      throw ValidationError("trajectory '" + tr.trial_id + "' sample " + std::to_string(i) + " is not finite");
    if (i > 0 && !(s.t > tr.samples[i - 1].t))
      throw ValidationError("trajectory '" + tr.trial_id + "' timestamps are not strictly increasing at sample " +
                            std::to_string(i));
  }
}

double path_length(const Trajectory& tr) {
  validate_trajectory(tr);
  double total = 0.0;
  for (std::size_t i = 1; i < tr.samples.size(); ++i)
    total += std::hypot(tr.samples[i].x - tr.samples[i - 1].x, tr.samples[i].y - tr.samples[i - 1].y);
  return total;
}

double net_displacement(const Trajectory& tr) {
  validate_trajectory(tr);
  const auto& a = tr.samples.front();
  const auto& b = tr.samples.back();
  return std::hypot(b.x - a.x, b.y - a.y);
}

std::string_view to_string(TurnDirection r) {
  switch (r) {
    case TurnDirection::CW: return "CW";
    case TurnDirection::CCW: return "CCW";
    case TurnDirection::Indeterminate: return "Indeterminate";
  }
  return "?";
}

double net_turning(const Trajectory& tr, const RotationOptions& opts) {
  validate_trajectory(tr);
  std::vector<double> headings;
  const bool have_headings =
      std::all_of(tr.samples.begin(), tr.samples.end(), [](const auto& s) { return s.heading.has_value(); });
  if (have_headings) {
    for (const auto& s : tr.samples) headings.push_back(*s.heading);
  } else {
    std::size_t anchor = 0;
    for (std::size_t i = 1; i < tr.samples.size(); ++i) {
      const double dx = tr.samples[i].x - tr.samples[anchor].x;
      const double dy = tr.samples[i].y - tr.samples[anchor].y;
      if (std::hypot(dx, dy) < opts.min_step) continue;
      headings.push_back(std::atan2(dy, dx));
      anchor = i;
    }
  }
  double total = 0.0;
  for (std::size_t i = 1; i < headings.size(); ++i) total += wrap_angle(headings[i] - headings[i - 1]);
  return total;
}

TurnDirection rotation_direction(const Trajectory& tr, const RotationOptions& opts) {
  const double turn = net_turning(tr, opts);
  if (turn > opts.min_turn) return TurnDirection::CCW;
  if (turn < -opts.min_turn) return TurnDirection::CW;
  return TurnDirection::Indeterminate;
}

TrialStats trial_stats(const Trajectory& tr, const RotationOptions& opts) {
  return {tr.trial_id, path_length(tr), net_displacement(tr), rotation_direction(tr, opts),
          tr.samples.back().t - tr.samples.front().t};
}

MeanSd mean_sd(std::span<const double> values) {
  if (values.empty()) throw ValidationError("mean of an empty sample");
  MeanSd out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

DesignSummary summarize(std::span<const TrialStats> trials, const DesignMetadata& design) {
  if (trials.empty()) throw ValidationError("design '" + design.name + "' has no trials");
  DesignSummary s;
  s.design = design;
  s.trials = trials.size();
  std::vector<double> dist, disp;
  for (const auto& t : trials) {
    dist.push_back(t.distance);
    disp.push_back(t.net_displacement);
    switch (t.rotation) {
      case TurnDirection::CW: ++s.clockwise; break;
      case TurnDirection::CCW: ++s.counterclockwise; break;
      case TurnDirection::Indeterminate: ++s.indeterminate; break;
    }
  }
  s.distance = mean_sd(dist);
  s.net_displacement = mean_sd(disp);
  return s;
}

std::string format_compact(double value, int max_decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", max_decimals, value);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string format_ratio(int passive, int active) {
  if (active <= 0) throw ValidationError("ratio needs at least one active cell");
  return format_compact(static_cast<double>(passive) / active, 2) + " to 1";
}

std::string format_mean_sd(const MeanSd& v) {
  std::string s = format_compact(v.mean, 0);
  if (v.sd) s += " +/- " + format_compact(*v.sd, 0) + " SD";
  return s;
}

std::string report_table(std::span<const DesignSummary> summaries, TableFormat format) {
  const auto rows = table_rows(summaries);
  std::ostringstream out;
  if (format == TableFormat::Markdown) {
    out << "| |";
    for (const auto& s : summaries) out << ' ' << s.design.name << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < summaries.size(); ++i) out << "---|";
    out << '\n';
    for (const auto& r : rows) {
      out << "| " << r.label << " |";
      for (const auto& c : r.cells) out << ' ' << c << " |";
      out << '\n';
    }
  } else {
    out << "metric";
    for (const auto& s : summaries) out << ',' << csv_escape(s.design.name);
    out << '\n';
    for (const auto& r : rows) {
      out << csv_escape(r.label);
      for (const auto& c : r.cells) out << ',' << csv_escape(c);
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace rhombi
