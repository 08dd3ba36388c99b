#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rhombi/analytics.hpp"
#include "rhombi/docking.hpp"
#include "rhombi/error.hpp"
#include "rhombi/geometry.hpp"
#include "rhombi/io.hpp"
#include "rhombi/kinematics.hpp"
#include "rhombi/planner.hpp"

namespace rhombi::cli {
namespace {

using nlohmann::json;

std::string fixed(double v, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v + 0.0);
  return buf;
}

json pos_json(const LatticePos& p) { return json::array({p.x, p.y, p.z}); }

json stats_json(const SearchStats& s) {
  return {{"states_expanded", s.states_expanded}, {"frontier_peak", s.frontier_peak}};
}

std::string describe(const ContactAlignment& a) {
  return "face " + std::to_string(a.face_a.index()) + " (orientation " + std::to_string(a.orient_a.index()) +
         ") against face " + std::to_string(a.face_b.index()) + " (orientation " +
         std::to_string(a.orient_b.index()) + ")";
}

std::string pattern_string(const PolarityPattern& p) {
  std::string s;
  for (Polarity x : p) s += to_string(x);
  return s;
}

struct Globals {
  bool json = false;
};

int run_validate(const std::string& path, const std::string& layout_path, const Globals& g, std::ostream& out) {
  const StructureDoc doc = parse_structure(read_text_file(path));
  const Configuration& c = doc.config;
  const bool connected = !c.empty() && is_connected(c);
  std::optional<bool> docks;
  if (!layout_path.empty()) {
    const CellLayout layout = parse_layout(read_text_file(layout_path));
    validate_cell_layout(layout);
    docks = configuration_docks(c, layout);
  }
  std::size_t active = 0;
  for (const Cell& cell : c.cells()) active += cell.kind == CellKind::Active;
  const bool ok = connected && docks.value_or(true);
  if (g.json) {
    json j = {{"cells", c.size()},
              {"active", active},
              {"passive", c.size() - active},
              {"adjacent_pairs", adjacent_pair_count(c)},
              {"connected", connected},
              {"valid", ok}};
    if (docks) j["docks"] = *docks;
    out << j.dump(2) << "\n";
  } else {
    out << "cells: " << c.size() << " (" << active << " active, " << c.size() - active << " passive)\n";
    out << "adjacent pairs: " << adjacent_pair_count(c) << "\n";
    out << "connected: " << (connected ? "yes" : "no") << "\n";
    if (docks) out << "docks: " << (*docks ? "yes" : "no") << "\n";
    out << (ok ? "valid\n" : "invalid\n");
  }
  return ok ? kOk : kValidationError;
}

int run_dock_check(const std::string& layout_path, bool enumerate, const std::string& positions_path, int symmetry,
                   bool per_face, bool generic, const Globals& g, std::ostream& out) {
  if (enumerate) {
    if (positions_path.empty()) throw ValidationError("--enumerate needs --positions");
    const auto positions = parse_positions(read_text_file(positions_path));
    const auto target = generic ? EnumerationTarget::GenericFace : EnumerationTarget::RhombicCell;
    const auto valid = enumerate_valid_layouts(positions, symmetry, !per_face, target);
    if (g.json) {
      json arr = json::array();
      for (const auto& p : valid) arr.push_back(pattern_string(p));
      out << json{{"symmetry", symmetry}, {"magnets", positions.size()}, {"valid", arr}}.dump(2) << "\n";
    } else {
      out << valid.size() << " valid polarity pattern(s)\n";
      for (const auto& p : valid) out << pattern_string(p) << "\n";
    }
    return kOk;
  }
  if (layout_path.empty()) throw ValidationError("dock-check needs --layout or --enumerate");
  const CellLayout layout = parse_layout(read_text_file(layout_path));
  const GenderlessReport report = validate_genderless(layout);
  if (g.json) {
    json j = {{"genderless", report.valid}, {"contacts_checked", report.contacts_checked}};
    if (report.counterexample) {
      const auto& a = *report.counterexample;
      j["counterexample"] = {{"face_a", a.face_a.index()},
                             {"orient_a", a.orient_a.index()},
                             {"face_b", a.face_b.index()},
                             {"orient_b", a.orient_b.index()}};
    }
    out << j.dump(2) << "\n";
  } else if (report.valid) {
    out << "genderless: yes (" << report.contacts_checked << " contacts checked)\n";
  } else {
    out << "genderless: no\ncounterexample: " << describe(*report.counterexample) << "\n";
  }
  return report.valid ? kOk : kValidationError;
}

int run_plan(const std::string& from, const std::string& to, const std::string& algorithm, std::size_t max_states,
             const std::string& plan_out, bool exact, bool kind_sensitive, bool strict, const Globals& g,
             std::ostream& out) {
  const Configuration start = parse_structure(read_text_file(from)).config;
  const Configuration goal = parse_structure(read_text_file(to)).config;
  PlannerOptions opts;
  opts.algorithm = algorithm == "bfs" ? SearchAlgorithm::BFS : SearchAlgorithm::AStar;
  opts.max_states = max_states;
  opts.match_up_to_translation = !exact;
  opts.kind_sensitive = kind_sensitive;
  opts.strict_stability = strict;
  const PlanResult result = plan(start, goal, opts);

  if (const auto* p = std::get_if<Plan>(&result)) {
    const PlanDoc doc = make_plan_doc(start, *p);
    if (!plan_out.empty()) write_text_file(plan_out, write_plan(doc));
    if (g.json) {
      out << write_plan(doc);
    } else {
      out << "plan found: " << p->moves.size() << " move(s), " << p->stats.states_expanded << " state(s) expanded\n";
      for (std::size_t i = 0; i < p->moves.size(); ++i) {
        const auto& m = p->moves[i];
        out << i + 1 << ": " << to_string(m.mover) << " about " << to_string(m.substrate) << " -> "
            << to_string(m.destination()) << "\n";
      }
    }
    return kOk;
  }
  if (const auto* np = std::get_if<NoPath>(&result)) {
    if (g.json)
      out << json{{"result", "NoPath"}, {"reason", std::string(to_string(np->reason))}, {"stats", stats_json(np->stats)}}
                 .dump(2)
          << "\n";
    else
      out << "no path: " << to_string(np->reason) << "\n";
    return kNoPath;
  }
  const auto& be = std::get<BudgetExhausted>(result);
  if (g.json)
    out << json{{"result", "BudgetExhausted"}, {"stats", stats_json(be.stats)}}.dump(2) << "\n";
  else
    out << "budget exhausted after " << be.stats.states_expanded << " state(s)\n";
  return kBudgetExhausted;
}

int run_replay(const std::string& path, const Globals& g, std::ostream& out) {
  const PlanDoc doc = parse_plan(read_text_file(path));
  const Configuration end = replay(doc.start, doc.moves, doc.move_options);
  std::optional<bool> reached;
  if (doc.goal) reached = matches_goal(end, *doc.goal, doc.matching);
  if (g.json) {
    json j = {{"moves", doc.moves.size()}, {"final", json::parse(write_structure({end, std::nullopt}))}};
    if (reached) j["goal_reached"] = *reached;
    out << j.dump(2) << "\n";
  } else {
    out << "replayed " << doc.moves.size() << " move(s)\n";
    if (reached) out << "goal reached: " << (*reached ? "yes" : "no") << "\n";
    out << write_structure({end, std::nullopt});
  }
  if (reached && !*reached) throw GoalMismatch("replayed plan does not reach its goal");
  return kOk;
}

Mat3 parse_axis_angle(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("--rot expects \"ax,ay,az,deg\", got '" + text + "'");
    }
  }
  if (v.size() != 4) throw ValidationError("--rot expects \"ax,ay,az,deg\", got '" + text + "'");
  return rotation_from_axis_angle({v[0], v[1], v[2]}, v[3]);
}

int run_contact(const std::string& path, const std::string& rot, double eps, const Globals& g, std::ostream& out) {
  const Configuration c = parse_structure(read_text_file(path)).config;
  const GroundContact gc = classify_ground_contact(c, parse_axis_angle(rot), {eps});
  if (g.json) {
    json pts = json::array();
    for (const Vec3& p : gc.support_points) pts.push_back({p.x() + 0.0, p.y() + 0.0, p.z() + 0.0});
    json cells = json::array();
    for (const auto& cc : gc.cells)
      if (cc.type) cells.push_back({{"pos", pos_json(cc.pos)}, {"type", std::string(to_string(*cc.type))}});
    out << json{{"type", std::string(to_string(gc.type))}, {"support_points", pts}, {"touching_cells", cells}}.dump(2)
        << "\n";
  } else {
    out << to_string(gc.type) << "\n";
    for (const Vec3& p : gc.support_points) out << fixed(p.x()) << " " << fixed(p.y()) << " " << fixed(p.z()) << "\n";
  }
  return kOk;
}

int run_analyze(const std::string& csv_path, const std::string& design_path, const std::string& format,
                const Globals& g, std::ostream& out) {
  const auto trajectories = parse_trajectories_csv(read_text_file(csv_path));
  const auto designs = parse_designs(read_text_file(design_path));
  std::map<std::string, TrialStats> stats;
  for (const auto& tr : trajectories) stats.emplace(tr.trial_id, trial_stats(tr));

  std::vector<DesignSummary> summaries;
  for (const auto& d : designs) {
    std::vector<TrialStats> trials;
    if (d.trial_ids.empty()) {
      if (designs.size() > 1) throw ValidationError("design '" + d.meta.name + "' must list its trials");
      for (const auto& tr : trajectories) trials.push_back(stats.at(tr.trial_id));
    } else {
      for (const auto& id : d.trial_ids) {
        auto it = stats.find(id);
        if (it == stats.end()) throw ValidationError("design '" + d.meta.name + "' lists unknown trial '" + id + "'");
        trials.push_back(it->second);
      }
    }
    summaries.push_back(summarize(trials, d.meta));
  }

  if (g.json) {
    json arr = json::array();
    for (const auto& s : summaries) {
      json j = {{"name", s.design.name},
                {"trials", s.trials},
                {"distance_mean", s.distance.mean},
                {"net_displacement_mean", s.net_displacement.mean},
                {"clockwise", s.clockwise},
                {"counterclockwise", s.counterclockwise},
                {"indeterminate", s.indeterminate}};
      if (s.distance.sd) j["distance_sd"] = *s.distance.sd;
      if (s.net_displacement.sd) j["net_displacement_sd"] = *s.net_displacement.sd;
      arr.push_back(std::move(j));
    }
    out << json{{"designs", arr}}.dump(2) << "\n";
  } else {
    out << report_table(summaries, format == "csv" ? TableFormat::Csv : TableFormat::Markdown);
  }
  return kOk;
}

int run_export(const std::string& path, const std::string& obj_path, std::optional<double> scale, const Globals& g,
               std::ostream& out) {
  const StructureDoc doc = parse_structure(read_text_file(path));
  const Mesh mesh = structure_mesh(doc.config);
  const double s = scale.value_or(doc.scale_cm_per_unit.value_or(1.0));
  write_text_file(obj_path, export_obj(mesh, s));
  if (g.json)
    out << json{{"vertices", mesh.vertices.size()}, {"faces", mesh.faces.size()}, {"watertight", is_watertight(mesh)}}
               .dump(2)
        << "\n";
  else
    out << "wrote " << obj_path << ": " << mesh.vertices.size() << " vertices, " << mesh.faces.size() << " faces\n";
  return kOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"rhombikit: rhombic dodecahedral modular robot toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON output");

  std::function<int()> action;

  auto* validate = app.add_subcommand("validate", "Check a structure file (lattice and connectivity)");
  std::string structure_path, layout_path;
  validate->add_option("structure", structure_path, "Structure JSON")->required();
  validate->add_option("--layout", layout_path, "Also check docking with this magnet layout");
  validate->add_flag("--json", g.json);
  validate->callback([&] { action = [&] { return run_validate(structure_path, layout_path, g, out); }; });

  auto* dock = app.add_subcommand("dock-check", "Check or enumerate genderless magnet layouts");
  std::string positions_path;
  bool enumerate = false, per_face = false, generic = false;
  int symmetry = 2;
  dock->add_option("--layout", layout_path, "Layout JSON to check");
  dock->add_flag("--enumerate", enumerate, "Enumerate valid polarity patterns");
  dock->add_option("--positions", positions_path, "Magnet positions JSON (with --enumerate)");
  dock->add_option("--symmetry", symmetry, "Rotational symmetry order k of the face");
  dock->add_flag("--per-face", per_face, "Allow a different pattern on every face");
  dock->add_flag("--generic", generic, "Single-face check for any k-fold symmetric face");
  dock->add_flag("--json", g.json);
  dock->callback([&] {
    action = [&] {
      return run_dock_check(layout_path, enumerate, positions_path, symmetry, per_face, generic, g, out);
    };
  });

  auto* plan_cmd = app.add_subcommand("plan", "Find a shortest pivot sequence between two structures");
  std::string from_path, to_path, algorithm = "astar", plan_out;
  std::size_t max_states = 1'000'000;
  bool exact = false, kind_sensitive = false, strict = false;
  plan_cmd->add_option("--from", from_path, "Start structure JSON")->required();
  plan_cmd->add_option("--to", to_path, "Goal structure JSON")->required();
  plan_cmd->add_option("--algorithm", algorithm, "bfs or astar")->check(CLI::IsMember({"bfs", "astar"}));
  plan_cmd->add_option("--max-states", max_states, "Expansion budget")->check(CLI::PositiveNumber);
  plan_cmd->add_option("--plan-out", plan_out, "Write the plan JSON here");
  plan_cmd->add_flag("--exact-position", exact, "Match the goal without translation");
  plan_cmd->add_flag("--kind-sensitive", kind_sensitive, "Require active/passive kinds to match");
  plan_cmd->add_flag("--strict", strict, "Require support at the destination");
  plan_cmd->add_flag("--json", g.json);
  plan_cmd->callback([&] {
    action = [&] {
      return run_plan(from_path, to_path, algorithm, max_states, plan_out, exact, kind_sensitive, strict, g, out);
    };
  });

  auto* replay_cmd = app.add_subcommand("replay", "Replay a plan file and report the final structure");
  std::string plan_path;
  replay_cmd->add_option("--plan", plan_path, "Plan JSON")->required();
  replay_cmd->add_flag("--json", g.json);
  replay_cmd->callback([&] { action = [&] { return run_replay(plan_path, g, out); }; });

  auto* contact = app.add_subcommand("contact", "Classify ground contact of a rotated structure");
  std::string rot;
  double eps = ContactOptions{}.eps_z;
  contact->add_option("--structure", structure_path, "Structure JSON")->required();
  contact->add_option("--rot", rot, "Axis-angle rotation \"ax,ay,az,deg\"")->required();
  contact->add_option("--eps", eps, "Contact tolerance in canonical units")->check(CLI::PositiveNumber);
  contact->add_flag("--json", g.json);
  contact->callback([&] { action = [&] { return run_contact(structure_path, rot, eps, g, out); }; });

  auto* analyze = app.add_subcommand("analyze", "Summarize locomotion trials per design");
  std::string csv_path, design_path, format = "md";
  analyze->add_option("--csv", csv_path, "Trajectory CSV")->required();
  analyze->add_option("--design", design_path, "Design metadata JSON")->required();
  analyze->add_option("--format", format, "md or csv")->check(CLI::IsMember({"md", "csv"}));
  analyze->add_flag("--json", g.json);
  analyze->callback([&] { action = [&] { return run_analyze(csv_path, design_path, format, g, out); }; });

  auto* export_cmd = app.add_subcommand("export", "Write the structure surface as Wavefront OBJ");
  std::string obj_path;
  std::optional<double> scale;
  export_cmd->add_option("--structure", structure_path, "Structure JSON")->required();
  export_cmd->add_option("--obj", obj_path, "Output OBJ path")->required();
  export_cmd->add_option("--scale", scale, "cm per canonical unit (default: file value or 1)")
      ->check(CLI::PositiveNumber);
  export_cmd->add_flag("--json", g.json);
  export_cmd->callback([&] { action = [&] { return run_export(structure_path, obj_path, scale, g, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    return action();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const IllegalMove& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const PairingError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const UnsupportedSymmetry& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
}

}  // namespace rhombi::cli
