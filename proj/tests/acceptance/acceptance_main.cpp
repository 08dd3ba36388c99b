// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails or runs over its time limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <Eigen/Geometry>

#include "oracles.hpp"
#include "rhombi/analytics.hpp"
#include "rhombi/docking.hpp"
#include "rhombi/geometry.hpp"
#include "rhombi/io.hpp"
#include "rhombi/kinematics.hpp"
#include "rhombi/planner.hpp"

using namespace rhombi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message; later checks still run.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      first_failure_ = what;
    }
  }
  Outcome done(const std::string& summary) const { return {pass_, pass_ ? summary : first_failure_}; }

 private:
  bool pass_ = true;
  std::string first_failure_;
};

std::string num(double v, int precision = 9) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

Outcome packing_density_check() {
  Checker c;
  const double expected = std::numbers::pi / std::sqrt(18.0);
  const double got = packing_density();
  c.expect(std::abs(got - expected) <= 1e-9, "density " + num(got) + " != pi/sqrt(18)");
  c.expect(got > 0.74, "density not above 74%");
  return c.done("density " + num(got, 7));
}

Outcome coordination_number() {
  Checker c;
  std::mt19937 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const LatticePos p = oracle::random_site(rng, 1000);
    const auto n = neighbors(p);
    const std::set<LatticePos> distinct(n.begin(), n.end());
    bool all_adjacent = true;
    for (const auto& q : distinct) all_adjacent = all_adjacent && oracle::touching(p, q) && is_valid(q);
    c.expect(distinct.size() == 12 && all_adjacent, "bad neighbor set at " + to_string(p));
  }
  return c.done("1000 random sites, 12 distinct neighbors each");
}

Outcome pivot_angle() {
  Checker c;
  c.expect(std::abs(dihedral_angle() - 120.0) <= 1e-9, "dihedral angle " + num(dihedral_angle()));
  int pairs = 0;
  for (FaceDir from : FaceDir::all())
    for (FaceDir to : FaceDir::all()) {
      if (from.dot(to) != 1) continue;
      ++pairs;
      const Rotation r = pivot_rotation(PivotMove::about({0, 0, 0}, from, to));
      c.expect(r.order() == 3 && r.trace() == 0,
               "pivot " + std::to_string(from.index()) + "->" + std::to_string(to.index()) + " has order " +
                   std::to_string(r.order()) + ", trace " + std::to_string(r.trace()));
    }
  c.expect(pairs == 48, "expected 48 pivot pairs, found " + std::to_string(pairs));
  return c.done("dihedral 120 deg; 48 pivots of order 3, trace 0");
}

Outcome four_shared_edges() {
  Checker c;
  const Mesh& mesh = canonical_cell_mesh();
  // Edge incidence straight from the face loops.
  std::map<std::pair<int, int>, std::vector<int>> edge_faces;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& loop = mesh.faces[f];
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const int a = loop[i], b = loop[(i + 1) % loop.size()];
      edge_faces[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(f));
    }
  }
  for (FaceDir d : FaceDir::all()) {
    std::set<int> from_mesh;
    for (const auto& [edge, faces] : edge_faces)
      if (faces.size() == 2 && (faces[0] == d.index() || faces[1] == d.index()))
        from_mesh.insert(faces[0] == d.index() ? faces[1] : faces[0]);
    std::set<int> from_lattice;
    for (FaceDir e : pivot_destinations(d)) from_lattice.insert(e.index());
    c.expect(from_lattice.size() == 4, "face " + std::to_string(d.index()) + " has " +
                                           std::to_string(from_lattice.size()) + " pivot destinations");
    c.expect(from_lattice == from_mesh, "face " + std::to_string(d.index()) + " disagrees with mesh edges");
  }
  return c.done("12 faces x 4 destinations, equal to mesh edge incidence");
}

Outcome lattice_distance_sweep() {
  Checker c;
  const auto dist = oracle::bfs_distances(4);
  for (const auto& [p, d] : dist)
    c.expect(lattice_distance({0, 0, 0}, p) == d, "distance to " + to_string(p) + " differs from BFS");
  c.expect(dist.size() == 365, "expected 365 even-sum offsets, got " + std::to_string(dist.size()));
  return c.done(std::to_string(dist.size()) + " offsets match BFS");
}

Outcome docking() {
  Checker c;
  const auto positions = rhombic_magnet_positions();
  const auto valid = enumerate_valid_layouts(positions, 2, true);
  c.expect(!valid.empty(), "no valid layout among 16 patterns");
  for (const auto& p : valid) {
    const GenderlessReport r = validate_genderless(layout_from_pattern(positions, p));
    c.expect(r.valid && r.contacts_checked == 12u * 24 * 24, "enumerated pattern fails the exhaustive check");
    PolarityPattern inv = p;
    for (auto& x : inv) x = flip(x);
    c.expect(std::find(valid.begin(), valid.end(), inv) != valid.end(), "valid set not closed under inversion");
  }
  const PolarityPattern all_n(positions.size(), Polarity::N);
  const GenderlessReport bad = validate_genderless(layout_from_pattern(positions, all_n));
  c.expect(!bad.valid && bad.counterexample.has_value(), "all-N pattern not rejected with a counterexample");
  c.expect(std::find(valid.begin(), valid.end(), all_n) == valid.end(), "all-N pattern enumerated as valid");
  return c.done(std::to_string(valid.size()) + " of 16 patterns valid, each over 6912 contacts");
}

Outcome planner_optimality() {
  Checker c;
  std::size_t instances = 0, solvable = 0, moves_replayed = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const oracle::ShapeGraph graph(oracle::connected_shapes(n, 2));
    for (std::size_t i = 0; i < graph.size(); ++i) {
      const auto dist = graph.distances_from(i);
      const auto start = Configuration::from_positions(graph.shape(i));
      for (std::size_t j = 0; j < graph.size(); ++j) {
        ++instances;
        const auto goal = Configuration::from_positions(graph.shape(j));
        const PlanResult r = plan(start, goal);
        if (dist[j] < 0) {
          const auto* np = std::get_if<NoPath>(&r);
          c.expect(np != nullptr && np->reason == NoPathReason::Unreachable, "unsolvable instance not reported");
          continue;
        }
        ++solvable;
        const auto* p = std::get_if<Plan>(&r);
        if (p == nullptr) {
          c.expect(false, "no plan for a solvable instance");
          continue;
        }
        c.expect(static_cast<int>(p->moves.size()) == dist[j],
                 "A* length " + std::to_string(p->moves.size()) + " != BFS " + std::to_string(dist[j]));
        Configuration cur = start;
        for (const auto& m : p->moves) {
          cur = apply_move(cur, m);
          c.expect(is_connected(cur), "intermediate configuration disconnected");
          ++moves_replayed;
        }
        c.expect(matches_goal(cur, goal, p->matching), "plan does not reach its goal");
      }
    }
  }
  return c.done(std::to_string(solvable) + " solvable of " + std::to_string(instances) + " instances optimal, " +
                std::to_string(moves_replayed) + " moves replayed");
}

Trajectory circle(double r, double step_deg, bool ccw) {
  Trajectory tr{"circle", {}};
  const int n = static_cast<int>(std::lround(360.0 / step_deg));
  for (int i = 0; i <= n; ++i) {
    const double a = (ccw ? 1 : -1) * i * step_deg * std::numbers::pi / 180.0;
    tr.samples.push_back({i * 0.1, r * std::cos(a), r * std::sin(a), std::nullopt});
  }
  return tr;
}

Outcome analytics() {
  Checker c;
  std::mt19937 rng(3);
  std::normal_distribution<double> step(0.0, 2.0);
  for (int t = 0; t < 10000; ++t) {
    Trajectory tr{"r", {}};
    double x = 0, y = 0;
    for (int i = 0; i < 50; ++i) {
      tr.samples.push_back({double(i), x, y, {}});
      x += step(rng);
      y += step(rng);
    }
    c.expect(path_length(tr) + 1e-9 >= net_displacement(tr), "path shorter than displacement");
  }
  const double len = path_length(circle(20, 1, true));
  const double expected = 2 * std::numbers::pi * 20;
  c.expect(std::abs(len - expected) <= 1e-3 * expected, "circle length " + num(len));
  c.expect(rotation_direction(circle(20, 1, true)) == TurnDirection::CCW, "CCW circle misclassified");
  c.expect(rotation_direction(circle(20, 1, false)) == TurnDirection::CW, "CW circle misclassified");
  c.expect(format_ratio(7, 3) == "2.33 to 1", "ratio 7/3 formatted as " + format_ratio(7, 3));

  const double d = 34.0 * std::sqrt(5.0 / 6.0);
  std::vector<TrialStats> trials;
  for (int i = 0; i < 6; ++i) trials.push_back({"a", 126 + (i % 2 ? -d : d), 6.0, TurnDirection::CW, 60});
  const DesignSummary s = summarize(trials, {"Design A", 7, 3, 21, 252, ContactType::Face});
  const std::vector<DesignSummary> one = {s};
  const std::string table = report_table(one, TableFormat::Markdown);
  c.expect(table.find("126 +/- 34") != std::string::npos, "six-trial fixture not rendered as 126 +/- 34");
  c.expect(table.find("2.33 to 1") != std::string::npos, "table ratio row missing 2.33 to 1");
  return c.done("circle " + num(len, 6) + " cm vs " + num(expected, 6) + "; table formatting matches");
}

Outcome contact_classes() {
  Checker c;
  const auto one = Configuration::from_positions(std::vector<LatticePos>{{0, 0, 0}});
  const Vec3 down(0, 0, -1);
  c.expect(classify_ground_contact(one, Mat3::Identity()).type == ContactType::Point, "identity is not Point");
  c.expect(classify_ground_contact(one, rotation_aligning(Vec3(1, 1, 0).normalized(), down)).type ==
               ContactType::Face,
           "face-down is not Face");
  c.expect(classify_ground_contact(one, rotation_aligning(Vec3(2, 1, 1).normalized(), down)).type ==
               ContactType::Edge,
           "edge-down is not Edge");
  std::mt19937 rng(4);
  std::normal_distribution<double> g;
  std::map<ContactType, int> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto cells = oracle::random_connected(rng, 1 + i % 5);
    const Mat3 rot = Eigen::Quaterniond(g(rng), g(rng), g(rng), g(rng)).normalized().toRotationMatrix();
    const ContactType t = classify_ground_contact(Configuration::from_positions(cells), rot).type;
    c.expect(t == ContactType::Point || t == ContactType::Edge || t == ContactType::Face, "unknown class");
    ++seen[t];
  }
  return c.done("Point/Edge/Face fixtures correct; 1000 random orientations classified");
}

Outcome mesh_export() {
  Checker c;
  auto faces_in = [](const std::string& obj) {
    std::size_t n = 0;
    std::istringstream in(obj);
    for (std::string line; std::getline(in, line);) n += line.rfind("f ", 0) == 0;
    return n;
  };
  const auto two = Configuration::from_positions(std::vector<LatticePos>{{0, 0, 0}, {1, 1, 0}});
  c.expect(faces_in(export_obj(structure_mesh(two))) == 22, "2-cell export does not have 22 faces");
  std::mt19937 rng(6);
  for (int i = 0; i < 200; ++i) {
    const auto cfg = Configuration::from_positions(oracle::random_connected(rng, 1 + i % 20));
    const std::string obj = export_obj(structure_mesh(cfg));
    c.expect(faces_in(obj) == 12 * cfg.size() - 2 * adjacent_pair_count(cfg), "face count identity fails");
    c.expect(export_obj(structure_mesh(cfg)) == obj, "export is not byte-deterministic");
  }
  return c.done("22 faces for 2 cells; 200 random structures satisfy 12n - 2e");
}

struct Criterion {
  const char* id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "packing density", 1.0, packing_density_check},
      {"AC2", "coordination number", 1.0, coordination_number},
      {"AC3", "pivot angle", 1.0, pivot_angle},
      {"AC4", "four shared edges", 1.0, four_shared_edges},
      {"AC5", "lattice distance", 5.0, lattice_distance_sweep},
      {"AC6", "genderless docking", 60.0, docking},
      {"AC7", "planner optimality", 300.0, planner_optimality},
      {"AC8", "analytics", 60.0, analytics},
      {"AC9", "contact classification", 60.0, contact_classes},
      {"AC10", "mesh export", 60.0, mesh_export},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > cr.limit_seconds) o = {false, "took " + num(secs, 3) + " s, limit " + num(cr.limit_seconds) + " s"};
    failures += !o.pass;
    std::printf("%-4s %s  %-24s %8.3f s  %s\n", cr.id, o.pass ? "PASS" : "FAIL", cr.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
