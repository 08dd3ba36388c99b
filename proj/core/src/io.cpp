#include "rhombi/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "rhombi/error.hpp"

namespace rhombi {
namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Locate the failing byte as line:column.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
  }
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < -(1 << 28) || x > (1 << 28)) throw ParseError(path, "integer out of range");
  return static_cast<int>(x);
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(path, "expected a finite number");
  return x;
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(path, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ParseError(path, "expected true or false");
  return v.get<bool>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  return v;
}

void check_version(const json& doc) {
  if (!doc.is_object()) throw ParseError("", "expected a JSON object at top level");
  if (auto it = doc.find("format_version"); it != doc.end()) {
    const int v = as_int(*it, "format_version");
    if (v != kFormatVersion) throw ParseError("format_version", "unsupported version " + std::to_string(v));
  }
}

LatticePos parse_pos(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw ParseError(path, "expected [x, y, z]");
  return {as_int(v[0], index_path(path, 0)), as_int(v[1], index_path(path, 1)), as_int(v[2], index_path(path, 2))};
}

json pos_json(const LatticePos& p) { return json::array({p.x, p.y, p.z}); }

FaceDir parse_face_dir(const json& v, const std::string& path) {
  const int i = as_int(v, path);
  if (i < 0 || i >= FaceDir::kCount) throw ParseError(path, "face direction index must be in 0..11");
  return FaceDir::from_index(i);
}

Configuration parse_cells(const json& body, const std::string& path) {
  const std::string cells_path = join(path, "cells");
  const json& cells = as_array(field(body, "cells", path), cells_path);
  std::vector<Cell> out;
  std::map<LatticePos, std::size_t> seen;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string cp = index_path(cells_path, i);
    Cell c;
    c.pos = parse_pos(field(cells[i], "pos", cp), cp + ".pos");
    if (!is_valid(c.pos))
      throw ParseError(cp + ".pos", "position " + to_string(c.pos) + " has an odd coordinate sum (cell " +
                                        std::to_string(i) + ")");
    if (auto [it, inserted] = seen.emplace(c.pos, i); !inserted)
      throw ParseError(cp + ".pos", "duplicate position " + to_string(c.pos) + " (also cell " +
                                        std::to_string(it->second) + ")");
    if (auto it = cells[i].find("kind"); it != cells[i].end()) {
      const auto kind = parse_cell_kind(as_string(*it, cp + ".kind"));
      if (!kind) throw ParseError(cp + ".kind", "expected \"active\" or \"passive\"");
      c.kind = *kind;
    }
    if (auto it = cells[i].find("orient"); it != cells[i].end()) {
      const int r = as_int(*it, cp + ".orient");
      if (r < 0 || r >= Rotation::kCount) throw ParseError(cp + ".orient", "orientation index must be in 0..23");
      c.orient = Rotation::from_index(r);
    }
    out.push_back(c);
  }
  return Configuration(std::move(out));
}

json cells_json(const Configuration& c) {
  json cells = json::array();
  for (const Cell& cell : c.cells()) {
    json j = {{"pos", pos_json(cell.pos)}, {"kind", std::string(to_string(cell.kind))}};
    if (cell.orient != Rotation::identity()) j["orient"] = cell.orient.index();
    cells.push_back(std::move(j));
  }
  return cells;
}

json structure_json(const Configuration& c) { return {{"format_version", kFormatVersion}, {"cells", cells_json(c)}}; }

FaceLayout parse_face_layout(const json& v, const std::string& path) {
  const std::string mp = join(path, "magnets");
  const json& magnets = as_array(field(v, "magnets", path), mp);
  FaceLayout f;
  for (std::size_t i = 0; i < magnets.size(); ++i) {
    const std::string p = index_path(mp, i);
    const json& pos = field(magnets[i], "pos", p);
    if (!pos.is_array() || pos.size() != 2) throw ParseError(p + ".pos", "expected [u, v]");
    const std::string pol = as_string(field(magnets[i], "polarity", p), p + ".polarity");
    if (pol != "N" && pol != "S") throw ParseError(p + ".polarity", "expected \"N\" or \"S\"");
    f.magnets.push_back({{as_double(pos[0], p + ".pos[0]"), as_double(pos[1], p + ".pos[1]")},
                         pol == "N" ? Polarity::N : Polarity::S});
  }
  return f;
}

json face_layout_json(const FaceLayout& f) {
  json magnets = json::array();
  for (const auto& m : f.magnets)
    magnets.push_back({{"pos", {m.pos.x(), m.pos.y()}}, {"polarity", std::string(to_string(m.polarity))}});
  return {{"magnets", magnets}};
}

std::string trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& f : out) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

double parse_csv_number(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
    throw ParseError(where, "expected a number, got '" + text + "'");
  return v;
}

ContactType parse_contact(const std::string& s, const std::string& path) {
  if (s == "point" || s == "Point") return ContactType::Point;
  if (s == "edge" || s == "Edge") return ContactType::Edge;
  if (s == "face" || s == "Face") return ContactType::Face;
  throw ParseError(path, "expected \"point\", \"edge\" or \"face\"");
}

}  // namespace

StructureDoc parse_structure(std::string_view json_text) {
  const json doc = parse_json(json_text);
  check_version(doc);
  StructureDoc out;
  out.config = parse_cells(doc, "");
  if (auto it = doc.find("scale_cm_per_unit"); it != doc.end()) {
    out.scale_cm_per_unit = as_double(*it, "scale_cm_per_unit");
    if (*out.scale_cm_per_unit <= 0) throw ParseError("scale_cm_per_unit", "scale must be positive");
  }
  return out;
}

std::string write_structure(const StructureDoc& doc) {
  json j = structure_json(doc.config);
  if (doc.scale_cm_per_unit) j["scale_cm_per_unit"] = *doc.scale_cm_per_unit;
  return j.dump(2) + "\n";
}

CellLayout parse_layout(std::string_view json_text) {
  const json doc = parse_json(json_text);
  check_version(doc);
  CellLayout layout;
  if (auto it = doc.find("shared_face"); it != doc.end()) {
    if (doc.contains("faces")) throw ParseError("shared_face", "give either \"faces\" or \"shared_face\", not both");
    return uniform_cell_layout(parse_face_layout(*it, "shared_face"));
  }
  const json& faces = as_array(field(doc, "faces", ""), "faces");
  if (faces.size() != FaceDir::kCount) throw ParseError("faces", "expected 12 face entries");
  std::array<bool, FaceDir::kCount> seen{};
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::string p = index_path("faces", i);
    const FaceDir d = parse_face_dir(field(faces[i], "dir", p), p + ".dir");
    if (seen[d.index()]) throw ParseError(p + ".dir", "face " + std::to_string(d.index()) + " listed twice");
    seen[d.index()] = true;
    layout.faces[d.index()] = parse_face_layout(faces[i], p);
  }
  return layout;
}

std::string write_layout(const CellLayout& layout) {
  json faces = json::array();
  for (FaceDir d : FaceDir::all()) {
    json f = face_layout_json(layout.faces[d.index()]);
    f["dir"] = d.index();
    faces.push_back(std::move(f));
  }
  return json{{"format_version", kFormatVersion}, {"faces", faces}}.dump(2) + "\n";
}

std::vector<Eigen::Vector2d> parse_positions(std::string_view json_text) {
  const json doc = parse_json(json_text);
  check_version(doc);
  const json& arr = as_array(field(doc, "positions", ""), "positions");
  std::vector<Eigen::Vector2d> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = index_path("positions", i);
    if (!arr[i].is_array() || arr[i].size() != 2) throw ParseError(p, "expected [u, v]");
    out.emplace_back(as_double(arr[i][0], p + "[0]"), as_double(arr[i][1], p + "[1]"));
  }
  return out;
}

PlanDoc parse_plan(std::string_view json_text) {
  const json doc = parse_json(json_text);
  check_version(doc);
  PlanDoc out;
  out.start = parse_cells(field(doc, "start", ""), "start");
  if (auto it = doc.find("goal"); it != doc.end()) out.goal = parse_cells(*it, "goal");
  if (auto it = doc.find("matching"); it != doc.end()) {
    if (auto t = it->find("up_to_translation"); t != it->end())
      out.matching.up_to_translation = as_bool(*t, "matching.up_to_translation");
    if (auto k = it->find("kind_sensitive"); k != it->end())
      out.matching.kind_sensitive = as_bool(*k, "matching.kind_sensitive");
  }
  if (auto it = doc.find("strict_stability"); it != doc.end())
    out.move_options.strict_stability = as_bool(*it, "strict_stability");
  const json& moves = as_array(field(doc, "moves", ""), "moves");
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const std::string p = index_path("moves", i);
    PivotMove m{parse_pos(field(moves[i], "mover", p), p + ".mover"),
                parse_pos(field(moves[i], "substrate", p), p + ".substrate"),
                parse_face_dir(field(moves[i], "from", p), p + ".from"),
                parse_face_dir(field(moves[i], "to", p), p + ".to")};
    try {
      require_well_formed(m);
    } catch (const ValidationError& e) {
      throw ParseError(p, e.what());
    }
    out.moves.push_back(m);
  }
  if (auto it = doc.find("stats"); it != doc.end()) {
    SearchStats s;
    s.states_expanded = static_cast<std::size_t>(as_int(field(*it, "states_expanded", "stats"), "stats.states_expanded"));
    s.frontier_peak = static_cast<std::size_t>(as_int(field(*it, "frontier_peak", "stats"), "stats.frontier_peak"));
    out.stats = s;
  }
  return out;
}

std::string write_plan(const PlanDoc& doc) {
  json moves = json::array();
  for (const auto& m : doc.moves)
    moves.push_back({{"mover", pos_json(m.mover)},
                     {"substrate", pos_json(m.substrate)},
                     {"from", m.from.index()},
                     {"to", m.to.index()}});
  json j = {{"format_version", kFormatVersion},
            {"start", structure_json(doc.start)},
            {"matching",
             {{"up_to_translation", doc.matching.up_to_translation}, {"kind_sensitive", doc.matching.kind_sensitive}}},
            {"strict_stability", doc.move_options.strict_stability},
            {"moves", moves}};
  if (doc.goal) j["goal"] = structure_json(*doc.goal);
  if (doc.stats)
    j["stats"] = {{"states_expanded", doc.stats->states_expanded}, {"frontier_peak", doc.stats->frontier_peak}};
  return j.dump(2) + "\n";
}

PlanDoc make_plan_doc(const Configuration& start, const Plan& plan) {
  return {start, plan.moves, plan.goal, plan.matching, plan.move_options, plan.stats};
}

std::vector<Trajectory> parse_trajectories_csv(std::string_view csv_text) {
  if (csv_text.substr(0, 3) == "\xEF\xBB\xBF") csv_text.remove_prefix(3);
  std::vector<Trajectory> out;
  std::map<std::string, std::size_t> index;
  bool has_heading = false;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= csv_text.size()) {
    const std::size_t nl = csv_text.find('\n', pos);
    const std::string line = trim_cr(csv_text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? csv_text.size() + 1 : nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no);
    const auto fields = split_csv_line(line);
    if (!header_seen) {
      const std::vector<std::string> base = {"trial_id", "t", "x", "y"};
      auto with_heading = base;
      with_heading.push_back("heading");
      if (fields == base) {
        has_heading = false;
      } else if (fields == with_heading) {
        has_heading = true;
      } else {
        throw ParseError(where, "expected header trial_id,t,x,y[,heading]");
      }
      header_seen = true;
      continue;
    }
    const std::size_t expected = has_heading ? 5 : 4;
    if (fields.size() != expected)
      throw ParseError(where, "expected " + std::to_string(expected) + " fields, got " + std::to_string(fields.size()));
    if (fields[0].empty()) throw ParseError(where, "empty trial_id");
    TrajectorySample s;
    s.t = parse_csv_number(fields[1], where + ", field t");
    s.x = parse_csv_number(fields[2], where + ", field x");
    s.y = parse_csv_number(fields[3], where + ", field y");
    if (has_heading && !fields[4].empty()) s.heading = parse_csv_number(fields[4], where + ", field heading");
    auto [it, inserted] = index.try_emplace(fields[0], out.size());
    if (inserted) out.push_back({fields[0], {}});
    auto& samples = out[it->second].samples;
    if (!samples.empty() && !(s.t > samples.back().t))
      throw ParseError(where, "timestamps of trial '" + fields[0] + "' are not strictly increasing");
    samples.push_back(s);
  }
  if (!header_seen) throw ParseError("line 1", "missing header trial_id,t,x,y[,heading]");
  for (const auto& tr : out)
    if (tr.samples.size() < 2) throw ParseError("trial " + tr.trial_id, "needs at least 2 samples");
  return out;
}

std::vector<DesignSpec> parse_designs(std::string_view json_text) {
  const json doc = parse_json(json_text);
  check_version(doc);
  std::vector<const json*> items;
  std::vector<std::string> paths;
  if (auto it = doc.find("designs"); it != doc.end()) {
    as_array(*it, "designs");
    for (std::size_t i = 0; i < it->size(); ++i) {
      items.push_back(&(*it)[i]);
      paths.push_back(index_path("designs", i));
    }
  } else {
    items.push_back(&doc);
    paths.emplace_back("");
  }
  if (items.empty()) throw ParseError("designs", "no designs listed");
  std::vector<DesignSpec> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const json& d = *items[i];
    const std::string& p = paths[i];
    DesignSpec s;
    s.meta.name = as_string(field(d, "name", p), join(p, "name"));
    s.meta.passive = as_int(field(d, "passive", p), join(p, "passive"));
    s.meta.active = as_int(field(d, "active", p), join(p, "active"));
    if (s.meta.passive < 0) throw ParseError(join(p, "passive"), "must be nonnegative");
    if (s.meta.active < 1) throw ParseError(join(p, "active"), "must be at least 1");
    s.meta.body_length_cm = as_double(field(d, "body_length_cm", p), join(p, "body_length_cm"));
    s.meta.body_weight_g = as_double(field(d, "body_weight_g", p), join(p, "body_weight_g"));
    s.meta.contact = parse_contact(as_string(field(d, "contact", p), join(p, "contact")), join(p, "contact"));
    if (auto it = d.find("trials"); it != d.end()) {
      const std::string tp = join(p, "trials");
      as_array(*it, tp);
      for (std::size_t k = 0; k < it->size(); ++k) s.trial_ids.push_back(as_string((*it)[k], index_path(tp, k)));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string export_obj(const Mesh& mesh, double scale_cm_per_unit) {
  if (mesh.vertices.empty() || mesh.faces.empty()) throw ValidationError("cannot export an empty mesh");
  if (!(scale_cm_per_unit > 0) || !std::isfinite(scale_cm_per_unit))
    throw ValidationError("scale must be a positive finite number");
  std::string out;
  char buf[128];
  for (const Vec3& v : mesh.vertices) {
    const Vec3 s = v * scale_cm_per_unit;
    std::snprintf(buf, sizeof buf, "v %.6f %.6f %.6f\n", s.x() + 0.0, s.y() + 0.0, s.z() + 0.0);
    out += buf;
  }
  for (const auto& face : mesh.faces) {
    out += 'f';
    for (int i : face) out += ' ' + std::to_string(i + 1);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace rhombi
