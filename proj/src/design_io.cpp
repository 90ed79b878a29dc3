#include "oudesign/design_io.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "oudesign/rng.hpp"
#include "oudesign/version.hpp"

namespace oudesign {

namespace {

using nlohmann::json;

// nlohmann reports byte offsets; translate to line:column for messages.
std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::vector<Point> parse_points(const json& node) {
  if (!node.is_array() || node.empty())
    throw ParseError("'points' must be a nonempty array of [s, t] pairs");
  std::vector<Point> points;
  points.reserve(node.size());
  for (const auto& entry : node) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number())
      throw ParseError("each point must be a numeric [s, t] pair");
    points.push_back({entry[0].get<double>(), entry[1].get<double>()});
  }
  return points;
}

std::vector<double> parse_numbers(const json& node, const char* name) {
  if (!node.is_array())
    throw ParseError(std::string("'") + name + "' must be an array of numbers");
  std::vector<double> values;
  values.reserve(node.size());
  for (const auto& entry : node) {
    if (!entry.is_number())
      throw ParseError(std::string("'") + name + "' must contain only numbers");
    values.push_back(entry.get<double>());
  }
  return values;
}

// A point list forms a grid iff it is exactly the product of its distinct
// coordinates.
GridDesign grid_from_points(const std::vector<Point>& points) {
  std::vector<double> t_coords, s_coords;
  for (const Point& p : points) {
    t_coords.push_back(p.t);
    s_coords.push_back(p.s);
  }
  auto dedup = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(t_coords);
  dedup(s_coords);
  if (t_coords.size() * s_coords.size() != points.size())
    throw ParseError("point list does not form a full grid");
  GridDesign grid(t_coords, s_coords);
  std::vector<Point> expected = grid.points();
  std::vector<Point> got = points;
  auto order = [](const Point& a, const Point& b) {
    return a.t < b.t || (a.t == b.t && a.s < b.s);
  };
  std::sort(expected.begin(), expected.end(), order);
  std::sort(got.begin(), got.end(), order);
  if (expected != got) throw ParseError("point list does not form a full grid");
  return grid;
}

json points_to_json(const std::vector<Point>& points) {
  json out = json::array();
  for (const Point& p : points) out.push_back(json::array({p.s, p.t}));
  return out;
}

}  // namespace

AnyDesign parse_design_json(const std::string& text,
                            bool allow_nonpositive_origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("JSON parse error at " + locate(text, e.byte) + ": " +
                     e.what());
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
    throw ParseError("design file must be an object with a 'type' string");
  const std::string type = doc["type"].get<std::string>();

  if (type == "monotone") {
    if (doc.contains("points")) {
      const std::vector<Point> points = parse_points(doc["points"]);
      return MonotoneDesign::from_points(points, allow_nonpositive_origin);
    }
    if (doc.contains("origin") && doc.contains("d") && doc.contains("delta")) {
      const std::vector<double> origin = parse_numbers(doc["origin"], "origin");
      if (origin.size() != 2)
        throw ParseError("'origin' must be an [s1, t1] pair");
      return MonotoneDesign::from_increments(
          {origin[0], origin[1]}, parse_numbers(doc["d"], "d"),
          parse_numbers(doc["delta"], "delta"), allow_nonpositive_origin);
    }
    throw ParseError(
        "monotone design needs either 'points' or 'origin'/'d'/'delta'");
  }
  if (type == "grid") {
    if (doc.contains("t_coords") && doc.contains("s_coords"))
      return GridDesign(parse_numbers(doc["t_coords"], "t_coords"),
                        parse_numbers(doc["s_coords"], "s_coords"));
    if (doc.contains("points"))
      return grid_from_points(parse_points(doc["points"]));
    throw ParseError("grid design needs 't_coords'/'s_coords' or 'points'");
  }
  if (type == "scattered") {
    if (!doc.contains("points"))
      throw ParseError("scattered design needs 'points'");
    return ScatteredDesign(parse_points(doc["points"]));
  }
  throw ParseError("unknown design type '" + type + "'");
}

AnyDesign read_design_file(const std::string& path,
                           bool allow_nonpositive_origin) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open design file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_design_json(buffer.str(), allow_nonpositive_origin);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string design_to_json(const AnyDesign& design) {
  json doc;
  if (const auto* monotone = std::get_if<MonotoneDesign>(&design)) {
    doc["type"] = "monotone";
    doc["origin"] = json::array({monotone->origin().s, monotone->origin().t});
    doc["d"] = monotone->d();
    doc["delta"] = monotone->delta();
  } else if (const auto* grid = std::get_if<GridDesign>(&design)) {
    doc["type"] = "grid";
    doc["t_coords"] = grid->t_coords();
    doc["s_coords"] = grid->s_coords();
  } else {
    doc["type"] = "scattered";
    doc["points"] = points_to_json(std::get<ScatteredDesign>(design).points());
  }
  return doc.dump(2) + "\n";
}

void write_design_file(const std::string& path, const AnyDesign& design) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write design file '" + path + "'");
  out << design_to_json(design);
}

const char* design_kind(const AnyDesign& design) {
  if (std::holds_alternative<MonotoneDesign>(design)) return "monotone";
  if (std::holds_alternative<GridDesign>(design)) return "grid";
  return "scattered";
}

std::size_t design_size(const AnyDesign& design) {
  return std::visit([](const auto& d) { return d.size(); }, design);
}

std::vector<Point> design_points(const AnyDesign& design) {
  return std::visit([](const auto& d) { return d.points(); }, design);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

RunManifest make_manifest(const std::string& command) {
  RunManifest manifest;
  manifest.command = command;
  manifest.tool_version = kVersion;
  const auto now = std::chrono::system_clock::now();
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  char buffer[32];
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  manifest.timestamp = buffer;
  return manifest;
}

void manifest_add_input_file(RunManifest& manifest, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(buffer.str())));
  manifest.input_hashes.emplace_back(path, hex);
}

void write_manifest_header(std::ostream& out, const RunManifest& manifest) {
  out << "# command: " << manifest.command << "\n";
  out << "# tool_version: " << manifest.tool_version << "\n";
  out << "# timestamp: " << manifest.timestamp << "\n";
  for (const auto& [key, value] : manifest.parameters)
    out << "# param " << key << ": " << value << "\n";
  for (const auto& [path, hash] : manifest.input_hashes)
    out << "# input " << path << ": fnv1a64:" << hash << "\n";
  if (!manifest.seeds.empty()) {
    out << "# seeds:";
    for (std::uint64_t seed : manifest.seeds) out << ' ' << seed;
    out << "\n";
    out << "# generator: " << kGeneratorName << "\n";
    out << "# normal_variates: " << kNormalVariateMethod << "\n";
  }
}

void write_manifest_sidecar(const std::string& output_path,
                            const RunManifest& manifest) {
  std::ofstream out(output_path + ".manifest", std::ios::binary);
  if (!out) throw Error("cannot write manifest for '" + output_path + "'");
  write_manifest_header(out, manifest);
}

}  // namespace oudesign
