#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "oudesign/model.hpp"

namespace oudesign {

using AnyDesign = std::variant<MonotoneDesign, GridDesign, ScatteredDesign>;

// Design file format (JSON):
//   {"type": "monotone", "points": [[s, t], ...]}
//   {"type": "monotone", "origin": [s1, t1], "d": [...], "delta": [...]}
//   {"type": "grid", "t_coords": [...], "s_coords": [...]}
//   {"type": "grid", "points": [[s, t], ...]}        (must form a full grid)
//   {"type": "scattered", "points": [[s, t], ...]}
// Covariance parameters are never stored in design files.
AnyDesign parse_design_json(const std::string& text,
                            bool allow_nonpositive_origin = false);
AnyDesign read_design_file(const std::string& path,
                           bool allow_nonpositive_origin = false);

std::string design_to_json(const AnyDesign& design);
void write_design_file(const std::string& path, const AnyDesign& design);

const char* design_kind(const AnyDesign& design);
std::size_t design_size(const AnyDesign& design);
std::vector<Point> design_points(const AnyDesign& design);

// FNV-1a over raw bytes; used to fingerprint input files in manifests.
std::uint64_t fnv1a64(const std::string& bytes);

// Provenance header attached to every emitted result file ('#'-prefixed
// lines for CSV, a sidecar file for JSON outputs).
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::pair<std::string, std::string>> input_hashes;
  std::string tool_version;
  std::vector<std::uint64_t> seeds;
  std::string timestamp;  // ISO-8601 UTC
};

RunManifest make_manifest(const std::string& command);
void manifest_add_input_file(RunManifest& manifest, const std::string& path);
void write_manifest_header(std::ostream& out, const RunManifest& manifest);
void write_manifest_sidecar(const std::string& output_path,
                            const RunManifest& manifest);

}  // namespace oudesign
