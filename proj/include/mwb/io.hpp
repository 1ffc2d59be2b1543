#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mwb/associative_algebra.hpp"
#include "mwb/curvature.hpp"
#include "mwb/linfty.hpp"

namespace mwb {

using Json = nlohmann::ordered_json;

/// Canonical serialization: two-space indent, trailing newline.
std::string dump(const Json& json);

struct InputFile {
  std::string path;
  std::string bytes;
  Json json;
};

/// Reads and parses a JSON file; errors name the path and the parser position.
InputFile load_input(const std::string& path);

/// Associative algebra file:
///   {"kind": "associative-algebra", "basis": [names], "unit": ["p/q", ...],
///    "products": [[i, j, k, "p/q"], ...]}
AssociativeAlgebra parse_algebra(const Json& json);
Json to_json(const AssociativeAlgebra& algebra);

/// L∞ or DG Lie file:
///   {"kind": "linfty" | "dgla", "generators": [{"name": .., "degree": ..}],
///    "differential": [{"input": name, "value": [[name, "p/q"], ...]}],
///    "brackets": [{"inputs": [names], "value": [[name, "p/q"], ...]}]}
/// "dgla" additionally checks d² = 0, Leibniz and Jacobi.
struct LInftyFile {
  std::string kind;
  LInftyStructure structure;
};
LInftyFile parse_linfty(const Json& json);
Json to_json(const LInftyFile& file);

/// Paired space file; generators are named v1, v2, ... in order:
///   {"kind": "paired-space", "generators": [{"degree": d, "multiplicity": m}],
///    "pairing_degree": k, "pairing": [[i, j, "p/q"], ...]}
PairedSpace parse_paired_space(const Json& json);
Json to_json(const PairedSpace& space);

/// Manifold file; generators are named h<i> or h<i>_<j> for degree -i:
///   {"kind": "manifold", "n": n, "parallelizable": bool,
///    "homology": [{"degree": d, "multiplicity": m}], "pairing": [[i, j, "p/q"], ...]}
/// Parallelizability is recorded, never checked.
struct ManifoldFile {
  ManifoldData manifold;
  bool parallelizable = true;
};
ManifoldFile parse_manifold(const Json& json);
Json to_json(const ManifoldFile& file);

struct ReportTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Deterministic run report with a JSON twin. Wall time appears only when set.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
  std::vector<std::pair<std::string, std::string>> conventions;
  std::vector<std::pair<std::string, std::string>> results;
  std::vector<ReportTable> tables;
  std::vector<std::string> notes;
  std::string status = "ok";
  std::optional<double> wall_ms;

  std::string to_text() const;
  Json to_json() const;
};

}  // namespace mwb
