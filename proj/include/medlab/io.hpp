#pragma once

// File formats (UTF-8 JSON):
//   algebra  {"ambient_dim": d, "points": ["0101", ...]}   sorted, no duplicates
//   measure  {"algebra": <path or inline algebra>, "weights": {"0101": "3/16", ...}}
//   group    {"algebra": <path>, "generators": [[0, 2, 1, 3], ...]}
//   table    {"size": n, "table": [n^3 entries, index (x*n + y)*n + z]}

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "medlab/algebra.hpp"
#include "medlab/measures.hpp"

namespace medlab {

using Json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);
std::string sha256_hex(const std::string& bytes);

/// Throws kMalformedInput on syntax errors.
Json parse_json(const std::string& text, const std::string& origin);
Json load_json(const std::filesystem::path& path);

Json algebra_to_json(const MedianAlgebra& m);
/// Re-validates everything: bit-string lengths, order, duplicates, closure.
MedianAlgebra algebra_from_json(const Json& j);
MedianAlgebra load_algebra(const std::filesystem::path& path);

/// Only non-zero weights are written.
Json weights_to_json(const MedianAlgebra& m, const Measure& mu);
Measure weights_from_json(const MedianAlgebra& m, const Json& weights);
Json measure_to_json(const MedianAlgebra& m, const Measure& mu, Json algebra_ref);

struct MeasureFile {
  MedianAlgebra algebra;
  Measure measure;
};

/// Relative algebra paths resolve against `base_dir`.
MeasureFile measure_from_json(const Json& j, const std::filesystem::path& base_dir);
MeasureFile load_measure(const std::filesystem::path& path);

struct GroupFile {
  std::string algebra;
  std::vector<std::vector<PointId>> generators;
};

GroupFile group_from_json(const Json& j);
GroupFile load_group(const std::filesystem::path& path);

TernaryTable table_from_json(const Json& j);

}  // namespace medlab
