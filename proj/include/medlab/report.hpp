#pragma once

#include <string>
#include <vector>

#include "medlab/io.hpp"

namespace medlab {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kFormatVersion = 1;

struct InputDigest {
  std::string path;
  std::string sha256;

  friend bool operator==(const InputDigest&, const InputDigest&) = default;
};

/// What every CLI command prints on standard output.
struct RunReport {
  std::string command;
  std::vector<InputDigest> inputs;
  Json results = Json::object();
  std::string tool_version = kToolVersion;
  int format_version = kFormatVersion;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

InputDigest digest_file(const std::string& path);

Json report_to_json(const RunReport& report);
RunReport report_from_json(const Json& j);

}  // namespace medlab
