#include "medlab/report.hpp"

namespace medlab {

InputDigest digest_file(const std::string& path) { return {path, sha256_hex(read_file(path))}; }

Json report_to_json(const RunReport& report) {
  Json j;
  j["command"] = report.command;
  Json inputs = Json::array();
  for (const auto& in : report.inputs) inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
  j["inputs"] = std::move(inputs);
  j["results"] = report.results;
  j["versions"] = {{"tool", report.tool_version}, {"format", report.format_version}};
  return j;
}

RunReport report_from_json(const Json& j) {
  try {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    for (const auto& in : j.at("inputs")) {
      r.inputs.push_back({in.at("path").get<std::string>(), in.at("sha256").get<std::string>()});
    }
    r.results = j.at("results");
    r.tool_version = j.at("versions").at("tool").get<std::string>();
    r.format_version = j.at("versions").at("format").get<int>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kMalformedInput, std::string("report: ") + e.what());
  }
}

}  // namespace medlab
