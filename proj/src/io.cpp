#include "medlab/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace medlab {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::kMalformedInput, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kMalformedInput, "cannot write " + path.string());
  out << contents;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(origin + ": " + e.what());
  }
}

Json load_json(const std::filesystem::path& path) {
  return parse_json(read_file(path), path.string());
}

Json algebra_to_json(const MedianAlgebra& m) {
  Json j;
  j["ambient_dim"] = m.ambient_dim();
  Json pts = Json::array();
  for (PointId x = 0; x < m.size(); ++x) pts.push_back(m.point(x).to_string());
  j["points"] = std::move(pts);
  return j;
}

MedianAlgebra algebra_from_json(const Json& j) {
  try {
    const Json& dim_field = field(j, "ambient_dim");
    if (!dim_field.is_number_unsigned()) malformed("ambient_dim must be a non-negative integer");
    const auto dim = dim_field.get<unsigned>();
    if (dim > kMaxAmbientDim) malformed("ambient_dim exceeds 64");
    const Json& pts = field(j, "points");
    if (!pts.is_array()) malformed("points must be an array");
    std::vector<std::uint64_t> words;
    for (const auto& p : pts) {
      if (!p.is_string()) malformed("points must be bit-strings");
      const auto bv = BitVector::parse(p.get<std::string>());
      if (bv.dim() != dim) malformed("bit-string \"" + bv.to_string() + "\" has the wrong length");
      if (!words.empty() && words.back() >= bv.word()) {
        malformed("points must be lexicographically sorted without duplicates");
      }
      words.push_back(bv.word());
    }
    std::string name;
    if (j.contains("name") && j["name"].is_string()) name = j["name"].get<std::string>();
    return MedianAlgebra::from_points(dim, std::move(words), std::move(name));
  } catch (const Json::exception& e) {
    malformed(std::string("algebra: ") + e.what());
  }
}

MedianAlgebra load_algebra(const std::filesystem::path& path) {
  return algebra_from_json(load_json(path));
}

Json weights_to_json(const MedianAlgebra& m, const Measure& mu) {
  Json w = Json::object();
  for (PointId x = 0; x < mu.size(); ++x) {
    if (mu[x] != 0) w[m.point(x).to_string()] = to_string(mu[x]);
  }
  return w;
}

Measure weights_from_json(const MedianAlgebra& m, const Json& weights) {
  if (!weights.is_object()) malformed("weights must be an object");
  std::vector<Rational> w(m.size(), Rational(0));
  for (const auto& [key, value] : weights.items()) {
    const auto bv = BitVector::parse(key);
    if (bv.dim() != m.ambient_dim()) malformed("weight key \"" + key + "\" has the wrong length");
    const auto id = m.find(bv.word());
    if (!id) malformed("weight key \"" + key + "\" is not a point of the algebra");
    if (!value.is_string()) malformed("weights must be \"p/q\" strings");
    w[*id] = parse_rational(value.get<std::string>());
  }
  return Measure(std::move(w));
}

Json measure_to_json(const MedianAlgebra& m, const Measure& mu, Json algebra_ref) {
  Json j;
  j["algebra"] = std::move(algebra_ref);
  j["weights"] = weights_to_json(m, mu);
  return j;
}

MeasureFile measure_from_json(const Json& j, const std::filesystem::path& base_dir) {
  const Json& ref = field(j, "algebra");
  MedianAlgebra algebra = [&] {
    if (ref.is_object()) return algebra_from_json(ref);
    if (!ref.is_string()) malformed("algebra must be a path or an inline object");
    std::filesystem::path p = ref.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return load_algebra(p);
  }();
  Measure mu = weights_from_json(algebra, field(j, "weights"));
  return {std::move(algebra), std::move(mu)};
}

MeasureFile load_measure(const std::filesystem::path& path) {
  return measure_from_json(load_json(path), path.parent_path());
}

GroupFile group_from_json(const Json& j) {
  GroupFile g;
  try {
    if (j.contains("algebra") && j["algebra"].is_string()) g.algebra = j["algebra"].get<std::string>();
    const Json& gens = field(j, "generators");
    if (!gens.is_array()) malformed("generators must be an array");
    for (const auto& gen : gens) {
      if (!gen.is_array()) malformed("each generator must be an array of point indices");
      std::vector<PointId> perm;
      for (const auto& v : gen) {
        if (!v.is_number_unsigned()) malformed("point indices must be non-negative integers");
        perm.push_back(v.get<PointId>());
      }
      g.generators.push_back(std::move(perm));
    }
  } catch (const Json::exception& e) {
    malformed(std::string("group: ") + e.what());
  }
  return g;
}

GroupFile load_group(const std::filesystem::path& path) { return group_from_json(load_json(path)); }

TernaryTable table_from_json(const Json& j) {
  try {
    const auto n = field(j, "size").get<std::size_t>();
    const Json& t = field(j, "table");
    if (!t.is_array()) malformed("table must be an array");
    std::vector<std::uint32_t> entries;
    entries.reserve(t.size());
    for (const auto& v : t) {
      if (!v.is_number_unsigned()) malformed("table entries must be non-negative integers");
      entries.push_back(v.get<std::uint32_t>());
    }
    return TernaryTable(n, std::move(entries));
  } catch (const Json::exception& e) {
    malformed(std::string("table: ") + e.what());
  }
}

}  // namespace medlab
