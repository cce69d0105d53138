#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "medlab/cli.hpp"
#include "medlab/error.hpp"
#include "medlab/io.hpp"
#include "medlab/report.hpp"
#include "test_support.hpp"

using namespace medlab;
using namespace medlab::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;

  Json json() const { return parse_json(out, "stdout"); }
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(MEDLAB_BINARY_DIR) / "cli_io_work" /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    write_file(path(name), text);
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenCubeThenCertificate) {
  const auto gen = cli({"gen", "hypercube", "3", "-o", path("cube3.json")});
  ASSERT_EQ(gen.code, 0) << gen.err;
  EXPECT_EQ(gen.json()["results"]["size"], 8);

  const auto cube = cli({"cube", path("cube3.json")});
  ASSERT_EQ(cube.code, 0) << cube.err;
  const Json j = cube.json();
  EXPECT_EQ(j["command"], "cube");
  EXPECT_TRUE(j["results"]["is_cube"].get<bool>());
  EXPECT_EQ(j["results"]["certificate"]["walls"].size(), 3U);
  EXPECT_EQ(j["results"]["certificate"]["iso"].size(), 8U);
  EXPECT_EQ(j["inputs"][0]["sha256"], sha256_hex(read_file(path("cube3.json"))));
  EXPECT_EQ(j["versions"]["format"], kFormatVersion);
}

TEST_F(CliTest, NotCubeIsAResult) {
  ASSERT_EQ(cli({"gen", "grid", "2", "3", "-o", path("grid.json")}).code, 0);
  const auto r = cli({"cube", path("grid.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(r.json()["results"]["is_cube"].get<bool>());
  EXPECT_TRUE(r.json()["results"]["not_cube"].contains("cardinality"));
}

TEST_F(CliTest, WallsReport) {
  ASSERT_EQ(cli({"gen", "tree", "--edges", "0-1,1-2,1-3", "-o", path("t.json")}).code, 0);
  const auto r = cli({"--pretty", "walls", path("t.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["results"];
  EXPECT_EQ(res["wall_count"], 3);
  for (const auto& w : res["walls"]) {
    EXPECT_EQ(w["positive_size"].get<int>() + w["negative_size"].get<int>(), 4);
  }
  EXPECT_NE(r.err.find("wall"), std::string::npos);
}

TEST_F(CliTest, FormulasAgree) {
  const auto r = cli({"formulas", "--n-max", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["results"];
  EXPECT_TRUE(res["all_agree"].get<bool>());
  ASSERT_EQ(res["rows"].size(), 7U);
  for (const auto& row : res["rows"]) {
    EXPECT_TRUE(row["agree"].get<bool>());
    EXPECT_EQ(row["bruteforce"], row["recurrence"]);
    EXPECT_EQ(row["closed_form"], row["recurrence"]);
  }
  EXPECT_EQ(res["rows"][0]["closed_form"], Json::parse("[1,3,0,0]"));
  EXPECT_EQ(res["rows"][4]["conjugation"], true);
  EXPECT_TRUE(res["rows"][5]["conjugation"].is_null());
}

TEST_F(CliTest, FormulasCsv) {
  const auto r = cli({"formulas", "--n-max", "3", "--csv"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "n,method,a0,a1,a2,a3,agree,fixed_points,conjugation");
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 9);
  EXPECT_NE(r.out.find("3,closed_form,10,30,18,6,yes,1/2,ok"), std::string::npos);
}

TEST_F(CliTest, BalancePathAllCubical) {
  ASSERT_EQ(cli({"gen", "tree", "--edges", "0-1,1-2", "-o", path("path3.json")}).code, 0);
  const auto r = cli({"balance", path("path3.json"), "--starts", "10", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["results"];
  ASSERT_EQ(res["records"].size(), 10U);
  std::uint64_t expected_seed = 1;
  for (const auto& rec : res["records"]) {
    EXPECT_EQ(rec["start_seed"], expected_seed++);
    for (const char* key : {"converged", "iterations", "residual", "snapped", "cubical", "cube_dim"}) {
      EXPECT_TRUE(rec.contains(key)) << key;
    }
    if (rec["snapped"].get<bool>()) EXPECT_TRUE(rec["cubical"].get<bool>());
  }
  EXPECT_EQ(res["summary"]["non_cubical"], 0);
}

TEST_F(CliTest, BalanceIsDeterministicAcrossJobs) {
  ASSERT_EQ(cli({"gen", "grid", "3", "3", "-o", path("g.json")}).code, 0);
  const auto a = cli({"balance", path("g.json"), "--starts", "6", "--seed", "4"});
  const auto b = cli({"balance", path("g.json"), "--starts", "6", "--seed", "4"});
  const auto c = cli({"--jobs", "3", "balance", path("g.json"), "--starts", "6", "--seed", "4"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  const auto d = cli({"balance", path("g.json"), "--starts", "6", "--seed", "5"});
  EXPECT_NE(a.out, d.out);
}

TEST_F(CliTest, GenIsDeterministicAndRoundTrips) {
  const auto a = cli({"gen", "random", "--d", "6", "--k", "5", "--seed", "42"});
  const auto b = cli({"gen", "random", "--d", "6", "--k", "5", "--seed", "42"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Json j = a.json();
  EXPECT_EQ(j["meta"]["prng"], "mt19937_64");
  EXPECT_EQ(j["meta"]["seed"], 42);
  EXPECT_EQ(algebra_from_json(j), random_subalgebra(6, 5, 42));

  for (const auto& m : small_corpus()) {
    EXPECT_EQ(algebra_from_json(parse_json(algebra_to_json(m).dump(), "x")), m);
  }
}

TEST_F(CliTest, MeasureRoundTripAndClassify) {
  const auto sq = hypercube(2);
  write("sq.json", algebra_to_json(sq).dump(2));
  std::vector<Rational> w(4, Rational(0));
  w[P(sq, "01")] = Rational(1, 2);
  w[P(sq, "10")] = Rational(1, 2);
  const Measure mu(w);

  const Json by_path = measure_to_json(sq, mu, "sq.json");
  const std::string file = write("diag.json", by_path.dump(2));
  const MeasureFile loaded = load_measure(file);
  EXPECT_EQ(loaded.algebra, sq);
  EXPECT_EQ(loaded.measure, mu);
  EXPECT_EQ(by_path["weights"], Json::parse(R"({"01": "1/2", "10": "1/2"})"));

  const Json inline_form = measure_to_json(sq, mu, algebra_to_json(sq));
  EXPECT_EQ(measure_from_json(inline_form, dir_).measure, mu);

  const auto r = cli({"classify", file});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.json()["results"]["cubical"].get<bool>());
  EXPECT_EQ(r.json()["results"]["cube"]["dimension"], 1);
}

TEST_F(CliTest, ClassifyRejectsUnbalanced) {
  write("two.json", algebra_to_json(hypercube(1)).dump());
  const std::string file = write("m.json", R"({"algebra": "two.json", "weights": {"0": "1/4", "1": "3/4"}})");
  const auto r = cli({"classify", file});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("balanced"), std::string::npos);
}

TEST_F(CliTest, MalformedInputsExitTwo) {
  const std::vector<std::pair<std::string, std::string>> bad{
      {"syntax.json", "{\"ambient_dim\": 2, \"points\": ["},
      {"unsorted.json", R"({"ambient_dim": 2, "points": ["01", "00"]})"},
      {"dup.json", R"({"ambient_dim": 2, "points": ["00", "00"]})"},
      {"length.json", R"({"ambient_dim": 2, "points": ["00", "011"]})"},
      {"open.json", R"({"ambient_dim": 3, "points": ["001", "010", "100"]})"},
      {"chars.json", R"({"ambient_dim": 2, "points": ["0a"]})"},
      {"empty.json", R"({"ambient_dim": 2, "points": []})"},
  };
  for (const auto& [name, text] : bad) {
    const auto r = cli({"walls", write(name, text)});
    EXPECT_EQ(r.code, 2) << name << ": " << r.err;
    EXPECT_TRUE(r.out.empty());
  }
  EXPECT_EQ(cli({"walls", path("missing.json")}).code, 2);

  write("sq.json", algebra_to_json(hypercube(2)).dump());
  for (const char* weights : {R"({"00": "1/3"})", R"({"00": "x"})", R"({"0": "1/1"})", R"({"00": 1})"}) {
    const std::string m = write("w.json", std::string(R"({"algebra": "sq.json", "weights": )") + weights + "}");
    EXPECT_EQ(cli({"classify", m}).code, 2) << weights;
  }
}

TEST_F(CliTest, UsageErrors) {
  const auto none = cli({});
  EXPECT_EQ(none.code, 2);
  EXPECT_NE(none.err.find("Usage"), std::string::npos);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"balance"}).code, 2);
  EXPECT_EQ(cli({"balance", "x.json", "--starts", "many"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"gen", "hypercube", "13"}).code, 1);
}

TEST_F(CliTest, ValidateAlgebraAndTables) {
  ASSERT_EQ(cli({"gen", "hypercube", "2", "-o", path("sq.json")}).code, 0);
  const auto ok = cli({"validate", path("sq.json")});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_TRUE(ok.json()["results"]["ok"].get<bool>());

  const auto sq = hypercube(2);
  TernaryTable t = TernaryTable::of(sq);
  Json table{{"size", 4}, {"table", Json(std::vector<std::uint32_t>(t.entries().begin(), t.entries().end()))}};
  const auto good = cli({"validate", write("table.json", table.dump())});
  ASSERT_EQ(good.code, 0) << good.err;
  EXPECT_EQ(good.json()["results"]["embedding"]["ambient_dim"], 2);

  t.set(0, 1, 3, 3);
  table["table"] = Json(std::vector<std::uint32_t>(t.entries().begin(), t.entries().end()));
  const auto broken = cli({"validate", write("broken.json", table.dump())});
  EXPECT_EQ(broken.code, 1);
  EXPECT_FALSE(broken.json()["results"]["ok"].get<bool>());
  EXPECT_EQ(broken.json()["results"]["violation"]["witness"].size(), 3U);
}

TEST_F(CliTest, ActFindsInvariantCube) {
  ASSERT_EQ(cli({"gen", "hypercube", "3", "-o", path("c3.json")}).code, 0);
  const auto c3 = hypercube(3);
  // Coordinate swaps (0 1) and (1 2) of {0,1}^3, as permutations of PointIds.
  auto swap = [&](unsigned i, unsigned j) {
    Json perm = Json::array();
    for (PointId x = 0; x < 8; ++x) {
      std::string bits = c3.point(x).to_string();
      std::swap(bits[i], bits[j]);
      perm.push_back(P(c3, bits));
    }
    return perm;
  };
  const Json group{{"algebra", "c3.json"}, {"generators", {swap(0, 1), swap(1, 2)}}};
  const std::string gfile = write("s3.json", group.dump());
  const auto r = cli({"act", path("c3.json"), gfile, "--starts", "5", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = r.json()["results"];
  EXPECT_EQ(res["group_order"], 6);
  EXPECT_EQ(res["invariant_cube"]["dimension"], 3);
  EXPECT_TRUE(res["invariant_cube"]["setwise_invariant"].get<bool>());
  EXPECT_EQ(r.json()["inputs"].size(), 2U);

  const Json not_auto{{"algebra", "c3.json"}, {"generators", {{1, 0, 2, 3, 4, 5, 6, 7}}}};
  EXPECT_EQ(cli({"act", path("c3.json"), write("bad.json", not_auto.dump())}).code, 1);
}

TEST(Report, RoundTrip) {
  RunReport r{"balance", {{"a.json", std::string(64, 'f')}}};
  r.results = Json::parse(R"({"x": [1, 2.5, "3/4", null, true], "nested": {"k": 1e-300}})");
  const RunReport back = report_from_json(parse_json(report_to_json(r).dump(2), "report"));
  EXPECT_EQ(back, r);
  EXPECT_THROW(report_from_json(Json::parse(R"({"command": "x"})")), Error);
}

TEST(Io, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Io, GroupAndTableParsing) {
  const GroupFile g = group_from_json(Json::parse(R"({"algebra": "a.json", "generators": [[1, 0]]})"));
  EXPECT_EQ(g.algebra, "a.json");
  EXPECT_EQ(g.generators, (std::vector<std::vector<PointId>>{{1, 0}}));
  EXPECT_THROW(group_from_json(Json::parse(R"({"generators": [[-1]]})")), Error);
  EXPECT_THROW(table_from_json(Json::parse(R"({"size": 1, "table": [0, 0]})")), Error);
  EXPECT_EQ(table_from_json(Json::parse(R"({"size": 1, "table": [0]})")).size(), 1U);
}
