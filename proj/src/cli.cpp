#include "medlab/cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "medlab/cube_dynamics.hpp"
#include "medlab/experiments.hpp"
#include "medlab/generators.hpp"
#include "medlab/group_actions.hpp"
#include "medlab/io.hpp"
#include "medlab/report.hpp"
#include "medlab/rng.hpp"
#include "medlab/walls.hpp"

namespace medlab {

namespace {

struct Globals {
  bool pretty = false;
  unsigned jobs = 1;
};

Json big_to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) {
    return Json(static_cast<std::uint64_t>(v));
  }
  return Json(v.str());
}

Json points_json(const MedianAlgebra& m, std::span<const PointId> ids) {
  Json arr = Json::array();
  for (PointId x : ids) arr.push_back(m.point(x).to_string());
  return arr;
}

Json ids_json(std::span<const PointId> ids) {
  Json arr = Json::array();
  for (PointId x : ids) arr.push_back(x);
  return arr;
}

Json not_cube_json(const NotCube& nc) {
  Json j;
  j["reason"] = nc.describe();
  if (nc.non_transverse) j["non_transverse_walls"] = {nc.non_transverse->first, nc.non_transverse->second};
  if (nc.unseparated) j["unseparated_points"] = {nc.unseparated->first, nc.unseparated->second};
  if (nc.cardinality) {
    j["cardinality"] = {{"points", nc.cardinality->first}, {"walls", nc.cardinality->second}};
  }
  return j;
}

Json certificate_json(const MedianAlgebra& m, const CubeCertificate& cert) {
  Json j;
  j["dimension"] = cert.dimension();
  j["points"] = points_json(m, cert.points);
  Json walls = Json::array();
  for (const Wall& w : cert.walls) {
    Json side = Json::array();
    for (PointId x : members(w.positive)) side.push_back(m.point(cert.points[x]).to_string());
    walls.push_back({{"id", w.id}, {"positive", std::move(side)}});
  }
  j["walls"] = std::move(walls);
  Json iso = Json::array();
  for (PointId x = 0; x < cert.cube.size(); ++x) {
    iso.push_back({{"point", m.point(cert.points[x]).to_string()},
                   {"image", cert.iso.target().point(cert.iso(x)).to_string()}});
  }
  j["iso"] = std::move(iso);
  return j;
}

Json classification_json(const MedianAlgebra& m, const Classification& c) {
  Json j;
  if (const auto* cert = std::get_if<CubicalCertificate>(&c)) {
    j["cubical"] = true;
    j["uniform"] = cert->uniform;
    j["cube"] = certificate_json(m, cert->cube);
  } else {
    const auto& bad = std::get<NotCubical>(c);
    j["cubical"] = false;
    j["reason"] = bad.reason;
    j["support"] = points_json(m, members(bad.support));
    if (bad.cube_failure) j["cube_failure"] = not_cube_json(*bad.cube_failure);
  }
  return j;
}

Json violation_json(const AxiomViolation& v) {
  return {{"axiom", std::string(to_string(v.axiom))}, {"witness", v.witness}, {"detail", v.describe()}};
}

void emit(std::ostream& out, const RunReport& report) { out << report_to_json(report).dump(2) << '\n'; }

std::string fixed_points_text(const std::vector<FixedPoint>& fps) {
  std::string s;
  for (const auto& fp : fps) {
    if (!s.empty()) s += ' ';
    s += fp.value.to_string();
    if (fp.multiplicity > 1) s += "(x" + std::to_string(fp.multiplicity) + ")";
  }
  return s;
}

const std::vector<Rational>& conjugation_grid() {
  static const std::vector<Rational> grid{Rational(0),    Rational(1, 5), Rational(1, 3),
                                          Rational(1, 2), Rational(3, 4), Rational(1)};
  return grid;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_validate(const Globals& g, const std::string& file, std::uint64_t seed, std::size_t samples,
                 std::ostream& out, std::ostream& err) {
  const Json j = load_json(file);
  RunReport report{"validate", {digest_file(file)}};
  ValidationOptions options;
  options.seed = seed;
  options.samples = samples;
  std::optional<AxiomViolation> violation;
  if (j.contains("table")) {
    const TernaryTable table = table_from_json(j);
    report.results["kind"] = "table";
    report.results["size"] = table.size();
    violation = validate_axioms(table, options);
    if (!violation) {
      const TableEmbedding emb = from_table(table, options);
      report.results["embedding"] = {{"ambient_dim", emb.algebra.ambient_dim()},
                                     {"point_of", points_json(emb.algebra, emb.point_of)}};
    }
  } else {
    const MedianAlgebra m = algebra_from_json(j);
    report.results["kind"] = "algebra";
    report.results["size"] = m.size();
    report.results["ambient_dim"] = m.ambient_dim();
    violation = validate_axioms(TernaryTable::of(m), options);
  }
  report.results["ok"] = !violation.has_value();
  if (violation) report.results["violation"] = violation_json(*violation);
  emit(out, report);
  if (g.pretty) {
    err << (violation ? "axiom violation: " + violation->describe() : std::string("Med 1-3 hold"))
        << '\n';
  }
  return violation ? 1 : 0;
}

int cmd_walls(const Globals& g, const std::string& file, std::ostream& out, std::ostream& err) {
  const MedianAlgebra m = load_algebra(file);
  const Reduction red = reduce(m);
  const std::vector<Wall> walls = enumerate_walls(red.algebra);
  RunReport report{"walls", {digest_file(file)}};
  report.results["size"] = m.size();
  report.results["ambient_dim"] = m.ambient_dim();
  report.results["wall_count"] = walls.size();
  Json list = Json::array();
  for (const Wall& w : walls) {
    const std::size_t pos = w.positive.count();
    list.push_back({{"id", w.id},
                    {"coordinate", red.kept_coordinates[w.id]},
                    {"positive_size", pos},
                    {"negative_size", m.size() - pos}});
  }
  report.results["walls"] = std::move(list);
  emit(out, report);
  if (g.pretty) {
    err << "wall  coord  |H+|  |H-|\n";
    for (const auto& w : report.results["walls"]) {
      err << std::setw(4) << w["id"].get<std::size_t>() << std::setw(7)
          << w["coordinate"].get<unsigned>() << std::setw(6) << w["positive_size"].get<std::size_t>()
          << std::setw(6) << w["negative_size"].get<std::size_t>() << '\n';
    }
  }
  return 0;
}

int cmd_cube(const Globals& g, const std::string& file, std::ostream& out, std::ostream& err) {
  const MedianAlgebra m = load_algebra(file);
  const CubeDetection detection = detect_cube(m);
  RunReport report{"cube", {digest_file(file)}};
  report.results["size"] = m.size();
  if (const auto* cert = std::get_if<CubeCertificate>(&detection)) {
    report.results["is_cube"] = true;
    report.results["certificate"] = certificate_json(m, *cert);
    if (g.pretty) err << "cube of dimension " << cert->dimension() << '\n';
  } else {
    const auto& nc = std::get<NotCube>(detection);
    report.results["is_cube"] = false;
    report.results["not_cube"] = not_cube_json(nc);
    if (g.pretty) err << "not a cube: " << nc.describe() << '\n';
  }
  emit(out, report);
  return 0;
}

int cmd_balance(const Globals& g, const std::string& file, const BalanceOptions& options,
                std::ostream& out, std::ostream& err) {
  const MedianAlgebra m = load_algebra(file);
  const BalanceRun run = run_balance(m, options);
  RunReport report{"balance", {digest_file(file)}};
  report.results["parameters"] = {{"starts", options.starts},
                                  {"seed", options.seed},
                                  {"tol", options.iteration.tol},
                                  {"max_iter", options.iteration.max_iter},
                                  {"prng", Prng::kAlgorithm}};
  Json records = Json::array();
  for (const BalanceRecord& r : run.records) {
    Json rec;
    rec["start_seed"] = r.start_seed;
    rec["converged"] = r.converged;
    rec["iterations"] = r.iterations;
    rec["residual"] = r.residual;
    rec["snapped"] = r.snapped.has_value();
    rec["cubical"] = r.cubical ? Json(*r.cubical) : Json(nullptr);
    rec["cube_dim"] = r.cube_dim ? Json(*r.cube_dim) : Json(nullptr);
    records.push_back(std::move(rec));
  }
  report.results["records"] = std::move(records);
  Json distinct = Json::array();
  for (const DistinctBalanced& d : run.distinct) {
    Json entry = classification_json(m, d.classification);
    entry["weights"] = weights_to_json(m, d.measure);
    entry["hits"] = d.hits;
    distinct.push_back(std::move(entry));
  }
  report.results["balanced_measures"] = std::move(distinct);
  const std::size_t bad = run.counterexamples();
  report.results["summary"] = {
      {"starts", run.records.size()},
      {"snapped", run.snapped()},
      {"snap_rate", run.records.empty() ? 0.0
                                        : static_cast<double>(run.snapped()) /
                                              static_cast<double>(run.records.size())},
      {"distinct_balanced", run.distinct.size()},
      {"non_cubical", bad}};
  emit(out, report);
  if (g.pretty) {
    err << "seed        conv  iters  residual      snapped  cube_dim\n";
    for (const BalanceRecord& r : run.records) {
      err << std::left << std::setw(12) << r.start_seed << std::setw(6) << (r.converged ? "yes" : "no")
          << std::setw(7) << r.iterations << std::setw(14) << r.residual << std::setw(9)
          << (r.snapped ? "yes" : "no") << (r.cube_dim ? std::to_string(*r.cube_dim) : "-")
          << std::right << '\n';
    }
  }
  if (bad > 0) {
    err << "COUNTEREXAMPLE: " << bad
        << " snapped balanced measure(s) are not cubical; see balanced_measures in the report\n";
    return 1;
  }
  return 0;
}

int cmd_classify(const Globals& g, const std::string& file, std::ostream& out, std::ostream& err) {
  const MeasureFile mf = load_measure(file);
  const Classification c = classify_balanced(mf.algebra, mf.measure);
  RunReport report{"classify", {digest_file(file)}};
  report.results = classification_json(mf.algebra, c);
  emit(out, report);
  if (const auto* bad = std::get_if<NotCubical>(&c)) {
    err << "COUNTEREXAMPLE: balanced measure is not cubical: " << bad->reason << '\n';
    return 1;
  }
  if (g.pretty) {
    err << "cubical, cube dimension "
        << std::get<CubicalCertificate>(c).cube.dimension() << '\n';
  }
  return 0;
}

int cmd_formulas(const Globals& g, unsigned n_max, bool csv, std::ostream& out, std::ostream& err) {
  if (n_max == 0) throw Error(ErrorKind::kOutOfRange, "--n-max must be >= 1");
  RunReport report{"formulas", {}};
  Json rows = Json::array();
  std::ostringstream table;
  table << "n,method,a0,a1,a2,a3,agree,fixed_points,conjugation\n";
  bool all_agree = true;
  for (unsigned n = 1; n <= n_max; ++n) {
    const XiCounts rec = ai_recurrence(n);
    const XiCounts closed = ai_closed_form(n);
    std::optional<XiCounts> brute;
    if (n <= 8) brute = count_xi_bruteforce(n, g.jobs);
    const bool agree = rec == closed && (!brute || *brute == rec) && rec.total() == BigInt(1) << (2 * n);
    all_agree = all_agree && agree;

    Json row;
    row["n"] = n;
    auto counts = [](const XiCounts& c) {
      Json a = Json::array();
      for (const auto& v : c.a) a.push_back(big_to_json(v));
      return a;
    };
    row["bruteforce"] = brute ? counts(*brute) : Json(nullptr);
    row["recurrence"] = counts(rec);
    row["closed_form"] = counts(closed);
    row["agree"] = agree;
    const auto fps = phi_fixed_points(n);
    Json fp = Json::array();
    for (const auto& p : fps) fp.push_back({{"value", p.value.to_string()}, {"multiplicity", p.multiplicity}});
    row["fixed_points"] = std::move(fp);
    std::optional<bool> conj;
    if (n <= 5) {
      conj = std::all_of(conjugation_grid().begin(), conjugation_grid().end(),
                         [&](const Rational& t) { return phi_conjugation_check(n, t); });
    }
    row["conjugation"] = conj ? Json(*conj) : Json(nullptr);
    rows.push_back(row);

    const std::string conj_text = conj ? (*conj ? "ok" : "FAIL") : "";
    auto line = [&](const char* method, const XiCounts& c) {
      table << n << ',' << method;
      for (const auto& v : c.a) table << ',' << v.str();
      table << ',' << (agree ? "yes" : "no") << ',' << fixed_points_text(fps) << ',' << conj_text
            << '\n';
    };
    if (brute) line("bruteforce", *brute);
    line("recurrence", rec);
    line("closed_form", closed);
  }
  report.results["rows"] = std::move(rows);
  report.results["all_agree"] = all_agree;
  if (csv) {
    out << table.str();
  } else {
    emit(out, report);
  }
  if (g.pretty) err << table.str();
  return all_agree ? 0 : 1;
}

int cmd_act(const Globals& g, const std::string& algebra_file, const std::string& group_file,
            const SearchOptions& options, std::ostream& out, std::ostream& err) {
  const MedianAlgebra m = load_algebra(algebra_file);
  const GroupFile gf = load_group(group_file);
  std::vector<Automorphism> gens;
  for (const auto& perm : gf.generators) gens.push_back(require_automorphism(m, perm));
  const FiniteGroup group = group_closure(m, gens);
  const InvariantSearch search = invariant_balanced_search(m, group, options);

  RunReport report{"act", {digest_file(algebra_file), digest_file(group_file)}};
  report.results["group_order"] = group.order();
  report.results["parameters"] = {{"starts", options.starts},
                                  {"seed", options.seed},
                                  {"tol", options.iteration.tol},
                                  {"max_iter", options.iteration.max_iter},
                                  {"uniform_start", options.uniform_start}};
  report.results["attempted"] = search.attempted;
  report.results["unresolved"] = search.unresolved;
  Json findings = Json::array();
  for (const auto& f : search.findings) {
    findings.push_back({{"weights", weights_to_json(m, f.measure)},
                        {"cube_dim", f.certificate.cube.dimension()}});
  }
  report.results["invariant_measures"] = std::move(findings);
  Json counter = Json::array();
  for (const auto& c : search.counterexamples) counter.push_back(classification_json(m, c));
  report.results["counterexamples"] = std::move(counter);

  if (!search.counterexamples.empty()) {
    emit(out, report);
    err << "COUNTEREXAMPLE: an invariant balanced measure is not cubical\n";
    return 1;
  }
  const CubeCertificate cube = invariant_cube(m, group, options);
  Json cj = certificate_json(m, cube);
  cj["setwise_invariant"] = is_invariant(group, cube.points);
  cj["point_ids"] = ids_json(cube.points);
  report.results["invariant_cube"] = std::move(cj);
  emit(out, report);
  if (g.pretty) {
    err << "|G| = " << group.order() << ", invariant cube of dimension " << cube.dimension() << ":";
    for (PointId x : cube.points) err << ' ' << m.point(x).to_string();
    err << '\n';
  }
  return 0;
}

int emit_generated(const MedianAlgebra& m, const std::string& generator, std::optional<std::uint64_t> seed,
                   const std::string& output, std::ostream& out) {
  Json j = algebra_to_json(m);
  j["name"] = m.name();
  j["meta"] = {{"generator", generator}, {"tool_version", kToolVersion}};
  if (seed) {
    j["meta"]["prng"] = Prng::kAlgorithm;
    j["meta"]["seed"] = *seed;
  }
  const std::string text = j.dump(2) + "\n";
  if (output.empty()) {
    out << text;
    return 0;
  }
  write_file(output, text);
  RunReport report{"gen", {}};
  report.results = {{"output", output},
                    {"sha256", sha256_hex(text)},
                    {"name", m.name()},
                    {"size", m.size()},
                    {"ambient_dim", m.ambient_dim()}};
  emit(out, report);
  return 0;
}

int exit_code(const Error& e) { return e.kind() == ErrorKind::kMalformedInput ? 2 : 1; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on finite median algebras", "medlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--pretty", g.pretty, "Human-readable tables on standard error");
  app.add_option("--jobs", g.jobs, "Worker threads for parallel commands")->check(CLI::Range(1U, 256U));

  std::function<int()> action;

  std::string file;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Check the median axioms of an algebra or table file");
  std::size_t samples = ValidationOptions{}.samples;
  validate->add_option("file", file, "Algebra or table JSON")->required();
  validate->add_option("--seed", seed, "Seed for sampled Med 3 checks");
  validate->add_option("--samples", samples, "Med 3 samples above the exhaustive limit");
  validate->callback([&] { action = [&] { return cmd_validate(g, file, seed, samples, out, err); }; });

  auto* walls = app.add_subcommand("walls", "List the walls of an algebra");
  walls->add_option("file", file, "Algebra JSON")->required();
  walls->callback([&] { action = [&] { return cmd_walls(g, file, out, err); }; });

  auto* cube = app.add_subcommand("cube", "Decide whether an algebra is a cube");
  cube->add_option("file", file, "Algebra JSON")->required();
  cube->callback([&] { action = [&] { return cmd_cube(g, file, out, err); }; });

  BalanceOptions balance_opts;
  auto* balance = app.add_subcommand("balance", "Search for balanced measures from random starts");
  balance->add_option("file", file, "Algebra JSON")->required();
  balance->add_option("--starts", balance_opts.starts, "Number of random starts");
  balance->add_option("--seed", balance_opts.seed, "Seed of the first start");
  balance->add_option("--tol", balance_opts.iteration.tol, "Convergence tolerance (max-norm step)");
  balance->add_option("--max-iter", balance_opts.iteration.max_iter, "Iteration cap per start");
  balance->callback([&] {
    balance_opts.jobs = g.jobs;
    action = [&] { return cmd_balance(g, file, balance_opts, out, err); };
  });

  auto* classify = app.add_subcommand("classify", "Classify a balanced measure file");
  classify->add_option("file", file, "Measure JSON")->required();
  classify->callback([&] { action = [&] { return cmd_classify(g, file, out, err); }; });

  unsigned n_max = 7;
  bool csv = false;
  auto* formulas = app.add_subcommand("formulas", "Tabulate the cube-dynamics counts and fixed points");
  formulas->add_option("--n-max", n_max, "Largest cube dimension");
  formulas->add_flag("--csv", csv, "Comma-separated rows instead of JSON");
  formulas->callback([&] { action = [&] { return cmd_formulas(g, n_max, csv, out, err); }; });

  std::string group_file;
  SearchOptions search_opts;
  auto* act = app.add_subcommand("act", "Find a cube invariant under a finite group");
  act->add_option("algebra", file, "Algebra JSON")->required();
  act->add_option("group", group_file, "Group JSON")->required();
  act->add_option("--starts", search_opts.starts, "Number of random starts");
  act->add_option("--seed", search_opts.seed, "Seed of the first start");
  act->add_option("--tol", search_opts.iteration.tol, "Convergence tolerance");
  act->add_option("--max-iter", search_opts.iteration.max_iter, "Iteration cap per start");
  act->callback([&] { action = [&] { return cmd_act(g, file, group_file, search_opts, out, err); }; });

  std::string output;
  auto* gen = app.add_subcommand("gen", "Generate an algebra file");
  gen->require_subcommand(1);
  gen->add_option("-o,--output", output, "Write to this file instead of standard output");
  gen->fallthrough();

  unsigned n = 0;
  auto* gen_cube = gen->add_subcommand("hypercube", "{0,1}^n");
  gen_cube->add_option("n", n, "Dimension")->required();
  gen_cube->callback([&] {
    action = [&] { return emit_generated(hypercube(n), "hypercube", std::nullopt, output, out); };
  });

  std::string edges;
  auto* gen_tree = gen->add_subcommand("tree", "Vertices of a tree");
  gen_tree->add_option("--edges", edges, "Edge list such as 0-1,1-2")->required();
  gen_tree->callback([&] {
    action = [&] { return emit_generated(tree(parse_edges(edges)), "tree", std::nullopt, output, out); };
  });

  unsigned ga = 0;
  unsigned gb = 0;
  auto* gen_grid = gen->add_subcommand("grid", "Product of two paths");
  gen_grid->add_option("a", ga, "Vertices of the first path")->required();
  gen_grid->add_option("b", gb, "Vertices of the second path")->required();
  gen_grid->callback([&] {
    action = [&] { return emit_generated(grid(ga, gb), "grid", std::nullopt, output, out); };
  });

  unsigned rd = 0;
  unsigned rk = 0;
  std::uint64_t rseed = 0;
  auto* gen_random = gen->add_subcommand("random", "Median closure of k random points of {0,1}^d");
  gen_random->add_option("--d", rd, "Ambient dimension")->required();
  gen_random->add_option("--k", rk, "Number of random points")->required();
  gen_random->add_option("--seed", rseed, "PRNG seed");
  gen_random->callback([&] {
    action = [&] { return emit_generated(random_subalgebra(rd, rk, rseed), "random", rseed, output, out); };
  });

  for (auto* sub : {validate, walls, cube, balance, classify, formulas, act}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == static_cast<int>(CLI::ExitCodes::Success)) return 0;
    err << "\n" << app.help();
    return 2;
  }

  try {
    return action();
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace medlab
