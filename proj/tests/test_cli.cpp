#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "patree/cli.hpp"
#include "patree/tree.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "patree");
  std::vector<char*> argv;
  argv.reserve(args.size());
  for (auto& a : args) argv.push_back(a.data());
  return patree::cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

fs::path fresh_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("patree_cli_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_config(const fs::path& dir, const std::string& name, const json& j) {
  fs::path p = dir / name;
  std::ofstream out(p);
  out << j.dump(2);
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Splits a CSV produced by this tool (no quoting or embedded commas).
std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("tail command writes both evaluation routes") {
  fs::path dir = fresh_dir("tail");
  json cfg = {{"tree_size", 2}, {"d", 1}, {"t_grid", {0.5, 2.0, 4.0}}};
  std::string cp = write_config(dir, "cfg.json", cfg);
  fs::path out1 = dir / "out1";
  REQUIRE(run({"tail", "--config", cp, "--out", out1.string()}) == 0);

  auto rows = read_csv(out1 / "tail.csv");
  REQUIRE(rows.size() == 4);  // header + 3 grid points
  REQUIRE(rows[0] == std::vector<std::string>({"t", "exact", "exact_from_quadrature",
                                               "quadrature", "asymptotic",
                                               "exact_over_asymptotic"}));
  // At t = 2 the single-edge tail is erfc(1).
  CHECK(std::stod(rows[2][0]) == 2.0);
  CHECK(std::stod(rows[2][1]) == Catch::Approx(std::erfc(1.0)).epsilon(1e-9));
  CHECK(rows[2][2] == "0");
  CHECK(std::stod(rows[2][3]) == Catch::Approx(std::erfc(1.0)).epsilon(1e-7));

  // Reruns are byte-identical (manifests differ only in timing fields).
  fs::path out2 = dir / "out2";
  REQUIRE(run({"tail", "--config", cp, "--out", out2.string()}) == 0);
  CHECK(slurp(out1 / "tail.csv") == slurp(out2 / "tail.csv"));

  json m = json::parse(slurp(out1 / "manifest.json"));
  CHECK(m.at("command") == "tail");
  CHECK(m.at("config").at("tree_size") == 2);
  CHECK(m.contains("config_hash"));
  fs::remove_all(dir);
}

TEST_CASE("grow command reports the two-step shape split") {
  fs::path dir = fresh_dir("grow");
  json cfg = {{"seed", "star:2"}, {"n", 4},          {"replicas", 20000},
              {"shapes", true},   {"master_seed", 99}};
  std::string cp = write_config(dir, "cfg.json", cfg);
  REQUIRE(run({"grow", "--config", cp, "--out", dir.string()}) == 0);
  auto rows = read_csv(dir / "shapes.csv");
  REQUIRE(rows.size() == 3);  // header + star + path
  std::string star_code = patree::canonical_code(patree::make_star(4));
  double star_frac = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i][0] == star_code) star_frac = std::stod(rows[i][2]);
  REQUIRE(star_frac >= 0.0);
  CHECK(std::abs(star_frac - 0.5) < 0.02);
  fs::remove_all(dir);
}

TEST_CASE("grow command records degree trajectories") {
  fs::path dir = fresh_dir("traj");
  json cfg = {{"seed", "star:3"},
              {"n", 50},
              {"replicas", 2},
              {"shapes", false},
              {"watch_vertices", {1}},
              {"checkpoints", {10, 50}},
              {"master_seed", 4}};
  std::string cp = write_config(dir, "cfg.json", cfg);
  REQUIRE(run({"grow", "--config", cp, "--out", dir.string()}) == 0);
  auto rows = read_csv(dir / "trajectory.csv");
  // header + 2 replicas x 2 checkpoints x (1 watched + max_degree)
  REQUIRE(rows.size() == 1 + 2 * 2 * 2);
  CHECK(rows[1][2] == "deg[1]");

  // The final checkpoint must equal n.
  json bad = cfg;
  bad["checkpoints"] = {10, 20};
  std::string bp = write_config(dir, "bad.json", bad);
  CHECK(run({"grow", "--config", bp, "--out", dir.string()}) == 2);
  fs::remove_all(dir);
}

TEST_CASE("moments command emits closed-form values") {
  fs::path dir = fresh_dir("moments");
  json cfg = {{"seed", "path:3"}, {"late_vertices", {5, 9}}};
  std::string cp = write_config(dir, "cfg.json", cfg);
  REQUIRE(run({"moments", "--config", cp, "--out", dir.string()}) == 0);
  auto rows = read_csv(dir / "moments.csv");
  REQUIRE(rows.size() == 1 + 3 * 4);
  // Canonical vertex 1 of the 3-path is the center (degree 2): E D = 1.5045...
  double v1r1 = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i][1] == "1" && rows[i][2] == "1") v1r1 = std::stod(rows[i][3]);
  CHECK(v1r1 == Catch::Approx(1.50450555612735).epsilon(1e-12));
  auto late = read_csv(dir / "late_moments.csv");
  REQUIRE(late.size() == 1 + 2 * 4);
  fs::remove_all(dir);
}

TEST_CASE("umax command prints the embedding weight") {
  fs::path dir = fresh_dir("umax");
  json cfg = {{"pattern", "path:3"}, {"host", "star:5"}};
  std::string cp = write_config(dir, "cfg.json", cfg);
  REQUIRE(run({"umax", "--config", cp, "--out", dir.string()}) == 0);
  auto rows = read_csv(dir / "umax.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == std::vector<std::string>({"3", "5", "6"}));

  json cfg2 = {{"pattern", "star:4"}, {"host", "path:6"}};
  std::string cp2 = write_config(dir, "cfg2.json", cfg2);
  REQUIRE(run({"umax", "--config", cp2, "--out", dir.string()}) == 0);
  auto rows2 = read_csv(dir / "umax.csv");
  CHECK(rows2[1][2] == "NoEmbedding");
  fs::remove_all(dir);
}

TEST_CASE("umax-sweep command scales by sqrt(n) at each checkpoint") {
  fs::path dir = fresh_dir("sweep");
  json cfg = {{"pattern", "path:2"}, {"seed", "star:2"},    {"n", 100},
              {"replicas", 3},       {"checkpoints", {50, 100}}, {"master_seed", 8}};
  std::string cp = write_config(dir, "cfg.json", cfg);
  REQUIRE(run({"umax-sweep", "--config", cp, "--out", dir.string()}) == 0);
  auto rows = read_csv(dir / "umax_sweep.csv");
  REQUIRE(rows.size() == 1 + 3 * 2);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double value = std::stod(rows[i][2]);
    double n = std::stod(rows[i][1]);
    CHECK(std::stod(rows[i][3]) == Catch::Approx(value / std::sqrt(n)).epsilon(1e-12));
  }
  fs::remove_all(dir);
}

TEST_CASE("tv-lower-bound command is reproducible end to end") {
  fs::path dir = fresh_dir("tv");
  json cfg = {{"seed_trees", {"star:6", "path:6"}},
              {"n", 300},
              {"replicas", 60},
              {"statistic", "max_degree_scaled"},
              {"threshold_grid", "auto"},
              {"master_seed", 3},
              {"bootstrap_rounds", 50}};
  std::string cp = write_config(dir, "cfg.json", cfg);
  fs::path out1 = dir / "o1", out2 = dir / "o2";
  REQUIRE(run({"tv-lower-bound", "--config", cp, "--out", out1.string()}) == 0);
  REQUIRE(run({"tv-lower-bound", "--config", cp, "--out", out2.string()}) == 0);

  json res = json::parse(slurp(out1 / "tv_result.json"));
  CHECK(res.at("statistic") == "max_degree_scaled");
  CHECK(res.at("replicas_per_side") == 60);
  CHECK(res.at("grid_size").get<int>() > 0);
  CHECK(res.contains("estimate"));
  CHECK(res.contains("bootstrap_se"));
  CHECK(res.contains("ci_low"));

  auto survival = read_csv(out1 / "survival.csv");
  CHECK(survival.size() == 1 + res.at("grid_size").get<std::size_t>());
  auto samples = read_csv(out1 / "samples.csv");
  CHECK(samples.size() == 1 + 2 * 60);

  CHECK(slurp(out1 / "tv_result.json") == slurp(out2 / "tv_result.json"));
  CHECK(slurp(out1 / "survival.csv") == slurp(out2 / "survival.csv"));
  CHECK(slurp(out1 / "samples.csv") == slurp(out2 / "samples.csv"));
  fs::remove_all(dir);
}

TEST_CASE("local-limit and ball-dist commands write mass tables") {
  fs::path dir = fresh_dir("balls");
  json cfg = {{"radius", 1}, {"samples", 500}, {"master_seed", 7}};
  std::string cp = write_config(dir, "cfg.json", cfg);
  REQUIRE(run({"local-limit", "--config", cp, "--out", dir.string()}) == 0);
  auto rows = read_csv(dir / "polya_ball.csv");
  std::uint64_t total = 0;
  double mass = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    total += std::stoull(rows[i][1]);
    mass += std::stod(rows[i][2]);
  }
  CHECK(total == 500);
  CHECK(mass == Catch::Approx(1.0).epsilon(1e-9));

  json cfg2 = {{"seed", "star:2"}, {"n", 200},           {"radius", 1},
               {"replicas", 3},    {"roots_per_tree", 50}, {"master_seed", 7}};
  std::string cp2 = write_config(dir, "cfg2.json", cfg2);
  REQUIRE(run({"ball-dist", "--config", cp2, "--out", dir.string()}) == 0);
  auto rows2 = read_csv(dir / "ball_dist.csv");
  std::uint64_t total2 = 0;
  for (std::size_t i = 1; i < rows2.size(); ++i) total2 += std::stoull(rows2[i][1]);
  CHECK(total2 == 3 * 50);
  fs::remove_all(dir);
}

TEST_CASE("master seed flag overrides the config value") {
  fs::path dir = fresh_dir("seedflag");
  json cfg = {{"seed", "star:2"}, {"n", 10}, {"replicas", 2}, {"master_seed", 99}};
  std::string cp = write_config(dir, "cfg.json", cfg);
  REQUIRE(run({"grow", "--config", cp, "--out", dir.string(), "--master-seed", "7"}) == 0);
  json m = json::parse(slurp(dir / "manifest.json"));
  CHECK(m.at("master_seed") == 7);
  CHECK(m.at("config").at("master_seed") == 7);
  fs::remove_all(dir);
}

TEST_CASE("validate command runs its self-checks") {
  fs::path dir = fresh_dir("validate");
  CHECK(run({"validate", "--out", dir.string()}) == 0);
  fs::remove_all(dir);
}

TEST_CASE("failures map to documented exit codes") {
  fs::path dir = fresh_dir("exits");
  // Missing required key.
  std::string empty_cfg = write_config(dir, "empty.json", json::object());
  CHECK(run({"tail", "--config", empty_cfg, "--out", dir.string()}) == 2);
  // Malformed JSON.
  {
    std::ofstream out(dir / "broken.json");
    out << "{ nope";
  }
  CHECK(run({"tail", "--config", (dir / "broken.json").string(),
             "--out", dir.string()}) == 2);
  // Out-of-range parameter.
  json bad_d = {{"tree_size", 2}, {"d", 5}, {"t_grid", {1.0}}};
  std::string bd = write_config(dir, "bad_d.json", bad_d);
  CHECK(run({"tail", "--config", bd, "--out", dir.string()}) == 2);
  // Missing config file.
  CHECK(run({"tail", "--config", (dir / "absent.json").string(),
             "--out", dir.string()}) == 4);
  // Output directory blocked by a regular file.
  {
    std::ofstream out(dir / "blocker");
    out << "x";
  }
  json tiny = {{"tree_size", 2}, {"d", 1}, {"t_grid", {1.0}}};
  std::string tp = write_config(dir, "tiny.json", tiny);
  CHECK(run({"tail", "--config", tp, "--out", (dir / "blocker" / "sub").string()}) == 4);
  // CLI misuse: unknown subcommand, missing required flag.
  CHECK(run({"frobnicate"}) == 2);
  CHECK(run({"tail"}) == 2);
  fs::remove_all(dir);
}
