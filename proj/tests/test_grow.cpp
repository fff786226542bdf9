#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "patree/grow.hpp"
#include "patree/rng.hpp"
#include "patree/tree.hpp"

using namespace patree;

TEST_CASE("endpoint list is grouped by vertex in label order") {
  GrowthState st = init_growth(make_star(3));  // degrees 2,1,1
  CHECK(st.endpoints == std::vector<std::uint32_t>({0, 0, 1, 2}));
  CHECK(st.max_degree == 2);
  GrowthState f = init_growth(make_looped_forest(3));
  CHECK(f.endpoints == std::vector<std::uint32_t>({0, 1, 2}));
}

TEST_CASE("two attachments from an edge give the 4-star exactly half the time") {
  // 2 * 4 = 8 equally likely index paths; count the stars.
  int stars = 0, total = 0;
  std::string star_code = canonical_code(make_star(4));
  for (std::uint64_t k1 = 0; k1 < 2; ++k1) {
    for (std::uint64_t k2 = 0; k2 < 4; ++k2) {
      GrowthState st = init_growth(make_path(2));
      growth_step_at(st, k1);
      growth_step_at(st, k2);
      ++total;
      if (canonical_code(to_tree(st)) == star_code) ++stars;
    }
  }
  CHECK(total == 8);
  CHECK(stars == 4);
}

TEST_CASE("growth state invariants hold after many steps") {
  RngStream rng(31, 0);
  GrowthState st = grow(make_star(5), 400, rng);
  CHECK(st.size() == 400);
  CHECK(st.endpoints.size() == 2 * (400 - 1));
  std::uint64_t deg_sum = std::accumulate(st.degrees.begin(), st.degrees.end(), 0ull);
  CHECK(deg_sum == st.endpoints.size());
  std::uint32_t mx = *std::max_element(st.degrees.begin(), st.degrees.end());
  CHECK(st.max_degree == mx);
  CHECK(st.growth_parents.size() == 400 - 5);
  Tree t = to_tree(st);
  CHECK(t.size() == 400);
  CHECK(t.total_degree() == 2 * (400 - 1));
}

TEST_CASE("looped forests grow with the same attachment rule") {
  RngStream rng(32, 0);
  GrowthState st = grow_forest(make_looped_forest(4), 50, rng);
  CHECK(st.size() == 50);
  // 4 loop slots + 2 per attachment.
  CHECK(st.endpoints.size() == 4 + 2 * (50 - 4));
  std::uint64_t deg_sum = std::accumulate(st.degrees.begin(), st.degrees.end(), 0ull);
  CHECK(deg_sum == st.endpoints.size());
}

TEST_CASE("grow validates its seed") {
  RngStream rng(33, 0);
  CHECK_THROWS_AS(grow(make_single(), 10, rng), std::invalid_argument);
  CHECK_THROWS_AS(grow(make_looped_forest(3), 10, rng), std::invalid_argument);
  GrowthState st = init_growth(make_path(4));
  CHECK_THROWS_AS(grow_to(st, 2, rng), std::invalid_argument);
}

TEST_CASE("degree trajectories record checkpoints in order") {
  RngStream rng(34, 0);
  GrowthState st = init_growth(make_star(4));
  Trajectory tr = watch_degrees(st, {0, 1}, {10, 50, 200}, rng);
  REQUIRE(tr.rows.size() == 3);
  CHECK(tr.rows[0].n == 10);
  CHECK(tr.rows[2].n == 200);
  CHECK(st.size() == 200);
  for (auto& row : tr.rows) REQUIRE(row.watched.size() == 2);
  // Degrees never decrease.
  for (int j = 0; j < 2; ++j)
    for (std::size_t i = 1; i < tr.rows.size(); ++i)
      CHECK(tr.rows[i].watched[j] >= tr.rows[i - 1].watched[j]);
  CHECK(tr.rows[1].max_degree >= tr.rows[0].max_degree);
  CHECK(tr.rows[2].max_degree == st.max_degree);
  CHECK(st.max_degree ==
        *std::max_element(st.degrees.begin(), st.degrees.end()));

  GrowthState st2 = init_growth(make_star(4));
  CHECK_THROWS_AS(watch_degrees(st2, {7}, {10}, rng), std::invalid_argument);
  CHECK_THROWS_AS(watch_degrees(st2, {0}, {2}, rng), std::invalid_argument);
  CHECK_THROWS_AS(watch_degrees(st2, {0}, {10, 5}, rng), std::invalid_argument);
}

TEST_CASE("equal degree profiles stay coupled forever") {
  // Two non-isomorphic 6-vertex trees with profile (3,2,2,1,1,1).
  Tree s = parse_tree("1 2\n2 3\n3 4\n4 5\n2 6\n");
  Tree t = parse_tree("1 2\n2 3\n3 4\n4 5\n3 6\n");
  REQUIRE_FALSE(trees_isomorphic(s, t));
  RngStream rng(35, 0);
  auto [a, b] = grow_coupled(s, t, 5000, rng);
  CHECK(a.degrees == b.degrees);
  CHECK(a.max_degree == b.max_degree);
}

TEST_CASE("tree degrees equal the summed degrees of their urn representatives") {
  RngStream rng(36, 0);
  TreeForestCoupling c = make_tree_forest_coupling(make_star(6));
  REQUIRE(c.forest.size() == 10);
  REQUIRE(c.rep_owner.size() == 10);
  while (c.tree.size() < 2000) coupled_forest_step(c, rng);
  REQUIRE(c.rep_owner.size() == c.forest.size());
  std::vector<std::uint64_t> rep_sum(c.tree.size(), 0);
  for (std::size_t j = 0; j < c.rep_owner.size(); ++j)
    rep_sum[c.rep_owner[j]] += c.forest.degrees[j];
  for (std::uint64_t v = 0; v < c.tree.size(); ++v)
    CHECK(rep_sum[v] == c.tree.degrees[v]);
}

TEST_CASE("parent-array files round-trip grown trees") {
  RngStream rng(37, 0);
  GrowthState st = grow(make_star(5), 64, rng);
  std::string path = "/tmp/patree_test_grow.patree";
  save_parent_array(st, path);
  Tree loaded = load_parent_array(path);
  CHECK(serialize_tree(loaded) == serialize_tree(to_tree(st)));
  std::remove(path.c_str());
}

TEST_CASE("parent records may point above the child label") {
  // Star with center 5 (1-based): BFS from vertex 1 makes vertex 2's parent
  // label 5 > 2, which per-record prefix checks would falsely reject.
  Tree spider = parse_tree("5 1\n5 2\n5 3\n5 4\n");
  GrowthState st = init_growth(spider);
  RngStream rng(38, 0);
  grow_to(st, 12, rng);
  std::string path = "/tmp/patree_test_spider.patree";
  save_parent_array(st, path);
  Tree loaded = load_parent_array(path);
  CHECK(serialize_tree(loaded) == serialize_tree(to_tree(st)));
  std::remove(path.c_str());
}

TEST_CASE("corrupt parent-array files are rejected") {
  std::string path = "/tmp/patree_test_bad.patree";
  auto write_bytes = [&](const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  };
  write_bytes("PATR");  // truncated header
  CHECK_THROWS_AS(load_parent_array(path), io_error);
  write_bytes("NOPE\x01\x00\x00\x00\x03\x00\x00\x00\x00\x00\x00\x00");
  CHECK_THROWS_AS(load_parent_array(path), io_error);
  {
    // n = 3 with records parent(2) = 3, parent(3) = 2: a cycle off the root.
    std::ofstream out(path, std::ios::binary);
    std::uint32_t version = 1, p2 = 3, p3 = 2;
    std::uint64_t n = 3;
    out.write("PATR", 4);
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(&p2), 4);
    out.write(reinterpret_cast<const char*>(&p3), 4);
  }
  CHECK_THROWS_AS(load_parent_array(path), io_error);
  CHECK_THROWS_AS(load_parent_array("/nonexistent/nope.patree"), io_error);
  std::remove(path.c_str());
}
