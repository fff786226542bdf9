#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "patree/local_limit.hpp"
#include "patree/rng.hpp"
#include "patree/tree.hpp"

using namespace patree;

TEST_CASE("total variation between code distributions") {
  CodeDistribution a, b;
  a.add("()", 3);
  b.add("()", 7);
  CHECK(tv_between(a, b) == 0.0);  // same point mass

  CodeDistribution c, d;
  c.add("x", 1);
  d.add("y", 1);
  CHECK(tv_between(c, d) == 1.0);  // disjoint supports

  CodeDistribution e, f;
  e.add("x", 1);
  e.add("y", 1);
  f.add("x", 1);
  CHECK(tv_between(e, f) == Catch::Approx(0.5));

  CodeDistribution empty;
  CHECK_THROWS_AS(tv_between(empty, a), std::invalid_argument);
  CHECK(a.mass("()") == 1.0);
  CHECK(a.mass("missing") == 0.0);
}

TEST_CASE("radius-0 codes distinguish loops only") {
  Tree plain = make_path(4);
  Tree looped = make_looped_forest(2);
  CHECK(ahu_code(plain, 1, 0) == "()");
  CHECK(ahu_code(looped, 0, 0) == "(*)");
}

TEST_CASE("empirical ball distributions are reproducible and complete") {
  Tree seed = make_star(2);
  CodeDistribution a = empirical_ball_distribution(seed, 300, 1, 20, 5, 99);
  CodeDistribution b = empirical_ball_distribution(seed, 300, 1, 20, 5, 99);
  CHECK(a.total == 20 * 5);
  CHECK(a.counts == b.counts);
  CHECK(tv_between(a, b) == 0.0);
  // A different master seed moves at least one count.
  CodeDistribution c = empirical_ball_distribution(seed, 300, 1, 20, 5, 100);
  CHECK(a.counts != c.counts);
  // Threaded evaluation merges in replica order: identical counts.
  CodeDistribution d = empirical_ball_distribution(seed, 300, 1, 20, 5, 99, 0, 3);
  CHECK(a.counts == d.counts);
  CHECK_THROWS_AS(empirical_ball_distribution(seed, 300, -1, 20, 5, 99),
                  std::invalid_argument);
}

TEST_CASE("limit-ball root degrees follow 4 / (k (k+1) (k+2))") {
  const int n = 30000;
  std::uint64_t counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < n; ++i) {
    RngStream rng(77, static_cast<std::uint64_t>(i));
    PolyaPointBall ball = sample_polya_point_ball(1, rng);
    int deg = ball.tree.degree(ball.root);
    REQUIRE(deg >= 1);
    if (deg <= 3) ++counts[deg];
  }
  double expected[4] = {0.0, 2.0 / 3.0, 1.0 / 6.0, 1.0 / 15.0};
  for (int k = 1; k <= 3; ++k) {
    double p = expected[k];
    double se = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(static_cast<double>(counts[k]) / n - p) < 4.0 * se);
  }
}

TEST_CASE("limit-ball distribution helper aggregates samples") {
  CodeDistribution d = polya_point_ball_distribution(1, 2000, 7);
  CHECK(d.total == 2000);
  // Radius-1 code of a degree-k root is k empty children.
  double p1 = d.mass("(())");
  CHECK(std::abs(p1 - 2.0 / 3.0) < 4.0 * std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / 2000.0));
  CodeDistribution d2 = polya_point_ball_distribution(1, 2000, 7);
  CHECK(d.counts == d2.counts);
}

TEST_CASE("ball sampling refuses to truncate oversized balls") {
  // With a node cap of 1 even the root's first neighbor overflows.
  RngStream rng(78, 0);
  CHECK_THROWS_AS(sample_polya_point_ball(1, rng, 1), numerical_error);
}

TEST_CASE("tree and urn balls agree more often as n grows") {
  Tree seed = make_star(2);
  double early = coupled_ball_disagreement_rate(seed, 300, 1, 60, 50, 11);
  double late = coupled_ball_disagreement_rate(seed, 3000, 1, 60, 50, 11, 60);
  CHECK(late < early);
  CHECK(early < 0.8);
  CHECK(late < 0.35);
}
