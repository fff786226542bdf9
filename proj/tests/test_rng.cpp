#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "patree/rng.hpp"

using namespace patree;

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool same = true, diff_stream = false, diff_seed = false;
  for (int i = 0; i < 256; ++i) {
    auto x = a.u64();
    same = same && x == b.u64();
    diff_stream = diff_stream || x != c.u64();
    diff_seed = diff_seed || x != d.u64();
  }
  CHECK(same);
  CHECK(diff_stream);
  CHECK(diff_seed);
  CHECK(std::string(RngStream::generator_name()).find("mt19937_64") != std::string::npos);
}

TEST_CASE("uniform01 stays in [0,1) and uniform01_pos is positive") {
  RngStream rng(1, 0);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 20000; ++i) {
    double u = rng.uniform01();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(rng.uniform01_pos() > 0.0);
  }
  CHECK(lo < 0.001);
  CHECK(hi > 0.999);
}

TEST_CASE("uniform_below is unbiased over a small range") {
  RngStream rng(2, 0);
  const int n = 5, draws = 100000;
  std::vector<int> counts(n, 0);
  for (int i = 0; i < draws; ++i) ++counts[rng.uniform_below(n)];
  double expect = static_cast<double>(draws) / n;
  double sigma = std::sqrt(expect * (1.0 - 1.0 / n));
  for (int k = 0; k < n; ++k) CHECK(std::abs(counts[k] - expect) < 5.0 * sigma);
}

TEST_CASE("normal, exponential, and gamma match their first two moments") {
  RngStream rng(3, 0);
  const int draws = 200000;

  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  CHECK_THAT(s / draws, Catch::Matchers::WithinAbs(0.0, 0.015));
  CHECK_THAT(s2 / draws, Catch::Matchers::WithinAbs(1.0, 0.03));

  s = 0.0;
  for (int i = 0; i < draws; ++i) s += rng.exponential();
  CHECK_THAT(s / draws, Catch::Matchers::WithinAbs(1.0, 0.015));

  for (double shape : {0.5, 1.0, 3.7}) {
    s = s2 = 0.0;
    for (int i = 0; i < draws; ++i) {
      double x = rng.gamma(shape);
      s += x;
      s2 += x * x;
    }
    double mean = s / draws;
    double var = s2 / draws - mean * mean;
    // Gamma(shape) has mean = var = shape; Var(sample var) ~ (2k^2 + 6k)/n.
    CHECK_THAT(mean, Catch::Matchers::WithinAbs(shape, 5.0 * std::sqrt(shape / draws)));
    double var_of_var = (2.0 * shape * shape + 6.0 * shape) / draws;
    CHECK_THAT(var, Catch::Matchers::WithinAbs(shape, 6.0 * std::sqrt(var_of_var)));
  }
}

TEST_CASE("beta and dirichlet have the right means") {
  RngStream rng(4, 0);
  const int draws = 200000;
  double s = 0.0;
  for (int i = 0; i < draws; ++i) s += rng.beta(2.0, 3.0);
  CHECK_THAT(s / draws, Catch::Matchers::WithinAbs(0.4, 0.006));

  std::vector<double> alpha{1.0, 2.0, 3.0};
  std::vector<double> mean(3, 0.0);
  for (int i = 0; i < 50000; ++i) {
    auto x = rng.dirichlet(alpha);
    double total = x[0] + x[1] + x[2];
    REQUIRE_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
    for (int k = 0; k < 3; ++k) mean[k] += x[k];
  }
  for (int k = 0; k < 3; ++k)
    CHECK_THAT(mean[k] / 50000, Catch::Matchers::WithinAbs(alpha[k] / 6.0, 0.01));
}
