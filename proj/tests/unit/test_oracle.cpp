#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "qbd/error.hpp"
#include "qbd/oracle.hpp"

using namespace qbd;

TEST_CASE("universe tables") {
  const auto t = enumerate_boundary_quads(1, 4, true);
  REQUIRE(t.size() == 1);
  CHECK(t.total_multiplicity() == 4);
  CHECK(t.find(t.codes[0]).has_value());
  CHECK_FALSE(t.find("nope").has_value());

  const auto pointed = enumerate_boundary_quads(2, 4, true, true);
  CHECK(pointed.total_multiplicity() == pointed.size());
  CHECK(std::is_sorted(pointed.codes.begin(), pointed.codes.end()));

  std::stringstream ss;
  write_universe(ss, pointed);
  const auto back = read_universe(ss);
  CHECK(back.codes == pointed.codes);
  CHECK(back.multiplicities == pointed.multiplicities);
  CHECK(back.pointed);
}

TEST_CASE("universe cache") {
  const auto dir = std::filesystem::temp_directory_path() / "qbd_universe_test";
  std::filesystem::remove_all(dir);
  const auto first = cached_universe(dir, 2, 4, true);
  const auto second = cached_universe(dir, 2, 4, true);
  CHECK(first.codes == second.codes);
  CHECK(!std::filesystem::is_empty(dir));
  std::filesystem::remove_all(dir);
}

TEST_CASE("enumeration limit") {
  CHECK_THROWS_AS(for_each_treed_bridge(20, 20, [](const LabeledTreedBridge&) {}, 1000), Error);
}

TEST_CASE("chi-square") {
  const auto fair = chi_square_counts({100, 100, 100, 100}, {0.25, 0.25, 0.25, 0.25});
  CHECK(fair.statistic == doctest::Approx(0.0));
  CHECK(fair.degrees_of_freedom == 3);
  CHECK(fair.p_value == doctest::Approx(1.0));
  const auto skewed = chi_square_counts({400, 0, 0, 0}, {0.25, 0.25, 0.25, 0.25});
  CHECK(skewed.p_value < 1e-10);

  const auto t = enumerate_boundary_quads(1, 4, true);
  CHECK_THROWS_AS(chi_square_uniformity({"unknown"}, t), Error);
}

TEST_CASE("calibrated null") {
  // Uniform draws over 20 cells: rejections at level 0.01 stay near 1%.
  Rng rng(8);
  int rejections = 0;
  const int trials = 400;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::uint64_t> counts(20, 0);
    for (int i = 0; i < 2000; ++i) ++counts[rng.uniform_int(0, 19)];
    if (chi_square_counts(counts, std::vector<double>(20, 0.05)).p_value < 0.01) ++rejections;
  }
  CHECK(rejections <= 12);
}

TEST_CASE("empirical total variation") {
  const std::vector<std::string> a{"x", "y", "x", "y"};
  const std::vector<std::string> b{"z", "z"};
  CHECK(empirical_tv(a, a) == 0.0);
  CHECK(empirical_tv(a, b) == 1.0);
  CHECK(empirical_tv(a, {"x", "x"}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(empirical_tv({}, b), Error);
  const auto est = empirical_tv_bootstrap(a, {"x", "x", "y", "z"}, 200, 0.95, 3);
  CHECK(est.lower <= est.estimate + 1e-12);
  CHECK(est.estimate <= est.upper + 1e-12);
}
