#include <cmath>

#include "doctest.h"
#include "qbd/counting.hpp"
#include "qbd/error.hpp"
#include "qbd/oracle.hpp"

using namespace qbd;

namespace {

// Rooted quadrangulations with a general boundary, n inner faces and
// perimeter 2 ell.
mpz_class general_count(long n, long ell) {
  auto fac = [](long k) {
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
    return out;
  };
  mpz_class three_n;
  mpz_ui_pow_ui(three_n.get_mpz_t(), 3, static_cast<unsigned long>(n));
  return three_n * fac(2 * ell) * fac(2 * n + ell - 1) / (fac(ell) * fac(ell - 1) * fac(n) * fac(n + ell + 1));
}

}  // namespace

TEST_CASE("simple counts against exhaustive enumeration") {
  CHECK(count_simple(0, 2) == 1);
  for (int n = 0; n <= 3; ++n)
    for (int p = 2; p <= 6; p += 2) {
      const auto table = enumerate_boundary_quads(n, p, true);
      CHECK_MESSAGE(count_simple(n, p) == static_cast<unsigned long>(table.size()), "n=" << n << " p=" << p);
      CHECK(pointed_count_simple(n, p) == static_cast<unsigned long>(table.total_multiplicity()));
    }
}

TEST_CASE("general counts against exhaustive enumeration") {
  for (int n = 0; n <= 3; ++n)
    for (int p = 2; p <= 6; p += 2) {
      const auto table = enumerate_boundary_quads(n, p, false);
      CHECK_MESSAGE(general_count(n, p / 2) == static_cast<unsigned long>(table.size()), "n=" << n << " p=" << p);
    }
}

TEST_CASE("out-of-range inputs") {
  CHECK(count_simple(0, 4) == 0);
  CHECK(count_simple(1, 6) == 0);
  CHECK(count_simple(-1, 2) == 0);
  CHECK(count_simple(3, 0) == 0);
  CHECK(count_simple(3, 5) == 0);
  CHECK(pointed_count_simple(0, 2) == 2);
  CHECK(std::isinf(log_count_simple(1, 6)));
}

TEST_CASE("log counts agree with exact values") {
  for (long m : {1L, 5L, 40L, 200L})
    for (long p : {2L, 4L, 10L, 30L}) {
      const mpz_class c = count_simple(m, p);
      if (c == 0) continue;
      const double exact = std::log(mpf_class(c, 256).get_d());
      CHECK(log_count_simple(m, p) == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("asymptotic counts") {
  const double r1 = std::exp(log_count_simple(10'000, 200) - log_count_asymptotic(10'000, 100));
  CHECK(std::abs(r1 - 1) <= 0.02);
  double previous = 1e9;
  for (long m : {1'000L, 10'000L, 100'000L, 1'000'000L}) {
    const long ell = static_cast<long>(std::floor(std::sqrt(static_cast<double>(m))));
    const double err = std::abs(std::exp(log_count_simple(m, 2 * ell) - log_count_asymptotic(m, ell)) - 1);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("restriction probability edge cases") {
  CHECK_THROWS_AS(restriction_probability(1, 4, 1, 2, 4, 4, 10), Error);
  // indicator off: p' - p_left <= p_n / 3
  CHECK(restriction_probability(1, 4, 1, 4, 4, 6, 6) == 0);
  // not enough area left for the complement
  CHECK(restriction_probability(5, 4, 1, 1, 4, 6, 6) == 0);
  // complete case: the complement is the single edge
  const mpq_class full = restriction_probability(2, 6, 1, 2, 2, 6, 6);
  CHECK(full == mpq_class(mpz_class(1), mpz_class((2 + 3 + 1) * count_simple(2, 6))));
  CHECK_THROWS_AS(restriction_probability(1, 4, 1, 1, 1, 6, 6), Error);
}

TEST_CASE("ratio of restriction laws") {
  const RestrictionShape r{500, 60, 10};
  CHECK(ratio_bound_check(r, 100'000, 894, 100'000, 894) == 1.0);
  const double near = ratio_bound_check(r, 100'000, 894, 101'000, 902);
  CHECK(std::abs(near - 1) < 0.1);
  CHECK_THROWS_AS(ratio_bound_check(RestrictionShape{10, 4, 1}, 5, 4, 5, 4), Error);
}

TEST_CASE("first-passage generating function") {
  CHECK_THROWS_AS(gw_generating_function(1, 2, 0.5), Error);
  CHECK_THROWS_AS(gw_generating_function(2, 1, 1.5), Error);
  CHECK(gw_generating_function(3, 1, 1.0) == 1.0);
  CHECK(gw_generating_function(0, 0, 0.0) == doctest::Approx(0.0));
  for (long g : {0L, 1L, 5L, 50L}) {
    double prev = -1;
    for (int k = 0; k < 100; ++k) {
      const double f = gw_generating_function(g, 0, k / 100.0);
      CHECK(f >= prev);
      CHECK(f <= 1.0);
      prev = f;
    }
    CHECK(std::abs(gw_derivative_at_one(g, 0) - 1) < 1e-3);
  }
}

TEST_CASE("first-passage simulation") {
  Rng rng(12);
  const auto zero = gw_first_passage_simulation(0, 100, rng);
  CHECK(zero.mean == 1.0);
  CHECK(zero.standard_error == 0.0);
  const auto one = gw_first_passage_simulation(1, 20'000, rng);
  CHECK(std::abs(one.mean - 1) <= 4 * one.standard_error);
  // P(no first passage) = f(0)
  const double p0 = gw_generating_function(1, 0, 0.0);
  const double se0 = std::sqrt(p0 * (1 - p0) / one.replicates);
  CHECK(std::abs(one.frac_zero - p0) <= 4 * se0);
}
