#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hooklab/errors.hpp"
#include "hooklab/identities.hpp"
#include "hooklab/stats.hpp"

using namespace hooklab;

namespace {

Census two_way(long a, long b) {
  Census c{FamilySpec::binary(), 2, a + b, 0, {}};
  c.entries.push_back({"x", a, Rational(a + b, 2)});
  c.entries.push_back({"y", b, Rational(a + b, 2)});
  return c;
}

}  // namespace

TEST_CASE("goodness of fit examples") {
  const GofReport perfect = chi_squared_gof(two_way(50, 50));
  CHECK(perfect.statistic == 0.0);
  CHECK(perfect.p_value == 1.0);
  CHECK(perfect.pass);
  CHECK(perfect.dof == 1);

  const GofReport skew = chi_squared_gof(two_way(60, 40));
  CHECK(skew.statistic == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(skew.categories == 2);
  CHECK(skew.min_expected == 50.0);
  CHECK(skew.applicable);

  CHECK(std::abs(chi_squared_sf(3.841, 1) - 0.05) < 0.001);

  // alpha = 1 fails everything but a perfect fit.
  CHECK_FALSE(chi_squared_gof(two_way(51, 49), 1.0).pass);
  CHECK(chi_squared_gof(two_way(50, 50), 1.0).pass);

  Census tiny = two_way(3, 3);
  CHECK_FALSE(chi_squared_gof(tiny).applicable);
  Census zero = two_way(5, 5);
  zero.entries[1].expected = Rational();
  CHECK_THROWS_AS(chi_squared_gof(zero), ValidationError);
}

TEST_CASE("incomplete gamma against erfc") {
  for (double x : {0.1, 1.0, 4.0, 10.0}) {
    CHECK(std::abs(gamma_q(0.5, x / 2) - std::erfc(std::sqrt(x / 2))) < 1e-8);
    CHECK(std::abs(gamma_p(0.5, x / 2) + gamma_q(0.5, x / 2) - 1.0) < 1e-12);
  }
  // Q(1, x) = exp(-x) on both sides of the series/continued fraction split.
  for (double x : {0.3, 1.5, 2.5, 8.0, 30.0}) CHECK(std::abs(gamma_q(1.0, x) - std::exp(-x)) < 1e-12);
  // Even dof: Q(k, x) = exp(-x) sum_{j<k} x^j / j!.
  for (int k : {2, 5, 60}) {
    for (double x : {1.0, 10.0, 70.0}) {
      double term = 1.0, sum = 0.0;
      for (int j = 0; j < k; ++j) {
        sum += term;
        term *= x / (j + 1);
      }
      CHECK(gamma_q(k, x) == doctest::Approx(std::exp(-x) * sum).epsilon(1e-9));
    }
  }
  CHECK(chi_squared_sf(0.0, 0) == 1.0);
  CHECK(chi_squared_sf(0.5, 0) == 0.0);
  CHECK(chi_squared_sf(0.0, 7) == 1.0);
}

TEST_CASE("category spaces") {
  CHECK(category_space(FamilySpec::binary(), 1).size() == 1);
  const auto two = category_space(FamilySpec::binary(), 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].second == Rational(1, 2));
  CHECK(two[1].second == Rational(1, 2));
  CHECK(category_space(FamilySpec::binary(), 5).size() == 120);
  for (const auto& [family, n] : {std::pair{FamilySpec::binary(), 5},
                                  std::pair{FamilySpec::ordered(Rational(10)), 4},
                                  std::pair{FamilySpec::tbar(BranchingOracle::parse("depth:2,3")), 4}}) {
    Rational total;
    const auto space = category_space(family, n);
    for (const auto& entry : space) total += entry.second;
    CHECK(total == Rational(1));
    for (std::size_t i = 1; i < space.size(); ++i) CHECK(space[i - 1].first < space[i].first);
  }
  // Increasing binary trees on n vertices number n!, past the cap at 11.
  CHECK_THROWS_AS(category_space(FamilySpec::binary(), 11), RefusalError);
}

TEST_CASE("minimum sample sizes") {
  // The left or right path on five vertices has probability 1/1024.
  CHECK(minimum_samples(FamilySpec::binary(), 5) == 5120);
  CHECK(minimum_samples(FamilySpec::binary(), 1) == 5);
  CHECK(minimum_samples(FamilySpec::binary(), 2) == 10);
}

TEST_CASE("census") {
  const Census one = run_census(FamilySpec::binary(), 1, 37, 4);
  REQUIRE(one.entries.size() == 1);
  CHECK(one.entries[0].observed == 37);
  CHECK(one.expected_total() == Rational(37));

  const Census two = run_census(FamilySpec::binary(), 2, 1000, 9);
  REQUIRE(two.entries.size() == 2);
  CHECK(two.entries[0].expected == Rational(500));
  CHECK(two.entries[0].observed + two.entries[1].observed == 1000);
  CHECK(two.entries[0].observed > 400);
  CHECK(two.entries[1].observed > 400);
  CHECK(two.csv() == "category,observed,expected\n\"" + two.entries[0].category + "\"," +
                         std::to_string(two.entries[0].observed) + ",500\n\"" +
                         two.entries[1].category + "\"," + std::to_string(two.entries[1].observed) +
                         ",500\n");
}

TEST_CASE("census is reproducible and independent of thread count") {
  const FamilySpec family = FamilySpec::ordered(Rational(5));
  const Census a = run_census(family, 4, 3000, 42, 1);
  const Census b = run_census(family, 4, 3000, 42, 1);
  const Census c = run_census(family, 4, 3000, 42, 5);
  CHECK(a.csv() == b.csv());
  CHECK(a.csv() == c.csv());
  CHECK(a.expected_total() == Rational(3000));
  CHECK(run_census(family, 4, 3000, 43, 1).csv() != a.csv());
}

TEST_CASE("sampled distribution passes at moderate size") {
  const Census c = run_census(FamilySpec::binary(), 4, 20000, 5, 2);
  const GofReport r = chi_squared_gof(c);
  CHECK(r.categories == 24);
  CHECK(r.dof == 23);
  CHECK(r.p_value >= 0.001);
  CHECK(r.statistic >= 0.0);
  const auto j = r.to_json();
  CHECK(j.at("categories") == 24);
  CHECK(j.at("pass") == r.pass);
}
