#ifndef HOOKLAB_STATS_HPP_
#define HOOKLAB_STATS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hooklab/enumerate.hpp"
#include "hooklab/exact.hpp"

namespace hooklab {

inline constexpr long kMaxCategories = 1000000;

struct CensusEntry {
  std::string category;  // labeled canonical encoding
  long observed = 0;
  Rational expected;     // samples * Prob(L)
};

struct Census {
  FamilySpec family;
  int n = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  std::vector<CensusEntry> entries;  // sorted by category

  Rational expected_total() const;
  /// category,observed,expected with the category quoted.
  std::string csv() const;
};

/// Every increasing labeling of size n in the family with its exact
/// probability, sorted by encoding. Throws RefusalError beyond kMaxCategories.
std::vector<std::pair<std::string, Rational>> category_space(const FamilySpec& family, int n);

/// Smallest N with N * min_L Prob(L) >= 5.
long minimum_samples(const FamilySpec& family, int n);

/// Draws `samples` trees (trajectory i uses trajectory_rng(seed, i)) and
/// tallies them. The result does not depend on `threads`.
Census run_census(const FamilySpec& family, int n, long samples, std::uint64_t seed,
                  int threads = 1);

struct GofReport {
  int n = 0;
  std::string family;
  long samples = 0;
  int categories = 0;
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  double alpha = 0.001;
  bool pass = false;
  double min_expected = 0.0;
  /// False when some expected count is below 5.
  bool applicable = true;

  nlohmann::json to_json() const;
};

/// Pearson statistic against the exact expected counts; throws
/// ValidationError if any category has zero expected mass.
GofReport chi_squared_gof(const Census& census, double alpha = 0.001);

/// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// Upper tail of the chi-squared distribution.
double chi_squared_sf(double statistic, int dof);

}  // namespace hooklab

#endif  // HOOKLAB_STATS_HPP_
