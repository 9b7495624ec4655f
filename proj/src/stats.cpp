#include "hooklab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <unordered_map>

#include "hooklab/errors.hpp"
#include "hooklab/identities.hpp"
#include "hooklab/sampler.hpp"

namespace hooklab {

Rational Census::expected_total() const {
  Rational total;
  for (const auto& e : entries) total += e.expected;
  return total;
}

std::string Census::csv() const {
  std::string out = "category,observed,expected\n";
  for (const auto& e : entries)
    out += "\"" + e.category + "\"," + std::to_string(e.observed) + "," + e.expected.str() + "\n";
  return out;
}

std::vector<std::pair<std::string, Rational>> category_space(const FamilySpec& family, int n) {
  check_sampling_config(family, n);
  std::vector<Tree> shapes;
  Integer total = 0;
  for_each_tree(family, n, [&](const Tree& t) {
    total += hook_count(t);
    if (total > kMaxCategories)
      throw RefusalError("category space for " + family.str() + " at n = " + std::to_string(n) +
                         " exceeds " + std::to_string(kMaxCategories) + " labelings");
    shapes.push_back(t);
  });
  std::vector<std::pair<std::string, Rational>> out;
  out.reserve(total.get_ui());
  for (const auto& t : shapes) {
    // Every labeling of a shape has the same probability.
    const Rational p = shape_probability(t, family);
    for_each_labeling(
        t, [&](const LabeledTree& l) { out.emplace_back(encode(l), p); }, n);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

long minimum_samples(const FamilySpec& family, int n) {
  std::optional<Rational> smallest;
  for_each_tree(family, n, [&](const Tree& t) {
    Rational p = shape_probability(t, family);
    if (p.sign() > 0 && (!smallest || p < *smallest)) smallest = p;
  });
  const Rational needed = Rational(5) / *smallest;
  Integer q = needed.numerator() / needed.denominator();
  if (Rational(q) < needed) q += 1;
  if (!q.fits_slong_p()) throw RefusalError("required sample count does not fit in a long");
  return q.get_si();
}

Census run_census(const FamilySpec& family, int n, long samples, std::uint64_t seed, int threads) {
  if (samples < 0) throw ConfigError("sample count must be nonnegative");
  Census census;
  census.family = family;
  census.n = n;
  census.samples = samples;
  census.seed = seed;
  auto space = category_space(family, n);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < space.size(); ++i) index.emplace(space[i].first, i);

  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<long>(1, samples / 1000))));
  std::vector<std::vector<long>> tallies(static_cast<std::size_t>(threads),
                                         std::vector<long>(space.size(), 0));
  std::vector<std::string> failures(static_cast<std::size_t>(threads));
  auto shard = [&](int s) {
    try {
      auto& tally = tallies[static_cast<std::size_t>(s)];
      for (long i = s; i < samples; i += threads) {
        Rng rng = trajectory_rng(seed, static_cast<std::uint64_t>(i));
        const std::string key = encode(grow(family, n, rng));
        auto it = index.find(key);
        if (it == index.end()) throw ConsistencyError("sampled labeling " + key + " is outside the category space");
        ++tally[it->second];
      }
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(s)] = e.what();
    }
  };
  if (threads == 1) {
    shard(0);
  } else {
    std::vector<std::thread> pool;
    for (int s = 0; s < threads; ++s) pool.emplace_back(shard, s);
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures)
    if (!f.empty()) throw ConsistencyError(f);

  census.entries.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    long observed = 0;
    for (const auto& t : tallies) observed += t[i];
    Rational expected = Rational(samples) * space[i].second;
    if (expected.is_zero() && observed != 0)
      throw ConsistencyError("category " + space[i].first + " has zero mass but was observed");
    census.entries.push_back({std::move(space[i].first), observed, std::move(expected)});
  }
  return census;
}

nlohmann::json GofReport::to_json() const {
  return {{"n", n},
          {"family", family},
          {"samples", samples},
          {"categories", categories},
          {"statistic", statistic},
          {"dof", dof},
          {"p_value", p_value},
          {"alpha", alpha},
          {"pass", pass},
          {"min_expected", min_expected},
          {"applicable", applicable}};
}

GofReport chi_squared_gof(const Census& census, double alpha) {
  GofReport r;
  r.n = census.n;
  r.family = census.family.str();
  r.samples = census.samples;
  r.alpha = alpha;
  r.categories = static_cast<int>(census.entries.size());
  r.dof = r.categories - 1;
  r.min_expected = std::numeric_limits<double>::infinity();
  double statistic = 0.0;
  for (const auto& e : census.entries) {
    if (e.expected.sign() <= 0)
      throw ValidationError("category " + e.category + " has zero expected count");
    const double expected = e.expected.to_double();
    const double diff = static_cast<double>(e.observed) - expected;
    statistic += diff * diff / expected;
    r.min_expected = std::min(r.min_expected, expected);
  }
  r.statistic = statistic;
  r.applicable = r.min_expected >= 5.0;
  r.p_value = chi_squared_sf(statistic, r.dof);
  r.pass = r.p_value >= alpha;
  return r;
}

// ------------------------------------------------------- incomplete gamma

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// Series for P(a, x), converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) (modified Lentz), for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw ConfigError("incomplete gamma needs a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw ConfigError("incomplete gamma needs a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi_squared_sf(double statistic, int dof) {
  if (dof < 0) throw ConfigError("negative degrees of freedom");
  // A single category leaves nothing to test.
  if (dof == 0) return statistic == 0.0 ? 1.0 : 0.0;
  return gamma_q(0.5 * dof, 0.5 * statistic);
}

}  // namespace hooklab
