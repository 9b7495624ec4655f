#include "hooklab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hooklab/enumerate.hpp"
#include "hooklab/errors.hpp"
#include "hooklab/identities.hpp"
#include "hooklab/sampler.hpp"
#include "hooklab/stats.hpp"

namespace hooklab {

namespace {

struct Options {
  std::string what;
  std::string family = "binary";
  int n = 0;
  int n_max = 0;
  std::string m;
  std::string oracle;
  std::uint64_t seed = 0;
  long samples = 200000;
  int count = 1;
  double alpha = 0.001;
  bool json = false;
  bool verbose = false;
  std::string csv;
};

struct UsageError : Error {
  using Error::Error;
};

int worker_threads() {
  if (const char* env = std::getenv("HOOKLAB_THREADS")) {
    try {
      int k = std::stoi(env);
      if (k >= 1) return k;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("HOOKLAB_THREADS must be a positive integer, got '") + env + "'");
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

TreeKind parse_kind(const std::string& name) {
  if (name == "binary") return TreeKind::binary;
  if (name == "ordered") return TreeKind::ordered;
  if (name == "tbar") return TreeKind::tbar;
  throw UsageError("unknown family '" + name + "' (expected binary, ordered or tbar)");
}

// `default_m` empty means symbolic when --m is not given.
FamilySpec make_family(const Options& o, bool m_given, bool oracle_given,
                       const std::optional<Rational>& default_m) {
  const TreeKind kind = parse_kind(o.family);
  if (m_given && kind != TreeKind::ordered) throw UsageError("--m only applies to --family ordered");
  if (oracle_given && kind != TreeKind::tbar) throw UsageError("--oracle only applies to --family tbar");
  switch (kind) {
    case TreeKind::binary:
      return FamilySpec::binary();
    case TreeKind::ordered:
      if (!m_given) return FamilySpec::ordered(default_m);
      if (o.m == "symbolic") return FamilySpec::ordered(std::nullopt);
      return FamilySpec::ordered(Rational::parse(o.m));
    case TreeKind::tbar:
      return FamilySpec::tbar(BranchingOracle::parse(oracle_given ? o.oracle : "const:2"));
  }
  throw UsageError("unknown family");
}

void print_report(const IdentityReport& r, bool json, std::ostream& out) {
  if (json) {
    out << r.to_json().dump() << "\n";
    return;
  }
  out << to_string(r.identity) << " n=" << r.n << " lhs=" << r.lhs_str()
      << " expected=" << r.expected.str() << " holds=" << (r.holds ? "true" : "false")
      << " terms=" << r.term_count << "\n";
}

int cmd_verify(const Options& o, bool m_given, bool oracle_given, std::ostream& out) {
  const std::string& what = o.what;
  auto n_max = [&](int fallback) { return o.n_max > 0 ? o.n_max : fallback; };
  bool all = true;

  if (what == "han" || what == "yang" || what == "han2" || what == "tbar") {
    if (m_given) throw UsageError("--m does not apply to verify " + what);
    if (oracle_given && what != "tbar") throw UsageError("--oracle only applies to verify tbar");
    std::optional<BranchingOracle> oracle;
    if (what == "tbar") oracle = BranchingOracle::parse(oracle_given ? o.oracle : "const:2");
    const int limit = n_max(what == "han" ? 10 : what == "han2" ? 8 : 7);
    for (int n = 1; n <= limit; ++n) {
      IdentityReport r = what == "han"    ? verify_han(n)
                         : what == "yang" ? verify_yang(n)
                         : what == "han2" ? verify_han2(n)
                                          : verify_tbar(*oracle, n);
      all = all && r.holds;
      print_report(r, o.json, out);
    }
    return all ? kExitOk : kExitCheckFailed;
  }

  if (what == "lemma" || what == "labelprob") {
    FamilySpec family = make_family(o, m_given, oracle_given, std::nullopt);
    const int limit = n_max(family.symbolic() && what == "lemma" ? 5 : 6);
    for (int n = 1; n <= limit; ++n) {
      nlohmann::json row{{"check", what}, {"family", family.str()}, {"n", n}};
      bool holds;
      if (what == "lemma") {
        LemmaSweep s = lemma_sweep(family, n);
        holds = s.holds();
        row["states"] = s.states;
        row["failures"] = s.failures;
      } else {
        LabelingSweep s = labeling_sweep(family, n);
        holds = s.holds();
        row["shapes"] = s.shapes;
        row["labelings"] = s.labelings;
        row["unequal_shapes"] = s.unequal_shapes;
        row["closed_form_mismatches"] = s.closed_form_mismatches;
        row["total_mass"] = s.total_mass;
      }
      row["holds"] = holds;
      all = all && holds;
      if (o.json) {
        out << row.dump() << "\n";
      } else {
        out << what << " " << family.str() << " n=" << n;
        for (const auto& [key, value] : row.items()) {
          if (key == "check" || key == "family" || key == "n") continue;
          out << " " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
        }
        out << "\n";
      }
    }
    return all ? kExitOk : kExitCheckFailed;
  }

  throw UsageError("unknown verification '" + what +
                   "' (expected han, yang, tbar, han2, lemma or labelprob)");
}

int cmd_sample(const Options& o, bool m_given, bool oracle_given, std::ostream& out) {
  if (o.n < 1) throw UsageError("--n must be positive");
  if (o.count < 0) throw UsageError("--count must be nonnegative");
  FamilySpec family = make_family(o, m_given, oracle_given, Rational(o.n));
  check_sampling_config(family, o.n);
  for (int i = 0; i < o.count; ++i) {
    Rng rng = trajectory_rng(o.seed, static_cast<std::uint64_t>(i));
    std::vector<GrowthStep> log;
    LabeledTree tree = grow(family, o.n, rng, o.verbose ? &log : nullptr);
    if (o.json) {
      nlohmann::json row{{"index", i}, {"tree", encode(tree)}};
      if (o.verbose) {
        row["log"] = nlohmann::json::array();
        for (const auto& step : log) row["log"].push_back(step.str());
      }
      out << row.dump() << "\n";
    } else {
      for (const auto& step : log) out << "# " << step.str() << "\n";
      out << encode(tree) << "\n";
    }
  }
  return kExitOk;
}

int cmd_mc(const Options& o, bool m_given, bool oracle_given, std::ostream& out, std::ostream& err) {
  if (o.n < 1) throw UsageError("--n must be positive");
  if (o.alpha < 0.0 || o.alpha > 1.0) throw UsageError("--alpha must lie in [0, 1]");
  FamilySpec family = make_family(o, m_given, oracle_given, Rational(o.n));
  check_sampling_config(family, o.n);
  const long needed = minimum_samples(family, o.n);
  if (o.samples < needed) {
    err << "error: --samples " << o.samples << " is below the minimum " << needed
        << " needed for every expected count to reach 5\n";
    return kExitUsage;
  }
  Census census = run_census(family, o.n, o.samples, o.seed, worker_threads());
  if (census.expected_total() != Rational(o.samples))
    throw ConsistencyError("expected counts do not sum to the sample count");
  if (!o.csv.empty()) {
    std::ofstream csv(o.csv);
    if (!csv) throw UsageError("cannot write census to '" + o.csv + "'");
    csv << census.csv();
  }
  GofReport report = chi_squared_gof(census, o.alpha);
  nlohmann::json doc = report.to_json();
  doc["seed"] = o.seed;
  doc["min_samples"] = needed;
  if (o.json) {
    out << doc.dump() << "\n";
  } else {
    for (const auto& [key, value] : doc.items())
      out << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  return report.pass ? kExitOk : kExitCheckFailed;
}

int cmd_census(const Options& o, std::ostream& out) {
  if (o.n < 1 || o.n > 8) throw UsageError("census needs 1 <= --n <= 8");
  auto rows = completion_census(o.n);
  for (const auto& row : rows) {
    std::string hooks;
    for (std::size_t i = 0; i < row.hooks.size(); ++i)
      hooks += (i ? "," : "") + std::to_string(row.hooks[i]);
    if (o.json) {
      out << nlohmann::json{{"tree", row.encoding},
                            {"hooks", row.hooks},
                            {"completion_labelings", row.completion_labelings.get_str()},
                            {"weight", row.weight.str()},
                            {"running_total", row.running_total.str()}}
                 .dump()
          << "\n";
    } else {
      out << row.encoding << " hooks=" << hooks << " f_hat=" << row.completion_labelings.get_str()
          << " weight=" << row.weight.str() << " total=" << row.running_total.str() << "\n";
    }
  }
  const Rational total = rows.empty() ? Rational() : rows.back().running_total;
  const bool holds = total == Rational(1);
  if (o.json)
    out << nlohmann::json{{"n", o.n}, {"total", total.str()}, {"holds", holds}}.dump() << "\n";
  else
    out << "n=" << o.n << " total=" << total.str() << " holds=" << (holds ? "true" : "false") << "\n";
  return holds ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact checks and sampling for hook length formulas on trees", "hooklab"};
  app.require_subcommand(1);

  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "binary, ordered or tbar");
    sub->add_option("--m", o.m, "ordered weight parameter: rational or 'symbolic'");
    sub->add_option("--oracle", o.oracle, "const:K, depth:K1,K2,... or file:PATH");
  };

  CLI::App* verify = app.add_subcommand("verify", "Check identities exactly for n = 1..n-max");
  verify->add_option("what", o.what, "han, yang, tbar, han2, lemma or labelprob")->required();
  verify->add_option("--n-max", o.n_max, "largest size to check");
  add_family(verify);
  verify->add_flag("--json", o.json, "one JSON document per line");

  CLI::App* sample = app.add_subcommand("sample", "Draw labeled trees with the growth process");
  sample->add_option("--n", o.n, "tree size")->required();
  sample->add_option("--count", o.count, "number of trees");
  sample->add_option("--seed", o.seed, "master seed");
  add_family(sample);
  sample->add_flag("--json", o.json, "one JSON document per line");
  sample->add_flag("--verbose", o.verbose, "log every growth step");

  CLI::App* mc = app.add_subcommand("mc", "Chi-squared test of sampled labelings");
  mc->add_option("--n", o.n, "tree size")->required();
  mc->add_option("--samples", o.samples, "number of draws");
  mc->add_option("--seed", o.seed, "master seed");
  mc->add_option("--alpha", o.alpha, "significance level");
  mc->add_option("--csv", o.csv, "write the census as CSV to this path");
  add_family(mc);
  mc->add_flag("--json", o.json, "JSON output");

  CLI::App* census = app.add_subcommand("census", "Completion labeling counts over binary trees");
  census->add_option("--n", o.n, "tree size (at most 8)")->required();
  census->add_flag("--json", o.json, "one JSON document per line");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  auto given = [](CLI::App* sub, const char* name) { return sub->get_option(name)->count() > 0; };
  try {
    if (*verify) return cmd_verify(o, given(verify, "--m"), given(verify, "--oracle"), out);
    if (*sample) return cmd_sample(o, given(sample, "--m"), given(sample, "--oracle"), out);
    if (*mc) return cmd_mc(o, given(mc, "--m"), given(mc, "--oracle"), out, err);
    if (*census) return cmd_census(o, out);
  } catch (const ConsistencyError& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hooklab
