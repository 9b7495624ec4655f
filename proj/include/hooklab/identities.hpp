#ifndef HOOKLAB_IDENTITIES_HPP_
#define HOOKLAB_IDENTITIES_HPP_

// Exact left-hand sides of the hook-length identities, term by term over the
// tree families, plus labeling counts by formula and by brute force.
//
// Yang's identity is evaluated in its s-free form; the version with an extra
// weight s^{c_v} per vertex is s^{n-1} times the same sum.

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hooklab/enumerate.hpp"
#include "hooklab/exact.hpp"
#include "hooklab/trees.hpp"

namespace hooklab {

enum class Identity { han, yang, tbar, han2 };

const char* to_string(Identity identity);

struct IdentityReport {
  Identity identity = Identity::han;
  int n = 0;
  std::variant<Rational, RationalFunction> lhs;
  Rational expected;
  bool holds = false;
  long term_count = 0;

  std::string lhs_str() const;
  nlohmann::json to_json() const;
};

// Per-tree summands.
Rational han_term(const Tree& t);
/// w(T) = prod over v of C(m, c_v).
Polynomial yang_weight(const Tree& t);
RationalFunction yang_term(const Tree& t);
/// Branching counts are the tree's slot counts (trees from for_each_tbar).
Rational tbar_term(const Tree& t);
Rational han2_term(const Tree& t);

Rational han_lhs(int n, long* term_count = nullptr);
RationalFunction yang_lhs(int n, long* term_count = nullptr);
/// Yang's sum with every term evaluated at m0 before summing, i.e. without
/// forming the reduced rational function first.
Rational yang_sum_at(int n, const Rational& m0);
Rational tbar_lhs(const BranchingOracle& oracle, int n, long* term_count = nullptr);
Rational han2_lhs(int n, long* term_count = nullptr);

IdentityReport verify_han(int n);
IdentityReport verify_yang(int n);
IdentityReport verify_tbar(const BranchingOracle& oracle, int n);
IdentityReport verify_han2(int n);

/// n!/prod h_v; throws ConsistencyError if the division is not exact.
Integer hook_count(const Tree& t);

inline constexpr int kBruteForceLimit = 11;

/// Counts increasing labelings by placing labels 1..n in order, each on a
/// vertex whose parent is already labeled. Throws RefusalError above `limit`.
Integer brute_force_labelings(const Tree& t, int limit = kBruteForceLimit);

/// Visits every increasing labeling of t (same backtracking as above).
void for_each_labeling(const Tree& t, const std::function<void(const LabeledTree&)>& visit,
                       int limit = kBruteForceLimit);

/// (2n+1)!/prod (2h_v+1): labelings of the completion of binary tree t.
Integer completion_count(const Tree& t);

/// Sum over binary trees of f^T * prod 1/2^{h_v-1}; equals 1.
Rational labeling_mass_binary(int n);
/// Sum over binary trees of f^{completion} * prod 1/2^{2h_v-1}; equals 1.
Rational completion_mass(int n);

struct CompletionCensusRow {
  std::string encoding;
  std::vector<int> hooks;  // sorted descending
  Integer completion_labelings;
  Rational weight;
  Rational running_total;
};

std::vector<CompletionCensusRow> completion_census(int n);

}  // namespace hooklab

#endif  // HOOKLAB_IDENTITIES_HPP_
