#ifndef HOOKLAB_SAMPLER_HPP_
#define HOOKLAB_SAMPLER_HPP_

// Random growth of increasing labelings, one leaf at a time.
//
// At each step every legal position for a new leaf is offered with an exact
// probability that depends on the family:
//   binary   1/2^d
//   ordered  (m - c_p) / ((c_p + 1) m^d)
//   T-bar    prod over strict ancestors x of the new leaf of 1/cbar_x
// where d is the depth of the new leaf and p its parent. These sum to 1 at
// every state, and every increasing labeling of a shape T ends up with the
// same probability pi(T).

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hooklab/enumerate.hpp"
#include "hooklab/exact.hpp"
#include "hooklab/trees.hpp"

namespace hooklab {

using Rng = std::mt19937_64;

/// Independent stream for trajectory `index` under a master seed.
Rng trajectory_rng(std::uint64_t seed, std::uint64_t index);

struct AddableSite {
  Address parent;
  /// Binary: empty side (0 left, 1 right). Ordered: insertion index 0..c_p.
  /// T-bar: index of the missing child of parent in the infinite tree.
  int slot = 0;
  /// Depth of the new leaf.
  int depth = 0;

  friend bool operator==(const AddableSite&, const AddableSite&) = default;
};

template <typename P>
struct Weighted {
  AddableSite site;
  P probability;
};

/// Legal positions for the next leaf, ordered by parent address then slot.
std::vector<AddableSite> addable_sites(const Tree& t);

/// Exact site probabilities. Ordered families need a concrete m, which must
/// be positive and no smaller than any current child count.
std::vector<Weighted<Rational>> site_probabilities(const Tree& t, const FamilySpec& family);
/// Ordered trees with m kept symbolic.
std::vector<Weighted<RationalFunction>> site_probabilities_symbolic(const Tree& t);

/// True iff the site probabilities of the state sum to exactly 1.
bool lemma_check(const Tree& t, const FamilySpec& family);

/// Adds a leaf labeled |L|+1 at `site`.
LabeledTree attach(const LabeledTree& current, const AddableSite& site, const FamilySpec& family);

/// Index of the site selected by a uniform 64-bit draw `u`: the first i with
/// u / 2^64 < (p_0 + ... + p_i), compared exactly. Probabilities must sum to 1.
std::size_t select_site(std::span<const Rational> probabilities, std::uint64_t u);

struct GrowthStep {
  int label = 0;
  AddableSite site;
  Rational probability;

  /// "label=3 parent=0/1 slot=0 p=1/4"
  std::string str() const;
};

/// Runs the growth process to n vertices. Ordered families need m >= n-1.
LabeledTree grow(const FamilySpec& family, int n, Rng& rng, std::vector<GrowthStep>* log = nullptr);

/// Product over non-root v of the probability v had when it arrived, read off
/// the subtree induced by smaller labels.
Rational labeling_probability(const LabeledTree& labeled, const FamilySpec& family);
RationalFunction labeling_probability_symbolic(const LabeledTree& labeled);

/// Closed forms of pi(T).
Rational shape_probability(const Tree& t, const FamilySpec& family);
RationalFunction shape_probability_symbolic(const Tree& t);

/// Throws ConfigError unless `family` can be sampled at size n.
void check_sampling_config(const FamilySpec& family, int n);

// Exhaustive sweeps over every increasing labeling of size n. Ordered
// families with symbolic m are checked as rational functions.

struct LemmaSweep {
  long states = 0;
  long failures = 0;
  bool holds() const { return failures == 0; }
};

/// Site probabilities sum to 1 at every labeled state of size n.
LemmaSweep lemma_sweep(const FamilySpec& family, int n);

struct LabelingSweep {
  long shapes = 0;
  long labelings = 0;
  /// Shapes whose labelings do not all share one probability.
  long unequal_shapes = 0;
  /// Labelings whose probability differs from the closed form for the shape.
  long closed_form_mismatches = 0;
  /// Sum of Prob(L) over all labelings, rendered exactly.
  std::string total_mass;
  bool total_is_one = false;
  bool holds() const { return unequal_shapes == 0 && closed_form_mismatches == 0 && total_is_one; }
};

LabelingSweep labeling_sweep(const FamilySpec& family, int n);

}  // namespace hooklab

#endif  // HOOKLAB_SAMPLER_HPP_
