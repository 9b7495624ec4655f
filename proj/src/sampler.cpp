#include "hooklab/sampler.hpp"

#include <optional>

#include "hooklab/errors.hpp"
#include "hooklab/identities.hpp"

namespace hooklab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Integer pow_ui(unsigned long base, unsigned long exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

void require_kind(const Tree& t, const FamilySpec& family) {
  if (t.kind() != family.kind)
    throw ValidationError(std::string("tree is ") + to_string(t.kind()) + " but the family is " +
                          family.str());
  if (family.kind == TreeKind::tbar && !respects(t, family.require_oracle()))
    throw ValidationError("tree " + encode(t) + " is not a subtree of " + family.oracle->str());
}

const Rational& concrete_m(const FamilySpec& family) {
  if (!family.m) throw ConfigError("ordered family needs a concrete m here");
  if (family.m->sign() <= 0) throw ConfigError("m must be positive, got " + family.m->str());
  return *family.m;
}

// Product of 1/cbar over the path from the root to v inclusive.
Rational path_weight(const Tree& t, int v) {
  Integer den = 1;
  for (int x = v;; x = t.parent(x)) {
    den *= t.arity(x);
    if (x == Tree::kRoot) break;
  }
  return Rational(Integer(1), den);
}

Rational ordered_probability(const Rational& m, int siblings, int depth) {
  return (m - Rational(siblings)) / (Rational(siblings + 1) * m.pow(depth));
}

RationalFunction ordered_probability(int siblings, int depth) {
  return RationalFunction(Polynomial({Rational(-siblings), Rational(1)}),
                          Polynomial::monomial(Rational(siblings + 1), depth));
}

}  // namespace

Rng trajectory_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

std::vector<AddableSite> addable_sites(const Tree& t) {
  std::vector<AddableSite> sites;
  // Node ids are preorder, which is lexicographic address order.
  for (int v = 0; v < t.size(); ++v) {
    Address a = t.address(v);
    const int depth = t.depth(v) + 1;
    if (t.kind() == TreeKind::ordered) {
      for (int s = 0; s <= t.child_count(v); ++s) sites.push_back({a, s, depth});
      continue;
    }
    const auto& slots = t.slots(v);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (slots[s] == Tree::kEmpty) sites.push_back({a, static_cast<int>(s), depth});
  }
  return sites;
}

std::vector<Weighted<Rational>> site_probabilities(const Tree& t, const FamilySpec& family) {
  require_kind(t, family);
  std::vector<Weighted<Rational>> out;
  if (family.kind == TreeKind::ordered) {
    const Rational& m = concrete_m(family);
    for (int v = 0; v < t.size(); ++v)
      if (m < Rational(t.child_count(v)))
        throw ArithmeticError("negative growth probability: m = " + m.str() + " is below the " +
                              std::to_string(t.child_count(v)) + " children at '" +
                              t.address(v).str() + "'");
  }
  for (auto& site : addable_sites(t)) {
    const int parent = t.find(site.parent);
    Rational p;
    switch (family.kind) {
      case TreeKind::binary:
        p = Rational(Integer(1), pow_ui(2, static_cast<unsigned long>(site.depth)));
        break;
      case TreeKind::ordered:
        p = ordered_probability(*family.m, t.child_count(parent), site.depth);
        break;
      case TreeKind::tbar:
        p = path_weight(t, parent);
        break;
    }
    out.push_back({std::move(site), std::move(p)});
  }
  return out;
}

std::vector<Weighted<RationalFunction>> site_probabilities_symbolic(const Tree& t) {
  if (t.kind() != TreeKind::ordered) throw ConfigError("symbolic probabilities need an ordered tree");
  std::vector<Weighted<RationalFunction>> out;
  for (auto& site : addable_sites(t)) {
    const int siblings = t.child_count(t.find(site.parent));
    RationalFunction p = ordered_probability(siblings, site.depth);
    out.push_back({std::move(site), std::move(p)});
  }
  return out;
}

bool lemma_check(const Tree& t, const FamilySpec& family) {
  if (family.symbolic()) {
    RationalFunction sum;
    for (const auto& w : site_probabilities_symbolic(t)) sum += w.probability;
    return sum == RationalFunction(Rational(1));
  }
  Rational sum;
  for (const auto& w : site_probabilities(t, family)) sum += w.probability;
  return sum == Rational(1);
}

LabeledTree attach(const LabeledTree& current, const AddableSite& site, const FamilySpec& family) {
  const Tree& t = current.shape();
  if (t.kind() != family.kind) throw ValidationError("tree kind does not match the family");
  const int parent = t.find(site.parent);
  TreeBuilder b(t);
  int leaf;
  switch (family.kind) {
    case TreeKind::binary:
      leaf = b.add_child(parent, site.slot);
      break;
    case TreeKind::ordered:
      leaf = b.insert_child(parent, site.slot);
      break;
    case TreeKind::tbar:
      leaf = b.add_child(parent, site.slot, family.require_oracle().children(site.parent.child(site.slot)));
      break;
    default:
      throw ConfigError("unknown family");
  }
  std::vector<int> remap;
  Tree grown = b.build(&remap);
  std::vector<int> labels(static_cast<std::size_t>(grown.size()));
  for (int v = 0; v < t.size(); ++v)
    labels[static_cast<std::size_t>(remap[static_cast<std::size_t>(v)])] = current.label(v);
  labels[static_cast<std::size_t>(remap[static_cast<std::size_t>(leaf)])] = grown.size();
  return LabeledTree(std::move(grown), std::move(labels));
}

std::size_t select_site(std::span<const Rational> probabilities, std::uint64_t u) {
  if (probabilities.empty()) throw ConsistencyError("no site to select");
  Integer common = 1;
  for (const auto& p : probabilities) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), p.denominator().get_mpz_t());
  const Integer scaled_u = Integer(static_cast<unsigned long>(u)) * common;
  const Integer two64 = pow_ui(2, 64);
  Integer cumulative = 0;
  std::size_t chosen = probabilities.size();
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const auto& p = probabilities[i];
    if (p.sign() < 0) throw ConsistencyError("negative site probability " + p.str());
    cumulative += p.numerator() * (common / p.denominator());
    if (chosen == probabilities.size() && scaled_u < cumulative * two64) chosen = i;
  }
  if (cumulative != common) throw ConsistencyError("site probabilities do not sum to 1");
  return chosen;
}

std::string GrowthStep::str() const {
  return "label=" + std::to_string(label) +
         " parent=" + (site.parent.depth() ? site.parent.str() : std::string("root")) +
         " slot=" + std::to_string(site.slot) + " p=" + probability.str();
}

void check_sampling_config(const FamilySpec& family, int n) {
  if (n < 1) throw ConfigError("tree size must be positive, got " + std::to_string(n));
  switch (family.kind) {
    case TreeKind::binary:
      return;
    case TreeKind::ordered:
      if (!family.m) throw ConfigError("sampling ordered trees needs a concrete m");
      if (*family.m < Rational(n - 1))
        throw ConfigError("sampling ordered trees of size " + std::to_string(n) + " needs m >= " +
                          std::to_string(n - 1) + ", got " + family.m->str());
      if (family.m->sign() <= 0) throw ConfigError("m must be positive");
      return;
    case TreeKind::tbar:
      family.require_oracle();
      return;
  }
}

LabeledTree grow(const FamilySpec& family, int n, Rng& rng, std::vector<GrowthStep>* log) {
  check_sampling_config(family, n);
  const int root_arity = family.kind == TreeKind::tbar ? family.oracle->children(Address{}) : 2;
  LabeledTree current(Tree::single(family.kind, root_arity), {1});
  std::vector<Rational> probs;
  while (current.size() < n) {
    auto sites = site_probabilities(current.shape(), family);
    probs.clear();
    for (const auto& s : sites) probs.push_back(s.probability);
    const std::size_t i = select_site(probs, rng());
    if (log) log->push_back({current.size() + 1, sites[i].site, sites[i].probability});
    current = attach(current, sites[i].site, family);
  }
  return current;
}

namespace {

// For the vertex labeled k: parent, depth, and how many of the parent's
// children were already present when it arrived.
struct Arrival {
  int parent;
  int depth;
  int siblings;
};

Arrival arrival(const LabeledTree& labeled, int k) {
  const Tree& t = labeled.shape();
  const int v = labeled.node_with_label(k);
  const int p = t.parent(v);
  int siblings = 0;
  for (int c : t.children(p))
    if (labeled.label(c) < k) ++siblings;
  return {p, t.depth(v), siblings};
}

}  // namespace

Rational labeling_probability(const LabeledTree& labeled, const FamilySpec& family) {
  const Tree& t = labeled.shape();
  require_kind(t, family);
  Rational prob(1);
  for (int k = 2; k <= t.size(); ++k) {
    const Arrival a = arrival(labeled, k);
    switch (family.kind) {
      case TreeKind::binary:
        prob *= Rational(Integer(1), pow_ui(2, static_cast<unsigned long>(a.depth)));
        break;
      case TreeKind::ordered:
        prob *= ordered_probability(concrete_m(family), a.siblings, a.depth);
        break;
      case TreeKind::tbar:
        prob *= path_weight(t, a.parent);
        break;
    }
  }
  return prob;
}

RationalFunction labeling_probability_symbolic(const LabeledTree& labeled) {
  const Tree& t = labeled.shape();
  if (t.kind() != TreeKind::ordered) throw ConfigError("symbolic probabilities need an ordered tree");
  RationalFunction prob(Rational(1));
  for (int k = 2; k <= t.size(); ++k) {
    const Arrival a = arrival(labeled, k);
    prob *= ordered_probability(a.siblings, a.depth);
  }
  return prob;
}

Rational shape_probability(const Tree& t, const FamilySpec& family) {
  require_kind(t, family);
  const auto h = hooks(t);
  switch (family.kind) {
    case TreeKind::binary: {
      unsigned long e = 0;
      for (int x : h) e += static_cast<unsigned long>(x - 1);
      return Rational(Integer(1), pow_ui(2, e));
    }
    case TreeKind::ordered: {
      const Rational& m = concrete_m(family);
      Rational prob(1);
      for (int v = 0; v < t.size(); ++v)
        prob *= binomial_poly(t.child_count(v)).eval(m) / m.pow(h[static_cast<std::size_t>(v)] - 1);
      return prob;
    }
    case TreeKind::tbar: {
      Integer den = 1;
      for (int v = 0; v < t.size(); ++v)
        den *= pow_ui(static_cast<unsigned long>(t.arity(v)),
                      static_cast<unsigned long>(h[static_cast<std::size_t>(v)] - 1));
      return Rational(Integer(1), den);
    }
  }
  return Rational();
}

RationalFunction shape_probability_symbolic(const Tree& t) {
  if (t.kind() != TreeKind::ordered) throw ConfigError("symbolic probabilities need an ordered tree");
  Polynomial weight = Polynomial::constant(1);
  int exponent = 0;
  const auto h = hooks(t);
  for (int v = 0; v < t.size(); ++v) {
    weight = weight * binomial_poly(t.child_count(v));
    exponent += h[static_cast<std::size_t>(v)] - 1;
  }
  return RationalFunction(weight, Polynomial::monomial(Rational(1), exponent));
}

namespace {

template <typename P, typename LabelProb, typename ShapeProb>
LabelingSweep sweep_labelings(const FamilySpec& family, int n, LabelProb label_prob,
                              ShapeProb shape_prob) {
  LabelingSweep out;
  P total;
  for_each_tree(family, n, [&](const Tree& t) {
    ++out.shapes;
    const P closed = shape_prob(t);
    std::optional<P> first;
    bool equal = true;
    for_each_labeling(t, [&](const LabeledTree& l) {
      ++out.labelings;
      P p = label_prob(l);
      if (!(p == closed)) ++out.closed_form_mismatches;
      if (!first)
        first = p;
      else if (!(p == *first))
        equal = false;
      total += p;
    }, n);
    if (!equal) ++out.unequal_shapes;
  });
  out.total_mass = total.str();
  out.total_is_one = total == P(Rational(1));
  return out;
}

}  // namespace

LemmaSweep lemma_sweep(const FamilySpec& family, int n) {
  LemmaSweep out;
  for_each_tree(family, n, [&](const Tree& t) {
    for_each_labeling(t, [&](const LabeledTree& l) {
      ++out.states;
      if (!lemma_check(l.shape(), family)) ++out.failures;
    }, n);
  });
  return out;
}

LabelingSweep labeling_sweep(const FamilySpec& family, int n) {
  if (family.symbolic())
    return sweep_labelings<RationalFunction>(
        family, n, [](const LabeledTree& l) { return labeling_probability_symbolic(l); },
        [](const Tree& t) { return shape_probability_symbolic(t); });
  return sweep_labelings<Rational>(
      family, n, [&](const LabeledTree& l) { return labeling_probability(l, family); },
      [&](const Tree& t) { return shape_probability(t, family); });
}

}  // namespace hooklab
