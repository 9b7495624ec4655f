#include "hooklab/identities.hpp"

#include <algorithm>
#include <functional>

#include "hooklab/errors.hpp"

namespace hooklab {

const char* to_string(Identity identity) {
  switch (identity) {
    case Identity::han: return "han";
    case Identity::yang: return "yang";
    case Identity::tbar: return "tbar";
    case Identity::han2: return "han2";
  }
  return "?";
}

std::string IdentityReport::lhs_str() const {
  return std::visit([](const auto& v) { return v.str(); }, lhs);
}

nlohmann::json IdentityReport::to_json() const {
  return {{"identity", to_string(identity)},
          {"n", n},
          {"lhs", lhs_str()},
          {"expected", expected.str()},
          {"holds", holds},
          {"term_count", term_count}};
}

namespace {

Integer pow2(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

Rational inverse_factorial(int n) { return Rational(1, 1) / Rational(factorial(static_cast<unsigned>(n))); }

const Polynomial& cached_binomial(int k) {
  static thread_local std::vector<Polynomial> cache;
  while (static_cast<int>(cache.size()) <= k) cache.push_back(binomial_poly(static_cast<int>(cache.size())));
  return cache[static_cast<std::size_t>(k)];
}

}  // namespace

// ------------------------------------------------------------------ terms

Rational han_term(const Tree& t) {
  Integer hook_product = 1;
  unsigned long exponent = 0;
  for (int h : hooks(t)) {
    hook_product *= h;
    exponent += static_cast<unsigned long>(h - 1);
  }
  return Rational(Integer(1), hook_product * pow2(exponent));
}

Polynomial yang_weight(const Tree& t) {
  Polynomial w = Polynomial::constant(1);
  for (int v = 0; v < t.size(); ++v) {
    int c = t.child_count(v);
    if (c > 0) w = w * cached_binomial(c);
  }
  return w;
}

RationalFunction yang_term(const Tree& t) {
  Integer hook_product = 1;
  int exponent = 0;
  for (int h : hooks(t)) {
    hook_product *= h;
    exponent += h - 1;
  }
  return RationalFunction(yang_weight(t), Polynomial::monomial(Rational(hook_product), exponent));
}

Rational tbar_term(const Tree& t) {
  auto h = hooks(t);
  Integer den = 1;
  for (int v = 0; v < t.size(); ++v) {
    const int hv = h[static_cast<std::size_t>(v)];
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(t.arity(v)),
                  static_cast<unsigned long>(hv - 1));
    den *= power * hv;
  }
  return Rational(Integer(1), den);
}

Rational han2_term(const Tree& t) {
  Integer den = 1;
  unsigned long exponent = 0;
  for (int h : hooks(t)) {
    den *= 2 * h + 1;
    exponent += static_cast<unsigned long>(2 * h - 1);
  }
  return Rational(Integer(1), den * pow2(exponent));
}

// ------------------------------------------------------------------- sums

Rational han_lhs(int n, long* term_count) {
  Rational sum;
  long count = 0;
  for_each_binary(n, [&](const Tree& t) {
    sum += han_term(t);
    ++count;
  });
  if (term_count) *term_count = count;
  return sum;
}

RationalFunction yang_lhs(int n, long* term_count) {
  RationalFunction sum;
  long count = 0;
  for_each_ordered(n, [&](const Tree& t) {
    sum += yang_term(t);
    ++count;
  });
  if (term_count) *term_count = count;
  return sum;
}

Rational yang_sum_at(int n, const Rational& m0) {
  Rational sum;
  for_each_ordered(n, [&](const Tree& t) {
    Integer hook_product = 1;
    int exponent = 0;
    for (int h : hooks(t)) {
      hook_product *= h;
      exponent += h - 1;
    }
    sum += yang_weight(t).eval(m0) / (Rational(hook_product) * m0.pow(exponent));
  });
  return sum;
}

Rational tbar_lhs(const BranchingOracle& oracle, int n, long* term_count) {
  Rational sum;
  long count = 0;
  for_each_tbar(oracle, n, [&](const Tree& t) {
    sum += tbar_term(t);
    ++count;
  });
  if (term_count) *term_count = count;
  return sum;
}

Rational han2_lhs(int n, long* term_count) {
  Rational sum;
  long count = 0;
  for_each_binary(n, [&](const Tree& t) {
    sum += han2_term(t);
    ++count;
  });
  if (term_count) *term_count = count;
  return sum;
}

// ---------------------------------------------------------------- reports

IdentityReport verify_han(int n) {
  IdentityReport r;
  r.identity = Identity::han;
  r.n = n;
  Rational lhs = han_lhs(n, &r.term_count);
  r.expected = inverse_factorial(n);
  r.holds = lhs == r.expected;
  r.lhs = std::move(lhs);
  return r;
}

IdentityReport verify_yang(int n) {
  IdentityReport r;
  r.identity = Identity::yang;
  r.n = n;
  RationalFunction lhs = yang_lhs(n, &r.term_count);
  r.expected = inverse_factorial(n);
  r.holds = lhs == RationalFunction(r.expected);
  r.lhs = std::move(lhs);
  return r;
}

IdentityReport verify_tbar(const BranchingOracle& oracle, int n) {
  IdentityReport r;
  r.identity = Identity::tbar;
  r.n = n;
  Rational lhs = tbar_lhs(oracle, n, &r.term_count);
  r.expected = inverse_factorial(n);
  r.holds = lhs == r.expected;
  r.lhs = std::move(lhs);
  return r;
}

IdentityReport verify_han2(int n) {
  IdentityReport r;
  r.identity = Identity::han2;
  r.n = n;
  Rational lhs = han2_lhs(n, &r.term_count);
  r.expected = inverse_factorial(2 * n + 1);
  r.holds = lhs == r.expected;
  r.lhs = std::move(lhs);
  return r;
}

// ------------------------------------------------------- labeling counts

Integer hook_count(const Tree& t) {
  Integer hook_product = 1;
  for (int h : hooks(t)) hook_product *= h;
  Integer total = factorial(static_cast<unsigned>(t.size()));
  if (!mpz_divisible_p(total.get_mpz_t(), hook_product.get_mpz_t()))
    throw ConsistencyError("hook product does not divide n! for " + encode(t));
  return total / hook_product;
}

namespace {

// Places labels in increasing order; `frontier` holds the unlabeled vertices
// whose parent already carries a label.
class LabelingSearch {
 public:
  LabelingSearch(const Tree& t, int limit) : tree_(t) {
    if (t.size() > limit)
      throw RefusalError("brute-force labeling refused: " + std::to_string(t.size()) +
                         " vertices exceeds the bound of " + std::to_string(limit));
    labels_.assign(static_cast<std::size_t>(t.size()), 0);
  }

  Integer count() {
    Integer total = 0;
    run([&] { total += 1; });
    return total;
  }

  void visit(const std::function<void(const LabeledTree&)>& fn) {
    run([&] { fn(LabeledTree(tree_, labels_)); });
  }

 private:
  template <typename Leaf>
  void run(Leaf&& leaf) {
    frontier_.clear();
    labels_[Tree::kRoot] = 1;
    for (int c : tree_.children(Tree::kRoot)) frontier_.push_back(c);
    step(2, leaf);
  }

  template <typename Leaf>
  void step(int next, Leaf& leaf) {
    if (next > tree_.size()) {
      leaf();
      return;
    }
    for (std::size_t i = 0; i < frontier_.size(); ++i) {
      const int v = frontier_[i];
      labels_[static_cast<std::size_t>(v)] = next;
      const std::size_t mark = frontier_.size();
      frontier_[i] = frontier_.back();
      frontier_.pop_back();
      for (int c : tree_.children(v)) frontier_.push_back(c);
      step(next + 1, leaf);
      frontier_.resize(mark - 1);
      frontier_.push_back(v);
      std::swap(frontier_[i], frontier_.back());
      labels_[static_cast<std::size_t>(v)] = 0;
    }
  }

  const Tree& tree_;
  std::vector<int> labels_;
  std::vector<int> frontier_;
};

}  // namespace

Integer brute_force_labelings(const Tree& t, int limit) { return LabelingSearch(t, limit).count(); }

void for_each_labeling(const Tree& t, const std::function<void(const LabeledTree&)>& visit,
                       int limit) {
  LabelingSearch(t, limit).visit(visit);
}

Integer completion_count(const Tree& t) {
  if (t.kind() != TreeKind::binary) throw ConfigError("completion_count needs a binary tree");
  Integer den = 1;
  for (int h : hooks(t)) den *= 2 * h + 1;
  Integer total = factorial(static_cast<unsigned>(2 * t.size() + 1));
  if (!mpz_divisible_p(total.get_mpz_t(), den.get_mpz_t()))
    throw ConsistencyError("completion hook product does not divide (2n+1)! for " + encode(t));
  return total / den;
}

Rational labeling_mass_binary(int n) {
  Rational sum;
  for_each_binary(n, [&](const Tree& t) {
    unsigned long exponent = 0;
    for (int h : hooks(t)) exponent += static_cast<unsigned long>(h - 1);
    sum += Rational(hook_count(t), pow2(exponent));
  });
  return sum;
}

Rational completion_mass(int n) {
  Rational sum;
  for (const auto& row : completion_census(n)) sum += Rational(row.completion_labelings) * row.weight;
  return sum;
}

std::vector<CompletionCensusRow> completion_census(int n) {
  std::vector<CompletionCensusRow> rows;
  Rational total;
  for_each_binary(n, [&](const Tree& t) {
    CompletionCensusRow row;
    row.encoding = encode(t);
    row.hooks = hooks(t);
    std::sort(row.hooks.rbegin(), row.hooks.rend());
    row.completion_labelings = completion_count(t);
    unsigned long exponent = 0;
    for (int h : row.hooks) exponent += static_cast<unsigned long>(2 * h - 1);
    row.weight = Rational(Integer(1), pow2(exponent));
    total += Rational(row.completion_labelings) * row.weight;
    row.running_total = total;
    rows.push_back(std::move(row));
  });
  return rows;
}

}  // namespace hooklab
