#ifndef HOOKLAB_ENUMERATE_HPP_
#define HOOKLAB_ENUMERATE_HPP_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hooklab/exact.hpp"
#include "hooklab/trees.hpp"

namespace hooklab {

/// Lazy description of a fixed infinite ordered tree: the number of children
/// of the vertex at each address. Counts are always >= 1.
class BranchingOracle {
 public:
  static BranchingOracle constant(int k);
  /// counts[d] at depth d; the last entry repeats for all deeper levels.
  static BranchingOracle by_depth(std::vector<int> counts);
  /// Explicit counts for listed addresses, `fallback` everywhere else. The
  /// fallback must itself be a constant or by-depth rule.
  static BranchingOracle table(std::map<Address, int> entries, const BranchingOracle& fallback);

  /// "const:K", "depth:K1,K2,...", or "file:PATH" (JSON object mapping
  /// "0/2/1"-style addresses to counts plus a "default" rule string).
  static BranchingOracle parse(std::string_view spec);

  int children(const Address& a) const;
  std::string str() const;

 private:
  enum class Rule { constant, by_depth, table };
  BranchingOracle() = default;

  Rule rule_ = Rule::constant;
  std::vector<int> counts_;
  std::map<Address, int> table_;
  std::shared_ptr<const BranchingOracle> fallback_;
  std::string source_;
};

/// A tree family together with its parameters. For ordered trees an empty m
/// means m is kept symbolic.
struct FamilySpec {
  TreeKind kind = TreeKind::binary;
  std::optional<Rational> m;
  std::optional<BranchingOracle> oracle;

  static FamilySpec binary() { return {TreeKind::binary, std::nullopt, std::nullopt}; }
  static FamilySpec ordered(std::optional<Rational> m = std::nullopt) {
    return {TreeKind::ordered, std::move(m), std::nullopt};
  }
  static FamilySpec tbar(BranchingOracle oracle) {
    return {TreeKind::tbar, std::nullopt, std::move(oracle)};
  }

  bool symbolic() const { return kind == TreeKind::ordered && !m.has_value(); }
  /// Throws ConfigError when a T-bar family has no oracle.
  const BranchingOracle& require_oracle() const;
  std::string str() const;
};

using TreeVisitor = std::function<void(const Tree&)>;

// Generators stream trees in lexicographic order of their canonical encoding.

void for_each_binary(int n, const TreeVisitor& visit);
void for_each_ordered(int n, const TreeVisitor& visit);
/// Size-n subtrees of the oracle's tree containing its root. Each vertex's
/// arity is the oracle count at its address; only depths < n are queried.
void for_each_tbar(const BranchingOracle& oracle, int n, const TreeVisitor& visit);
void for_each_tree(const FamilySpec& family, int n, const TreeVisitor& visit);

std::vector<Tree> enum_binary(int n);
std::vector<Tree> enum_ordered(int n);
std::vector<Tree> enum_tbar(const BranchingOracle& oracle, int n);

/// True when every vertex's arity matches the oracle at its address.
bool respects(const Tree& t, const BranchingOracle& oracle);

}  // namespace hooklab

#endif  // HOOKLAB_ENUMERATE_HPP_
