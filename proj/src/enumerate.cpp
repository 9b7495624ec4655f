#include "hooklab/enumerate.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "hooklab/errors.hpp"

namespace hooklab {

// --------------------------------------------------------- BranchingOracle

BranchingOracle BranchingOracle::constant(int k) {
  if (k < 1) throw ConfigError("branching count must be at least 1, got " + std::to_string(k));
  BranchingOracle o;
  o.rule_ = Rule::constant;
  o.counts_ = {k};
  o.source_ = "const:" + std::to_string(k);
  return o;
}

BranchingOracle BranchingOracle::by_depth(std::vector<int> counts) {
  if (counts.empty()) throw ConfigError("depth rule needs at least one count");
  BranchingOracle o;
  o.rule_ = Rule::by_depth;
  o.source_ = "depth:";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 1)
      throw ConfigError("branching count must be at least 1, got " + std::to_string(counts[i]));
    o.source_ += (i ? "," : "") + std::to_string(counts[i]);
  }
  o.counts_ = std::move(counts);
  return o;
}

BranchingOracle BranchingOracle::table(std::map<Address, int> entries,
                                       const BranchingOracle& fallback) {
  if (fallback.rule_ == Rule::table) throw ConfigError("table default must be a const or depth rule");
  for (const auto& [address, k] : entries)
    if (k < 1)
      throw ConfigError("branching count at '" + address.str() + "' must be at least 1");
  BranchingOracle o;
  o.rule_ = Rule::table;
  o.table_ = std::move(entries);
  o.fallback_ = std::make_shared<const BranchingOracle>(fallback);
  o.source_ = "table(" + std::to_string(o.table_.size()) + "-entries,default=" + fallback.str() + ")";
  return o;
}

namespace {

int parse_count(std::string_view token, std::string_view spec) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    throw ConfigError("bad branching count '" + std::string(token) + "' in oracle '" +
                      std::string(spec) + "'");
  if (value < 1)
    throw ConfigError("branching count '" + std::string(token) + "' in oracle '" +
                      std::string(spec) + "' must be at least 1");
  return value;
}

BranchingOracle parse_rule(std::string_view spec, bool allow_file) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ConfigError("oracle '" + std::string(spec) + "' must look like const:K, depth:K1,K2 or file:PATH");
  std::string_view head = spec.substr(0, colon);
  std::string_view body = spec.substr(colon + 1);
  if (head == "const") return BranchingOracle::constant(parse_count(body, spec));
  if (head == "depth") {
    std::vector<int> counts;
    std::size_t start = 0;
    while (true) {
      auto comma = body.find(',', start);
      counts.push_back(parse_count(body.substr(start, comma - start), spec));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return BranchingOracle::by_depth(std::move(counts));
  }
  if (head == "file" && allow_file) {
    std::string path(body);
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open oracle file '" + path + "'");
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("oracle file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("oracle file '" + path + "' must hold a JSON object");
    if (!doc.contains("default") || !doc["default"].is_string())
      throw ConfigError("oracle file '" + path + "' needs a \"default\" rule string");
    BranchingOracle fallback = parse_rule(doc["default"].get<std::string>(), false);
    std::map<Address, int> entries;
    for (const auto& [key, value] : doc.items()) {
      if (key == "default") continue;
      if (!value.is_number_integer())
        throw ConfigError("oracle file entry '" + key + "' must be an integer count");
      Address a;
      try {
        a = Address::parse(key);
      } catch (const ParseError& e) {
        throw ConfigError(std::string("oracle file key: ") + e.what());
      }
      entries[a] = value.get<int>();
    }
    return BranchingOracle::table(std::move(entries), fallback);
  }
  throw ConfigError("unknown oracle rule '" + std::string(head) + "' in '" + std::string(spec) + "'");
}

}  // namespace

BranchingOracle BranchingOracle::parse(std::string_view spec) {
  BranchingOracle o = parse_rule(spec, true);
  if (spec.starts_with("file:")) o.source_ = std::string(spec);
  return o;
}

int BranchingOracle::children(const Address& a) const {
  switch (rule_) {
    case Rule::constant:
      return counts_[0];
    case Rule::by_depth:
      return counts_[std::min(a.depth(), counts_.size() - 1)];
    case Rule::table:
      if (auto it = table_.find(a); it != table_.end()) return it->second;
      return fallback_->children(a);
  }
  return 1;
}

std::string BranchingOracle::str() const { return source_; }

// -------------------------------------------------------------- FamilySpec

const BranchingOracle& FamilySpec::require_oracle() const {
  if (!oracle) throw ConfigError("T-bar family needs a branching oracle");
  return *oracle;
}

std::string FamilySpec::str() const {
  switch (kind) {
    case TreeKind::binary:
      return "binary";
    case TreeKind::ordered:
      return m ? "ordered(m=" + m->str() + ")" : "ordered(m=symbolic)";
    case TreeKind::tbar:
      return "tbar(" + (oracle ? oracle->str() : std::string("?")) + ")";
  }
  return "?";
}

// -------------------------------------------------------------- generators

namespace {

// Depth-first walk over the encoding's choice points. At a free slot the
// choice '(' (occupy) sorts before '.' (leave empty), so trying "occupy"
// first yields lexicographic order. Nodes are created in preorder.
class SlottedWalk {
 public:
  SlottedWalk(TreeKind kind, int n, const BranchingOracle* oracle, const TreeVisitor& visit)
      : kind_(kind), oracle_(oracle), visit_(visit) {
    make_node(Tree::kEmpty, 0, Address{});
    push_slots(0);
    recurse(n - 1);
  }

 private:
  int arity_at(const Address& a) const { return oracle_ ? oracle_->children(a) : 2; }

  void make_node(int parent, int slot, Address address) {
    Tree::Node node;
    node.parent = parent;
    node.slot = slot;
    node.slots.assign(static_cast<std::size_t>(arity_at(address)), Tree::kEmpty);
    nodes_.push_back(std::move(node));
    addresses_.push_back(std::move(address));
    if (parent != Tree::kEmpty)
      nodes_[static_cast<std::size_t>(parent)].slots[static_cast<std::size_t>(slot)] =
          static_cast<int>(nodes_.size()) - 1;
  }

  void pop_node() {
    const auto& node = nodes_.back();
    if (node.parent != Tree::kEmpty)
      nodes_[static_cast<std::size_t>(node.parent)].slots[static_cast<std::size_t>(node.slot)] =
          Tree::kEmpty;
    nodes_.pop_back();
    addresses_.pop_back();
  }

  void push_slots(int v) {
    const int arity = static_cast<int>(nodes_[static_cast<std::size_t>(v)].slots.size());
    for (int s = arity - 1; s >= 0; --s) pending_.emplace_back(v, s);
  }

  void recurse(int left) {
    if (pending_.empty()) {
      if (left == 0) visit_(TreeBuilder(kind_, nodes_).build());
      return;
    }
    const auto [v, s] = pending_.back();
    pending_.pop_back();
    if (left > 0) {
      make_node(v, s, addresses_[static_cast<std::size_t>(v)].child(s));
      const int u = static_cast<int>(nodes_.size()) - 1;
      const std::size_t mark = pending_.size();
      push_slots(u);
      recurse(left - 1);
      pending_.resize(mark);
      pop_node();
    }
    // Leaving the slot empty is viable if nothing is left to place or another
    // slot remains (every vertex brings at least one slot of its own).
    if (left == 0 || !pending_.empty()) recurse(left);
    pending_.emplace_back(v, s);
  }

  TreeKind kind_;
  const BranchingOracle* oracle_;
  const TreeVisitor& visit_;
  std::vector<Tree::Node> nodes_;
  std::vector<Address> addresses_;
  std::vector<std::pair<int, int>> pending_;
};

// Ordered encodings choose between '(' (another child) and ')' (close the
// current vertex); '(' sorts first.
class OrderedWalk {
 public:
  OrderedWalk(int n, const TreeVisitor& visit) : visit_(visit) {
    nodes_.emplace_back();
    open_.push_back(Tree::kRoot);
    recurse(n - 1);
  }

 private:
  void recurse(int left) {
    if (open_.empty()) {
      if (left == 0) visit_(TreeBuilder(TreeKind::ordered, nodes_).build());
      return;
    }
    const int top = open_.back();
    if (left > 0) {
      const int u = static_cast<int>(nodes_.size());
      auto& parent = nodes_[static_cast<std::size_t>(top)];
      Tree::Node child;
      child.parent = top;
      child.slot = static_cast<int>(parent.slots.size());
      parent.slots.push_back(u);
      nodes_.push_back(std::move(child));
      open_.push_back(u);
      recurse(left - 1);
      open_.pop_back();
      nodes_.pop_back();
      nodes_[static_cast<std::size_t>(top)].slots.pop_back();
    }
    if (left == 0 || open_.size() > 1) {
      open_.pop_back();
      recurse(left);
      open_.push_back(top);
    }
  }

  const TreeVisitor& visit_;
  std::vector<Tree::Node> nodes_;
  std::vector<int> open_;
};

void require_positive(int n) {
  if (n < 1) throw ConfigError("tree size must be positive, got " + std::to_string(n));
}

std::vector<Tree> collect(const std::function<void(const TreeVisitor&)>& run) {
  std::vector<Tree> out;
  run([&](const Tree& t) { out.push_back(t); });
  return out;
}

}  // namespace

void for_each_binary(int n, const TreeVisitor& visit) {
  require_positive(n);
  SlottedWalk(TreeKind::binary, n, nullptr, visit);
}

void for_each_ordered(int n, const TreeVisitor& visit) {
  require_positive(n);
  OrderedWalk(n, visit);
}

void for_each_tbar(const BranchingOracle& oracle, int n, const TreeVisitor& visit) {
  require_positive(n);
  SlottedWalk(TreeKind::tbar, n, &oracle, visit);
}

void for_each_tree(const FamilySpec& family, int n, const TreeVisitor& visit) {
  switch (family.kind) {
    case TreeKind::binary: return for_each_binary(n, visit);
    case TreeKind::ordered: return for_each_ordered(n, visit);
    case TreeKind::tbar: return for_each_tbar(family.require_oracle(), n, visit);
  }
}

std::vector<Tree> enum_binary(int n) {
  return collect([n](const TreeVisitor& v) { for_each_binary(n, v); });
}

std::vector<Tree> enum_ordered(int n) {
  return collect([n](const TreeVisitor& v) { for_each_ordered(n, v); });
}

std::vector<Tree> enum_tbar(const BranchingOracle& oracle, int n) {
  return collect([&oracle, n](const TreeVisitor& v) { for_each_tbar(oracle, n, v); });
}

bool respects(const Tree& t, const BranchingOracle& oracle) {
  if (t.kind() != TreeKind::tbar) return false;
  for (int v = 0; v < t.size(); ++v)
    if (t.arity(v) != oracle.children(t.address(v))) return false;
  return true;
}

}  // namespace hooklab
