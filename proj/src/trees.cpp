#include "hooklab/trees.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "hooklab/errors.hpp"

namespace hooklab {

const char* to_string(TreeKind kind) {
  switch (kind) {
    case TreeKind::binary: return "binary";
    case TreeKind::ordered: return "ordered";
    case TreeKind::tbar: return "tbar";
  }
  return "?";
}

// ----------------------------------------------------------------- Address

Address Address::child(int slot) const {
  Address out = *this;
  out.steps.push_back(slot);
  return out;
}

std::string Address::str() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += '/';
    out += std::to_string(steps[i]);
  }
  return out;
}

Address Address::parse(std::string_view text) {
  Address a;
  if (text.empty()) return a;
  std::size_t i = 0;
  while (true) {
    std::size_t start = i;
    int value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      ++i;
    }
    if (i == start) throw ParseError("expected a child index in address '" + std::string(text) + "'", i);
    a.steps.push_back(value);
    if (i == text.size()) break;
    if (text[i] != '/') throw ParseError("expected '/' in address '" + std::string(text) + "'", i);
    ++i;
  }
  return a;
}

// -------------------------------------------------------------------- Tree

Tree Tree::single(TreeKind kind, int arity) { return TreeBuilder(kind, arity).build(); }

std::vector<int> Tree::children(int v) const {
  std::vector<int> out;
  for (int c : node(v).slots)
    if (c != kEmpty) out.push_back(c);
  return out;
}

int Tree::child_count(int v) const {
  const auto& s = node(v).slots;
  return static_cast<int>(std::count_if(s.begin(), s.end(), [](int c) { return c != kEmpty; }));
}

Address Tree::address(int v) const {
  Address a;
  for (int x = v; x != kRoot; x = parent(x)) a.steps.push_back(slot(x));
  std::reverse(a.steps.begin(), a.steps.end());
  return a;
}

int Tree::find(const Address& a) const {
  int v = kRoot;
  for (int step : a.steps) {
    const auto& s = node(v).slots;
    if (step < 0 || step >= static_cast<int>(s.size()) || s[static_cast<std::size_t>(step)] == kEmpty)
      throw AddressError("address '" + a.str() + "' is not a vertex of the tree");
    v = s[static_cast<std::size_t>(step)];
  }
  return v;
}

// ------------------------------------------------------------- TreeBuilder

TreeBuilder::TreeBuilder(TreeKind kind, int root_arity) : kind_(kind) {
  Tree::Node root;
  if (kind == TreeKind::binary) root_arity = 2;
  if (kind == TreeKind::ordered) root_arity = 0;
  if (kind == TreeKind::tbar && root_arity < 1)
    throw ConfigError("T-bar vertices need at least one child slot");
  root.slots.assign(static_cast<std::size_t>(root_arity), Tree::kEmpty);
  nodes_.push_back(std::move(root));
}

TreeBuilder::TreeBuilder(const Tree& tree) : kind_(tree.kind_), nodes_(tree.nodes_) {}

TreeBuilder::TreeBuilder(TreeKind kind, std::vector<Tree::Node> nodes)
    : kind_(kind), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ConfigError("a tree needs a root");
}

int TreeBuilder::add_child(int parent, int slot, int arity) {
  if (kind_ == TreeKind::ordered) throw ConfigError("add_child needs a slotted tree kind");
  if (kind_ == TreeKind::binary) arity = 2;
  if (arity < 1) throw ConfigError("T-bar vertices need at least one child slot");
  auto& p = nodes_.at(static_cast<std::size_t>(parent));
  if (slot < 0 || slot >= static_cast<int>(p.slots.size()))
    throw AddressError("slot " + std::to_string(slot) + " does not exist");
  if (p.slots[static_cast<std::size_t>(slot)] != Tree::kEmpty)
    throw AddressError("slot " + std::to_string(slot) + " is already occupied");
  const int id = size();
  p.slots[static_cast<std::size_t>(slot)] = id;
  Tree::Node child;
  child.parent = parent;
  child.slot = slot;
  child.slots.assign(static_cast<std::size_t>(arity), Tree::kEmpty);
  nodes_.push_back(std::move(child));
  return id;
}

int TreeBuilder::insert_child(int parent, int position) {
  if (kind_ != TreeKind::ordered) throw ConfigError("insert_child needs an ordered tree");
  auto& p = nodes_.at(static_cast<std::size_t>(parent));
  if (position < 0 || position > static_cast<int>(p.slots.size()))
    throw AddressError("insertion index " + std::to_string(position) + " out of range");
  const int id = size();
  p.slots.insert(p.slots.begin() + position, id);
  Tree::Node child;
  child.parent = parent;
  nodes_.push_back(std::move(child));
  return id;
}

Tree TreeBuilder::build(std::vector<int>* old_to_new) const {
  Tree t;
  t.kind_ = kind_;
  std::vector<int> remap(nodes_.size(), Tree::kEmpty);
  std::vector<int> order;
  order.reserve(nodes_.size());
  std::vector<int> stack{Tree::kRoot};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    remap[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
    order.push_back(v);
    const auto& s = nodes_[static_cast<std::size_t>(v)].slots;
    for (auto it = s.rbegin(); it != s.rend(); ++it)
      if (*it != Tree::kEmpty) stack.push_back(*it);
  }
  t.nodes_.resize(order.size());
  t.depth_.assign(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& src = nodes_[static_cast<std::size_t>(order[i])];
    auto& dst = t.nodes_[i];
    dst.slots.resize(src.slots.size());
    for (std::size_t k = 0; k < src.slots.size(); ++k) {
      int c = src.slots[k];
      dst.slots[k] = c == Tree::kEmpty ? Tree::kEmpty : remap[static_cast<std::size_t>(c)];
    }
    if (i == 0) continue;
    dst.parent = remap[static_cast<std::size_t>(src.parent)];
    t.depth_[i] = t.depth_[static_cast<std::size_t>(dst.parent)] + 1;
  }
  for (auto& n : t.nodes_)
    for (std::size_t k = 0; k < n.slots.size(); ++k)
      if (n.slots[k] != Tree::kEmpty) t.nodes_[static_cast<std::size_t>(n.slots[k])].slot = static_cast<int>(k);
  if (old_to_new) *old_to_new = std::move(remap);
  return t;
}

// ------------------------------------------------------------- LabeledTree

LabeledTree::LabeledTree(Tree shape, std::vector<int> labels)
    : shape_(std::move(shape)), labels_(std::move(labels)) {
  const int n = shape_.size();
  if (static_cast<int>(labels_.size()) != n)
    throw ValidationError("labeling has " + std::to_string(labels_.size()) + " labels for " +
                          std::to_string(n) + " vertices");
  by_label_.assign(static_cast<std::size_t>(n) + 1, Tree::kEmpty);
  for (int v = 0; v < n; ++v) {
    int k = labels_[static_cast<std::size_t>(v)];
    if (k < 1 || k > n || by_label_[static_cast<std::size_t>(k)] != Tree::kEmpty)
      throw ValidationError("labels are not a bijection onto 1.." + std::to_string(n));
    by_label_[static_cast<std::size_t>(k)] = v;
    if (v != Tree::kRoot && labels_[static_cast<std::size_t>(shape_.parent(v))] >= k)
      throw ValidationError("label " + std::to_string(k) + " is not larger than its parent's");
  }
}

// ---------------------------------------------------------- tree functions

std::vector<int> hooks(const Tree& t) {
  std::vector<int> h(static_cast<std::size_t>(t.size()), 1);
  // Preorder numbering: every child has a larger id than its parent.
  for (int v = t.size() - 1; v > Tree::kRoot; --v)
    h[static_cast<std::size_t>(t.parent(v))] += h[static_cast<std::size_t>(v)];
  return h;
}

std::map<Address, int> hook_lengths(const Tree& t) {
  auto h = hooks(t);
  std::map<Address, int> out;
  for (int v = 0; v < t.size(); ++v) out.emplace(t.address(v), h[static_cast<std::size_t>(v)]);
  return out;
}

int depth(const Tree& t, const Address& v) { return t.depth(t.find(v)); }

Tree completion(const Tree& t) {
  if (t.kind() != TreeKind::binary) throw ConfigError("completion is defined for binary trees");
  TreeBuilder b(t);
  for (int v = 0; v < t.size(); ++v)
    for (int s = 0; s < 2; ++s)
      if (t.slots(v)[static_cast<std::size_t>(s)] == Tree::kEmpty) b.add_child(v, s);
  return b.build();
}

Tree path_tree(TreeKind kind, int n) {
  TreeBuilder b(kind, 1);
  int v = Tree::kRoot;
  for (int i = 1; i < n; ++i)
    v = kind == TreeKind::ordered ? b.insert_child(v, 0) : b.add_child(v, 0, 1);
  return b.build();
}

// ---------------------------------------------------------------- encoding

namespace {

void encode_node(const Tree& t, int v, const std::vector<int>* labels, std::string& out) {
  out += '(';
  if (labels) {
    out += ':';
    out += std::to_string((*labels)[static_cast<std::size_t>(v)]);
  }
  const auto& s = t.slots(v);
  if (t.kind() == TreeKind::ordered) {
    for (int c : s) encode_node(t, c, labels, out);
  } else {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k) out += ',';
      if (s[k] == Tree::kEmpty)
        out += '.';
      else
        encode_node(t, s[k], labels, out);
    }
  }
  out += ')';
}

class Decoder {
 public:
  Decoder(std::string_view text, TreeKind kind, bool labeled)
      : text_(text), kind_(kind), labeled_(labeled) {}

  Tree run(std::vector<int>* labels) {
    staged_labels_.clear();
    if (kind_ == TreeKind::ordered) {
      builder_.emplace(TreeBuilder(kind_));
      parse_ordered(Tree::kRoot);
    } else {
      root_pending_ = true;
      parse_slotted(Tree::kEmpty, 0);
    }
    if (pos_ != text_.size()) fail("trailing characters");
    std::vector<int> remap;
    Tree t = builder_->build(&remap);
    if (labels) {
      labels->assign(staged_labels_.size(), 0);
      for (std::size_t i = 0; i < staged_labels_.size(); ++i)
        (*labels)[static_cast<std::size_t>(remap[i])] = staged_labels_[i];
    }
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("malformed tree encoding: " + what, pos_);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  int parse_label() {
    if (!labeled_) return 0;
    expect(':');
    std::size_t start = pos_;
    int value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (value > 100000000) fail("label too large");
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected a label");
    return value;
  }

  void record_label(int id, int label) {
    if (!labeled_) return;
    if (static_cast<int>(staged_labels_.size()) <= id) staged_labels_.resize(static_cast<std::size_t>(id) + 1);
    staged_labels_[static_cast<std::size_t>(id)] = label;
  }

  void parse_ordered(int id) {
    expect('(');
    record_label(id, parse_label());
    int position = 0;
    while (peek() == '(') {
      int child = builder_->insert_child(id, position++);
      parse_ordered(child);
    }
    expect(')');
  }

  void parse_slotted(int parent, int slot) {
    // Scan ahead to count this vertex's slots before staging it.
    const std::size_t open = pos_;
    expect('(');
    int label = parse_label();
    std::size_t scan = pos_;
    int arity = 0;
    int depth = 0;
    bool expecting_sub = true;
    for (; scan < text_.size(); ++scan) {
      char c = text_[scan];
      if (depth == 0) {
        if (expecting_sub) {
          if (c == '.') {
            ++arity;
            expecting_sub = false;
            continue;
          }
          if (c == '(') {
            ++arity;
            expecting_sub = false;
            depth = 1;
            continue;
          }
          break;
        }
        if (c == ',') {
          expecting_sub = true;
          continue;
        }
        break;
      }
      if (c == '(') ++depth;
      if (c == ')') --depth;
    }
    if (kind_ == TreeKind::binary && arity != 2) {
      pos_ = open;
      fail("binary vertex needs exactly two slots");
    }
    if (arity < 1) fail("expected '(' or '.'");
    int id;
    if (root_pending_) {
      builder_.emplace(TreeBuilder(kind_, arity));
      root_pending_ = false;
      id = Tree::kRoot;
    } else {
      id = builder_->add_child(parent, slot, arity);
    }
    record_label(id, label);
    for (int k = 0; k < arity; ++k) {
      if (k) expect(',');
      if (peek() == '.') {
        ++pos_;
      } else {
        parse_slotted(id, k);
      }
    }
    expect(')');
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  TreeKind kind_;
  bool labeled_;
  bool root_pending_ = false;
  std::optional<TreeBuilder> builder_;
  std::vector<int> staged_labels_;
};

}  // namespace

std::string encode(const Tree& t) {
  std::string out;
  encode_node(t, Tree::kRoot, nullptr, out);
  return out;
}

std::string encode(const LabeledTree& t) {
  std::string out;
  encode_node(t.shape(), Tree::kRoot, &t.labels(), out);
  return out;
}

Tree decode(std::string_view text, TreeKind kind) {
  return Decoder(text, kind, false).run(nullptr);
}

LabeledTree decode_labeled(std::string_view text, TreeKind kind) {
  std::vector<int> labels;
  Tree t = Decoder(text, kind, true).run(&labels);
  return LabeledTree(std::move(t), std::move(labels));
}

}  // namespace hooklab
