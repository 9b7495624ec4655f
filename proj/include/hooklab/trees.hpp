#ifndef HOOKLAB_TREES_HPP_
#define HOOKLAB_TREES_HPP_

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hooklab {

// Binary and T-bar subtrees are "slotted": every node owns a fixed number of
// child slots (2 for binary, the branching count for T-bar) and a child
// records which slot it occupies. Ordered trees have no empty slots; a
// child's slot is its position among its siblings.
enum class TreeKind { binary, ordered, tbar };

const char* to_string(TreeKind kind);

/// Root path as child indices; empty for the root. Renders as "0/2/1".
struct Address {
  std::vector<int> steps;

  std::size_t depth() const { return steps.size(); }
  Address child(int slot) const;
  std::string str() const;
  static Address parse(std::string_view text);

  friend bool operator==(const Address&, const Address&) = default;
  friend auto operator<=>(const Address&, const Address&) = default;
};

/// Immutable rooted tree. Nodes are numbered in preorder, node 0 is the root,
/// so structurally equal trees have identical node tables.
class Tree {
 public:
  static constexpr int kRoot = 0;
  static constexpr int kEmpty = -1;

  struct Node {
    int parent = kEmpty;
    int slot = 0;
    /// Child node id per slot, kEmpty for a free slot (never empty for ordered).
    std::vector<int> slots;
    friend bool operator==(const Node&, const Node&) = default;
  };

  /// Single-vertex tree. Arity is ignored for binary (always 2) and ordered.
  static Tree single(TreeKind kind, int arity = 2);

  TreeKind kind() const { return kind_; }
  int size() const { return static_cast<int>(nodes_.size()); }

  int parent(int v) const { return node(v).parent; }
  int slot(int v) const { return node(v).slot; }
  /// Number of slots: 2 for binary, c-bar for T-bar, c_v for ordered.
  int arity(int v) const { return static_cast<int>(node(v).slots.size()); }
  const std::vector<int>& slots(int v) const { return node(v).slots; }
  /// Occupied children in slot order.
  std::vector<int> children(int v) const;
  int child_count(int v) const;
  int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }

  Address address(int v) const;
  /// Node id for an address; throws AddressError if it is not in the tree.
  int find(const Address& a) const;

  friend bool operator==(const Tree& a, const Tree& b) {
    return a.kind_ == b.kind_ && a.nodes_ == b.nodes_;
  }

 private:
  friend class TreeBuilder;
  const Node& node(int v) const { return nodes_.at(static_cast<std::size_t>(v)); }

  TreeKind kind_ = TreeKind::binary;
  std::vector<Node> nodes_;
  std::vector<int> depth_;
};

/// Mutable staging area for trees; build() renumbers into canonical preorder.
class TreeBuilder {
 public:
  explicit TreeBuilder(TreeKind kind, int root_arity = 2);
  explicit TreeBuilder(const Tree& tree);
  /// Adopts a node table whose node 0 is the root and whose slot entries
  /// point at valid node ids.
  TreeBuilder(TreeKind kind, std::vector<Tree::Node> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }

  /// Slotted kinds: occupy a free slot of `parent`.
  int add_child(int parent, int slot, int arity = 2);
  /// Ordered kind: insert a new child so that it ends up at `position`.
  int insert_child(int parent, int position);

  /// old_to_new, if given, receives the preorder id of every staged node.
  Tree build(std::vector<int>* old_to_new = nullptr) const;

 private:
  TreeKind kind_;
  std::vector<Tree::Node> nodes_;
};

/// A tree with an increasing bijective labeling onto 1..n.
class LabeledTree {
 public:
  /// labels[v] is the label of node v; throws ValidationError unless the
  /// labeling is an increasing bijection onto 1..n.
  LabeledTree(Tree shape, std::vector<int> labels);

  const Tree& shape() const { return shape_; }
  int size() const { return shape_.size(); }
  int label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& labels() const { return labels_; }
  int node_with_label(int label) const { return by_label_[static_cast<std::size_t>(label)]; }

  friend bool operator==(const LabeledTree& a, const LabeledTree& b) {
    return a.shape_ == b.shape_ && a.labels_ == b.labels_;
  }

 private:
  Tree shape_;
  std::vector<int> labels_;
  std::vector<int> by_label_;  // index 0 unused
};

/// Hook length per node id.
std::vector<int> hooks(const Tree& t);
std::map<Address, int> hook_lengths(const Tree& t);

/// Throws AddressError when v is not a vertex of t.
int depth(const Tree& t, const Address& v);

/// Attaches a leaf to every free slot of a binary tree.
Tree completion(const Tree& t);

std::string encode(const Tree& t);
std::string encode(const LabeledTree& t);
Tree decode(std::string_view text, TreeKind kind);
LabeledTree decode_labeled(std::string_view text, TreeKind kind);

/// Path on n vertices, always through slot 0 (T-bar vertices get one slot).
Tree path_tree(TreeKind kind, int n);

}  // namespace hooklab

#endif  // HOOKLAB_TREES_HPP_
