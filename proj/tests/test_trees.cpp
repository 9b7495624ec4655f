#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hooklab/enumerate.hpp"
#include "hooklab/errors.hpp"
#include "hooklab/trees.hpp"

using namespace hooklab;

namespace {

// Root with a left child b; b has a right child e.
const char* kLeftThenRight = "((.,(.,.)),.)";

Address addr(std::initializer_list<int> steps) { return Address{std::vector<int>(steps)}; }

int leaves(const Tree& t) {
  int count = 0;
  for (int v = 0; v < t.size(); ++v) count += t.child_count(v) == 0;
  return count;
}

}  // namespace

TEST_CASE("hook lengths") {
  auto single = hook_lengths(Tree::single(TreeKind::binary));
  CHECK(single == std::map<Address, int>{{addr({}), 1}});

  auto path = hook_lengths(path_tree(TreeKind::binary, 3));
  CHECK(path == std::map<Address, int>{{addr({}), 3}, {addr({0}), 2}, {addr({0, 0}), 1}});

  // Middle shape of the five binary trees on three vertices.
  auto cherry = hook_lengths(decode("((.,.),(.,.))", TreeKind::binary));
  CHECK(cherry == std::map<Address, int>{{addr({}), 3}, {addr({0}), 1}, {addr({1}), 1}});
}

TEST_CASE("depth") {
  const Tree t = decode(kLeftThenRight, TreeKind::binary);
  CHECK(depth(t, addr({})) == 0);
  CHECK(depth(t, addr({0, 1})) == 2);
  CHECK(depth(path_tree(TreeKind::binary, 3), addr({0, 0})) == 2);
  CHECK_THROWS_AS(depth(t, addr({1})), AddressError);
  CHECK_THROWS_AS(depth(t, addr({0, 0})), AddressError);
  CHECK_THROWS_AS(depth(t, addr({5})), AddressError);
}

TEST_CASE("completion") {
  CHECK(encode(completion(Tree::single(TreeKind::binary))) == "((.,.),(.,.))");
  const Tree full = completion(decode(kLeftThenRight, TreeKind::binary));
  CHECK(full.size() == 7);
  CHECK(encode(full) == "(((.,.),((.,.),(.,.))),(.,.))");
  CHECK(completion(path_tree(TreeKind::binary, 2)).size() == 5);
  CHECK_THROWS_AS(completion(path_tree(TreeKind::ordered, 2)), ConfigError);

  for (int n = 1; n <= 8; ++n)
    for_each_binary(n, [n](const Tree& t) {
      const Tree c = completion(t);
      CHECK(c.size() == 2 * n + 1);
      CHECK(leaves(c) == n + 1);
      for (int v = 0; v < c.size(); ++v) CHECK((c.child_count(v) == 0 || c.child_count(v) == 2));
      // t sits inside c as the internal vertices, at the same addresses.
      for (int v = 0; v < t.size(); ++v) CHECK(c.child_count(c.find(t.address(v))) == 2);
    });
}

TEST_CASE("encodings") {
  CHECK(encode(Tree::single(TreeKind::binary)) == "(.,.)");
  TreeBuilder b(TreeKind::binary);
  b.add_child(Tree::kRoot, 1);
  CHECK(encode(b.build()) == "(.,(.,.))");

  TreeBuilder star(TreeKind::ordered);
  for (int i = 0; i < 3; ++i) star.insert_child(Tree::kRoot, i);
  CHECK(encode(star.build()) == "(()()())");

  const LabeledTree one(Tree::single(TreeKind::binary), {1});
  CHECK(encode(one) == "(:1.,.)");
  CHECK(decode_labeled("(:1(:3)(:2(:4)))", TreeKind::ordered).label(1) == 3);
  CHECK(encode(decode("(.,.,(.))", TreeKind::tbar)) == "(.,.,(.))");
  CHECK(decode("(.,.,(.))", TreeKind::tbar).arity(0) == 3);
}

TEST_CASE("decode errors carry the position") {
  try {
    decode("((.,.),.", TreeKind::binary);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 8);
  }
  CHECK_THROWS_AS(decode("(.)", TreeKind::binary), ParseError);
  CHECK_THROWS_AS(decode("(.,.,.)", TreeKind::binary), ParseError);
  CHECK_THROWS_AS(decode("(()", TreeKind::ordered), ParseError);
  CHECK_THROWS_AS(decode("()x", TreeKind::ordered), ParseError);
  CHECK_THROWS_AS(decode("", TreeKind::tbar), ParseError);
  CHECK_THROWS_AS(decode_labeled("(.,.)", TreeKind::binary), ParseError);
  CHECK_THROWS_AS(decode_labeled("(:2.,.)", TreeKind::binary), ValidationError);
  CHECK_THROWS_AS(decode_labeled("(:2(:1))", TreeKind::ordered), ValidationError);
  CHECK_THROWS_AS(decode_labeled("(:1(:2)(:2))", TreeKind::ordered), ValidationError);
}

TEST_CASE("round trips over every enumerated tree") {
  for (int n = 1; n <= 8; ++n) {
    for_each_binary(n, [](const Tree& t) { CHECK(decode(encode(t), TreeKind::binary) == t); });
    for_each_ordered(n, [](const Tree& t) { CHECK(decode(encode(t), TreeKind::ordered) == t); });
  }
  for_each_tbar(BranchingOracle::by_depth({2, 3}), 6,
                [](const Tree& t) { CHECK(decode(encode(t), TreeKind::tbar) == t); });
}

TEST_CASE("hook sums count ancestor pairs") {
  auto check = [](const Tree& t) {
    long hook_excess = 0, depth_sum = 0;
    const auto h = hooks(t);
    for (int v = 0; v < t.size(); ++v) {
      hook_excess += h[static_cast<std::size_t>(v)] - 1;
      depth_sum += t.depth(v);
    }
    CHECK(hook_excess == depth_sum);
    CHECK(h[0] == t.size());
  };
  for (int n = 1; n <= 7; ++n) {
    for_each_binary(n, check);
    for_each_ordered(n, check);
  }
}

TEST_CASE("builder canonicalizes node order") {
  TreeBuilder a(TreeKind::binary);
  int r = a.add_child(Tree::kRoot, 1);
  a.add_child(Tree::kRoot, 0);
  a.add_child(r, 0);
  TreeBuilder b(TreeKind::binary);
  b.add_child(Tree::kRoot, 0);
  int r2 = b.add_child(Tree::kRoot, 1);
  b.add_child(r2, 0);
  CHECK(a.build() == b.build());
  CHECK_THROWS_AS(a.add_child(Tree::kRoot, 0), AddressError);
  CHECK_THROWS_AS(a.add_child(Tree::kRoot, 2), AddressError);
}

TEST_CASE("labeled trees validate the labeling") {
  const Tree t = path_tree(TreeKind::ordered, 3);
  CHECK_NOTHROW(LabeledTree(t, {1, 2, 3}));
  CHECK_THROWS_AS(LabeledTree(t, {1, 3, 2}), ValidationError);
  CHECK_THROWS_AS(LabeledTree(t, {1, 2}), ValidationError);
  CHECK_THROWS_AS(LabeledTree(t, {1, 2, 4}), ValidationError);
}

TEST_CASE("addresses") {
  CHECK(Address::parse("0/2/1") == addr({0, 2, 1}));
  CHECK(Address::parse("").depth() == 0);
  CHECK(addr({0, 2, 1}).str() == "0/2/1");
  CHECK_THROWS_AS(Address::parse("0//1"), ParseError);
  CHECK_THROWS_AS(Address::parse("a"), ParseError);
}
