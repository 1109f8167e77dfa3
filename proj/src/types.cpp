#include "lexalign/types.hpp"

#include <string_view>

#include "lexalign/error.hpp"
#include "lexalign/unicode.hpp"

namespace lexalign {

std::string Sentence::text() const {
  std::string out;
  for (const auto& tok : tokens) {
    if (!out.empty()) out += ' ';
    out += tok.form;
  }
  return out;
}

Sentence Sentence::from_line(std::string_view line, std::string language_tag) {
  Sentence sent;
  sent.language_tag = std::move(language_tag);
  int idx = 0;
  for (auto& word : uni::split_words(line))
    sent.tokens.push_back(Token{idx++, word, word});
  return sent;
}

void AlignedSentencePair::validate() const {
  std::set<int> src_seen, tgt_seen;
  const int ns = static_cast<int>(source.tokens.size());
  const int nt = static_cast<int>(target.tokens.size());
  for (const auto& [i, j] : alignment) {
    if (i < 0 || i >= ns)
      fail("alignment source index " + std::to_string(i) + " out of range (sentence has " +
           std::to_string(ns) + " tokens)");
    if (j < 0 || j >= nt)
      fail("alignment target index " + std::to_string(j) + " out of range (sentence has " +
           std::to_string(nt) + " tokens)");
    if (!src_seen.insert(i).second)
      fail("alignment is not one-to-one: source index " + std::to_string(i) + " repeats");
    if (!tgt_seen.insert(j).second)
      fail("alignment is not one-to-one: target index " + std::to_string(j) + " repeats");
  }
}

DependencyTree DependencyTree::build(std::vector<DepNode> nodes) {
  DependencyTree tree;
  const int n = static_cast<int>(nodes.size());
  if (n == 0) fail("dependency tree has no nodes");
  for (int k = 0; k < n; ++k) {
    if (nodes[static_cast<std::size_t>(k)].id != k + 1)
      fail("node ids must be contiguous 1..n; found " +
           std::to_string(nodes[static_cast<std::size_t>(k)].id) + " at position " +
           std::to_string(k + 1));
  }
  tree.nodes_ = std::move(nodes);
  tree.children_.assign(static_cast<std::size_t>(n) + 1, {});
  int root = 0;
  for (const auto& nd : tree.nodes_) {
    if (nd.head == 0) {
      if (root != 0) fail("multiple roots (nodes " + std::to_string(root) + " and " +
                          std::to_string(nd.id) + ")");
      root = nd.id;
    } else if (nd.head < 1 || nd.head > n) {
      fail("node " + std::to_string(nd.id) + " has dangling head " + std::to_string(nd.head));
    } else {
      tree.children_[static_cast<std::size_t>(nd.head)].push_back(nd.id);
    }
  }
  if (root == 0) fail("no root node (HEAD=0) present");
  tree.root_ = root;

  // Every node must hang off the root; a valid head array can still contain
  // cycles detached from it.
  std::vector<int> stack{root};
  std::size_t reached = 0;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    ++reached;
    for (int child : tree.children_[static_cast<std::size_t>(id)]) stack.push_back(child);
  }
  if (reached != tree.nodes_.size())
    fail("tree contains a cycle: only " + std::to_string(reached) + " of " +
         std::to_string(tree.nodes_.size()) + " nodes reachable from the root");
  return tree;
}

Sentence DependencyTree::to_sentence(std::string language_tag) const {
  Sentence sent;
  sent.language_tag = std::move(language_tag);
  for (const auto& nd : nodes_)
    sent.tokens.push_back(Token{nd.id - 1, nd.form, nd.lemma});
  return sent;
}

const char* side_name(Side side) {
  return side == Side::source ? "source" : "target";
}

Side parse_side(std::string_view name) {
  if (name == "source") return Side::source;
  if (name == "target") return Side::target;
  fail("unknown side '" + std::string(name) + "' (expected source or target)");
}

}  // namespace lexalign
