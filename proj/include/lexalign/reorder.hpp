#ifndef LEXALIGN_REORDER_HPP
#define LEXALIGN_REORDER_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lexalign/types.hpp"

namespace lexalign {

struct PairCount {
  std::uint64_t before = 0;
  std::uint64_t total = 0;
};

// Pairwise ordering counts keyed by (head label, label_i, label_j). Both
// orientations of every observed pair are stored, so
//   total(k,i,j) == total(k,j,i)  and
//   before(k,i,j) + before(k,j,i) == total(k,i,j).
class OrderingStats {
 public:
  using Key = std::tuple<std::string, std::string, std::string>;

  // Records one element pair under head label `head` where the
  // `first`-labeled element preceded the `second`-labeled one.
  void observe(const std::string& head, const std::string& first, const std::string& second);

  // P(head, li, lj) = before/total; nullopt when the triple was never seen.
  std::optional<double> probability(const std::string& head, const std::string& li,
                                    const std::string& lj) const;

  void merge(const OrderingStats& other);
  bool empty() const { return counts_.empty(); }
  const std::map<Key, PairCount>& counts() const { return counts_; }

  // TSV `head TAB label_i TAB label_j TAB before TAB total`, sorted by key.
  void save(const std::filesystem::path& path) const;
  static OrderingStats load(const std::filesystem::path& path);

 private:
  std::map<Key, PairCount> counts_;
};

// Counts every (head + direct children) family in the treebank. The head
// joins its own family as an element labeled by its own deprel; surface
// order is node-id order. `coarse` strips deprel subtypes (`nmod:poss` ->
// `nmod`). Estimation shards across threads and merges deterministically.
OrderingStats estimate_ordering_stats(const std::vector<DependencyTree>& treebank,
                                      bool coarse = false);

std::string coarse_label(const std::string& deprel);

struct OrderElement {
  std::string label;
  std::size_t position = 0;  // original surface rank within the family
};

// Ordered label constraints for one family: each distinct label pair is
// evaluated once in lexicographic orientation, and (li before lj) is emitted
// when P(head, li, lj) >= 0.5, the opposite otherwise. Unseen pairs emit
// nothing.
std::vector<std::pair<std::string, std::string>> extract_constraints(
    const std::string& head_label, const std::vector<OrderElement>& elements,
    const OrderingStats& stats);

// Stable topological order of the elements under the label constraints;
// equal-labeled elements keep their relative order and remaining ties go to
// the smaller original position. A cyclic constraint expansion yields the
// identity permutation. Returns indices into `elements` in output order.
std::vector<std::size_t> solve_order(
    const std::vector<OrderElement>& elements,
    const std::vector<std::pair<std::string, std::string>>& constraints);

// Bottom-up reordering: every subtree is linearized to a contiguous block,
// then each family's blocks are permuted by solve_order. Returns node ids in
// output order; the result is always a projective linearization.
std::vector<int> reorder_tree(const DependencyTree& tree, const OrderingStats& stats,
                              bool coarse = false);

// Forms of reorder_tree's output joined by single spaces.
std::string reorder_to_line(const DependencyTree& tree, const OrderingStats& stats,
                            bool coarse = false);

// Parallel over sentences; one output line per tree, input order preserved.
std::vector<std::string> reorder_corpus(const std::vector<DependencyTree>& treebank,
                                        const OrderingStats& stats, bool coarse = false);

}  // namespace lexalign

#endif
