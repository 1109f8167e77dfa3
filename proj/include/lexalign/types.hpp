#ifndef LEXALIGN_TYPES_HPP
#define LEXALIGN_TYPES_HPP

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lexalign {

struct Token {
  int index = 0;        // 0-based position in the sentence
  std::string form;
  std::string lemma;    // equals form when no lemma source is available
};

struct Sentence {
  std::vector<Token> tokens;
  std::string language_tag;

  std::string text() const;  // forms joined by single spaces

  static Sentence from_line(std::string_view line, std::string language_tag = {});
};

// (source_index, target_index), both 0-based.
using AlignmentPair = std::pair<int, int>;
using Alignment = std::set<AlignmentPair>;

struct AlignedSentencePair {
  Sentence source;
  Sentence target;
  Alignment alignment;

  // Checks index ranges and the one-to-one property; throws DataError.
  void validate() const;
};

// One UD-style dependency node. Head 0 marks the root.
struct DepNode {
  int id = 0;  // 1-based
  std::string form;
  std::string lemma;
  int head = 0;
  std::string deprel;
};

class DependencyTree {
 public:
  // Validates: ids are 1..n in order, exactly one root, head references
  // in range, every node reachable from the root. Throws DataError.
  static DependencyTree build(std::vector<DepNode> nodes);

  const std::vector<DepNode>& nodes() const { return nodes_; }
  const DepNode& node(int id) const { return nodes_[static_cast<std::size_t>(id) - 1]; }
  int root() const { return root_; }
  // Direct children of a node, ascending by id.
  const std::vector<int>& children(int id) const {
    return children_[static_cast<std::size_t>(id)];
  }
  std::size_t size() const { return nodes_.size(); }

  Sentence to_sentence(std::string language_tag = {}) const;

 private:
  std::vector<DepNode> nodes_;
  std::vector<std::vector<int>> children_;  // indexed by id; slot 0 unused
  int root_ = 0;
};

enum class Side { source, target };

const char* side_name(Side side);
Side parse_side(std::string_view name);  // "source" | "target"

}  // namespace lexalign

#endif
