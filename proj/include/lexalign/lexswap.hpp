#ifndef LEXALIGN_LEXSWAP_HPP
#define LEXALIGN_LEXSWAP_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lexalign/bigraph.hpp"
#include "lexalign/types.hpp"

namespace lexalign {

// The four branches of the swapping algorithm, in precedence order:
//   a - aligned partner shares a graph edge with the source token,
//   b - some other in-sentence target token does,
//   c - the source lemma has edges but none match the sentence; the
//       replacement comes from the corpus-wide form counts,
//   d - no edges at all; the token is kept.
enum class SwapRule { a, b, c, d };

char rule_name(SwapRule rule);

struct SwapDecision {
  int source_index = 0;
  SwapRule rule = SwapRule::d;
  std::string replacement;  // empty exactly when rule == d
};

struct SwapReport {
  std::array<std::uint64_t, 4> rule_counts{};  // indexed by SwapRule
  std::uint64_t tokens = 0;
  std::uint64_t sentences = 0;
  std::uint64_t skipped_sentences = 0;

  std::uint64_t swapped_tokens() const {
    return rule_counts[0] + rule_counts[1] + rule_counts[2];
  }
  double swapped_fraction() const {
    return tokens == 0 ? 0.0 : static_cast<double>(swapped_tokens()) / static_cast<double>(tokens);
  }
  void merge(const SwapReport& other);
};

struct SwapResult {
  std::vector<std::string> tokens;  // output forms, same length as the source sentence
  std::vector<SwapDecision> decisions;
};

// Applies rules a-d to every source token, left to right. Token count and
// order are preserved; target tokens are never consumed, so one target form
// may replace several source tokens. Throws DataError when a token carries
// no lemma.
SwapResult swap_sentence(const AlignedSentencePair& pair, const TranslationGraph& graph);

struct SwapCorpusResult {
  std::vector<std::string> lines;
  SwapReport report;
};

// Parallel over sentences; output order matches input order. Per-sentence
// errors carry 1-based line numbers and the first failing line wins; with
// skip_errors the offending sentence passes through unchanged and is
// counted instead.
SwapCorpusResult swap_corpus(const std::vector<AlignedSentencePair>& pairs,
                             const TranslationGraph& graph, bool skip_errors = false);

}  // namespace lexalign

#endif
