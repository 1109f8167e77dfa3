#ifndef LEXALIGN_TESTS_REFERENCE_HPP
#define LEXALIGN_TESTS_REFERENCE_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexalign/bigraph.hpp"
#include "lexalign/eval.hpp"
#include "lexalign/reorder.hpp"
#include "lexalign/types.hpp"

// Serial, straight-line counterparts of the parallel kernels. They exist to
// pin behavior: the unit and acceptance suites compare the production code
// against them, and the benchmark target measures the speedup over them.
// Keep them boring - no sharding, no reductions, no shortcuts.
namespace ref {

// Brute-force co-alignment counter: one pass, one map.
lexalign::TranslationGraph build_graph_serial(const std::vector<lexalign::AlignedSentencePair>& pairs,
                                              std::string source_language = {},
                                              std::string target_language = {});

// Literal transcription of the four swap branches. Returns the output forms
// plus one rule letter per token ("abad...").
std::pair<std::vector<std::string>, std::string> swap_sentence_serial(
    const lexalign::AlignedSentencePair& pair, const lexalign::TranslationGraph& graph);

std::vector<std::string> swap_corpus_serial(const std::vector<lexalign::AlignedSentencePair>& pairs,
                                            const lexalign::TranslationGraph& graph);

// Nested-loop pairwise ordering counts over (head + direct children)
// families, surface order by node id.
std::map<lexalign::OrderingStats::Key, lexalign::PairCount> ordering_counts_serial(
    const std::vector<lexalign::DependencyTree>& treebank, bool coarse = false);

// Extended-precision arithmetic oracles.
long double entropy_serial(const std::vector<std::uint64_t>& weights, long double log_base = 0.0L);
long double cosine_serial(const std::vector<double>& u, const std::vector<double>& v);
long double mean_cosine_serial(const std::vector<lexalign::EmbeddingPair>& pairs);
long double mean_loss_serial(const std::vector<lexalign::EmbeddingPair>& pairs);

// Independent corpus-filter re-check with explicit codepoint sets and its
// own minimal UTF-8 decoding; shares nothing with the production filter.
struct NaiveSimplify {
  int min_words = 4;
  int max_words = 16;
  int max_punct = 1;
  std::set<char32_t> allowed;  // empty = everything allowed
  std::set<char32_t> punct;    // the fixture palette's punctuation marks
  bool cjk = false;
  int min_symbols = 5;
  int max_symbols = 25;
  bool lowercase = true;
};

bool passes_simplify_naive(const std::string& line, const NaiveSimplify& cfg);

}  // namespace ref

#endif
