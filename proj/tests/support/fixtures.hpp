#ifndef LEXALIGN_TESTS_FIXTURES_HPP
#define LEXALIGN_TESTS_FIXTURES_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "lexalign/bigraph.hpp"
#include "lexalign/types.hpp"
#include "support/rng.hpp"

namespace testsupport {

// Space-separated forms (and optionally lemmas; defaults to the forms).
lexalign::Sentence sentence(std::string_view forms, std::string_view lemmas = {});

lexalign::AlignedSentencePair aligned_pair(
    std::string_view src_forms, std::string_view src_lemmas, std::string_view tgt_forms,
    std::string_view tgt_lemmas, const std::vector<std::pair<int, int>>& links);

// Graph from (source lemma, target lemma, weight) rows; each edge's only
// form pair is the lemma pair itself.
lexalign::TranslationGraph graph_from_edges(
    const std::vector<std::tuple<std::string, std::string, std::uint64_t>>& edges,
    std::string source_language = "src", std::string target_language = "tgt");

// Aligned corpus over small vocabularies with inflected surface forms and
// random partial one-to-one alignments.
std::vector<lexalign::AlignedSentencePair> random_corpus(Rng& rng, std::size_t n_pairs,
                                                         std::size_t source_vocab = 20,
                                                         std::size_t target_vocab = 25);

// Valid tree with 1..max_nodes nodes: random attachment over a random
// insertion order, so head ids may precede or follow their dependents.
lexalign::DependencyTree random_tree(Rng& rng, int max_nodes);

lexalign::TranslationGraph random_graph(Rng& rng, std::size_t max_sources = 12,
                                        std::size_t max_degree = 6,
                                        std::uint64_t max_weight = 50);

}  // namespace testsupport

#endif
