#include "support/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

namespace testsupport {

namespace {

std::vector<std::string> split_spaces(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(' ', start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) parts.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

}  // namespace

lexalign::Sentence sentence(std::string_view forms, std::string_view lemmas) {
  const auto form_list = split_spaces(forms);
  const auto lemma_list = lemmas.empty() ? form_list : split_spaces(lemmas);
  if (form_list.size() != lemma_list.size())
    throw std::logic_error("fixture: form/lemma count mismatch");
  lexalign::Sentence s;
  for (std::size_t i = 0; i < form_list.size(); ++i)
    s.tokens.push_back({static_cast<int>(i), form_list[i], lemma_list[i]});
  return s;
}

lexalign::AlignedSentencePair aligned_pair(
    std::string_view src_forms, std::string_view src_lemmas, std::string_view tgt_forms,
    std::string_view tgt_lemmas, const std::vector<std::pair<int, int>>& links) {
  lexalign::AlignedSentencePair pair;
  pair.source = sentence(src_forms, src_lemmas);
  pair.target = sentence(tgt_forms, tgt_lemmas);
  pair.alignment.insert(links.begin(), links.end());
  pair.validate();
  return pair;
}

lexalign::TranslationGraph graph_from_edges(
    const std::vector<std::tuple<std::string, std::string, std::uint64_t>>& edges,
    std::string source_language, std::string target_language) {
  lexalign::TranslationGraph::EdgeMap map;
  for (const auto& [src, tgt, weight] : edges) {
    lexalign::EdgeData& edge = map[src][tgt];
    edge.weight += weight;
    edge.form_counts[{src, tgt}] += weight;
  }
  return lexalign::TranslationGraph(std::move(map), std::move(source_language),
                                    std::move(target_language));
}

std::vector<lexalign::AlignedSentencePair> random_corpus(Rng& rng, std::size_t n_pairs,
                                                         std::size_t source_vocab,
                                                         std::size_t target_vocab) {
  std::vector<lexalign::AlignedSentencePair> pairs;
  pairs.reserve(n_pairs);
  for (std::size_t k = 0; k < n_pairs; ++k) {
    lexalign::AlignedSentencePair pair;
    const int ns = rng.range(1, 12);
    const int nt = rng.range(1, 12);
    for (int i = 0; i < ns; ++i) {
      const std::string lemma = "s" + std::to_string(rng.below(source_vocab));
      // Two surface forms per lemma keep the inflection paths exercised.
      const std::string form = rng.chance(0.4) ? lemma + "x" : lemma;
      pair.source.tokens.push_back({i, form, lemma});
    }
    for (int j = 0; j < nt; ++j) {
      const std::string lemma = "t" + std::to_string(rng.below(target_vocab));
      const std::string form = rng.chance(0.4) ? lemma + "en" : lemma;
      pair.target.tokens.push_back({j, form, lemma});
    }
    // One-to-one links: source position i to a distinct random target.
    std::vector<int> perm(static_cast<std::size_t>(nt));
    for (int j = 0; j < nt; ++j) perm[static_cast<std::size_t>(j)] = j;
    for (std::size_t j = perm.size(); j > 1; --j)
      std::swap(perm[j - 1], perm[rng.below(j)]);
    const int linkable = std::min(ns, nt);
    for (int i = 0; i < linkable; ++i)
      if (rng.chance(0.7)) pair.alignment.emplace(i, perm[static_cast<std::size_t>(i)]);
    pair.validate();
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

lexalign::DependencyTree random_tree(Rng& rng, int max_nodes) {
  static const std::vector<std::string> kLabels = {
      "nsubj", "obj",  "amod", "det",  "advmod",
      "nmod",  "case", "mark", "conj", "nmod:poss"};
  const int n = rng.range(1, max_nodes);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  std::vector<lexalign::DepNode> nodes(static_cast<std::size_t>(n));
  std::vector<int> placed;
  for (int id : order) {
    lexalign::DepNode& node = nodes[static_cast<std::size_t>(id) - 1];
    node.id = id;
    node.form = "w" + std::to_string(id);
    node.lemma = node.form;
    if (placed.empty()) {
      node.head = 0;
      node.deprel = "root";
    } else {
      node.head = placed[rng.below(placed.size())];
      node.deprel = kLabels[rng.below(kLabels.size())];
    }
    placed.push_back(id);
  }
  return lexalign::DependencyTree::build(std::move(nodes));
}

lexalign::TranslationGraph random_graph(Rng& rng, std::size_t max_sources,
                                        std::size_t max_degree, std::uint64_t max_weight) {
  lexalign::TranslationGraph::EdgeMap map;
  const std::size_t n_sources = 1 + rng.below(max_sources);
  for (std::size_t i = 0; i < n_sources; ++i) {
    const std::string src = "s" + std::to_string(i);
    const std::size_t degree = 1 + rng.below(max_degree);
    for (std::size_t d = 0; d < degree; ++d) {
      const std::string tgt = "t" + std::to_string(rng.below(max_degree * 3));
      const std::uint64_t weight = 1 + rng.next_u64() % max_weight;
      lexalign::EdgeData& edge = map[src][tgt];
      edge.weight += weight;
      edge.form_counts[{src, tgt}] += weight;
    }
  }
  return lexalign::TranslationGraph(std::move(map), "src", "tgt");
}

}  // namespace testsupport
