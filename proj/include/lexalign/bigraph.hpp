#ifndef LEXALIGN_BIGRAPH_HPP
#define LEXALIGN_BIGRAPH_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lexalign/types.hpp"

namespace lexalign {

// Per (source lemma, target lemma) edge: alignment instance count plus a
// breakdown by the surface forms that produced each instance.
struct EdgeData {
  std::uint64_t weight = 0;
  std::map<std::pair<std::string, std::string>, std::uint64_t> form_counts;
};

// Weighted bipartite lexicon graph. Vertices are lemmas; an edge's weight is
// the number of times the pair was aligned in the bitext. Immutable once
// built; sorted maps keep every traversal deterministic.
class TranslationGraph {
 public:
  using TargetMap = std::map<std::string, EdgeData>;
  using EdgeMap = std::map<std::string, TargetMap>;
  using TotalsMap = std::map<std::string, std::uint64_t>;

  TranslationGraph() = default;

  // Fresh graph: per-source totals are recorded from the edges and frozen as
  // the reference denominators for relative filtering.
  TranslationGraph(EdgeMap edges, std::string source_language, std::string target_language);

  // Derived graph (filtered / loaded): totals are carried over unchanged.
  TranslationGraph(EdgeMap edges, TotalsMap source_totals, std::string source_language,
                   std::string target_language);

  const EdgeMap& edges() const { return edges_; }
  const TotalsMap& source_totals() const { return source_totals_; }
  const std::string& source_language() const { return source_language_; }
  const std::string& target_language() const { return target_language_; }

  bool empty() const { return edges_.empty(); }
  std::uint64_t total_weight() const { return total_weight_; }
  std::size_t edge_count() const;
  std::size_t source_count() const { return edges_.size(); }

  const EdgeData* find_edge(const std::string& source_lemma,
                            const std::string& target_lemma) const;
  bool has_edge(const std::string& source_lemma, const std::string& target_lemma) const {
    return find_edge(source_lemma, target_lemma) != nullptr;
  }
  const TargetMap* neighbors(const std::string& source_lemma) const;

  std::vector<std::string> source_vertices() const;
  std::vector<std::string> target_vertices() const;

  // Weight-only view keyed by target lemma, for target-side traversals.
  std::map<std::string, std::map<std::string, std::uint64_t>> weights_by_target() const;

  // Enforces: weights >= 1, weight == sum of form counts, totals present for
  // every source vertex. Throws DataError.
  void validate() const;

 private:
  void recompute_cached();

  EdgeMap edges_;
  TotalsMap source_totals_;
  std::string source_language_;
  std::string target_language_;
  std::uint64_t total_weight_ = 0;
};

// Counts lemma-level co-alignments over the corpus. Every aligned (i, j)
// adds one instance to (source lemma i, target lemma j) and to its surface
// form pair. Parallelized over shards; the result is independent of both
// input order and thread count.
TranslationGraph build_graph(std::span<const AlignedSentencePair> pairs,
                             std::string source_language = {},
                             std::string target_language = {});

struct FilterSpec {
  std::uint64_t abs_threshold = 5;
  double rel_threshold = 0.0;  // fraction of the source vertex's unfiltered outgoing weight
};

// An edge survives iff weight >= abs_threshold and weight / unfiltered
// source total >= rel_threshold. Totals metadata is carried through, so
// re-filtering with the same spec is the identity.
TranslationGraph filter_graph(const TranslationGraph& graph, const FilterSpec& spec);

// Fraction of alignment instances removed by filtering with `spec`.
double filtered_instance_fraction(const TranslationGraph& graph, const FilterSpec& spec);

struct AutotuneResult {
  double rel_threshold = 0.0;
  double achieved_fraction = 0.0;
  bool within_tolerance = false;
};

// Finds the smallest relative threshold whose filtered-instance fraction
// lands within `tolerance` of `target_fraction`, by bisection to 1e-6
// resolution. When the step function jumps over the band, returns the
// closest achievable point with within_tolerance = false.
AutotuneResult autotune_rel_threshold(const TranslationGraph& graph,
                                      std::uint64_t abs_threshold, double target_fraction,
                                      double tolerance);

// TSV edge list `src<TAB>tgt<TAB>weight`, sorted by (src, tgt), plus a JSON
// sidecar `<path>.meta.json` holding language tags, unfiltered source totals
// and surface-form counts.
void save_graph(const TranslationGraph& graph, const std::filesystem::path& tsv_path);

// Loads TSV + sidecar. Without a sidecar the lemma pair doubles as the only
// form pair and totals are recomputed from the edges.
TranslationGraph load_graph(const std::filesystem::path& tsv_path);

}  // namespace lexalign

#endif
