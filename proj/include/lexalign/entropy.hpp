#ifndef LEXALIGN_ENTROPY_HPP
#define LEXALIGN_ENTROPY_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lexalign/bigraph.hpp"
#include "lexalign/types.hpp"

namespace lexalign {

struct EntropyRecord {
  std::string vertex;
  Side side = Side::source;
  double entropy = 0.0;
  std::uint64_t instance_count = 0;  // sum of incident edge weights
  std::size_t neighbor_count = 0;
  int band = -1;  // -1 until assigned by partitioning
};

struct BandSpec {
  std::vector<double> boundaries{33.0, 67.0};  // percentile cut points, strictly increasing
  bool zero_only = false;                      // bands become {entropy == 0, rest}

  std::size_t band_count() const { return zero_only ? 2 : boundaries.size() + 1; }
  void validate() const;
};

// p_v(u) = w(v,u) / sum_u' w(v,u'). Errors when v is absent or u is not a
// neighbor of v (distinct from a zero probability).
double translation_probability(const TranslationGraph& graph, Side side,
                               const std::string& v, const std::string& u);

// Shannon entropy of v's normalized edge-weight distribution, summed in
// sorted-neighbor order. log_base <= 0 selects the natural log.
double translation_entropy(const TranslationGraph& graph, Side side, const std::string& v,
                           double log_base = 0.0);

// One record per vertex on the chosen side, in partition sort order:
// ascending (entropy, instance_count, lemma). Entropy evaluation is
// parallelized per vertex; output is thread-count independent.
std::vector<EntropyRecord> entropy_records(const TranslationGraph& graph, Side side,
                                           double log_base = 0.0);

struct Partition {
  Side side = Side::source;
  BandSpec spec;
  std::vector<EntropyRecord> records;        // sorted; band field assigned
  std::map<std::string, int> assignment;     // vertex -> band index
  std::vector<std::uint64_t> band_mass;      // instance mass per band
  std::uint64_t total_mass = 0;
};

// Walks vertices in sorted order and fills bands by cumulative instance
// mass. A vertex whose mass straddles a boundary stays in the earlier band.
// In zero_only mode band 0 is exactly the zero-entropy vertices.
Partition partition_by_entropy(const TranslationGraph& graph, Side side, const BandSpec& spec,
                               double log_base = 0.0);

// Keeps only the chosen band's vertices on the partitioned side, with all
// their edges (and hence their opposite-side neighbors).
TranslationGraph subgraph_by_band(const TranslationGraph& graph, const Partition& partition,
                                  int band);

// TSV report: vertex, side, entropy (6 decimals), instance_count, band.
// Band is -1 for records that were never partitioned.
void write_entropy_report(const std::vector<EntropyRecord>& records,
                          const std::filesystem::path& path);
void write_entropy_report(const Partition& partition, const std::filesystem::path& path);

}  // namespace lexalign

#endif
