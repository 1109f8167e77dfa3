#include "lexalign/entropy.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lexalign/error.hpp"
#include "lexalign/files.hpp"

namespace lexalign {

void BandSpec::validate() const {
  double prev = 0.0;
  for (double b : boundaries) {
    if (!(b > 0.0 && b < 100.0)) fail("band boundary " + std::to_string(b) + " not in (0, 100)");
    if (b <= prev) fail("band boundaries must be strictly increasing");
    prev = b;
  }
}

namespace {

// Weight list of v's neighbors in sorted-neighbor order.
std::vector<std::uint64_t> neighbor_weights(const TranslationGraph& graph, Side side,
                                            const std::string& v) {
  std::vector<std::uint64_t> weights;
  if (side == Side::source) {
    const auto* targets = graph.neighbors(v);
    if (targets == nullptr) fail("vertex '" + v + "' not in graph on source side");
    weights.reserve(targets->size());
    for (const auto& [tgt, data] : *targets) weights.push_back(data.weight);
  } else {
    // Single-vertex lookups walk the edge map; bulk callers use
    // weights_by_target() via entropy_records instead.
    std::map<std::string, std::uint64_t> incoming;
    for (const auto& [src, targets] : graph.edges()) {
      auto it = targets.find(v);
      if (it != targets.end()) incoming[src] = it->second.weight;
    }
    if (incoming.empty()) fail("vertex '" + v + "' not in graph on target side");
    for (const auto& [src, w] : incoming) weights.push_back(w);
  }
  return weights;
}

double entropy_of_weights(const std::vector<std::uint64_t>& weights, double log_base) {
  if (weights.size() == 1) return 0.0;
  std::uint64_t total = 0;
  for (auto w : weights) total += w;
  double h = 0.0;
  for (auto w : weights) {
    const double p = static_cast<double>(w) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  if (log_base > 0.0) h /= std::log(log_base);
  return h;
}

}  // namespace

double translation_probability(const TranslationGraph& graph, Side side, const std::string& v,
                               const std::string& u) {
  if (side == Side::source) {
    const auto* targets = graph.neighbors(v);
    if (targets == nullptr) fail("vertex '" + v + "' not in graph on source side");
    auto it = targets->find(u);
    if (it == targets->end())
      fail("'" + u + "' is not a neighbor of '" + v + "'");
    std::uint64_t total = 0;
    for (const auto& [tgt, data] : *targets) total += data.weight;
    return static_cast<double>(it->second.weight) / static_cast<double>(total);
  }
  std::uint64_t total = 0, w = 0;
  bool found = false, any = false;
  for (const auto& [src, targets] : graph.edges()) {
    auto it = targets.find(v);
    if (it == targets.end()) continue;
    any = true;
    total += it->second.weight;
    if (src == u) {
      w = it->second.weight;
      found = true;
    }
  }
  if (!any) fail("vertex '" + v + "' not in graph on target side");
  if (!found) fail("'" + u + "' is not a neighbor of '" + v + "'");
  return static_cast<double>(w) / static_cast<double>(total);
}

double translation_entropy(const TranslationGraph& graph, Side side, const std::string& v,
                           double log_base) {
  return entropy_of_weights(neighbor_weights(graph, side, v), log_base);
}

std::vector<EntropyRecord> entropy_records(const TranslationGraph& graph, Side side,
                                           double log_base) {
  // Collect per-vertex weight lists up front so the parallel loop only does
  // arithmetic.
  std::vector<std::string> vertices;
  std::vector<std::vector<std::uint64_t>> weights;
  if (side == Side::source) {
    for (const auto& [src, targets] : graph.edges()) {
      vertices.push_back(src);
      std::vector<std::uint64_t> w;
      w.reserve(targets.size());
      for (const auto& [tgt, data] : targets) w.push_back(data.weight);
      weights.push_back(std::move(w));
    }
  } else {
    for (const auto& [tgt, sources] : graph.weights_by_target()) {
      vertices.push_back(tgt);
      std::vector<std::uint64_t> w;
      w.reserve(sources.size());
      for (const auto& [src, weight] : sources) w.push_back(weight);
      weights.push_back(std::move(w));
    }
  }

  const std::size_t n = vertices.size();
  std::vector<EntropyRecord> records(n);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    EntropyRecord& rec = records[i];
    rec.vertex = vertices[i];
    rec.side = side;
    rec.neighbor_count = weights[i].size();
    std::uint64_t mass = 0;
    for (auto w : weights[i]) mass += w;
    rec.instance_count = mass;
    rec.entropy = entropy_of_weights(weights[i], log_base);
  }

  std::sort(records.begin(), records.end(), [](const EntropyRecord& a, const EntropyRecord& b) {
    if (a.entropy != b.entropy) return a.entropy < b.entropy;
    if (a.instance_count != b.instance_count) return a.instance_count < b.instance_count;
    return a.vertex < b.vertex;
  });
  return records;
}

Partition partition_by_entropy(const TranslationGraph& graph, Side side, const BandSpec& spec,
                               double log_base) {
  spec.validate();
  Partition partition;
  partition.side = side;
  partition.spec = spec;
  partition.records = entropy_records(graph, side, log_base);
  if (partition.records.empty()) fail("graph has no vertices on the " +
                                      std::string(side_name(side)) + " side");

  for (const auto& rec : partition.records) partition.total_mass += rec.instance_count;
  partition.band_mass.assign(spec.band_count(), 0);

  if (spec.zero_only) {
    for (auto& rec : partition.records) {
      rec.band = rec.entropy == 0.0 ? 0 : 1;
      partition.band_mass[static_cast<std::size_t>(rec.band)] += rec.instance_count;
      partition.assignment[rec.vertex] = rec.band;
    }
    return partition;
  }

  const std::size_t bands = spec.band_count();
  std::size_t band = 0;
  std::uint64_t cumulative = 0;
  const double total = static_cast<double>(partition.total_mass);
  for (auto& rec : partition.records) {
    rec.band = static_cast<int>(band);
    partition.assignment[rec.vertex] = rec.band;
    partition.band_mass[band] += rec.instance_count;
    cumulative += rec.instance_count;
    // Advance once the running mass reaches the current boundary; a vertex
    // that straddles it has already been placed in the earlier band.
    while (band + 1 < bands &&
           static_cast<double>(cumulative) >= spec.boundaries[band] / 100.0 * total)
      ++band;
  }
  return partition;
}

TranslationGraph subgraph_by_band(const TranslationGraph& graph, const Partition& partition,
                                  int band) {
  if (band < 0 || static_cast<std::size_t>(band) >= partition.spec.band_count())
    fail("band index " + std::to_string(band) + " out of range (partition has " +
         std::to_string(partition.spec.band_count()) + " bands)");

  auto in_band = [&](const std::string& vertex) {
    auto it = partition.assignment.find(vertex);
    return it != partition.assignment.end() && it->second == band;
  };

  TranslationGraph::EdgeMap kept;
  for (const auto& [src, targets] : graph.edges()) {
    if (partition.side == Side::source) {
      if (in_band(src)) kept.emplace(src, targets);
    } else {
      TranslationGraph::TargetMap kept_targets;
      for (const auto& [tgt, data] : targets)
        if (in_band(tgt)) kept_targets.emplace(tgt, data);
      if (!kept_targets.empty()) kept.emplace(src, std::move(kept_targets));
    }
  }
  // Keep the parent's reference totals so relative filtering still measures
  // against the unfiltered graph.
  TranslationGraph::TotalsMap totals;
  for (const auto& [src, targets] : kept) totals[src] = graph.source_totals().at(src);
  return TranslationGraph(std::move(kept), std::move(totals), graph.source_language(),
                          graph.target_language());
}

void write_entropy_report(const std::vector<EntropyRecord>& records,
                          const std::filesystem::path& path) {
  std::vector<std::string> rows;
  rows.reserve(records.size());
  char buf[64];
  for (const auto& rec : records) {
    std::snprintf(buf, sizeof buf, "%.6f", rec.entropy);
    rows.push_back(rec.vertex + "\t" + side_name(rec.side) + "\t" + buf + "\t" +
                   std::to_string(rec.instance_count) + "\t" + std::to_string(rec.band));
  }
  write_lines(path, rows);
}

void write_entropy_report(const Partition& partition, const std::filesystem::path& path) {
  write_entropy_report(partition.records, path);
}

}  // namespace lexalign
