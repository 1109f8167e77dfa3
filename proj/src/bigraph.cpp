#include "lexalign/bigraph.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "lexalign/error.hpp"
#include "lexalign/files.hpp"

namespace lexalign {

using json = nlohmann::json;

TranslationGraph::TranslationGraph(EdgeMap edges, std::string source_language,
                                   std::string target_language)
    : edges_(std::move(edges)),
      source_language_(std::move(source_language)),
      target_language_(std::move(target_language)) {
  for (const auto& [src, targets] : edges_) {
    std::uint64_t total = 0;
    for (const auto& [tgt, data] : targets) total += data.weight;
    source_totals_[src] = total;
  }
  recompute_cached();
}

TranslationGraph::TranslationGraph(EdgeMap edges, TotalsMap source_totals,
                                   std::string source_language, std::string target_language)
    : edges_(std::move(edges)),
      source_totals_(std::move(source_totals)),
      source_language_(std::move(source_language)),
      target_language_(std::move(target_language)) {
  recompute_cached();
}

void TranslationGraph::recompute_cached() {
  total_weight_ = 0;
  for (const auto& [src, targets] : edges_)
    for (const auto& [tgt, data] : targets) total_weight_ += data.weight;
}

std::size_t TranslationGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& [src, targets] : edges_) n += targets.size();
  return n;
}

const EdgeData* TranslationGraph::find_edge(const std::string& source_lemma,
                                            const std::string& target_lemma) const {
  auto it = edges_.find(source_lemma);
  if (it == edges_.end()) return nullptr;
  auto jt = it->second.find(target_lemma);
  return jt == it->second.end() ? nullptr : &jt->second;
}

const TranslationGraph::TargetMap* TranslationGraph::neighbors(
    const std::string& source_lemma) const {
  auto it = edges_.find(source_lemma);
  return it == edges_.end() ? nullptr : &it->second;
}

std::vector<std::string> TranslationGraph::source_vertices() const {
  std::vector<std::string> out;
  out.reserve(edges_.size());
  for (const auto& [src, targets] : edges_) out.push_back(src);
  return out;
}

std::vector<std::string> TranslationGraph::target_vertices() const {
  std::set<std::string> seen;
  for (const auto& [src, targets] : edges_)
    for (const auto& [tgt, data] : targets) seen.insert(tgt);
  return {seen.begin(), seen.end()};
}

std::map<std::string, std::map<std::string, std::uint64_t>>
TranslationGraph::weights_by_target() const {
  std::map<std::string, std::map<std::string, std::uint64_t>> rev;
  for (const auto& [src, targets] : edges_)
    for (const auto& [tgt, data] : targets) rev[tgt][src] = data.weight;
  return rev;
}

void TranslationGraph::validate() const {
  for (const auto& [src, targets] : edges_) {
    if (targets.empty()) fail("graph vertex '" + src + "' has no edges");
    if (!source_totals_.count(src))
      fail("graph metadata missing source total for '" + src + "'");
    for (const auto& [tgt, data] : targets) {
      if (data.weight < 1)
        fail("edge (" + src + ", " + tgt + ") has weight " + std::to_string(data.weight) +
             "; weights must be >= 1");
      std::uint64_t form_sum = 0;
      for (const auto& [forms, count] : data.form_counts) {
        if (count < 1) fail("edge (" + src + ", " + tgt + ") has a zero form count");
        form_sum += count;
      }
      if (form_sum != data.weight)
        fail("edge (" + src + ", " + tgt + ") weight " + std::to_string(data.weight) +
             " != sum of form counts " + std::to_string(form_sum));
    }
  }
}

// --------------------------------------------------------------------------
// Construction

namespace {

void merge_edges(TranslationGraph::EdgeMap& into, TranslationGraph::EdgeMap&& from) {
  for (auto& [src, targets] : from) {
    auto& dst = into[src];
    for (auto& [tgt, data] : targets) {
      auto& cell = dst[tgt];
      cell.weight += data.weight;
      for (auto& [forms, count] : data.form_counts) cell.form_counts[forms] += count;
    }
  }
}

}  // namespace

TranslationGraph build_graph(std::span<const AlignedSentencePair> pairs,
                             std::string source_language, std::string target_language) {
  const std::size_t n = pairs.size();
  const int threads = std::max(1, omp_get_max_threads());
  std::vector<TranslationGraph::EdgeMap> shards(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads)
  {
    auto& local = shards[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::size_t idx = 0; idx < n; ++idx) {
      const auto& pair = pairs[idx];
      for (const auto& [i, j] : pair.alignment) {
        const Token& s = pair.source.tokens[static_cast<std::size_t>(i)];
        const Token& t = pair.target.tokens[static_cast<std::size_t>(j)];
        auto& cell = local[s.lemma][t.lemma];
        cell.weight += 1;
        cell.form_counts[{s.form, t.form}] += 1;
      }
    }
  }

  TranslationGraph::EdgeMap merged;
  for (auto& shard : shards) merge_edges(merged, std::move(shard));
  return TranslationGraph(std::move(merged), std::move(source_language),
                          std::move(target_language));
}

// --------------------------------------------------------------------------
// Filtering

namespace {

bool edge_survives(const std::string& src, std::uint64_t weight, const FilterSpec& spec,
                   const TranslationGraph::TotalsMap& totals) {
  if (weight < spec.abs_threshold) return false;
  if (spec.rel_threshold > 0.0) {
    auto it = totals.find(src);
    const std::uint64_t total = it == totals.end() ? 0 : it->second;
    if (total == 0) return false;
    if (static_cast<double>(weight) / static_cast<double>(total) < spec.rel_threshold)
      return false;
  }
  return true;
}

}  // namespace

TranslationGraph filter_graph(const TranslationGraph& graph, const FilterSpec& spec) {
  TranslationGraph::EdgeMap kept;
  for (const auto& [src, targets] : graph.edges()) {
    TranslationGraph::TargetMap kept_targets;
    for (const auto& [tgt, data] : targets)
      if (edge_survives(src, data.weight, spec, graph.source_totals()))
        kept_targets.emplace(tgt, data);
    if (!kept_targets.empty()) kept.emplace(src, std::move(kept_targets));
  }
  // Totals stay pinned to the unfiltered graph so filtering is idempotent.
  TranslationGraph::TotalsMap totals;
  for (const auto& [src, targets] : kept) totals[src] = graph.source_totals().at(src);
  return TranslationGraph(std::move(kept), std::move(totals), graph.source_language(),
                          graph.target_language());
}

double filtered_instance_fraction(const TranslationGraph& graph, const FilterSpec& spec) {
  if (graph.total_weight() == 0) fail("graph has zero total weight");
  std::uint64_t kept = 0;
  for (const auto& [src, targets] : graph.edges())
    for (const auto& [tgt, data] : targets)
      if (edge_survives(src, data.weight, spec, graph.source_totals())) kept += data.weight;
  return 1.0 - static_cast<double>(kept) / static_cast<double>(graph.total_weight());
}

AutotuneResult autotune_rel_threshold(const TranslationGraph& graph,
                                      std::uint64_t abs_threshold, double target_fraction,
                                      double tolerance) {
  if (graph.total_weight() == 0) fail("cannot autotune on a graph with zero total weight");
  if (!(target_fraction > 0.0 && target_fraction < 1.0))
    fail("target fraction must be in (0, 1)");

  auto fraction_at = [&](double rel) {
    return filtered_instance_fraction(graph, FilterSpec{abs_threshold, rel});
  };
  auto result = [&](double rel, double achieved) {
    return AutotuneResult{rel, achieved, std::abs(achieved - target_fraction) <= tolerance};
  };

  const double band_lo = target_fraction - tolerance;
  const double f0 = fraction_at(0.0);
  // The fraction is monotone non-decreasing in rel, so if 0 already reaches
  // the band's lower edge it is the smallest admissible threshold.
  if (f0 >= band_lo) return result(0.0, f0);
  const double f1 = fraction_at(1.0);
  if (f1 < band_lo) return result(1.0, f1);  // unreachable even at 1

  double lo = 0.0, hi = 1.0;  // invariant: f(lo) < band_lo <= f(hi)
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (fraction_at(mid) >= band_lo)
      hi = mid;
    else
      lo = mid;
  }
  const double f_hi = fraction_at(hi);
  if (std::abs(f_hi - target_fraction) <= tolerance) return result(hi, f_hi);
  // The step jumped over the band; report whichever side lands closer.
  const double f_lo = fraction_at(lo);
  if (std::abs(f_lo - target_fraction) <= std::abs(f_hi - target_fraction))
    return result(lo, f_lo);
  return result(hi, f_hi);
}

// --------------------------------------------------------------------------
// Serialization

void save_graph(const TranslationGraph& graph, const std::filesystem::path& tsv_path) {
  std::vector<std::string> rows;
  rows.reserve(graph.edge_count());
  for (const auto& [src, targets] : graph.edges())
    for (const auto& [tgt, data] : targets)
      rows.push_back(src + "\t" + tgt + "\t" + std::to_string(data.weight));
  write_lines(tsv_path, rows);

  json meta;
  meta["source_language"] = graph.source_language();
  meta["target_language"] = graph.target_language();
  json totals = json::object();
  for (const auto& [src, total] : graph.source_totals()) totals[src] = total;
  meta["source_totals"] = std::move(totals);
  json forms = json::array();
  for (const auto& [src, targets] : graph.edges()) {
    for (const auto& [tgt, data] : targets) {
      json entry;
      entry["s"] = src;
      entry["t"] = tgt;
      json counts = json::array();
      for (const auto& [pair, count] : data.form_counts)
        counts.push_back(json::array({pair.first, pair.second, count}));
      entry["forms"] = std::move(counts);
      forms.push_back(std::move(entry));
    }
  }
  meta["form_counts"] = std::move(forms);
  std::filesystem::path meta_path = tsv_path;
  meta_path += ".meta.json";
  write_text(meta_path, meta.dump(2) + "\n");
}

TranslationGraph load_graph(const std::filesystem::path& tsv_path) {
  TranslationGraph::EdgeMap edges;
  const auto lines = read_lines(tsv_path);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    if (line.empty()) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      fail(tsv_path.string() + ":" + std::to_string(n + 1) + ": expected src<TAB>tgt<TAB>weight");
    std::string src = line.substr(0, t1);
    std::string tgt = line.substr(t1 + 1, t2 - t1 - 1);
    const std::string_view wtext(line.data() + t2 + 1, line.size() - t2 - 1);
    std::uint64_t weight = 0;
    auto r = std::from_chars(wtext.data(), wtext.data() + wtext.size(), weight);
    if (r.ec != std::errc{} || r.ptr != wtext.data() + wtext.size())
      fail(tsv_path.string() + ":" + std::to_string(n + 1) + ": bad weight '" +
           std::string(wtext) + "'");
    if (weight < 1)
      fail(tsv_path.string() + ":" + std::to_string(n + 1) + ": edge weight must be >= 1");
    if (src.empty() || tgt.empty())
      fail(tsv_path.string() + ":" + std::to_string(n + 1) + ": empty lemma");
    auto& cell = edges[src][tgt];
    if (cell.weight != 0)
      fail(tsv_path.string() + ":" + std::to_string(n + 1) + ": duplicate edge (" + src + ", " +
           tgt + ")");
    cell.weight = weight;
  }

  std::filesystem::path meta_path = tsv_path;
  meta_path += ".meta.json";
  std::string src_lang, tgt_lang;
  TranslationGraph::TotalsMap totals;
  bool have_meta = std::filesystem::exists(meta_path);
  if (have_meta) {
    json meta;
    try {
      meta = json::parse(read_text(meta_path));
    } catch (const json::exception& e) {
      fail(meta_path.string() + ": " + e.what());
    }
    src_lang = meta.value("source_language", "");
    tgt_lang = meta.value("target_language", "");
    if (meta.contains("source_totals"))
      for (const auto& [key, value] : meta["source_totals"].items())
        totals[key] = value.get<std::uint64_t>();
    if (meta.contains("form_counts")) {
      for (const auto& entry : meta["form_counts"]) {
        const std::string s = entry.at("s").get<std::string>();
        const std::string t = entry.at("t").get<std::string>();
        auto se = edges.find(s);
        if (se == edges.end() || !se->second.count(t))
          fail(meta_path.string() + ": form counts reference unknown edge (" + s + ", " + t + ")");
        auto& cell = se->second[t];
        for (const auto& triple : entry.at("forms")) {
          if (!triple.is_array() || triple.size() != 3)
            fail(meta_path.string() + ": malformed form count entry");
          cell.form_counts[{triple[0].get<std::string>(), triple[1].get<std::string>()}] +=
              triple[2].get<std::uint64_t>();
        }
      }
    }
  }
  // Fill gaps: edges without recorded form counts count the lemma pair
  // itself; missing totals fall back to the edge sums.
  for (auto& [src, targets] : edges)
    for (auto& [tgt, data] : targets)
      if (data.form_counts.empty()) data.form_counts[{src, tgt}] = data.weight;
  for (const auto& [src, targets] : edges) {
    if (!totals.count(src)) {
      std::uint64_t total = 0;
      for (const auto& [tgt, data] : targets) total += data.weight;
      totals[src] = total;
    }
  }

  TranslationGraph graph(std::move(edges), std::move(totals), std::move(src_lang),
                         std::move(tgt_lang));
  graph.validate();
  return graph;
}

}  // namespace lexalign
