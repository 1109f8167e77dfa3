// lexalign - command line front end for the bitext manipulation toolkit.
//
// Exit codes: 0 success, 1 data error (malformed input, broken invariant),
// 2 usage error (bad flags, missing input files). Every artifact-producing
// subcommand also writes `<output>.run.json` with the resolved parameters,
// and all outputs are byte-deterministic for fixed inputs and config.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lexalign/bigraph.hpp"
#include "lexalign/corpus_io.hpp"
#include "lexalign/entropy.hpp"
#include "lexalign/error.hpp"
#include "lexalign/eval.hpp"
#include "lexalign/files.hpp"
#include "lexalign/lexswap.hpp"
#include "lexalign/reorder.hpp"
#include "lexalign/script_sub.hpp"
#include "lexalign/types.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace lexalign;

namespace {

constexpr const char* kVersion = "lexalign 0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int g_log_level = 1;  // 0 quiet, 1 info, 2 debug

void log_info(const std::string& msg) {
  if (g_log_level >= 1) std::cerr << "[lexalign] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (g_log_level >= 2) std::cerr << "[lexalign] " << msg << "\n";
}

void require_input(const fs::path& path) {
  if (!fs::exists(path)) throw UsageError("input file not found: " + path.string());
}

std::pair<fs::path, fs::path> split_path_pair(const std::string& value, const char* flag) {
  const auto comma = value.find(',');
  if (comma == std::string::npos || value.find(',', comma + 1) != std::string::npos)
    throw UsageError(std::string(flag) + " expects exactly two comma-separated paths");
  return {fs::path(value.substr(0, comma)), fs::path(value.substr(comma + 1))};
}

double parse_double(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + ": '" + text + "' is not a number");
  }
}

// "e" or any base > 0, base != 1. The entropy code treats <= 0 as natural.
double parse_log_base(const std::string& text) {
  if (text == "e") return 0.0;
  const double base = parse_double(text, "--log-base");
  if (base <= 0.0 || base == 1.0) throw UsageError("--log-base must be 'e' or positive and != 1");
  return base;
}

std::vector<double> parse_boundaries(const std::string& csv) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string::npos) comma = csv.size();
    out.push_back(parse_double(csv.substr(start, comma - start), "--boundaries"));
    start = comma + 1;
  }
  return out;
}

AllowedChars parse_allowed(const std::string& value) {
  if (value.empty()) return AllowedChars();
  for (const char* preset : {"all", "latin", "greek", "cyrillic", "cjk"})
    if (value == preset) return AllowedChars::preset(value);
  return AllowedChars::parse(value);
}

struct BandChoice {
  BandSpec spec;
  int band = -1;  // -1 selects the whole graph
};

// Selector grammar: "all", "zero", a band index, or a "lo-hi" percentile
// span matching the boundary grid (e.g. "33-67" with boundaries 33,67).
BandChoice parse_band_choice(const std::string& selector, const std::string& boundaries_csv) {
  BandChoice choice;
  choice.spec.boundaries = parse_boundaries(boundaries_csv);
  try {
    choice.spec.validate();
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
  if (selector == "all") return choice;
  if (selector == "zero") {
    choice.spec.zero_only = true;
    choice.band = 0;
    return choice;
  }
  const auto dash = selector.find('-');
  if (dash == std::string::npos) {
    const double index = parse_double(selector, "--band");
    choice.band = static_cast<int>(index);
    if (index != choice.band || choice.band < 0 ||
        static_cast<std::size_t>(choice.band) >= choice.spec.band_count())
      throw UsageError("--band index out of range");
    return choice;
  }
  const double lo = parse_double(selector.substr(0, dash), "--band");
  const double hi = parse_double(selector.substr(dash + 1), "--band");
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), choice.spec.boundaries.begin(), choice.spec.boundaries.end());
  edges.push_back(100.0);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (edges[i] == lo && edges[i + 1] == hi) {
      choice.band = static_cast<int>(i);
      return choice;
    }
  throw UsageError("--band '" + selector + "' does not match the boundary grid");
}

Side parse_side_flag(const std::string& value) {
  try {
    return parse_side(value);
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
}

void write_run_config(const fs::path& primary_output, const std::string& subcommand,
                      const json& params) {
  json run;
  run["tool"] = kVersion;
  run["subcommand"] = subcommand;
  run["parameters"] = params;
  write_text(fs::path(primary_output.string() + ".run.json"), run.dump(2) + "\n");
}

// Reads JSON run configuration: top-level scalars are global flags,
// top-level objects are per-subcommand flag sections.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json root;
    try {
      root = json::parse(input);
    } catch (const json::parse_error& e) {
      throw CLI::FileError(std::string("config: ") + e.what());
    }
    if (!root.is_object()) throw CLI::FileError("config: root must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : root.items()) {
      if (value.is_object()) {
        for (const auto& [name, inner] : value.items()) append(items, {key}, name, inner);
      } else {
        append(items, {}, key, value);
      }
    }
    return items;
  }

 private:
  static void append(std::vector<CLI::ConfigItem>& items, std::vector<std::string> parents,
                     const std::string& name, const json& value) {
    CLI::ConfigItem item;
    item.parents = std::move(parents);
    item.name = name;
    if (value.is_array()) {
      for (const auto& element : value) item.inputs.push_back(scalar(element));
    } else {
      item.inputs.push_back(scalar(value));
    }
    items.push_back(std::move(item));
  }

  static std::string scalar(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    return value.dump();
  }
};

// ---------------------------------------------------------------------------
// simplify-corpus

struct SimplifySideFlags {
  int min_words = 4;
  int max_words = 16;
  int max_punct = 1;
  std::string allowed;
  bool cjk = false;
  int min_symbols = 5;
  int max_symbols = 25;
};

struct SimplifyCmd {
  std::string source, target, out_source, out_target;
  SimplifySideFlags src, tgt;
  bool keep_case = false;
};

void add_side_flags(CLI::App* cmd, const char* prefix, SimplifySideFlags& side) {
  const std::string p = std::string("--") + prefix + "-";
  cmd->add_option(p + "min-words", side.min_words, "minimum word count")->capture_default_str();
  cmd->add_option(p + "max-words", side.max_words, "maximum word count")->capture_default_str();
  cmd->add_option(p + "max-punct", side.max_punct, "maximum punctuation marks")
      ->capture_default_str();
  cmd->add_option(p + "allowed", side.allowed,
                  "allowed characters: preset (all|latin|greek|cyrillic|cjk) or a set like "
                  "'a-z0-9 '");
  cmd->add_flag(p + "cjk", side.cjk, "count symbols instead of words");
  cmd->add_option(p + "min-symbols", side.min_symbols, "minimum symbol count (cjk)")
      ->capture_default_str();
  cmd->add_option(p + "max-symbols", side.max_symbols, "maximum symbol count (cjk)")
      ->capture_default_str();
}

SimplifyConfig side_config(const SimplifySideFlags& side, bool keep_case) {
  SimplifyConfig cfg;
  cfg.min_words = side.min_words;
  cfg.max_words = side.max_words;
  cfg.max_punct = side.max_punct;
  cfg.allowed_chars = parse_allowed(side.allowed);
  cfg.cjk_mode = side.cjk;
  cfg.min_symbols = side.min_symbols;
  cfg.max_symbols = side.max_symbols;
  cfg.lowercase = !keep_case;
  return cfg;
}

json side_json(const SimplifySideFlags& side) {
  return json{{"min_words", side.min_words},   {"max_words", side.max_words},
              {"max_punct", side.max_punct},   {"allowed", side.allowed},
              {"cjk", side.cjk},               {"min_symbols", side.min_symbols},
              {"max_symbols", side.max_symbols}};
}

void run_simplify(const SimplifyCmd& cmd) {
  require_input(cmd.source);
  require_input(cmd.target);
  const auto pairs = read_parallel_corpus(cmd.source, cmd.target);
  const auto kept =
      simplify_corpus(pairs, side_config(cmd.src, cmd.keep_case), side_config(cmd.tgt, cmd.keep_case));
  write_parallel_corpus(kept, cmd.out_source, cmd.out_target);
  log_info("kept " + std::to_string(kept.size()) + " of " + std::to_string(pairs.size()) +
           " pairs");
  write_run_config(cmd.out_source, "simplify-corpus",
                   json{{"source", cmd.source},
                        {"target", cmd.target},
                        {"out_source", cmd.out_source},
                        {"out_target", cmd.out_target},
                        {"source_side", side_json(cmd.src)},
                        {"target_side", side_json(cmd.tgt)},
                        {"lowercase", !cmd.keep_case}});
}

// ---------------------------------------------------------------------------
// build-graph

struct BuildGraphCmd {
  std::string corpus, align, lemmas, out;
  std::string source_lang, target_lang;
};

AssembleOptions assemble_options(const std::string& lemmas, const std::string& source_lang,
                                 const std::string& target_lang, std::size_t* conflicts) {
  AssembleOptions options;
  options.source_language = source_lang;
  options.target_language = target_lang;
  options.conflicts_out = conflicts;
  if (!lemmas.empty()) {
    const auto [src, tgt] = split_path_pair(lemmas, "--lemmas");
    require_input(src);
    require_input(tgt);
    options.source_lemmas = lemma_source_auto(src);
    options.target_lemmas = lemma_source_auto(tgt);
  }
  return options;
}

void run_build_graph(const BuildGraphCmd& cmd) {
  const auto [src, tgt] = split_path_pair(cmd.corpus, "--corpus");
  require_input(src);
  require_input(tgt);
  require_input(cmd.align);
  std::size_t conflicts = 0;
  const auto pairs = assemble_pairs(
      src, tgt, cmd.align,
      assemble_options(cmd.lemmas, cmd.source_lang, cmd.target_lang, &conflicts));
  if (conflicts > 0)
    log_info("dropped " + std::to_string(conflicts) + " non-one-to-one alignment links");
  const TranslationGraph graph = build_graph(pairs, cmd.source_lang, cmd.target_lang);
  save_graph(graph, cmd.out);
  log_info(std::to_string(graph.source_count()) + " source lemmas, " +
           std::to_string(graph.edge_count()) + " edges, total weight " +
           std::to_string(graph.total_weight()));
  write_run_config(cmd.out, "build-graph",
                   json{{"corpus", cmd.corpus},
                        {"align", cmd.align},
                        {"lemmas", cmd.lemmas},
                        {"source_lang", cmd.source_lang},
                        {"target_lang", cmd.target_lang},
                        {"out", cmd.out}});
}

// ---------------------------------------------------------------------------
// filter-graph / autotune

struct FilterCmd {
  std::string graph, out;
  std::uint64_t abs_threshold = 5;
  double rel_threshold = 0.0;
};

void run_filter(const FilterCmd& cmd) {
  require_input(cmd.graph);
  const TranslationGraph graph = load_graph(cmd.graph);
  const TranslationGraph filtered =
      filter_graph(graph, FilterSpec{cmd.abs_threshold, cmd.rel_threshold});
  save_graph(filtered, cmd.out);
  log_info("edges " + std::to_string(graph.edge_count()) + " -> " +
           std::to_string(filtered.edge_count()) + ", weight " +
           std::to_string(graph.total_weight()) + " -> " +
           std::to_string(filtered.total_weight()));
  write_run_config(cmd.out, "filter-graph",
                   json{{"graph", cmd.graph},
                        {"out", cmd.out},
                        {"abs_threshold", cmd.abs_threshold},
                        {"rel_threshold", cmd.rel_threshold}});
}

struct AutotuneCmd {
  std::string graph, out;
  std::uint64_t abs_threshold = 5;
  double target = 0.12;
  double tolerance = 0.005;
};

void run_autotune(const AutotuneCmd& cmd) {
  require_input(cmd.graph);
  const TranslationGraph graph = load_graph(cmd.graph);
  const AutotuneResult result =
      autotune_rel_threshold(graph, cmd.abs_threshold, cmd.target, cmd.tolerance);
  json out{{"rel_threshold", result.rel_threshold},
           {"achieved_fraction", result.achieved_fraction},
           {"within_tolerance", result.within_tolerance},
           {"abs_threshold", cmd.abs_threshold},
           {"target_fraction", cmd.target}};
  std::cout << out.dump(2) << "\n";
  if (!cmd.out.empty()) {
    const TranslationGraph filtered =
        filter_graph(graph, FilterSpec{cmd.abs_threshold, result.rel_threshold});
    save_graph(filtered, cmd.out);
    write_run_config(cmd.out, "autotune",
                     json{{"graph", cmd.graph},
                          {"out", cmd.out},
                          {"abs_threshold", cmd.abs_threshold},
                          {"target", cmd.target},
                          {"tolerance", cmd.tolerance},
                          {"rel_threshold", result.rel_threshold}});
  }
}

// ---------------------------------------------------------------------------
// entropy / partition / subgraph

struct EntropyCmd {
  std::string graph, out;
  std::string side = "source";
  std::string log_base = "e";
};

void run_entropy(const EntropyCmd& cmd) {
  require_input(cmd.graph);
  const TranslationGraph graph = load_graph(cmd.graph);
  const auto records =
      entropy_records(graph, parse_side_flag(cmd.side), parse_log_base(cmd.log_base));
  write_entropy_report(records, cmd.out);
  log_info(std::to_string(records.size()) + " vertices");
  write_run_config(cmd.out, "entropy",
                   json{{"graph", cmd.graph},
                        {"out", cmd.out},
                        {"side", cmd.side},
                        {"log_base", cmd.log_base}});
}

struct PartitionCmd {
  std::string graph, out;
  std::string side = "source";
  std::string log_base = "e";
  std::string boundaries = "33,67";
  bool zero_only = false;
};

void run_partition(const PartitionCmd& cmd) {
  require_input(cmd.graph);
  const TranslationGraph graph = load_graph(cmd.graph);
  BandSpec spec;
  spec.boundaries = parse_boundaries(cmd.boundaries);
  spec.zero_only = cmd.zero_only;
  try {
    spec.validate();
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
  const Partition partition =
      partition_by_entropy(graph, parse_side_flag(cmd.side), spec, parse_log_base(cmd.log_base));
  write_entropy_report(partition, cmd.out);
  json summary{{"bands", partition.spec.band_count()},
               {"band_mass", partition.band_mass},
               {"total_mass", partition.total_mass}};
  std::cout << summary.dump(2) << "\n";
  write_run_config(cmd.out, "partition",
                   json{{"graph", cmd.graph},
                        {"out", cmd.out},
                        {"side", cmd.side},
                        {"log_base", cmd.log_base},
                        {"boundaries", cmd.boundaries},
                        {"zero_only", cmd.zero_only}});
}

struct SubgraphCmd {
  std::string graph, out;
  std::string side = "source";
  std::string log_base = "e";
  std::string boundaries = "33,67";
  std::string band;
};

void run_subgraph(const SubgraphCmd& cmd) {
  require_input(cmd.graph);
  const TranslationGraph graph = load_graph(cmd.graph);
  const BandChoice choice = parse_band_choice(cmd.band, cmd.boundaries);
  if (choice.band < 0) {
    save_graph(graph, cmd.out);
  } else {
    const Partition partition = partition_by_entropy(graph, parse_side_flag(cmd.side),
                                                     choice.spec, parse_log_base(cmd.log_base));
    save_graph(subgraph_by_band(graph, partition, choice.band), cmd.out);
  }
  write_run_config(cmd.out, "subgraph",
                   json{{"graph", cmd.graph},
                        {"out", cmd.out},
                        {"side", cmd.side},
                        {"log_base", cmd.log_base},
                        {"boundaries", cmd.boundaries},
                        {"band", cmd.band}});
}

// ---------------------------------------------------------------------------
// script-sub

struct ScriptSubCmd {
  std::string in, charmap, out;
  bool invert = false;
};

void run_script_sub(const ScriptSubCmd& cmd) {
  require_input(cmd.in);
  require_input(cmd.charmap);
  CharMap map = load_charmap(cmd.charmap);
  if (cmd.invert) map = invert_charmap(map);
  write_lines(cmd.out, substitute_corpus(read_lines(cmd.in), map));
  write_run_config(cmd.out, "script-sub",
                   json{{"in", cmd.in},
                        {"charmap", cmd.charmap},
                        {"out", cmd.out},
                        {"invert", cmd.invert}});
}

// ---------------------------------------------------------------------------
// estimate-order-stats / reorder

struct OrderStatsCmd {
  std::string treebank, out;
  bool coarse = false;
};

void run_order_stats(const OrderStatsCmd& cmd) {
  require_input(cmd.treebank);
  const ConlluFile file = read_conllu(cmd.treebank);
  for (const std::string& warning : file.warnings) log_debug(warning);
  if (!file.warnings.empty())
    log_info("skipped " + std::to_string(file.warnings.size()) + " invalid sentences");
  const OrderingStats stats = estimate_ordering_stats(file.trees, cmd.coarse);
  stats.save(cmd.out);
  log_info(std::to_string(stats.counts().size()) + " ordering entries from " +
           std::to_string(file.trees.size()) + " trees");
  write_run_config(cmd.out, "estimate-order-stats",
                   json{{"treebank", cmd.treebank}, {"out", cmd.out}, {"coarse", cmd.coarse}});
}

struct ReorderCmd {
  std::string treebank, stats, out;
  bool coarse = false;
};

void run_reorder(const ReorderCmd& cmd) {
  require_input(cmd.treebank);
  require_input(cmd.stats);
  const ConlluFile file = read_conllu(cmd.treebank);
  for (const std::string& warning : file.warnings) log_debug(warning);
  if (!file.warnings.empty())
    log_info("skipped " + std::to_string(file.warnings.size()) + " invalid sentences");
  const OrderingStats stats = OrderingStats::load(cmd.stats);
  write_lines(cmd.out, reorder_corpus(file.trees, stats, cmd.coarse));
  write_run_config(cmd.out, "reorder",
                   json{{"treebank", cmd.treebank},
                        {"stats", cmd.stats},
                        {"out", cmd.out},
                        {"coarse", cmd.coarse}});
}

// ---------------------------------------------------------------------------
// swap

struct SwapCmd {
  std::string graph, corpus, align, lemmas, out, report;
  std::string band = "all";
  std::string side = "source";
  std::string boundaries = "33,67";
  std::string log_base = "e";
  bool skip_errors = false;
};

void run_swap(const SwapCmd& cmd) {
  require_input(cmd.graph);
  require_input(cmd.align);
  const auto [src, tgt] = split_path_pair(cmd.corpus, "--corpus");
  require_input(src);
  require_input(tgt);

  std::size_t conflicts = 0;
  const auto pairs =
      assemble_pairs(src, tgt, cmd.align, assemble_options(cmd.lemmas, "", "", &conflicts));
  if (conflicts > 0)
    log_info("dropped " + std::to_string(conflicts) + " non-one-to-one alignment links");

  const TranslationGraph graph = load_graph(cmd.graph);
  const BandChoice choice = parse_band_choice(cmd.band, cmd.boundaries);
  TranslationGraph banded;
  const TranslationGraph* active = &graph;
  if (choice.band >= 0) {
    const Partition partition = partition_by_entropy(graph, parse_side_flag(cmd.side),
                                                     choice.spec, parse_log_base(cmd.log_base));
    banded = subgraph_by_band(graph, partition, choice.band);
    active = &banded;
    log_info("band " + cmd.band + ": " + std::to_string(banded.source_count()) +
             " source lemmas of " + std::to_string(graph.source_count()));
  }

  const SwapCorpusResult result = swap_corpus(pairs, *active, cmd.skip_errors);
  write_lines(cmd.out, result.lines);

  json report{{"sentences", result.report.sentences},
              {"skipped_sentences", result.report.skipped_sentences},
              {"tokens", result.report.tokens},
              {"swapped_tokens", result.report.swapped_tokens()},
              {"swapped_fraction", result.report.swapped_fraction()},
              {"rules",
               json{{"a", result.report.rule_counts[0]},
                    {"b", result.report.rule_counts[1]},
                    {"c", result.report.rule_counts[2]},
                    {"d", result.report.rule_counts[3]}}}};
  std::cout << report.dump(2) << "\n";
  if (!cmd.report.empty()) write_text(cmd.report, report.dump(2) + "\n");
  write_run_config(cmd.out, "swap",
                   json{{"graph", cmd.graph},
                        {"corpus", cmd.corpus},
                        {"align", cmd.align},
                        {"lemmas", cmd.lemmas},
                        {"band", cmd.band},
                        {"side", cmd.side},
                        {"boundaries", cmd.boundaries},
                        {"log_base", cmd.log_base},
                        {"skip_errors", cmd.skip_errors},
                        {"out", cmd.out}});
}

// ---------------------------------------------------------------------------
// eval-align / eval-embed

struct EvalAlignCmd {
  std::string pred, gold;
  std::string possible = "sure-only";
  std::string out;
};

void run_eval_align(const EvalAlignCmd& cmd) {
  require_input(cmd.pred);
  require_input(cmd.gold);
  const auto predicted = read_alignment_sets(cmd.pred);
  const auto gold_file = read_gold_alignments(cmd.gold);
  std::vector<Alignment> gold;
  gold.reserve(gold_file.size());
  for (const GoldAlignment& g : gold_file) {
    Alignment links = g.sure;
    if (cmd.possible == "include") links.insert(g.possible.begin(), g.possible.end());
    gold.push_back(std::move(links));
  }
  const PRF prf = alignment_prf(predicted, gold);
  const json out{{"precision", prf.precision}, {"recall", prf.recall}, {"f1", prf.f1}};
  std::cout << out.dump(2) << "\n";
  if (!cmd.out.empty()) write_text(cmd.out, out.dump(2) + "\n");
}

struct EvalEmbedCmd {
  std::string student, teacher, pairs;
  std::string out;
};

void run_eval_embed(const EvalEmbedCmd& cmd) {
  require_input(cmd.student);
  require_input(cmd.teacher);
  const auto student = read_embeddings(cmd.student);
  const auto teacher = read_embeddings(cmd.teacher);
  if (student.size() != teacher.size())
    fail("embedding counts differ: " + std::to_string(student.size()) + " student vs " +
         std::to_string(teacher.size()) + " teacher");

  std::vector<EmbeddingPair> pairs(student.size());
  for (std::size_t i = 0; i < student.size(); ++i) {
    pairs[i].student = student[i].vector;
    pairs[i].teacher = teacher[i].vector;
  }
  if (!cmd.pairs.empty()) {
    require_input(cmd.pairs);
    const auto flags = read_lines(cmd.pairs);
    if (flags.size() != pairs.size())
      fail("pair flag file has " + std::to_string(flags.size()) + " lines for " +
           std::to_string(pairs.size()) + " embeddings");
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (flags[i] == "1" || flags[i] == "true")
        pairs[i].is_manipulation_pair = true;
      else if (flags[i] == "0" || flags[i] == "false")
        pairs[i].is_manipulation_pair = false;
      else
        fail(cmd.pairs + ":" + std::to_string(i + 1) + ": expected 0/false or 1/true");
    }
  }

  const json out{{"acs", average_cosine_similarity(pairs)},
                 {"mean_loss", mean_cosine_embedding_loss(pairs)},
                 {"n", pairs.size()}};
  std::cout << out.dump(2) << "\n";
  if (!cmd.out.empty()) write_text(cmd.out, out.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bitext manipulation toolkit: translation graphs, entropy bands, lexical swaps,"
               " script substitution and reordering"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON configuration (command line overrides file values)");
  app.set_version_flag("--version", kVersion);

  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "quiet|info|debug")
      ->check(CLI::IsMember({"quiet", "info", "debug"}));

  std::vector<std::pair<const CLI::App*, std::function<void()>>> handlers;

  {
    auto cmd = std::make_shared<SimplifyCmd>();
    auto* sub = app.add_subcommand("simplify-corpus", "Filter and lowercase a parallel corpus");
    sub->add_option("--source", cmd->source, "source text, one sentence per line")->required();
    sub->add_option("--target", cmd->target, "target text, line-aligned")->required();
    sub->add_option("--out-source", cmd->out_source, "filtered source output")->required();
    sub->add_option("--out-target", cmd->out_target, "filtered target output")->required();
    add_side_flags(sub, "src", cmd->src);
    add_side_flags(sub, "tgt", cmd->tgt);
    sub->add_flag("--keep-case", cmd->keep_case, "skip lowercasing");
    handlers.emplace_back(sub, [cmd] { run_simplify(*cmd); });
  }
  {
    auto cmd = std::make_shared<BuildGraphCmd>();
    auto* sub = app.add_subcommand("build-graph",
                                   "Count aligned lemma pairs into a translation graph");
    sub->add_option("--corpus", cmd->corpus, "source,target text files")->required();
    sub->add_option("--align", cmd->align, "alignment file (`i-j` pairs per line)")->required();
    sub->add_option("--lemmas", cmd->lemmas, "source,target lemma files (.conllu or form-TAB-lemma)");
    sub->add_option("--source-lang", cmd->source_lang, "source language tag");
    sub->add_option("--target-lang", cmd->target_lang, "target language tag");
    sub->add_option("--out", cmd->out, "output graph TSV")->required();
    handlers.emplace_back(sub, [cmd] { run_build_graph(*cmd); });
  }
  {
    auto cmd = std::make_shared<FilterCmd>();
    auto* sub = app.add_subcommand("filter-graph", "Drop light edges from a translation graph");
    sub->add_option("--graph", cmd->graph, "input graph TSV")->required();
    sub->add_option("--out", cmd->out, "output graph TSV")->required();
    sub->add_option("--abs", cmd->abs_threshold, "minimum edge weight")->capture_default_str();
    sub->add_option("--rel", cmd->rel_threshold,
                    "minimum fraction of the source lemma's unfiltered weight")
        ->capture_default_str();
    handlers.emplace_back(sub, [cmd] { run_filter(*cmd); });
  }
  {
    auto cmd = std::make_shared<AutotuneCmd>();
    auto* sub = app.add_subcommand(
        "autotune", "Find the relative threshold that filters a target instance fraction");
    sub->add_option("--graph", cmd->graph, "input graph TSV")->required();
    sub->add_option("--abs", cmd->abs_threshold, "minimum edge weight")->capture_default_str();
    sub->add_option("--target", cmd->target, "target filtered-instance fraction")
        ->capture_default_str();
    sub->add_option("--tolerance", cmd->tolerance, "acceptable deviation")->capture_default_str();
    sub->add_option("--out", cmd->out, "also write the graph filtered at the tuned threshold");
    handlers.emplace_back(sub, [cmd] { run_autotune(*cmd); });
  }
  {
    auto cmd = std::make_shared<EntropyCmd>();
    auto* sub = app.add_subcommand("entropy", "Per-vertex translation entropy report");
    sub->add_option("--graph", cmd->graph, "input graph TSV")->required();
    sub->add_option("--out", cmd->out, "output TSV report")->required();
    sub->add_option("--side", cmd->side, "source|target")
        ->check(CLI::IsMember({"source", "target"}))
        ->capture_default_str();
    sub->add_option("--log-base", cmd->log_base, "'e' or a numeric base")->capture_default_str();
    handlers.emplace_back(sub, [cmd] { run_entropy(*cmd); });
  }
  {
    auto cmd = std::make_shared<PartitionCmd>();
    auto* sub = app.add_subcommand(
        "partition", "Band vertices by entropy percentile of alignment instances");
    sub->add_option("--graph", cmd->graph, "input graph TSV")->required();
    sub->add_option("--out", cmd->out, "output TSV report")->required();
    sub->add_option("--side", cmd->side, "source|target")
        ->check(CLI::IsMember({"source", "target"}))
        ->capture_default_str();
    sub->add_option("--log-base", cmd->log_base, "'e' or a numeric base")->capture_default_str();
    sub->add_option("--boundaries", cmd->boundaries, "percentile cut points")
        ->capture_default_str();
    sub->add_flag("--zero-only", cmd->zero_only, "two bands: zero entropy and the rest");
    handlers.emplace_back(sub, [cmd] { run_partition(*cmd); });
  }
  {
    auto cmd = std::make_shared<SubgraphCmd>();
    auto* sub = app.add_subcommand("subgraph", "Extract one entropy band as a graph");
    sub->add_option("--graph", cmd->graph, "input graph TSV")->required();
    sub->add_option("--out", cmd->out, "output graph TSV")->required();
    sub->add_option("--side", cmd->side, "source|target")
        ->check(CLI::IsMember({"source", "target"}))
        ->capture_default_str();
    sub->add_option("--log-base", cmd->log_base, "'e' or a numeric base")->capture_default_str();
    sub->add_option("--boundaries", cmd->boundaries, "percentile cut points")
        ->capture_default_str();
    sub->add_option("--band", cmd->band, "band selector: 0-33|33-67|67-100|zero|all or an index")
        ->required();
    handlers.emplace_back(sub, [cmd] { run_subgraph(*cmd); });
  }
  {
    auto cmd = std::make_shared<ScriptSubCmd>();
    auto* sub = app.add_subcommand("script-sub", "Injective character substitution over a text");
    sub->add_option("--in", cmd->in, "input text")->required();
    sub->add_option("--charmap", cmd->charmap, "charmap TSV (src TAB tgt per line)")->required();
    sub->add_option("--out", cmd->out, "output text")->required();
    sub->add_flag("--invert", cmd->invert, "apply the inverse mapping");
    handlers.emplace_back(sub, [cmd] { run_script_sub(*cmd); });
  }
  {
    auto cmd = std::make_shared<OrderStatsCmd>();
    auto* sub = app.add_subcommand("estimate-order-stats",
                                   "Estimate pairwise ordering statistics from a treebank");
    sub->add_option("--treebank", cmd->treebank, "CoNLL-U treebank")->required();
    sub->add_option("--out", cmd->out, "output statistics TSV")->required();
    sub->add_flag("--coarse", cmd->coarse, "strip dependency label subtypes");
    handlers.emplace_back(sub, [cmd] { run_order_stats(*cmd); });
  }
  {
    auto cmd = std::make_shared<ReorderCmd>();
    auto* sub = app.add_subcommand("reorder",
                                   "Reorder sentences to match another language's statistics");
    sub->add_option("--treebank", cmd->treebank, "CoNLL-U input sentences")->required();
    sub->add_option("--stats", cmd->stats, "ordering statistics TSV")->required();
    sub->add_option("--out", cmd->out, "output text, one sentence per line")->required();
    sub->add_flag("--coarse", cmd->coarse, "strip dependency label subtypes");
    handlers.emplace_back(sub, [cmd] { run_reorder(*cmd); });
  }
  {
    auto cmd = std::make_shared<SwapCmd>();
    auto* sub = app.add_subcommand("swap", "Replace source words with target-lexicon words");
    sub->add_option("--graph", cmd->graph, "translation graph TSV")->required();
    sub->add_option("--corpus", cmd->corpus, "source,target text files")->required();
    sub->add_option("--align", cmd->align, "alignment file")->required();
    sub->add_option("--lemmas", cmd->lemmas, "source,target lemma files");
    sub->add_option("--band", cmd->band, "entropy band selector: 0-33|33-67|67-100|zero|all")
        ->capture_default_str();
    sub->add_option("--side", cmd->side, "entropy side for banding")
        ->check(CLI::IsMember({"source", "target"}))
        ->capture_default_str();
    sub->add_option("--boundaries", cmd->boundaries, "percentile cut points")
        ->capture_default_str();
    sub->add_option("--log-base", cmd->log_base, "'e' or a numeric base")->capture_default_str();
    sub->add_option("--out", cmd->out, "manipulated source text output")->required();
    sub->add_option("--report", cmd->report, "also write the JSON report here");
    sub->add_flag("--skip-errors", cmd->skip_errors,
                  "pass broken sentences through unchanged instead of failing");
    handlers.emplace_back(sub, [cmd] { run_swap(*cmd); });
  }
  {
    auto cmd = std::make_shared<EvalAlignCmd>();
    auto* sub = app.add_subcommand("eval-align",
                                   "Precision/recall/F1 of alignments against a gold standard");
    sub->add_option("--pred", cmd->pred, "predicted alignments")->required();
    sub->add_option("--gold", cmd->gold, "gold alignments (`i-j` sure, `i?j` possible)")
        ->required();
    sub->add_option("--possible", cmd->possible, "sure-only|include")
        ->check(CLI::IsMember({"sure-only", "include"}))
        ->capture_default_str();
    sub->add_option("--out", cmd->out, "also write the JSON result here");
    handlers.emplace_back(sub, [cmd] { run_eval_align(*cmd); });
  }
  {
    auto cmd = std::make_shared<EvalEmbedCmd>();
    auto* sub = app.add_subcommand("eval-embed",
                                   "Average cosine similarity and embedding loss of two vector files");
    sub->add_option("--student", cmd->student, "student vectors, one per line")->required();
    sub->add_option("--teacher", cmd->teacher, "teacher vectors, line-aligned")->required();
    sub->add_option("--pairs", cmd->pairs, "manipulation-pair flags (0/1 per line; default all 1)");
    sub->add_option("--out", cmd->out, "also write the JSON result here");
    handlers.emplace_back(sub, [cmd] { run_eval_embed(*cmd); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (log_level == "quiet") g_log_level = 0;
  if (log_level == "debug") g_log_level = 2;
  if (threads > 0) omp_set_num_threads(threads);

  try {
    for (const auto& [sub, handler] : handlers)
      if (sub->parsed()) {
        handler();
        break;
      }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
