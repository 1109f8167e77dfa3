#include <omp.h>

#include <map>
#include <string>
#include <vector>

#include <doctest.h>
#include "lexalign/entropy.hpp"
#include "lexalign/error.hpp"
#include "lexalign/lexswap.hpp"
#include "reference/reference.hpp"
#include "support/fixtures.hpp"
#include "support/rng.hpp"

using namespace lexalign;

namespace {

// "brown cows eat grass" / "vacas marrones comen hierba" with the aligner
// linking brown->marrones and eat->comen.
AlignedSentencePair grazing_pair() {
  return testsupport::aligned_pair("brown cows eat grass", "brown cow eat grass",
                                   "vacas marrones comen hierba", "vaca marrón comer hierba",
                                   {{0, 1}, {2, 2}});
}

TranslationGraph grazing_graph() {
  return testsupport::graph_from_edges({{"brown", "marrón", 3},
                                        {"eat", "comer", 3},
                                        {"cow", "vaca", 3},
                                        {"grass", "hierba", 3}},
                                       "en", "es");
}

std::string rules_of(const SwapResult& result) {
  std::string rules;
  for (const SwapDecision& d : result.decisions) rules += rule_name(d.rule);
  return rules;
}

}  // namespace

TEST_SUITE("lexswap") {

TEST_CASE("aligned partners win, then in-sentence edges") {
  const auto result = swap_sentence(grazing_pair(), grazing_graph());
  CHECK(result.tokens ==
        std::vector<std::string>{"marrones", "vacas", "comen", "hierba"});
  CHECK(rules_of(result) == "abab");
  CHECK(result.decisions[0].source_index == 0);
  CHECK(result.decisions[0].replacement == "marrones");
  CHECK(result.decisions[1].replacement == "vacas");
}

TEST_CASE("a graph restricted to one vertex swaps only that vertex") {
  const auto graph = testsupport::graph_from_edges({{"grass", "hierba", 3}}, "en", "es");
  const auto result = swap_sentence(grazing_pair(), graph);
  CHECK(result.tokens == std::vector<std::string>{"brown", "cows", "eat", "hierba"});
  CHECK(rules_of(result) == "dddb");
  CHECK(result.decisions[0].replacement.empty());
}

TEST_CASE("an empty graph keeps every token") {
  const auto result = swap_sentence(grazing_pair(), TranslationGraph{});
  CHECK(result.tokens == std::vector<std::string>{"brown", "cows", "eat", "grass"});
  CHECK(rules_of(result) == "dddd");
}

TEST_CASE("heaviest in-sentence edge wins, leftmost on ties") {
  // 'cow' translates to both in-sentence lemmas; 'vaca' is heavier.
  const auto graph = testsupport::graph_from_edges(
      {{"cow", "vaca", 9}, {"cow", "res", 4}}, "en", "es");
  const auto heavy = testsupport::aligned_pair("cows", "cow", "la res vacas", "la res vaca", {});
  auto result = swap_sentence(heavy, graph);
  CHECK(result.tokens == std::vector<std::string>{"vacas"});
  CHECK(rules_of(result) == "b");

  const auto tied = testsupport::graph_from_edges(
      {{"cow", "vaca", 4}, {"cow", "res", 4}}, "en", "es");
  result = swap_sentence(heavy, tied);
  CHECK(result.tokens == std::vector<std::string>{"res"});  // earlier token
  CHECK(rules_of(result) == "b");
}

TEST_CASE("rule c prefers counts observed under the exact surface form") {
  TranslationGraph::EdgeMap edges;
  edges["eat"]["comer"] =
      EdgeData{14,
               {{{"eat", "comen"}, 5}, {{"eats", "come"}, 7}, {{"eat", "comemos"}, 2}}};
  edges["eat"]["manger"] = EdgeData{6, {{{"eat", "mangeons"}, 6}}};
  const TranslationGraph graph(std::move(edges), "en", "xx");

  // No usable alignment or in-sentence lemma: rule c takes over.
  const auto pair = testsupport::aligned_pair("eat", "eat", "nada", "nada", {});
  auto result = swap_sentence(pair, graph);
  CHECK(rules_of(result) == "c");
  CHECK(result.tokens == std::vector<std::string>{"mangeons"});  // 6 beats 5 and 2

  // An unseen surface form falls back to the lemma-level aggregate.
  const auto unseen = testsupport::aligned_pair("eating", "eat", "nada", "nada", {});
  result = swap_sentence(unseen, graph);
  CHECK(result.tokens == std::vector<std::string>{"come"});  // 7 is the overall winner
}

TEST_CASE("rule c breaks count ties lexicographically") {
  TranslationGraph::EdgeMap edges;
  edges["eat"]["x"] = EdgeData{5, {{{"eat", "bbb"}, 5}}};
  edges["eat"]["y"] = EdgeData{5, {{{"eat", "aaa"}, 5}}};
  const TranslationGraph graph(std::move(edges), "", "");
  const auto pair = testsupport::aligned_pair("eat", "eat", "nada", "nada", {});
  CHECK(swap_sentence(pair, graph).tokens == std::vector<std::string>{"aaa"});
}

TEST_CASE("an aligned partner without an edge is not rule a") {
  const auto graph = testsupport::graph_from_edges({{"cow", "vaca", 2}}, "en", "es");
  // 'cows' aligned to 'toro', but only 'vaca' shares an edge.
  const auto pair = testsupport::aligned_pair("cows", "cow", "toro vacas", "toro vaca", {{0, 0}});
  const auto result = swap_sentence(pair, graph);
  CHECK(rules_of(result) == "b");
  CHECK(result.tokens == std::vector<std::string>{"vacas"});
}

TEST_CASE("missing lemmas are data errors naming the token") {
  auto pair = grazing_pair();
  pair.source.tokens[1].lemma.clear();
  CHECK_THROWS_WITH_AS(swap_sentence(pair, grazing_graph()),
                       doctest::Contains("source token 2 ('cows')"), DataError);
  pair = grazing_pair();
  pair.target.tokens[0].lemma.clear();
  CHECK_THROWS_WITH_AS(swap_sentence(pair, grazing_graph()), doctest::Contains("target"),
                       DataError);
}

TEST_CASE("a one-edge-per-lemma graph swaps deterministically") {
  const auto graph = testsupport::graph_from_edges(
      {{"s1", "t1", 5}, {"s2", "t2", 3}}, "a", "b");
  const auto pair = testsupport::aligned_pair("s1 s2 s1", "s1 s2 s1", "zzz", "zzz", {});
  const auto result = swap_sentence(pair, graph);
  CHECK(result.tokens == std::vector<std::string>{"t1", "t2", "t1"});
  CHECK(rules_of(result) == "ccc");
}

TEST_CASE("corpus swapping matches the serial transcription") {
  testsupport::Rng rng(0x51a9f00dULL);
  const auto pairs = testsupport::random_corpus(rng, 300);
  const auto graph = build_graph(pairs, "en", "xx");

  const auto result = swap_corpus(pairs, graph);
  REQUIRE(result.lines.size() == pairs.size());
  CHECK(result.lines == ref::swap_corpus_serial(pairs, graph));
  CHECK(result.report.sentences == pairs.size());
  CHECK(result.report.skipped_sentences == 0);

  std::uint64_t tokens = 0;
  for (const auto& pair : pairs) tokens += pair.source.tokens.size();
  CHECK(result.report.tokens == tokens);
  CHECK(result.report.rule_counts[0] + result.report.rule_counts[1] +
            result.report.rule_counts[2] + result.report.rule_counts[3] ==
        tokens);
  CHECK(result.report.swapped_tokens() ==
        tokens - result.report.rule_counts[3]);

  // Per sentence: one decision per token, output length preserved, rule d
  // exactly when the form passes through unswapped.
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto res = swap_sentence(pairs[i], graph);
    REQUIRE(res.tokens.size() == pairs[i].source.tokens.size());
    REQUIRE(res.decisions.size() == res.tokens.size());
    const auto [oracle_tokens, oracle_rules] = ref::swap_sentence_serial(pairs[i], graph);
    CHECK(res.tokens == oracle_tokens);
    CHECK(rules_of(res) == oracle_rules);
    for (std::size_t k = 0; k < res.decisions.size(); ++k) {
      const auto& d = res.decisions[k];
      CHECK(d.source_index == static_cast<int>(k));
      CHECK((d.rule == SwapRule::d) == d.replacement.empty());
      if (d.rule == SwapRule::d)
        CHECK(res.tokens[k] == pairs[i].source.tokens[k].form);
      else
        CHECK(res.tokens[k] == d.replacement);
    }
  }
}

TEST_CASE("swapping is thread-count independent") {
  testsupport::Rng rng(0x600dd1ceULL);
  const auto pairs = testsupport::random_corpus(rng, 120);
  const auto graph = build_graph(pairs);
  const int original = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = swap_corpus(pairs, graph);
  omp_set_num_threads(4);
  const auto four = swap_corpus(pairs, graph);
  omp_set_num_threads(original);
  CHECK(one.lines == four.lines);
  CHECK(one.report.rule_counts == four.report.rule_counts);
}

TEST_CASE("entropy bands partition the swapping work") {
  testsupport::Rng rng(0xbadbee5ULL);
  const auto pairs = testsupport::random_corpus(rng, 50);
  const auto graph = build_graph(pairs);
  const auto partition = partition_by_entropy(graph, Side::source, BandSpec{});

  std::vector<TranslationGraph> bands;
  for (std::size_t b = 0; b < partition.spec.band_count(); ++b)
    bands.push_back(subgraph_by_band(graph, partition, static_cast<int>(b)));

  for (const auto& pair : pairs) {
    const auto full = swap_sentence(pair, graph);
    std::vector<SwapResult> per_band;
    for (const auto& band : bands) per_band.push_back(swap_sentence(pair, band));

    for (std::size_t k = 0; k < full.tokens.size(); ++k) {
      int active = 0;
      for (const auto& res : per_band)
        if (res.decisions[k].rule != SwapRule::d) {
          ++active;
          // A band either skips the token or reproduces the full decision:
          // band subgraphs keep every edge of their vertices.
          CHECK(res.decisions[k].rule == full.decisions[k].rule);
          CHECK(res.tokens[k] == full.tokens[k]);
        }
      CHECK(active == (full.decisions[k].rule == SwapRule::d ? 0 : 1));
    }
  }
}

TEST_CASE("corpus errors name the sentence; skipping passes lines through") {
  std::vector<AlignedSentencePair> pairs = {grazing_pair(), grazing_pair(), grazing_pair()};
  pairs[1].source.tokens[0].lemma.clear();

  CHECK_THROWS_WITH_AS(swap_corpus(pairs, grazing_graph()), doctest::Contains("sentence 2"),
                       DataError);

  const auto skipped = swap_corpus(pairs, grazing_graph(), true);
  CHECK(skipped.lines[0] == "marrones vacas comen hierba");
  CHECK(skipped.lines[1] == "brown cows eat grass");  // unchanged
  CHECK(skipped.lines[2] == "marrones vacas comen hierba");
  CHECK(skipped.report.skipped_sentences == 1);
  CHECK(skipped.report.sentences == 2);
  CHECK(skipped.report.tokens == 8);
}

TEST_CASE("report arithmetic") {
  SwapReport report;
  report.rule_counts = {1, 2, 0, 1};
  report.tokens = 4;
  CHECK(report.swapped_tokens() == 3);
  CHECK(report.swapped_fraction() == doctest::Approx(0.75));
  SwapReport other;
  other.rule_counts = {0, 0, 2, 0};
  other.tokens = 2;
  other.sentences = 1;
  report.merge(other);
  CHECK(report.swapped_tokens() == 5);
  CHECK(report.tokens == 6);
  CHECK(SwapReport{}.swapped_fraction() == 0.0);
}

}  // TEST_SUITE
