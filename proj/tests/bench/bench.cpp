// Parallel kernels against their serial reference counterparts on the same
// inputs. Numbers are only comparable within one run of this binary.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "lexalign/bigraph.hpp"
#include "lexalign/entropy.hpp"
#include "lexalign/eval.hpp"
#include "lexalign/lexswap.hpp"
#include "lexalign/reorder.hpp"
#include "reference/reference.hpp"
#include "support/fixtures.hpp"
#include "support/rng.hpp"

using namespace lexalign;
using testsupport::Rng;

namespace {

std::vector<AlignedSentencePair> bench_corpus(std::size_t n) {
  Rng rng(0xbe9c40ULL);
  return testsupport::random_corpus(rng, n, 200, 220);
}

std::vector<DependencyTree> bench_treebank(std::size_t n) {
  Rng rng(0xbe9c41ULL);
  std::vector<DependencyTree> trees;
  trees.reserve(n);
  for (std::size_t i = 0; i < n; ++i) trees.push_back(testsupport::random_tree(rng, 30));
  return trees;
}

std::vector<EmbeddingPair> bench_embeddings(std::size_t n, std::size_t dim) {
  Rng rng(0xbe9c42ULL);
  std::vector<EmbeddingPair> pairs(n);
  for (auto& p : pairs) {
    p.student.resize(dim);
    p.teacher.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      p.student[k] = rng.unit() * 2.0 - 1.0;
      p.teacher[k] = rng.unit() * 2.0 - 1.0;
    }
    p.is_manipulation_pair = rng.chance(0.5);
  }
  return pairs;
}

void BM_build_graph(benchmark::State& state) {
  const auto pairs = bench_corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_graph(pairs, "en", "xx"));
}

void BM_build_graph_serial(benchmark::State& state) {
  const auto pairs = bench_corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ref::build_graph_serial(pairs, "en", "xx"));
}

void BM_swap_corpus(benchmark::State& state) {
  const auto pairs = bench_corpus(static_cast<std::size_t>(state.range(0)));
  const auto graph = build_graph(pairs, "en", "xx");
  for (auto _ : state) benchmark::DoNotOptimize(swap_corpus(pairs, graph));
}

void BM_swap_corpus_serial(benchmark::State& state) {
  const auto pairs = bench_corpus(static_cast<std::size_t>(state.range(0)));
  const auto graph = build_graph(pairs, "en", "xx");
  for (auto _ : state) benchmark::DoNotOptimize(ref::swap_corpus_serial(pairs, graph));
}

void BM_entropy_records(benchmark::State& state) {
  const auto pairs = bench_corpus(static_cast<std::size_t>(state.range(0)));
  const auto graph = build_graph(pairs, "en", "xx");
  for (auto _ : state) benchmark::DoNotOptimize(entropy_records(graph, Side::source));
}

void BM_entropy_serial(benchmark::State& state) {
  const auto pairs = bench_corpus(static_cast<std::size_t>(state.range(0)));
  const auto graph = build_graph(pairs, "en", "xx");
  for (auto _ : state) {
    std::vector<long double> entropies;
    entropies.reserve(graph.source_count());
    for (const auto& [src, targets] : graph.edges()) {
      std::vector<std::uint64_t> weights;
      weights.reserve(targets.size());
      for (const auto& [tgt, data] : targets) weights.push_back(data.weight);
      entropies.push_back(ref::entropy_serial(weights));
    }
    benchmark::DoNotOptimize(entropies);
  }
}

void BM_ordering_stats(benchmark::State& state) {
  const auto trees = bench_treebank(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_ordering_stats(trees));
}

void BM_ordering_stats_serial(benchmark::State& state) {
  const auto trees = bench_treebank(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ref::ordering_counts_serial(trees));
}

void BM_mean_cosine(benchmark::State& state) {
  const auto pairs = bench_embeddings(static_cast<std::size_t>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(average_cosine_similarity(pairs));
}

void BM_mean_cosine_serial(benchmark::State& state) {
  const auto pairs = bench_embeddings(static_cast<std::size_t>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(ref::mean_cosine_serial(pairs));
}

}  // namespace

BENCHMARK(BM_build_graph)->Arg(1000)->Arg(4000);
BENCHMARK(BM_build_graph_serial)->Arg(1000)->Arg(4000);
BENCHMARK(BM_swap_corpus)->Arg(1000)->Arg(4000);
BENCHMARK(BM_swap_corpus_serial)->Arg(1000)->Arg(4000);
BENCHMARK(BM_entropy_records)->Arg(4000);
BENCHMARK(BM_entropy_serial)->Arg(4000);
BENCHMARK(BM_ordering_stats)->Arg(2000);
BENCHMARK(BM_ordering_stats_serial)->Arg(2000);
BENCHMARK(BM_mean_cosine)->Arg(20000);
BENCHMARK(BM_mean_cosine_serial)->Arg(20000);

BENCHMARK_MAIN();
