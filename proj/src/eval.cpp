#include "lexalign/eval.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "lexalign/error.hpp"

namespace lexalign {

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

PRF alignment_prf(const std::vector<Alignment>& predicted, const std::vector<Alignment>& gold) {
  if (predicted.size() != gold.size())
    fail("alignment count mismatch: " + std::to_string(predicted.size()) + " predicted vs " +
         std::to_string(gold.size()) + " gold sentences");

  std::uint64_t matched = 0, n_pred = 0, n_gold = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    n_pred += predicted[i].size();
    n_gold += gold[i].size();
    for (const AlignmentPair& link : predicted[i]) matched += gold[i].count(link);
  }

  PRF prf;
  prf.precision = n_pred > 0 ? static_cast<double>(matched) / static_cast<double>(n_pred)
                             : (n_gold == 0 ? 1.0 : 0.0);
  prf.recall = n_gold > 0 ? static_cast<double>(matched) / static_cast<double>(n_gold)
                          : (n_pred == 0 ? 1.0 : 0.0);
  prf.f1 = f1_score(prf.precision, prf.recall);
  return prf;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    fail("vector dimensions differ: " + std::to_string(u.size()) + " vs " +
         std::to_string(v.size()));
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) fail("cosine similarity is undefined for a zero vector");
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double cosine_embedding_loss(const EmbeddingPair& pair) {
  const double cos = cosine_similarity(pair.student, pair.teacher);
  return pair.is_manipulation_pair ? 1.0 - cos : std::max(0.0, cos);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

template <typename F>
double parallel_mean(const std::vector<EmbeddingPair>& pairs, F&& per_pair) {
  if (pairs.empty()) fail("cannot average over an empty pair list");
  std::vector<double> values(pairs.size());
  // Errors inside the loop must not escape an OpenMP region; remember the
  // first one by index instead.
  std::vector<std::string> errors(pairs.size());
  std::vector<unsigned char> failed(pairs.size(), 0);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    try {
      values[i] = per_pair(pairs[i]);
    } catch (const DataError& e) {
      failed[i] = 1;
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (failed[i]) fail("pair " + std::to_string(i + 1) + ": " + errors[i]);
  return pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace

double average_cosine_similarity(const std::vector<EmbeddingPair>& pairs) {
  return parallel_mean(pairs,
                       [](const EmbeddingPair& p) { return cosine_similarity(p.student, p.teacher); });
}

double mean_cosine_embedding_loss(const std::vector<EmbeddingPair>& pairs) {
  return parallel_mean(pairs, [](const EmbeddingPair& p) { return cosine_embedding_loss(p); });
}

}  // namespace lexalign
