#ifndef LEXALIGN_EVAL_HPP
#define LEXALIGN_EVAL_HPP

#include <span>
#include <vector>

#include "lexalign/types.hpp"

namespace lexalign {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Harmonic mean 2PR/(P+R); 0 when P+R == 0. Scale-free, so it works on
// percentages as well as fractions.
double f1_score(double precision, double recall);

// Micro-averaged over pooled link counts. An empty side scores 0 against a
// non-empty one and 1 against an empty one, so P(pred, gold) == R(gold, pred)
// holds everywhere.
PRF alignment_prf(const std::vector<Alignment>& predicted, const std::vector<Alignment>& gold);

// Errors on dimension mismatch and on zero vectors.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

struct EmbeddingPair {
  std::vector<double> student;
  std::vector<double> teacher;
  bool is_manipulation_pair = true;
};

// 1 - cos(student, teacher) for manipulation pairs, max(0, cos) otherwise.
double cosine_embedding_loss(const EmbeddingPair& pair);

// Fixed binary-tree reduction; the result does not depend on thread count.
double pairwise_sum(std::span<const double> values);

// Mean cosine similarity over the pairs, accumulated with pairwise_sum.
// Errors on empty input. Cosines are evaluated in parallel.
double average_cosine_similarity(const std::vector<EmbeddingPair>& pairs);

double mean_cosine_embedding_loss(const std::vector<EmbeddingPair>& pairs);

}  // namespace lexalign

#endif
