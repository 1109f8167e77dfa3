#include "lexalign/lexswap.hpp"

#include <omp.h>

#include <map>

#include "lexalign/error.hpp"

namespace lexalign {

char rule_name(SwapRule rule) { return static_cast<char>('a' + static_cast<int>(rule)); }

void SwapReport::merge(const SwapReport& other) {
  for (std::size_t i = 0; i < rule_counts.size(); ++i) rule_counts[i] += other.rule_counts[i];
  tokens += other.tokens;
  sentences += other.sentences;
  skipped_sentences += other.skipped_sentences;
}

namespace {

void require_lemmas(const Sentence& sentence, const char* side) {
  for (const Token& token : sentence.tokens)
    if (token.lemma.empty())
      fail(std::string(side) + " token " + std::to_string(token.index + 1) + " ('" + token.form +
           "') has no lemma");
}

// Corpus-wide most common target form for the token, preferring counts
// observed under the token's exact surface form and falling back to the
// lemma-level aggregate. Ties go to the lexicographically smaller form.
std::string most_common_form(const TranslationGraph::TargetMap& neighbors, const Token& token) {
  std::map<std::string, std::uint64_t> by_form;
  for (const auto& [target_lemma, edge] : neighbors)
    for (const auto& [forms, count] : edge.form_counts)
      if (forms.first == token.form) by_form[forms.second] += count;
  if (by_form.empty())
    for (const auto& [target_lemma, edge] : neighbors)
      for (const auto& [forms, count] : edge.form_counts) by_form[forms.second] += count;

  std::string best;
  std::uint64_t best_count = 0;
  for (const auto& [form, count] : by_form)
    if (count > best_count) {
      best = form;
      best_count = count;
    }
  return best;
}

}  // namespace

SwapResult swap_sentence(const AlignedSentencePair& pair, const TranslationGraph& graph) {
  require_lemmas(pair.source, "source");
  require_lemmas(pair.target, "target");

  std::map<int, int> aligned_target;  // one-to-one by AlignedSentencePair invariant
  for (const auto& [src, tgt] : pair.alignment) aligned_target.emplace(src, tgt);

  SwapResult result;
  result.tokens.reserve(pair.source.tokens.size());
  result.decisions.reserve(pair.source.tokens.size());

  for (const Token& v : pair.source.tokens) {
    SwapDecision decision;
    decision.source_index = v.index;
    decision.rule = SwapRule::d;

    const TranslationGraph::TargetMap* neighbors = graph.neighbors(v.lemma);
    if (neighbors != nullptr && !neighbors->empty()) {
      if (auto it = aligned_target.find(v.index); it != aligned_target.end()) {
        const Token& u = pair.target.tokens[static_cast<std::size_t>(it->second)];
        if (neighbors->count(u.lemma) != 0) {
          decision.rule = SwapRule::a;
          decision.replacement = u.form;
        }
      }
      if (decision.rule == SwapRule::d) {
        // Heaviest in-sentence edge; ties go to the leftmost target token.
        const Token* best = nullptr;
        std::uint64_t best_weight = 0;
        for (const Token& u : pair.target.tokens) {
          auto edge = neighbors->find(u.lemma);
          if (edge == neighbors->end()) continue;
          if (best == nullptr || edge->second.weight > best_weight) {
            best = &u;
            best_weight = edge->second.weight;
          }
        }
        if (best != nullptr) {
          decision.rule = SwapRule::b;
          decision.replacement = best->form;
        }
      }
      if (decision.rule == SwapRule::d) {
        decision.rule = SwapRule::c;
        decision.replacement = most_common_form(*neighbors, v);
      }
    }

    result.tokens.push_back(decision.rule == SwapRule::d ? v.form : decision.replacement);
    result.decisions.push_back(std::move(decision));
  }
  return result;
}

SwapCorpusResult swap_corpus(const std::vector<AlignedSentencePair>& pairs,
                             const TranslationGraph& graph, bool skip_errors) {
  const std::size_t n = pairs.size();
  std::vector<std::string> lines(n);
  std::vector<std::string> errors(n);
  std::vector<unsigned char> failed(n, 0);
  std::vector<SwapReport> reports(n);

#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      SwapResult res = swap_sentence(pairs[i], graph);
      std::string line;
      for (const std::string& token : res.tokens) {
        if (!line.empty()) line += ' ';
        line += token;
      }
      lines[i] = std::move(line);
      reports[i].sentences = 1;
      reports[i].tokens = res.tokens.size();
      for (const SwapDecision& d : res.decisions)
        ++reports[i].rule_counts[static_cast<std::size_t>(d.rule)];
    } catch (const DataError& e) {
      failed[i] = 1;
      errors[i] = e.what();
      lines[i] = pairs[i].source.text();
    }
  }

  SwapCorpusResult out;
  for (std::size_t i = 0; i < n; ++i) {
    if (failed[i]) {
      if (!skip_errors) fail("sentence " + std::to_string(i + 1) + ": " + errors[i]);
      ++out.report.skipped_sentences;
    } else {
      out.report.merge(reports[i]);
    }
  }
  out.lines = std::move(lines);
  return out;
}

}  // namespace lexalign
