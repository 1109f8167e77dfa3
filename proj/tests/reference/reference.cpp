#include "reference/reference.hpp"

#include <algorithm>
#include <cmath>

namespace ref {

lexalign::TranslationGraph build_graph_serial(const std::vector<lexalign::AlignedSentencePair>& pairs,
                                              std::string source_language,
                                              std::string target_language) {
  lexalign::TranslationGraph::EdgeMap edges;
  for (const lexalign::AlignedSentencePair& pair : pairs) {
    for (const auto& [i, j] : pair.alignment) {
      const lexalign::Token& v = pair.source.tokens[static_cast<std::size_t>(i)];
      const lexalign::Token& u = pair.target.tokens[static_cast<std::size_t>(j)];
      lexalign::EdgeData& edge = edges[v.lemma][u.lemma];
      edge.weight += 1;
      edge.form_counts[{v.form, u.form}] += 1;
    }
  }
  return lexalign::TranslationGraph(std::move(edges), std::move(source_language),
                                    std::move(target_language));
}

std::pair<std::vector<std::string>, std::string> swap_sentence_serial(
    const lexalign::AlignedSentencePair& pair, const lexalign::TranslationGraph& graph) {
  std::vector<std::string> out;
  std::string rules;

  for (const lexalign::Token& v : pair.source.tokens) {
    // Branch a: the aligned partner, when the lemma pair is an edge.
    const lexalign::Token* partner = nullptr;
    for (const auto& [i, j] : pair.alignment)
      if (i == v.index) partner = &pair.target.tokens[static_cast<std::size_t>(j)];
    if (partner != nullptr && graph.has_edge(v.lemma, partner->lemma)) {
      out.push_back(partner->form);
      rules += 'a';
      continue;
    }

    // Branch b: heaviest edge into the sentence; first (leftmost) token on
    // weight ties.
    const lexalign::Token* best = nullptr;
    std::uint64_t best_weight = 0;
    for (const lexalign::Token& u : pair.target.tokens) {
      const lexalign::EdgeData* edge = graph.find_edge(v.lemma, u.lemma);
      if (edge == nullptr) continue;
      if (best == nullptr || edge->weight > best_weight) {
        best = &u;
        best_weight = edge->weight;
      }
    }
    if (best != nullptr) {
      out.push_back(best->form);
      rules += 'b';
      continue;
    }

    // Branch c: the lemma has edges somewhere; replace with the most common
    // target form, preferring counts for this exact surface form. Smallest
    // form wins ties.
    const auto* neighbors = graph.neighbors(v.lemma);
    if (neighbors != nullptr && !neighbors->empty()) {
      std::map<std::string, std::uint64_t> exact, any;
      for (const auto& [target_lemma, edge] : *neighbors)
        for (const auto& [forms, count] : edge.form_counts) {
          any[forms.second] += count;
          if (forms.first == v.form) exact[forms.second] += count;
        }
      const auto& table = exact.empty() ? any : exact;
      std::string choice;
      std::uint64_t top = 0;
      for (const auto& [form, count] : table)
        if (count > top) {
          choice = form;
          top = count;
        }
      out.push_back(choice);
      rules += 'c';
      continue;
    }

    // Branch d: keep.
    out.push_back(v.form);
    rules += 'd';
  }
  return {out, rules};
}

std::vector<std::string> swap_corpus_serial(const std::vector<lexalign::AlignedSentencePair>& pairs,
                                            const lexalign::TranslationGraph& graph) {
  std::vector<std::string> lines;
  lines.reserve(pairs.size());
  for (const lexalign::AlignedSentencePair& pair : pairs) {
    const auto [tokens, rules] = swap_sentence_serial(pair, graph);
    std::string line;
    for (const std::string& token : tokens) {
      if (!line.empty()) line += ' ';
      line += token;
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::map<lexalign::OrderingStats::Key, lexalign::PairCount> ordering_counts_serial(
    const std::vector<lexalign::DependencyTree>& treebank, bool coarse) {
  auto label_of = [coarse](const lexalign::DepNode& node) {
    return coarse ? node.deprel.substr(0, node.deprel.find(':')) : node.deprel;
  };
  std::map<lexalign::OrderingStats::Key, lexalign::PairCount> counts;
  for (const lexalign::DependencyTree& tree : treebank) {
    for (const lexalign::DepNode& node : tree.nodes()) {
      if (tree.children(node.id).empty()) continue;
      std::vector<const lexalign::DepNode*> family{&node};
      for (int child : tree.children(node.id)) family.push_back(&tree.node(child));
      const std::string head = label_of(node);
      // Every ordered pair of distinct elements contributes to its
      // orientation's total, and to `before` when it is the observed order.
      for (const auto* x : family)
        for (const auto* y : family) {
          if (x == y) continue;
          lexalign::PairCount& count = counts[{head, label_of(*x), label_of(*y)}];
          count.total += 1;
          if (x->id < y->id) count.before += 1;
        }
    }
  }
  return counts;
}

long double entropy_serial(const std::vector<std::uint64_t>& weights, long double log_base) {
  if (weights.size() <= 1) return 0.0L;
  long double total = 0.0L;
  for (auto w : weights) total += static_cast<long double>(w);
  long double h = 0.0L;
  for (auto w : weights) {
    const long double p = static_cast<long double>(w) / total;
    h -= p * std::log(p);
  }
  if (log_base > 0.0L) h /= std::log(log_base);
  return h;
}

long double cosine_serial(const std::vector<double>& u, const std::vector<double>& v) {
  long double dot = 0.0L, nu = 0.0L, nv = 0.0L;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<long double>(u[i]) * v[i];
    nu += static_cast<long double>(u[i]) * u[i];
    nv += static_cast<long double>(v[i]) * v[i];
  }
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

long double mean_cosine_serial(const std::vector<lexalign::EmbeddingPair>& pairs) {
  long double sum = 0.0L;
  for (const auto& p : pairs) sum += cosine_serial(p.student, p.teacher);
  return sum / static_cast<long double>(pairs.size());
}

long double mean_loss_serial(const std::vector<lexalign::EmbeddingPair>& pairs) {
  long double sum = 0.0L;
  for (const auto& p : pairs) {
    const long double cos = cosine_serial(p.student, p.teacher);
    sum += p.is_manipulation_pair ? 1.0L - cos : std::max(0.0L, cos);
  }
  return sum / static_cast<long double>(pairs.size());
}

namespace {

// Minimal decoder for the fixture palette; assumes well-formed UTF-8.
std::vector<char32_t> decode_utf8_naive(const std::string& text) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char b0 = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = b0;
    if (b0 >= 0xF0) {
      extra = 3;
      cp = b0 & 0x07u;
    } else if (b0 >= 0xE0) {
      extra = 2;
      cp = b0 & 0x0Fu;
    } else if (b0 >= 0xC0) {
      extra = 1;
      cp = b0 & 0x1Fu;
    }
    for (int k = 0; k < extra; ++k) {
      ++i;
      cp = (cp << 6) | (static_cast<unsigned char>(text[i]) & 0x3Fu);
    }
    ++i;
    out.push_back(cp);
  }
  return out;
}

char32_t lower_latin(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;  // Latin-1 uppercase block
  return cp;
}

}  // namespace

bool passes_simplify_naive(const std::string& line, const NaiveSimplify& cfg) {
  std::vector<char32_t> cps = decode_utf8_naive(line);
  if (cfg.lowercase)
    for (char32_t& cp : cps) cp = lower_latin(cp);

  int punct = 0;
  int symbols = 0;
  for (char32_t cp : cps) {
    if (cp == U' ' || cp == U'\t') continue;
    ++symbols;
    if (cfg.punct.count(cp) != 0) {
      ++punct;
      continue;
    }
    if (!cfg.allowed.empty() && cfg.allowed.count(cp) == 0) return false;
  }
  if (punct > cfg.max_punct) return false;

  if (cfg.cjk) return symbols >= cfg.min_symbols && symbols <= cfg.max_symbols;

  int words = 0;
  bool in_word = false;
  for (char32_t cp : cps) {
    const bool space = cp == U' ' || cp == U'\t';
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words >= cfg.min_words && words <= cfg.max_words;
}

}  // namespace ref
