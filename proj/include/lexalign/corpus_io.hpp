#ifndef LEXALIGN_CORPUS_IO_HPP
#define LEXALIGN_CORPUS_IO_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexalign/types.hpp"

namespace lexalign {

using LinePair = std::pair<std::string, std::string>;

// ---------------------------------------------------------------------------
// Parallel text: two UTF-8 files, one sentence per line, line-aligned.

std::vector<LinePair> read_parallel_corpus(const std::filesystem::path& source_path,
                                           const std::filesystem::path& target_path);

void write_parallel_corpus(std::span<const LinePair> pairs,
                           const std::filesystem::path& source_path,
                           const std::filesystem::path& target_path);

// ---------------------------------------------------------------------------
// Pharaoh alignments: whitespace-separated `i-j` pairs, one line per sentence.

struct AlignmentFile {
  std::vector<Alignment> lines;
  // Pairs dropped while reducing non-one-to-one lines (first pair in line
  // order wins for each conflicting index). Exact duplicates collapse
  // silently and are not counted here.
  std::size_t conflicts = 0;
};

AlignmentFile read_alignments(const std::filesystem::path& path);

// Raw variant: no one-to-one reduction, duplicates collapse via the set.
// Used for evaluation, where predictions and references are scored as given.
std::vector<Alignment> read_alignment_sets(const std::filesystem::path& path);

// Gold files may mark possible (non-sure) links with `i?j`.
struct GoldAlignment {
  Alignment sure;
  Alignment possible;
};

std::vector<GoldAlignment> read_gold_alignments(const std::filesystem::path& path);

// Canonical form: pairs ascending, single spaces, trailing newline.
void write_alignments(std::span<const Alignment> lines,
                      const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// CoNLL-U treebanks (10 columns). Multiword ranges and empty nodes are
// skipped. Sentences violating tree invariants are dropped with a warning.

struct ConlluFile {
  std::vector<DependencyTree> trees;
  std::vector<std::string> warnings;
};

ConlluFile read_conllu(const std::filesystem::path& path);

// Token/lemma TSV: `form<TAB>lemma` per token, blank line between sentences.
std::vector<Sentence> read_token_tsv(const std::filesystem::path& path,
                                     std::string language_tag = {});

// ---------------------------------------------------------------------------
// Corpus simplification.

// Set of allowed codepoints, stored as sorted disjoint ranges.
// An empty set allows everything.
class AllowedChars {
 public:
  AllowedChars() = default;

  // Spec syntax, UTF-8: plain characters allow themselves, `a-z` allows a
  // range, `\-` a literal dash. Example: "a-zà-ÿ0-9 '".
  static AllowedChars parse(std::string_view spec);
  // Named presets: "all", "latin", "greek", "cyrillic", "cjk".
  static AllowedChars preset(std::string_view name);

  bool unrestricted() const { return ranges_.empty(); }
  bool allows(char32_t cp) const;

 private:
  std::vector<std::pair<char32_t, char32_t>> ranges_;
};

struct SimplifyConfig {
  int min_words = 4;
  int max_words = 16;
  int max_punct = 1;
  AllowedChars allowed_chars;  // whitespace and punctuation always pass
  bool cjk_mode = false;       // count symbols instead of words
  int min_symbols = 5;
  int max_symbols = 25;
  bool lowercase = true;
};

// True when `line` survives the filter. Evaluated on the lowercased line
// when cfg.lowercase is set, so a lowercase-only allowed set accepts cased
// input.
bool passes_simplify(std::string_view line, const SimplifyConfig& cfg);

// Keeps a pair iff both sides pass their config; surviving text is
// lowercased per side when requested. Order is preserved.
std::vector<LinePair> simplify_corpus(std::span<const LinePair> pairs,
                                      const SimplifyConfig& source_cfg,
                                      const SimplifyConfig& target_cfg);

// ---------------------------------------------------------------------------
// Embeddings: one whitespace-separated float vector per line.

struct EmbeddingRecord {
  std::size_t id = 0;  // 0-based line index
  std::vector<double> vector;
};

std::vector<EmbeddingRecord> read_embeddings(const std::filesystem::path& path);

// Canonical form: shortest round-trip decimal, single spaces.
void write_embeddings(std::span<const EmbeddingRecord> records,
                      const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Assembly of aligned sentence pairs from corpus + alignment (+ lemma) files.

enum class LemmaFormat { conllu, tsv };

struct LemmaSource {
  std::filesystem::path path;
  LemmaFormat format = LemmaFormat::conllu;
};

// Detects by extension: ".conllu" / ".conll" -> conllu, otherwise tsv.
LemmaSource lemma_source_auto(const std::filesystem::path& path);

struct AssembleOptions {
  std::optional<LemmaSource> source_lemmas;
  std::optional<LemmaSource> target_lemmas;
  std::string source_language;
  std::string target_language;
  std::size_t* conflicts_out = nullptr;  // receives the alignment conflict count
};

// Tokens come from the corpus lines (whitespace split); lemmas, when a lemma
// source is given, are matched positionally and must agree in token count.
// Without lemmas, lemma := form. The alignment file must have exactly one
// line per pair; links are range-checked. All errors carry 1-based line
// numbers.
std::vector<AlignedSentencePair> assemble_pairs(
    const std::filesystem::path& source_corpus,
    const std::filesystem::path& target_corpus,
    const std::filesystem::path& alignment_path,
    const AssembleOptions& options = {});

}  // namespace lexalign

#endif
