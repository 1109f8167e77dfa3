#include "lexalign/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <sstream>

#include "lexalign/error.hpp"
#include "lexalign/files.hpp"
#include "lexalign/unicode.hpp"

namespace lexalign {

namespace {

std::string loc(const std::filesystem::path& path, std::size_t line_1based) {
  return path.string() + ":" + std::to_string(line_1based);
}

void check_utf8(const std::vector<std::string>& lines,
                const std::filesystem::path& path) {
  std::u32string scratch;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!uni::try_decode(lines[i], scratch, bad))
      fail(loc(path, i + 1) + ": invalid UTF-8 at byte " + std::to_string(bad + 1));
  }
}

}  // namespace

// --------------------------------------------------------------------------
// Parallel text

std::vector<LinePair> read_parallel_corpus(const std::filesystem::path& source_path,
                                           const std::filesystem::path& target_path) {
  auto src = read_lines(source_path);
  auto tgt = read_lines(target_path);
  if (src.size() != tgt.size())
    fail("line count mismatch: " + source_path.string() + " has " +
         std::to_string(src.size()) + " lines, " + target_path.string() + " has " +
         std::to_string(tgt.size()));
  check_utf8(src, source_path);
  check_utf8(tgt, target_path);
  std::vector<LinePair> pairs;
  pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    pairs.emplace_back(std::move(src[i]), std::move(tgt[i]));
  return pairs;
}

void write_parallel_corpus(std::span<const LinePair> pairs,
                           const std::filesystem::path& source_path,
                           const std::filesystem::path& target_path) {
  std::vector<std::string> src, tgt;
  src.reserve(pairs.size());
  tgt.reserve(pairs.size());
  for (const auto& [s, t] : pairs) {
    src.push_back(s);
    tgt.push_back(t);
  }
  write_lines(source_path, src);
  write_lines(target_path, tgt);
}

// --------------------------------------------------------------------------
// Alignments

namespace {

// Parses one pharaoh line into (i, sep, j) triples. `sep` is '-' or,
// when allow_possible is set, '?'. Columns are 1-based byte offsets.
struct RawLink {
  int i, j;
  char sep;
};

std::vector<RawLink> parse_pharaoh_line(const std::string& line,
                                        const std::filesystem::path& path,
                                        std::size_t line_no, bool allow_possible) {
  std::vector<RawLink> links;
  std::size_t pos = 0;
  while (pos < line.size()) {
    if (line[pos] == ' ' || line[pos] == '\t') {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    const std::string_view tok(line.data() + start, pos - start);
    const auto bad = [&] {
      fail(loc(path, line_no) + ":" + std::to_string(start + 1) + ": malformed alignment token '" +
           std::string(tok) + "' (expected i-j)");
    };
    std::size_t sep_at = tok.find('-');
    char sep = '-';
    if (allow_possible && sep_at == std::string_view::npos) {
      sep_at = tok.find('?');
      sep = '?';
    }
    if (sep_at == std::string_view::npos || sep_at == 0 || sep_at + 1 >= tok.size()) bad();
    int i = 0, j = 0;
    auto r1 = std::from_chars(tok.data(), tok.data() + sep_at, i);
    auto r2 = std::from_chars(tok.data() + sep_at + 1, tok.data() + tok.size(), j);
    if (r1.ec != std::errc{} || r1.ptr != tok.data() + sep_at || r2.ec != std::errc{} ||
        r2.ptr != tok.data() + tok.size() || i < 0 || j < 0)
      bad();
    links.push_back({i, j, sep});
  }
  return links;
}

}  // namespace

AlignmentFile read_alignments(const std::filesystem::path& path) {
  AlignmentFile out;
  const auto lines = read_lines(path);
  out.lines.reserve(lines.size());
  for (std::size_t n = 0; n < lines.size(); ++n) {
    Alignment kept;
    std::set<int> used_src, used_tgt;
    for (const auto& link : parse_pharaoh_line(lines[n], path, n + 1, false)) {
      if (kept.count({link.i, link.j})) continue;  // exact duplicate
      if (used_src.count(link.i) || used_tgt.count(link.j)) {
        ++out.conflicts;
        continue;
      }
      kept.insert({link.i, link.j});
      used_src.insert(link.i);
      used_tgt.insert(link.j);
    }
    out.lines.push_back(std::move(kept));
  }
  return out;
}

std::vector<Alignment> read_alignment_sets(const std::filesystem::path& path) {
  std::vector<Alignment> out;
  const auto lines = read_lines(path);
  out.reserve(lines.size());
  for (std::size_t n = 0; n < lines.size(); ++n) {
    Alignment set;
    for (const auto& link : parse_pharaoh_line(lines[n], path, n + 1, false))
      set.insert({link.i, link.j});
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<GoldAlignment> read_gold_alignments(const std::filesystem::path& path) {
  std::vector<GoldAlignment> out;
  const auto lines = read_lines(path);
  out.reserve(lines.size());
  for (std::size_t n = 0; n < lines.size(); ++n) {
    GoldAlignment gold;
    for (const auto& link : parse_pharaoh_line(lines[n], path, n + 1, true)) {
      if (link.sep == '?')
        gold.possible.insert({link.i, link.j});
      else
        gold.sure.insert({link.i, link.j});
    }
    out.push_back(std::move(gold));
  }
  return out;
}

void write_alignments(std::span<const Alignment> lines,
                      const std::filesystem::path& path) {
  std::vector<std::string> text;
  text.reserve(lines.size());
  for (const auto& set : lines) {
    std::string line;
    for (const auto& [i, j] : set) {  // std::set iterates in ascending order
      if (!line.empty()) line += ' ';
      line += std::to_string(i) + "-" + std::to_string(j);
    }
    text.push_back(std::move(line));
  }
  write_lines(path, text);
}

// --------------------------------------------------------------------------
// CoNLL-U

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

bool parse_int(std::string_view s, int& out) {
  auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc{} && r.ptr == s.data() + s.size();
}

}  // namespace

ConlluFile read_conllu(const std::filesystem::path& path) {
  ConlluFile out;
  const auto lines = read_lines(path);

  std::vector<DepNode> nodes;
  std::size_t sentence_start_line = 1;
  std::size_t sentences_seen = 0;

  auto flush = [&](std::size_t end_line) {
    if (nodes.empty()) return;
    ++sentences_seen;
    try {
      out.trees.push_back(DependencyTree::build(std::move(nodes)));
    } catch (const DataError& e) {
      out.warnings.push_back(loc(path, sentence_start_line) + ": sentence " +
                             std::to_string(sentences_seen) + " skipped: " + e.what());
    }
    nodes.clear();
    sentence_start_line = end_line + 1;
  };

  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    if (line.empty()) {
      flush(n + 1);
      continue;
    }
    if (line[0] == '#') {
      if (nodes.empty()) sentence_start_line = n + 1;
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() != 10)
      fail(loc(path, n + 1) + ": expected 10 tab-separated columns, found " +
           std::to_string(cols.size()));
    const std::string& id_col = cols[0];
    // Multiword-token ranges (1-2) and empty nodes (1.1) are not tree nodes.
    if (id_col.find('-') != std::string::npos || id_col.find('.') != std::string::npos)
      continue;
    DepNode node;
    if (!parse_int(id_col, node.id))
      fail(loc(path, n + 1) + ": bad token id '" + id_col + "'");
    node.form = cols[1];
    node.lemma = (cols[2] == "_" || cols[2].empty()) ? cols[1] : cols[2];
    if (!parse_int(cols[6], node.head))
      fail(loc(path, n + 1) + ": bad HEAD '" + cols[6] + "'");
    node.deprel = cols[7];
    if (node.form.empty()) fail(loc(path, n + 1) + ": empty FORM");
    nodes.push_back(std::move(node));
  }
  flush(lines.size());
  return out;
}

std::vector<Sentence> read_token_tsv(const std::filesystem::path& path,
                                     std::string language_tag) {
  std::vector<Sentence> sentences;
  const auto lines = read_lines(path);
  Sentence current;
  current.language_tag = language_tag;

  auto flush = [&]() {
    if (current.tokens.empty()) return;
    sentences.push_back(std::move(current));
    current = Sentence{};
    current.language_tag = language_tag;
  };

  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    if (line.empty()) {
      flush();
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      fail(loc(path, n + 1) + ": expected form<TAB>lemma");
    std::string form = line.substr(0, tab);
    std::string lemma = line.substr(tab + 1);
    if (form.empty()) fail(loc(path, n + 1) + ": empty form");
    if (lemma.empty()) lemma = form;
    current.tokens.push_back(
        Token{static_cast<int>(current.tokens.size()), std::move(form), std::move(lemma)});
  }
  flush();
  return sentences;
}

// --------------------------------------------------------------------------
// Simplification

AllowedChars AllowedChars::parse(std::string_view spec) {
  AllowedChars set;
  const std::u32string cps = uni::decode(spec);
  std::size_t i = 0;
  while (i < cps.size()) {
    char32_t lo = cps[i];
    if (lo == U'\\' && i + 1 < cps.size()) {  // escaped literal (e.g. \-)
      lo = cps[i + 1];
      i += 2;
      set.ranges_.emplace_back(lo, lo);
      continue;
    }
    if (i + 2 < cps.size() && cps[i + 1] == U'-') {
      const char32_t hi = cps[i + 2];
      if (hi < lo) fail("bad character range in allowed-chars spec");
      set.ranges_.emplace_back(lo, hi);
      i += 3;
    } else {
      set.ranges_.emplace_back(lo, lo);
      ++i;
    }
  }
  std::sort(set.ranges_.begin(), set.ranges_.end());
  // merge overlaps
  std::vector<std::pair<char32_t, char32_t>> merged;
  for (auto [lo, hi] : set.ranges_) {
    if (!merged.empty() && lo <= merged.back().second + 1)
      merged.back().second = std::max(merged.back().second, hi);
    else
      merged.emplace_back(lo, hi);
  }
  set.ranges_ = std::move(merged);
  return set;
}

AllowedChars AllowedChars::preset(std::string_view name) {
  if (name == "all") return AllowedChars{};
  if (name == "latin") return parse("a-zA-Z0-9 À-ÿ");
  if (name == "greek") return parse("Ά-ώ0-9 a-zA-Z");
  if (name == "cyrillic") return parse("Ѐ-ӿ0-9 a-zA-Z");
  if (name == "cjk") return parse("一-鿿぀-ヿ0-9 a-zA-Z");
  fail("unknown allowed-chars preset '" + std::string(name) + "'");
}

bool AllowedChars::allows(char32_t cp) const {
  if (ranges_.empty()) return true;
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), cp,
                             [](char32_t c, const auto& r) { return c < r.first; });
  return it != ranges_.begin() && cp <= std::prev(it)->second;
}

bool passes_simplify(std::string_view line, const SimplifyConfig& cfg) {
  const std::string text = cfg.lowercase ? uni::to_lower_utf8(line) : std::string(line);
  const std::u32string cps = uni::decode(text);

  int punct = 0;
  int symbols = 0;
  for (char32_t cp : cps) {
    if (uni::is_space(cp)) continue;
    ++symbols;
    if (uni::is_punct(cp)) {
      ++punct;
      continue;  // punctuation is budgeted by max_punct, not by allowed_chars
    }
    if (!cfg.allowed_chars.allows(cp)) return false;
  }
  if (punct > cfg.max_punct) return false;

  if (cfg.cjk_mode) {
    if (symbols < cfg.min_symbols || symbols > cfg.max_symbols) return false;
  } else {
    int words = 0;
    bool in_word = false;
    for (char32_t cp : cps) {
      const bool space = uni::is_space(cp);
      if (!space && !in_word) ++words;
      in_word = !space;
    }
    if (words < cfg.min_words || words > cfg.max_words) return false;
  }
  return true;
}

std::vector<LinePair> simplify_corpus(std::span<const LinePair> pairs,
                                      const SimplifyConfig& source_cfg,
                                      const SimplifyConfig& target_cfg) {
  std::vector<LinePair> out;
  for (const auto& [src, tgt] : pairs) {
    if (!passes_simplify(src, source_cfg) || !passes_simplify(tgt, target_cfg)) continue;
    out.emplace_back(source_cfg.lowercase ? uni::to_lower_utf8(src) : src,
                     target_cfg.lowercase ? uni::to_lower_utf8(tgt) : tgt);
  }
  return out;
}

// --------------------------------------------------------------------------
// Embeddings

std::vector<EmbeddingRecord> read_embeddings(const std::filesystem::path& path) {
  std::vector<EmbeddingRecord> records;
  const auto lines = read_lines(path);
  std::size_t dim = 0;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    EmbeddingRecord rec;
    rec.id = n;
    std::size_t pos = 0;
    while (pos < line.size()) {
      if (line[pos] == ' ' || line[pos] == '\t') {
        ++pos;
        continue;
      }
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
      double value = 0.0;
      auto r = std::from_chars(line.data() + start, line.data() + pos, value);
      if (r.ec != std::errc{} || r.ptr != line.data() + pos)
        fail(loc(path, n + 1) + ": bad float '" + line.substr(start, pos - start) + "'");
      rec.vector.push_back(value);
    }
    if (rec.vector.empty()) continue;  // blank lines carry nothing
    if (dim == 0)
      dim = rec.vector.size();
    else if (rec.vector.size() != dim)
      fail(loc(path, n + 1) + ": dimension mismatch (expected " + std::to_string(dim) +
           ", found " + std::to_string(rec.vector.size()) + ")");
    records.push_back(std::move(rec));
  }
  return records;
}

void write_embeddings(std::span<const EmbeddingRecord> records,
                      const std::filesystem::path& path) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  char buf[64];
  for (const auto& rec : records) {
    std::string line;
    for (double v : rec.vector) {
      auto r = std::to_chars(buf, buf + sizeof buf, v);
      if (!line.empty()) line += ' ';
      line.append(buf, r.ptr);
    }
    lines.push_back(std::move(line));
  }
  write_lines(path, lines);
}

// --------------------------------------------------------------------------
// Pair assembly

LemmaSource lemma_source_auto(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".conllu" || ext == ".conll") return {path, LemmaFormat::conllu};
  return {path, LemmaFormat::tsv};
}

namespace {

std::vector<Sentence> load_lemma_sentences(const LemmaSource& source,
                                           const std::string& language_tag) {
  if (source.format == LemmaFormat::tsv) return read_token_tsv(source.path, language_tag);
  auto conllu = read_conllu(source.path);
  if (!conllu.warnings.empty())
    fail(conllu.warnings.front() +
         " (lemma files must parse cleanly; fix or drop the sentence from the corpus too)");
  std::vector<Sentence> sentences;
  sentences.reserve(conllu.trees.size());
  for (const auto& tree : conllu.trees) sentences.push_back(tree.to_sentence(language_tag));
  return sentences;
}

void attach_lemmas(Sentence& sent, const Sentence& lemmas, std::size_t line_no,
                   const char* side) {
  if (lemmas.tokens.size() != sent.tokens.size())
    fail("line " + std::to_string(line_no) + ": " + side + " token count mismatch (corpus " +
         std::to_string(sent.tokens.size()) + " vs lemma file " +
         std::to_string(lemmas.tokens.size()) + ")");
  for (std::size_t k = 0; k < sent.tokens.size(); ++k)
    sent.tokens[k].lemma = lemmas.tokens[k].lemma;
}

}  // namespace

std::vector<AlignedSentencePair> assemble_pairs(
    const std::filesystem::path& source_corpus,
    const std::filesystem::path& target_corpus,
    const std::filesystem::path& alignment_path, const AssembleOptions& options) {
  const auto pairs = read_parallel_corpus(source_corpus, target_corpus);
  auto alignments = read_alignments(alignment_path);
  if (options.conflicts_out != nullptr) *options.conflicts_out = alignments.conflicts;
  if (alignments.lines.size() != pairs.size())
    fail("alignment file " + alignment_path.string() + " has " +
         std::to_string(alignments.lines.size()) + " lines but the corpus has " +
         std::to_string(pairs.size()));

  std::vector<Sentence> src_lemmas, tgt_lemmas;
  if (options.source_lemmas) {
    src_lemmas = load_lemma_sentences(*options.source_lemmas, options.source_language);
    if (src_lemmas.size() != pairs.size())
      fail("source lemma file has " + std::to_string(src_lemmas.size()) +
           " sentences but the corpus has " + std::to_string(pairs.size()));
  }
  if (options.target_lemmas) {
    tgt_lemmas = load_lemma_sentences(*options.target_lemmas, options.target_language);
    if (tgt_lemmas.size() != pairs.size())
      fail("target lemma file has " + std::to_string(tgt_lemmas.size()) +
           " sentences but the corpus has " + std::to_string(pairs.size()));
  }

  std::vector<AlignedSentencePair> out;
  out.reserve(pairs.size());
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    AlignedSentencePair pair;
    pair.source = Sentence::from_line(pairs[n].first, options.source_language);
    pair.target = Sentence::from_line(pairs[n].second, options.target_language);
    if (options.source_lemmas) attach_lemmas(pair.source, src_lemmas[n], n + 1, "source");
    if (options.target_lemmas) attach_lemmas(pair.target, tgt_lemmas[n], n + 1, "target");
    pair.alignment = std::move(alignments.lines[n]);
    try {
      pair.validate();
    } catch (const DataError& e) {
      fail("line " + std::to_string(n + 1) + ": " + e.what());
    }
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace lexalign
