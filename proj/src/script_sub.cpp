#include "lexalign/script_sub.hpp"

#include <omp.h>

#include <set>

#include "lexalign/error.hpp"
#include "lexalign/files.hpp"
#include "lexalign/unicode.hpp"

namespace lexalign {

CharMap CharMap::from_pairs(const std::vector<std::pair<char32_t, char32_t>>& pairs) {
  CharMap map;
  std::set<char32_t> targets;
  for (const auto& [src, tgt] : pairs) {
    if (!map.mapping_.emplace(src, tgt).second)
      fail("charmap maps '" + uni::encode(src) + "' twice");
    if (!targets.insert(tgt).second)
      fail("charmap targets are not distinct: '" + uni::encode(tgt) + "' repeats");
  }
  for (const auto& [src, tgt] : map.mapping_) {
    if (src == tgt) continue;
    if (map.mapping_.count(tgt) != 0)
      fail("charmap target '" + uni::encode(tgt) + "' collides with a mapped source");
  }
  return map;
}

CharMap build_charmap(std::u32string_view source_alphabet, std::u32string_view target_symbols) {
  if (target_symbols.size() < source_alphabet.size())
    fail("charmap needs " + std::to_string(source_alphabet.size()) + " target symbols, got " +
         std::to_string(target_symbols.size()));
  std::vector<std::pair<char32_t, char32_t>> pairs;
  pairs.reserve(source_alphabet.size());
  for (std::size_t i = 0; i < source_alphabet.size(); ++i)
    pairs.emplace_back(source_alphabet[i], target_symbols[i]);
  return CharMap::from_pairs(pairs);
}

CharMap build_charmap(std::string_view source_alphabet_utf8, std::string_view target_symbols_utf8) {
  return build_charmap(uni::decode(source_alphabet_utf8), uni::decode(target_symbols_utf8));
}

std::u32string substitute_script(std::u32string_view text, const CharMap& map) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t cp : text) out.push_back(map.apply(cp));
  return out;
}

std::string substitute_script(std::string_view text_utf8, const CharMap& map) {
  return uni::encode(substitute_script(uni::decode(text_utf8), map));
}

std::vector<std::string> substitute_corpus(const std::vector<std::string>& lines,
                                           const CharMap& map) {
  std::vector<std::string> out(lines.size());
  // Exceptions must not escape the parallel region; report the first bad
  // line afterwards.
  std::vector<std::string> errors(lines.size());
  std::vector<unsigned char> bad(lines.size(), 0);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out[i] = substitute_script(lines[i], map);
    } catch (const DataError& e) {
      bad[i] = 1;
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (bad[i]) fail("line " + std::to_string(i + 1) + ": " + errors[i]);
  return out;
}

CharMap invert_charmap(const CharMap& map) {
  std::vector<std::pair<char32_t, char32_t>> pairs;
  pairs.reserve(map.size());
  for (const auto& [src, tgt] : map.mapping()) pairs.emplace_back(tgt, src);
  return CharMap::from_pairs(pairs);
}

CharMap load_charmap(const std::filesystem::path& path) {
  std::vector<std::pair<char32_t, char32_t>> pairs;
  std::size_t lineno = 0;
  for (const std::string& line : read_lines(path)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      fail(path.string() + ":" + std::to_string(lineno) + ": expected `src TAB tgt`");
    std::u32string src = uni::decode(line.substr(0, tab));
    std::u32string tgt = uni::decode(line.substr(tab + 1));
    if (src.size() != 1 || tgt.size() != 1)
      fail(path.string() + ":" + std::to_string(lineno) +
           ": each side must be a single character");
    pairs.emplace_back(src[0], tgt[0]);
  }
  return CharMap::from_pairs(pairs);
}

void save_charmap(const CharMap& map, const std::filesystem::path& path) {
  std::vector<std::string> rows;
  rows.reserve(map.size());
  for (const auto& [src, tgt] : map.mapping())
    rows.push_back(uni::encode(src) + "\t" + uni::encode(tgt));
  write_lines(path, rows);
}

}  // namespace lexalign
