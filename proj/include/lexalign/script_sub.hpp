#ifndef LEXALIGN_SCRIPT_SUB_HPP
#define LEXALIGN_SCRIPT_SUB_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexalign {

// Injective character-to-character substitution. An entry may map a character
// to itself; otherwise targets must stay disjoint from the domain, so a
// single substitution pass can never chain or merge characters.
class CharMap {
 public:
  CharMap() = default;

  // Validates injectivity, duplicate sources and domain/range disjointness.
  static CharMap from_pairs(const std::vector<std::pair<char32_t, char32_t>>& pairs);

  const std::map<char32_t, char32_t>& mapping() const { return mapping_; }
  std::size_t size() const { return mapping_.size(); }
  bool empty() const { return mapping_.empty(); }

  // Returns cp itself when unmapped.
  char32_t apply(char32_t cp) const {
    auto it = mapping_.find(cp);
    return it == mapping_.end() ? cp : it->second;
  }

 private:
  std::map<char32_t, char32_t> mapping_;
};

// Pairs the i-th source character with the i-th target symbol.
CharMap build_charmap(std::u32string_view source_alphabet, std::u32string_view target_symbols);
CharMap build_charmap(std::string_view source_alphabet_utf8, std::string_view target_symbols_utf8);

// Replaces every mapped character and leaves the rest (spaces, digits,
// punctuation) untouched; codepoint count is preserved.
std::u32string substitute_script(std::u32string_view text, const CharMap& map);
std::string substitute_script(std::string_view text_utf8, const CharMap& map);

// Parallel over lines; output order matches input order.
std::vector<std::string> substitute_corpus(const std::vector<std::string>& lines,
                                           const CharMap& map);

CharMap invert_charmap(const CharMap& map);

// File format: one `src TAB tgt` pair per line, each side a single
// character; blank lines and lines starting with '#' are skipped.
CharMap load_charmap(const std::filesystem::path& path);
void save_charmap(const CharMap& map, const std::filesystem::path& path);

}  // namespace lexalign

#endif
