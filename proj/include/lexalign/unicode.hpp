#ifndef LEXALIGN_UNICODE_HPP
#define LEXALIGN_UNICODE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 / codepoint utilities. Covers what corpus processing needs:
// strict decoding, encoding, whitespace splitting, a simple-case lowercase
// map for Latin/Greek/Cyrillic, and a punctuation test over the common
// Unicode P* ranges.

namespace lexalign::uni {

// Strict UTF-8 decode; rejects overlong forms, surrogates and cp > 0x10FFFF.
// On failure returns false and sets bad_byte to the 0-based offset of the
// offending byte.
bool try_decode(std::string_view text, std::u32string& out,
                std::size_t& bad_byte);

// Decoding variant that throws DataError on invalid input.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view codepoints);
std::string encode(char32_t cp);

bool is_space(char32_t cp);
bool is_punct(char32_t cp);  // Unicode general categories P*

char32_t to_lower(char32_t cp);
std::string to_lower_utf8(std::string_view text);

// Splits on Unicode whitespace; empty tokens are never produced.
std::vector<std::string> split_words(std::string_view line);

}  // namespace lexalign::uni

#endif
