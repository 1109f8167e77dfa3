#include "lexalign/unicode.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "lexalign/error.hpp"

namespace lexalign::uni {

bool try_decode(std::string_view text, std::u32string& out,
                std::size_t& bad_byte) {
  out.clear();
  out.reserve(text.size());
  std::size_t i = 0;
  const auto n = text.size();
  auto cont = [&](std::size_t k) {
    return k < n && (static_cast<std::uint8_t>(text[k]) & 0xC0) == 0x80;
  };
  while (i < n) {
    const auto b0 = static_cast<std::uint8_t>(text[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
    } else if ((b0 & 0xE0) == 0xC0) {
      if (!cont(i + 1)) { bad_byte = i; return false; }
      const char32_t cp = (char32_t(b0 & 0x1F) << 6) |
                          (static_cast<std::uint8_t>(text[i + 1]) & 0x3F);
      if (cp < 0x80) { bad_byte = i; return false; }
      out.push_back(cp);
      i += 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      if (!cont(i + 1) || !cont(i + 2)) { bad_byte = i; return false; }
      const char32_t cp = (char32_t(b0 & 0x0F) << 12) |
                          (char32_t(static_cast<std::uint8_t>(text[i + 1]) & 0x3F) << 6) |
                          (static_cast<std::uint8_t>(text[i + 2]) & 0x3F);
      if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) { bad_byte = i; return false; }
      out.push_back(cp);
      i += 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      if (!cont(i + 1) || !cont(i + 2) || !cont(i + 3)) { bad_byte = i; return false; }
      const char32_t cp = (char32_t(b0 & 0x07) << 18) |
                          (char32_t(static_cast<std::uint8_t>(text[i + 1]) & 0x3F) << 12) |
                          (char32_t(static_cast<std::uint8_t>(text[i + 2]) & 0x3F) << 6) |
                          (static_cast<std::uint8_t>(text[i + 3]) & 0x3F);
      if (cp < 0x10000 || cp > 0x10FFFF) { bad_byte = i; return false; }
      out.push_back(cp);
      i += 4;
    } else {
      bad_byte = i;
      return false;
    }
  }
  return true;
}

std::u32string decode(std::string_view text) {
  std::u32string out;
  std::size_t bad = 0;
  if (!try_decode(text, out, bad))
    fail("invalid UTF-8 at byte offset " + std::to_string(bad));
  return out;
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

std::string encode(std::u32string_view codepoints) {
  std::string out;
  out.reserve(codepoints.size());
  for (char32_t cp : codepoints) out += encode(cp);
  return out;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x20: case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return (cp >= 0x09 && cp <= 0x0D) || (cp >= 0x2000 && cp <= 0x200A);
  }
}

namespace {

struct Range {
  char32_t lo, hi;
};

// Common P* ranges: ASCII and Latin-1 punctuation, Hebrew, Arabic,
// Devanagari, general punctuation, CJK symbols, fullwidth forms.
constexpr std::array<Range, 48> kPunct{{
    {0x0021, 0x0023}, {0x0025, 0x002A}, {0x002C, 0x002F}, {0x003A, 0x003B},
    {0x003F, 0x0040}, {0x005B, 0x005D}, {0x005F, 0x005F}, {0x007B, 0x007B},
    {0x007D, 0x007D}, {0x00A1, 0x00A1}, {0x00A7, 0x00A7}, {0x00AB, 0x00AB},
    {0x00B6, 0x00B7}, {0x00BB, 0x00BB}, {0x00BF, 0x00BF}, {0x037E, 0x037E},
    {0x0387, 0x0387}, {0x05BE, 0x05BE}, {0x05C0, 0x05C0}, {0x05C3, 0x05C3},
    {0x05C6, 0x05C6}, {0x05F3, 0x05F4}, {0x060C, 0x060D}, {0x061B, 0x061B},
    {0x061E, 0x061F}, {0x066A, 0x066D}, {0x06D4, 0x06D4}, {0x0964, 0x0965},
    {0x0970, 0x0970}, {0x2010, 0x2027}, {0x2030, 0x2043}, {0x2045, 0x2051},
    {0x2053, 0x205E}, {0x3001, 0x3003}, {0x3008, 0x3011}, {0x3014, 0x301F},
    {0x3030, 0x3030}, {0x303D, 0x303D}, {0xFF01, 0xFF03}, {0xFF05, 0xFF0A},
    {0xFF0C, 0xFF0F}, {0xFF1A, 0xFF1B}, {0xFF1F, 0xFF20}, {0xFF3B, 0xFF3D},
    {0xFF3F, 0xFF3F}, {0xFF5B, 0xFF5B}, {0xFF5D, 0xFF5D}, {0xFF5F, 0xFF65},
}};

}  // namespace

bool is_punct(char32_t cp) {
  auto it = std::upper_bound(
      kPunct.begin(), kPunct.end(), cp,
      [](char32_t c, const Range& r) { return c < r.lo; });
  return it != kPunct.begin() && cp <= std::prev(it)->hi;
}

char32_t to_lower(char32_t cp) {
  // ASCII
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  // Latin-1 supplement (multiplication sign excluded)
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  // Latin Extended-A: alternating upper/lower pairs
  if (cp >= 0x100 && cp <= 0x137 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x139 && cp <= 0x148 && cp % 2 == 1) return cp + 1;
  if (cp >= 0x14A && cp <= 0x177 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x179 && cp <= 0x17E && cp % 2 == 1) return cp + 1;
  // Greek
  if (cp == 0x386) return 0x3AC;
  if (cp >= 0x388 && cp <= 0x38A) return cp + 0x25;
  if (cp == 0x38C) return 0x3CC;
  if (cp >= 0x38E && cp <= 0x38F) return cp + 0x3F;
  if ((cp >= 0x391 && cp <= 0x3A1) || (cp >= 0x3A3 && cp <= 0x3AB))
    return cp + 0x20;
  // Cyrillic
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  return cp;
}

std::string to_lower_utf8(std::string_view text) {
  std::u32string cps = decode(text);
  for (auto& cp : cps) cp = to_lower(cp);
  return encode(cps);
}

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::u32string cps = decode(line);
  std::u32string current;
  for (char32_t cp : cps) {
    if (is_space(cp)) {
      if (!current.empty()) {
        words.push_back(encode(current));
        current.clear();
      }
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) words.push_back(encode(current));
  return words;
}

}  // namespace lexalign::uni
