#ifndef LEXALIGN_FILES_HPP
#define LEXALIGN_FILES_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace lexalign {

// Reads a whole text file into lines. Trailing '\r' is stripped so CRLF
// input parses the same as LF. A final line without a newline still counts.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Writes lines joined with '\n', each line terminated.
void write_lines(const std::filesystem::path& path,
                 const std::vector<std::string>& lines);

void write_text(const std::filesystem::path& path, const std::string& text);

std::string read_text(const std::filesystem::path& path);

}  // namespace lexalign

#endif
