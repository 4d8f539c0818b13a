#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ncts {

// Whole-file helpers. All failures surface as IoError naming the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Splits on '\n', dropping a trailing '\r' per line. A final newline does not
// produce an extra empty line.
std::vector<std::string> split_lines(std::string_view content);

} // namespace ncts
