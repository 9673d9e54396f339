#pragma once

#include <string>
#include <vector>

namespace liebundle {

/// Shortest decimal representation that round-trips the double exactly.
/// Output depends only on the value, never on locale or flags.
std::string format_double(double v);

std::string join_csv_row(const std::vector<std::string>& cells);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace liebundle
