#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace basins::csv {

/// Shortest-safe round-trip text for a double: 17 significant digits.
std::string format_double(double v);

/// Splits one CSV line on commas (no quoting; all files here are numeric).
std::vector<std::string_view> split(std::string_view line);

/// Parses the whole field as a double; returns false on trailing junk.
bool parse_double(std::string_view field, double& out);
bool parse_int(std::string_view field, long& out);

/// Writes text to path, throwing std::runtime_error if the file cannot be opened.
void write_file(const std::string& path, std::string_view text);
std::string read_file(const std::string& path);

}  // namespace basins::csv
