// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mmcoex::csv {

/// Whole-file read; throws InputError when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes `text` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view text);

std::string_view trim(std::string_view s);

/// Splits one CSV record on commas. Double-quoted fields may contain commas
/// and "" escapes. Fields are trimmed.
std::vector<std::string> split_line(std::string_view line);

/// Non-empty, non-comment lines (leading '#') with their 1-based line
/// numbers. Handles \r\n endings.
std::vector<std::pair<std::size_t, std::string>> lines(std::string_view text);

/// Parses the entire field as a finite double.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

/// Shortest decimal form that round-trips the value exactly.
std::string format_double(double v);

/// Fixed precision decimal; used for report columns.
std::string format_fixed(double v, int digits);

} // namespace mmcoex::csv
