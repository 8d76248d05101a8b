#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tarc {

/// Labeled rows of text cells; the unit every report and CSV output uses.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const;  // throws DataError if absent
    std::optional<std::size_t> find_column(std::string_view name) const;
    void add_row(std::vector<std::string> row);
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double x);
std::string format_count(std::size_t n);
double parse_number(std::string_view s);  // accepts format_number's output

std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_escape(std::string_view field);

void write_csv(const std::filesystem::path& path, const Table& table);
std::string to_csv(const Table& table);
/// Header row + data rows; '#' comment lines and blank lines skipped.
Table read_csv(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace tarc
