#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace foodsim::csv {

struct Table {
    std::filesystem::path source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string &name) const; // throws ParseError
    bool has_column(const std::string &name) const;
};

/// Reads a comma-separated file with a header row. Handles quoted fields
/// and skips blank lines; does not support embedded newlines.
Table read_file(const std::filesystem::path &path);

/// Parses a cell as double with file/line context on failure.
double to_double(const Table &table, std::size_t row, std::size_t col);

void write_file(const std::filesystem::path &path, const std::vector<std::string> &header,
                const std::vector<std::vector<std::string>> &rows);

std::string format_double(double v);

} // namespace foodsim::csv
