#include "foodsim/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "foodsim/errors.hpp"

namespace foodsim::csv {

namespace {

std::vector<std::string> split_line(const std::string &line, const std::filesystem::path &path,
                                    std::size_t line_no) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"') {
            if (!cell.empty())
                throw ParseError(path.string() + ":" + std::to_string(line_no) +
                                 ": quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    if (quoted)
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": unterminated quote");
    cells.push_back(std::move(cell));
    return cells;
}

} // namespace

std::size_t Table::column(const std::string &name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw ParseError(source.string() + ": missing required column '" + name + "'");
}

bool Table::has_column(const std::string &name) const {
    for (const auto &h : header)
        if (h == name)
            return true;
    return false;
}

Table read_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());

    Table table;
    table.source = path;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        auto cells = split_line(line, path, line_no);
        if (table.header.empty()) {
            table.header = std::move(cells);
        } else {
            if (cells.size() != table.header.size())
                throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                                 std::to_string(table.header.size()) + " cells, got " +
                                 std::to_string(cells.size()));
            table.rows.push_back(std::move(cells));
        }
    }
    if (table.header.empty())
        throw ParseError(path.string() + ": empty file");
    return table;
}

double to_double(const Table &table, std::size_t row, std::size_t col) {
    const std::string &cell = table.rows[row][col];
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw ParseError(table.source.string() + ":" + std::to_string(row + 2) +
                         ": cannot parse '" + cell + "' as a number");
    return value;
}

void write_file(const std::filesystem::path &path, const std::vector<std::string> &header,
                const std::vector<std::vector<std::string>> &rows) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    const auto write_row = [&out](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out << ',';
            const bool needs_quote = cells[i].find_first_of(",\"") != std::string::npos;
            if (needs_quote) {
                out << '"';
                for (char c : cells[i]) {
                    if (c == '"')
                        out << '"';
                    out << c;
                }
                out << '"';
            } else {
                out << cells[i];
            }
        }
        out << '\n';
    };
    write_row(header);
    for (const auto &row : rows)
        write_row(row);
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

} // namespace foodsim::csv
