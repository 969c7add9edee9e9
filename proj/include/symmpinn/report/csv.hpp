#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symmpinn/error.hpp"

namespace symmpinn::report {

/// Numeric CSV with '#'-prefixed "key: value" metadata lines, one header
/// row and rows of doubles. Values are written with 17 significant digits so
/// parsing the output gives back the same doubles.
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    bool operator==(const CsvTable&) const = default;
};

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string to_csv(const CsvTable& t) {
    std::string out;
    for (const auto& [k, v] : t.meta) out += "# " + k + ": " + v + "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += "\n";
    for (const auto& r : t.rows) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) out += ',';
            out += format_double(r[c]);
        }
        out += "\n";
    }
    return out;
}

inline CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(": ");
            if (colon == std::string::npos || line.size() < 2) throw error("csv line " + std::to_string(line_no) + ": bad metadata");
            t.meta.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!header) {
            t.columns = std::move(cells);
            header = true;
            continue;
        }
        if (cells.size() != t.columns.size())
            throw error("csv line " + std::to_string(line_no) + ": expected " + std::to_string(t.columns.size()) + " cells");
        std::vector<double> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto* first = cells[c].data();
            const auto* last = first + cells[c].size();
            auto [ptr, ec] = std::from_chars(first, last, row[c]);
            if (ec != std::errc{} || ptr != last)
                throw error("csv line " + std::to_string(line_no) + ": not a number '" + cells[c] + "'");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write " + path);
    out << text;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace symmpinn::report
