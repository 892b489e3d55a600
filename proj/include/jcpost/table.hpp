#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace jcpost {

// A flat result table: ordered metadata pairs, column names, homogeneous rows.
struct Table {
    using Cell = std::variant<std::string, double, std::int64_t>;

    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Doubles are always rendered with %.17g so emitted values round-trip exactly
// and reruns are byte-identical.
std::string format_double(double value);

// CSV: '#'-prefixed "key=value" metadata preamble, header row, RFC-4180
// quoting for fields containing commas, quotes, or newlines.
std::string to_csv(const Table& table);

// JSON: one object {"meta": {...}, "rows": [...]} with the same numeric
// rendering as the CSV writer. Non-finite doubles become null.
std::string to_json(const Table& table);

// Parse a CSV produced by to_csv. All cells come back as string variants;
// metadata lines are restored into `meta`.
Table parse_csv(const std::string& text);

void write_file(const std::string& path, const std::string& content);  // io_error on failure

}  // namespace jcpost
