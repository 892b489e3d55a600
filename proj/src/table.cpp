#include "jcpost/table.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "jcpost/errors.hpp"

namespace jcpost {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";  // glibc prints "-nan" for the default quiet NaN
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

bool needs_csv_quotes(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_escape(const std::string& field) {
    if (!needs_csv_quotes(field)) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string csv_cell(const Table::Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return csv_escape(*s);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return std::to_string(std::get<std::int64_t>(cell));
}

std::string json_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 2);
    for (unsigned char ch : text) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += static_cast<char>(ch);
                }
        }
    }
    return out;
}

std::string json_cell(const Table::Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return "\"" + json_escape(*s) + "\"";
    if (const auto* d = std::get_if<double>(&cell))
        return std::isfinite(*d) ? format_double(*d) : std::string("null");
    return std::to_string(std::get<std::int64_t>(cell));
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (const auto& [key, value] : table.meta) out += "# " + key + "=" + value + "\n";
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (j > 0) out += ',';
        out += csv_escape(table.columns[j]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) out += ',';
            out += csv_cell(row[j]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    std::string out = "{\n  \"meta\": {";
    for (std::size_t i = 0; i < table.meta.size(); ++i) {
        out += i == 0 ? "\n" : ",\n";
        out += "    \"" + json_escape(table.meta[i].first) + "\": \"" +
               json_escape(table.meta[i].second) + "\"";
    }
    out += table.meta.empty() ? "},\n" : "\n  },\n";
    out += "  \"rows\": [";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out += i == 0 ? "\n" : ",\n";
        out += "    {";
        const auto& row = table.rows[i];
        for (std::size_t j = 0; j < row.size() && j < table.columns.size(); ++j) {
            if (j > 0) out += ", ";
            out += "\"" + json_escape(table.columns[j]) + "\": " + json_cell(row[j]);
        }
        out += "}";
    }
    out += table.rows.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

Table parse_csv(const std::string& text) {
    Table table;
    std::size_t pos = 0;
    const std::size_t size = text.size();
    bool header_done = false;

    while (pos < size) {
        if (!header_done && text[pos] == '#') {
            std::size_t end = text.find('\n', pos);
            if (end == std::string::npos) end = size;
            std::string line = text.substr(pos, end - pos);
            pos = end == size ? size : end + 1;
            std::size_t start = 1;
            while (start < line.size() && line[start] == ' ') ++start;
            const std::size_t eq = line.find('=', start);
            if (eq == std::string::npos)
                throw invalid_input_error("metadata line is missing '='");
            table.meta.emplace_back(line.substr(start, eq - start), line.substr(eq + 1));
            continue;
        }

        // One record, honoring quoted fields that may embed separators.
        std::vector<std::string> fields;
        std::string field;
        bool in_quotes = false;
        for (;;) {
            if (pos >= size) {
                fields.push_back(field);
                break;
            }
            const char ch = text[pos];
            if (in_quotes) {
                if (ch == '"') {
                    if (pos + 1 < size && text[pos + 1] == '"') {
                        field += '"';
                        pos += 2;
                    } else {
                        in_quotes = false;
                        ++pos;
                    }
                } else {
                    field += ch;
                    ++pos;
                }
                continue;
            }
            if (ch == '"') {
                in_quotes = true;
                ++pos;
            } else if (ch == ',') {
                fields.push_back(field);
                field.clear();
                ++pos;
            } else if (ch == '\n') {
                fields.push_back(field);
                ++pos;
                break;
            } else if (ch == '\r') {
                ++pos;
            } else {
                field += ch;
                ++pos;
            }
        }
        if (in_quotes) throw invalid_input_error("unterminated quoted CSV field");

        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (!header_done) {
            table.columns = fields;
            header_done = true;
        } else {
            std::vector<Table::Cell> row;
            row.reserve(fields.size());
            for (auto& f : fields) row.emplace_back(std::move(f));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::error_code ec;
    if (target.has_parent_path())
        std::filesystem::create_directories(target.parent_path(), ec);
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw io_error("failed writing " + path);
}

}  // namespace jcpost
