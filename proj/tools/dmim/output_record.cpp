#include "output_record.hpp"

#include <charconv>
#include <cmath>

namespace dmim::cli {
namespace {

void append_json_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                   std::chars_format::general, 17);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

void OutputRecord::check_rectangular() const {
    for (const auto& row : rows) {
        if (row.size() != columns.size()) {
            throw std::logic_error("output row arity does not match the column header");
        }
    }
}

std::string OutputRecord::to_csv() const {
    check_rectangular();
    std::string out;
    out += "# schema_version=" + schema_version + "\n";
    out += "# command=" + command + "\n";
    for (const auto& [key, value] : params) {
        out += "# " + key + "=" + value + "\n";
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string OutputRecord::to_json() const {
    check_rectangular();
    std::string out = "{\n  \"schema_version\": ";
    append_json_string(out, schema_version);
    out += ",\n  \"command\": ";
    append_json_string(out, command);
    out += ",\n  \"params\": {";
    for (std::size_t i = 0; i < params.size(); ++i) {
        out += i ? ", " : "";
        append_json_string(out, params[i].first);
        out += ": ";
        append_json_string(out, params[i].second);
    }
    out += "},\n  \"columns\": [";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out += i ? ", " : "";
        append_json_string(out, columns[i]);
    }
    out += "],\n  \"rows\": [";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += r ? ",\n    [" : "\n    [";
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            if (i) out += ", ";
            out += std::isfinite(rows[r][i]) ? format_double(rows[r][i]) : "null";
        }
        out += ']';
    }
    out += rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

std::string render(const OutputRecord& record, OutputFormat format) {
    return format == OutputFormat::Csv ? record.to_csv() : record.to_json();
}

} // namespace dmim::cli
