#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dmim::cli {

// Bad flags or flag combinations; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File system / parse problems; maps to exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One command's output: run metadata plus a rectangular table of numbers.
// CSV and JSON carry identical rows; every number is printed with 17
// significant digits so a reader recovers the exact 64-bit value.
struct OutputRecord {
    std::string schema_version = "1";
    std::string command;
    std::vector<std::pair<std::string, std::string>> params; // emitted in order
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_param(std::string key, std::string value) {
        params.emplace_back(std::move(key), std::move(value));
    }

    // '#'-prefixed metadata lines, then the column header, then the rows.
    // Comma separated, LF line endings, locale independent.
    std::string to_csv() const;

    std::string to_json() const;

    // every row must match the header arity
    void check_rectangular() const;
};

// 17 significant digits, locale independent.
std::string format_double(double value);

enum class OutputFormat { Csv, Json };

std::string render(const OutputRecord& record, OutputFormat format);

} // namespace dmim::cli
