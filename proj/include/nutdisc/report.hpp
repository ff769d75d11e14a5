#pragma once

#include "nutdisc/numbers.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nutdisc {

/// Empty cells render as "" in CSV and null in JSON.
struct Blank {
    friend bool operator==(Blank, Blank) { return true; }
};

using Cell = std::variant<Blank, BigInt, Rational, double, std::string, bool>;

/// Tabular driver output with a fixed column schema.
class ExperimentReport {
public:
    ExperimentReport() = default;
    explicit ExperimentReport(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

    /// Throws Error(domain) if the row width does not match the schema.
    void add_row(std::vector<Cell> row);

    const Cell& at(std::size_t row, const std::string& column) const;

    void set_meta(std::string key, std::string value);
    const std::vector<std::pair<std::string, std::string>>& metadata() const noexcept {
        return meta_;
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::pair<std::string, std::string>> meta_;
};

/// A report plus the assertion failures its driver found.
struct Verification {
    ExperimentReport report;
    std::vector<std::string> failures;

    bool passed() const noexcept { return failures.empty(); }
};

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// Header row, then one line per row. Rationals as "p/q", doubles in
/// shortest round-trip form.
void write_csv(const ExperimentReport& report, std::ostream& out);

/// Array of row objects keyed by column name.
void write_json(const ExperimentReport& report, std::ostream& out);

/// Metadata as a flat JSON object.
void write_metadata(const ExperimentReport& report, std::ostream& out);

/// Writes to `path`, or to `fallback` when path is empty or "-".
/// Throws Error(io) when the file cannot be written.
void emit(const ExperimentReport& report, Format format, const std::string& path,
          std::ostream& fallback);

std::string render_cell(const Cell& cell);

}  // namespace nutdisc
