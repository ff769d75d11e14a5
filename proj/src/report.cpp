#include "nutdisc/report.hpp"

#include "nutdisc/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace nutdisc {

namespace {

std::string render_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

nlohmann::ordered_json to_json(const Cell& cell) {
    struct Visitor {
        nlohmann::ordered_json operator()(Blank) const { return nullptr; }
        nlohmann::ordered_json operator()(const BigInt& n) const {
            if (n.fits_slong_p()) return static_cast<std::int64_t>(n.get_si());
            return n.get_str();
        }
        nlohmann::ordered_json operator()(const Rational& q) const { return to_exact_string(q); }
        nlohmann::ordered_json operator()(double v) const {
            if (!std::isfinite(v)) return render_double(v);
            return v;
        }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
        nlohmann::ordered_json operator()(bool b) const { return b; }
    };
    return std::visit(Visitor{}, cell);
}

}  // namespace

void ExperimentReport::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw Error(ErrorKind::domain, "report row has " + std::to_string(row.size()) +
                                           " cells, schema has " +
                                           std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
}

const Cell& ExperimentReport::at(std::size_t row, const std::string& column) const {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (columns_[c] == column) return rows_.at(row)[c];
    }
    throw Error(ErrorKind::domain, "no column '" + column + "'");
}

void ExperimentReport::set_meta(std::string key, std::string value) {
    for (auto& [k, v] : meta_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    meta_.emplace_back(std::move(key), std::move(value));
}

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw Error(ErrorKind::parse, "unknown output format '" + text + "' (expected csv or json)");
}

std::string render_cell(const Cell& cell) {
    struct Visitor {
        std::string operator()(Blank) const { return {}; }
        std::string operator()(const BigInt& n) const { return n.get_str(); }
        std::string operator()(const Rational& q) const { return to_exact_string(q); }
        std::string operator()(double v) const { return render_double(v); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, cell);
}

void write_csv(const ExperimentReport& report, std::ostream& out) {
    const auto& cols = report.columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out << (c ? "," : "") << csv_escape(cols[c]);
    }
    out << '\n';
    for (const auto& row : report.rows()) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << csv_escape(render_cell(row[c]));
        }
        out << '\n';
    }
}

void write_json(const ExperimentReport& report, std::ostream& out) {
    auto array = nlohmann::ordered_json::array();
    for (const auto& row : report.rows()) {
        nlohmann::ordered_json record = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) record[report.columns()[c]] = to_json(row[c]);
        array.push_back(std::move(record));
    }
    out << array.dump(2) << '\n';
}

void write_metadata(const ExperimentReport& report, std::ostream& out) {
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.metadata()) meta[k] = v;
    out << meta.dump(2) << '\n';
}

void emit(const ExperimentReport& report, Format format, const std::string& path,
          std::ostream& fallback) {
    auto write = [&](std::ostream& os) {
        if (format == Format::csv) {
            write_csv(report, os);
        } else {
            write_json(report, os);
        }
    };
    if (path.empty() || path == "-") {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
    write(file);
    file.flush();
    if (!file) throw Error(ErrorKind::io, "failed writing '" + path + "'");
}

}  // namespace nutdisc
