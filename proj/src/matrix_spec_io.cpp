#include "nutdisc/matrix_spec_io.hpp"

#include "nutdisc/error.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace nutdisc {

namespace {

[[noreturn]] void parse_error(const std::string& text, std::size_t pos, const std::string& why) {
    throw Error(ErrorKind::parse, "matrix spec '" + text + "': " + why + " at position " +
                                      std::to_string(pos));
}

std::string trim(const std::string& s) {
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    return cells;
}

bool is_column_header(const std::vector<std::string>& cells) {
    if (cells.size() < 2) return false;
    for (std::size_t j = 0; j < cells.size(); ++j) {
        if (cells[j] != std::to_string(j + 1)) return false;
    }
    return true;
}

}  // namespace

MatrixSpec read_explicit_matrix(std::istream& in, const std::string& source) {
    std::vector<std::vector<std::uint8_t>> entries;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_csv(line);
        if (first && is_column_header(cells)) {
            first = false;
            continue;
        }
        first = false;
        std::vector<std::uint8_t> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) {
            if (cell != "0" && cell != "1") {
                throw Error(ErrorKind::parse, "explicit matrix " + source + ": entry '" + cell +
                                                  "' on line " + std::to_string(line_no) +
                                                  " is not 0 or 1");
            }
            row.push_back(cell == "1" ? 1 : 0);
        }
        entries.push_back(std::move(row));
    }
    if (entries.empty()) throw Error(ErrorKind::parse, "explicit matrix " + source + " is empty");
    for (const auto& row : entries) {
        if (row.size() != entries.size()) {
            throw Error(ErrorKind::parse, "explicit matrix " + source + " is not square");
        }
    }
    auto spec = MatrixSpec::explicit_matrix(std::move(entries), source);
    (void)build_matrix(spec);  // rank check
    return spec;
}

MatrixSpec parse_matrix_spec(const std::string& text, std::size_t dimension) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string arg = colon == std::string::npos ? std::string{} : text.substr(colon + 1);
    const std::size_t arg_pos = colon == std::string::npos ? text.size() : colon + 1;

    auto require_no_arg = [&] {
        if (colon != std::string::npos) parse_error(text, colon, "unexpected argument");
    };
    auto require_bits = [&] {
        if (colon == std::string::npos) parse_error(text, text.size(), "expected ':<bits>'");
        if (arg.empty()) parse_error(text, arg_pos, "empty bit string");
        auto bad = arg.find_first_not_of("01");
        if (bad != std::string::npos) parse_error(text, arg_pos + bad, "expected 0 or 1");
    };

    if (head == "identity") {
        require_no_arg();
        return MatrixSpec::identity(dimension);
    }
    if (head == "upper1") {
        require_no_arg();
        return MatrixSpec::upper1(dimension);
    }
    if (head == "band") {
        if (colon == std::string::npos) parse_error(text, text.size(), "expected ':<alpha>'");
        if (arg.empty()) parse_error(text, arg_pos, "empty band width");
        auto bad = arg.find_first_not_of("0123456789");
        if (bad != std::string::npos) parse_error(text, arg_pos + bad, "expected a digit");
        if (arg.size() > 9) parse_error(text, arg_pos, "band width too large");
        auto alpha = static_cast<std::size_t>(std::stoul(arg));
        if (alpha < 1) parse_error(text, arg_pos, "band width must be >= 1");
        return MatrixSpec::band(alpha, dimension);
    }
    if (head == "column") {
        require_bits();
        return MatrixSpec::column(arg, dimension);
    }
    if (head == "rows") {
        require_bits();
        return MatrixSpec::rowpattern(arg, dimension);
    }
    if (head == "explicit") {
        if (arg.empty()) parse_error(text, arg_pos, "expected a file path");
        std::ifstream in(arg);
        if (!in) throw Error(ErrorKind::io, "cannot open explicit matrix file '" + arg + "'");
        return read_explicit_matrix(in, arg);
    }
    parse_error(text, 0, "unknown matrix kind '" + head + "'");
}

std::string render_matrix_spec(const MatrixSpec& spec) {
    using Kind = MatrixSpec::Kind;
    switch (spec.kind) {
        case Kind::identity: return "identity";
        case Kind::upper1: return "upper1";
        case Kind::band: return "band:" + std::to_string(spec.alpha);
        case Kind::column: return "column:" + spec.bits;
        case Kind::rowpattern: return "rows:" + spec.bits;
        case Kind::explicit_entries: return "explicit:" + spec.source;
    }
    return {};
}

}  // namespace nutdisc
