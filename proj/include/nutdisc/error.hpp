#pragma once

#include <stdexcept>
#include <string>

namespace nutdisc {

enum class ErrorKind {
    dimension,     // vector or index larger than the matrix truncation
    domain,        // argument outside the mathematical domain (p < 1, t > 1, N = 0, ...)
    singular,      // generator matrix fails the full-rank-prefix condition
    out_of_range,  // index n >= 2^M
    resource,      // point budget exceeded
    unsupported,   // operation not defined for this matrix family
    parse,         // malformed matrix spec or CLI value
    io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace nutdisc
