#pragma once

// Text form of generator matrix specs:
//   identity | upper1 | band:<alpha> | column:<bits> | rows:<bits> | explicit:<path>

#include "nutdisc/gf2.hpp"

#include <istream>
#include <string>

namespace nutdisc {

/// Throws Error(parse) with the offending character position; explicit
/// matrices are loaded from disk and rejected with Error(singular) when
/// they fail the full-rank prefix condition.
MatrixSpec parse_matrix_spec(const std::string& text, std::size_t dimension = kDefaultDimension);

std::string render_matrix_spec(const MatrixSpec& spec);

/// Row-major CSV of 0/1 entries. An optional first line "1,2,...,M" of
/// column labels is skipped.
MatrixSpec read_explicit_matrix(std::istream& in, const std::string& source = {});

}  // namespace nutdisc
