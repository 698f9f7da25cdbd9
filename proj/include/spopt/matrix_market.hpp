#pragma once

// Dense matrices in Matrix Market text format.
//
// Reading accepts `array` and `coordinate` layouts (coordinate entries are
// densified, unlisted entries are zero), fields `real` and `integer`, and
// symmetries `general`, `symmetric` and `skew-symmetric`. Writing always
// produces `array real general` with 17 significant digits, which round-trips
// IEEE doubles exactly.

#include <iosfwd>
#include <string>

#include "spopt/core.hpp"

namespace spopt {

/// Largest rows * cols accepted by the reader.
inline constexpr long long kMaxMatrixEntries = 100'000'000;

/// Throws ParseError with the 1-based line number of the problem.
Matrix read_matrix(std::istream& in);
Matrix read_matrix(const std::string& path);

void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix(const std::string& path, const Matrix& m);

}  // namespace spopt
