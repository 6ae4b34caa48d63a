#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace msitree {

/// Shortest decimal form that parses back to exactly the same double.
/// Used everywhere a real number becomes text (CSV cells, model thresholds),
/// so that textual encodings are canonical and byte-reproducible.
std::string formatDouble(double value);

void appendDouble(std::string& out, double value);

/// Parses a full cell as a double. Rejects trailing garbage, empty input,
/// NaN and infinities. Leading/trailing ASCII whitespace is not accepted;
/// trim first.
std::optional<double> parseFiniteDouble(std::string_view cell);

/// Parses a full cell as a decimal integer.
std::optional<long long> parseInteger(std::string_view cell);

/// Removes ASCII spaces, tabs and a trailing '\r' from both ends.
std::string_view trimCell(std::string_view cell);

} // namespace msitree
