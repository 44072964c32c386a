#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace cvf {

// Canonical display formatting: integers print bare ("42", "-13"), other
// values with up to 6 significant digits and trailing zeros trimmed,
// negative zero prints "0". Used for emitted documents and str().
std::string format_number(double v);

// Shortest decimal form that parses back to exactly the same double.
// Used wherever a file has to round-trip values losslessly.
std::string format_number_exact(double v);

// Parses a full string as a decimal double; nullopt on any trailing junk.
std::optional<double> parse_number(std::string_view text);

}  // namespace cvf
