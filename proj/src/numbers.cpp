#include "cvf/numbers.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "cvf/errors.hpp"

namespace cvf {

std::string format_number(double v) {
  if (!std::isfinite(v)) throw_internal("format_number: non-finite value");
  if (v == 0.0) return "0";
  char buf[64];
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_number_exact(double v) {
  if (!std::isfinite(v)) throw_internal("format_number_exact: non-finite value");
  if (v == 0.0 && !std::signbit(v)) return "0";
  char buf[64];
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0;
    auto [ptr, ec] = std::from_chars(buf, buf + std::strlen(buf), back);
    if (ec == std::errc() && ptr == buf + std::strlen(buf) && back == v) break;
  }
  return buf;
}

std::optional<double> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace cvf
