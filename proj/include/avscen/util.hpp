#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace avscen {

/// Abort-class error: unreadable inputs, malformed headers, bad configuration.
/// Data-quality problems are reported as diagnostics instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Half-up rounding at `decimals` places, applied only at emission; internal
/// arithmetic keeps full precision.
inline double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

inline std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep);
std::string join(const std::vector<std::string>& parts, const std::string& sep);

/// Strict integer parse: the whole string must be a decimal integer.
std::optional<long long> parse_int(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace avscen
