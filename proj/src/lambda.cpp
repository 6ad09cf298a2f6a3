#include "unipow/lambda.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace unipow {

Lambda::Lambda(double value) : value_(value) {
  if (std::isnan(value)) {
    throw std::invalid_argument("lambda must not be NaN");
  }
}

Lambda Lambda::parse(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') {
    body.remove_prefix(1);
  }
  double value = 0.0;
  const char* first = body.data();
  const char* last = body.data() + body.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (body.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("cannot parse lambda from '" + std::string(text) + "'");
  }
  if (std::isnan(value)) {
    throw std::invalid_argument("lambda must not be NaN");
  }
  return Lambda{value};
}

std::string Lambda::render() const { return format_real(value_); }

bool Lambda::is_finite() const { return std::isfinite(value_); }

std::string format_real(double value) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace unipow
