#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace unipow {

/// Extended-real shape parameter. Holds any double except NaN, so both
/// infinities are legal values.
class Lambda {
 public:
  constexpr Lambda() = default;
  explicit Lambda(double value);

  static Lambda positive_infinity() { return Lambda{std::numeric_limits<double>::infinity()}; }
  static Lambda negative_infinity() { return Lambda{-std::numeric_limits<double>::infinity()}; }

  /// Accepts "inf", "+inf", "-inf" (also "infinity") and decimal literals.
  /// Throws std::invalid_argument on anything else, including "nan".
  static Lambda parse(std::string_view text);

  /// "inf", "-inf", or the value with 17 significant digits.
  std::string render() const;

  constexpr double value() const { return value_; }
  bool is_finite() const;

  Lambda operator-() const { return Lambda{-value_}; }

  friend constexpr bool operator==(Lambda a, Lambda b) { return a.value_ == b.value_; }
  friend constexpr auto operator<=>(Lambda a, Lambda b) { return a.value_ <=> b.value_; }

 private:
  double value_ = 0.0;
};

/// printf-style "%.17g" rendering shared by every text output.
std::string format_real(double value);

}  // namespace unipow
