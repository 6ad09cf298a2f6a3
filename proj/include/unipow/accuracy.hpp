#pragma once

#include <optional>
#include <span>
#include <vector>

#include "unipow/lambda.hpp"

namespace unipow {

/// Width of the arithmetic the reference evaluator runs in. Quad is
/// binary128 (113-bit significand); Wide is a 226-bit software float used to
/// check that Quad is already converged.
enum class OraclePrecision { Quad, Wide };

/// Reference value of f(x, lambda): the case formulas evaluated in extended
/// precision from the exact double inputs, rounded once at the end. Special
/// rows (0, +-1, +-inf) are selected by exact equality. x is clamped to
/// max_domain(lambda) like f_stable.
double oracle_f(double x, Lambda lambda, OraclePrecision precision = OraclePrecision::Quad);

struct AccuracyRow {
  Lambda lambda;
  /// Geometric-mean absolute error of f_naive. Empty for lambdas the naive
  /// form does not cover (0 and +-inf); +inf when any naive value is not
  /// finite.
  std::optional<double> err_naive;
  double err_stable = 0.0;
};

struct AccuracyReport {
  double x_lo = 0.0;
  double x_hi = 0.0;
  int samples = 0;
  std::vector<AccuracyRow> rows;  // ascending lambda
};

/// Geometric mean of |value| with zeros floored at the smallest positive
/// normal. Returns +inf if any entry is infinite.
double geometric_mean_error(std::span<const double> errors);

/// n log-spaced points on [lo, hi], endpoints included.
std::vector<double> log_spaced(double lo, double hi, int n);

/// Compares f_naive and f_stable against oracle_f for each lambda over n
/// log-spaced x in [x_lo, x_hi]. Throws std::invalid_argument unless
/// 0 < x_lo < x_hi and n >= 2.
AccuracyReport error_sweep(std::span<const Lambda> lambdas, double x_lo, double x_hi, int n);

/// {+-1 +- 10^k eps : k=0..6} u {+-10^k : k=0..6} u {-3, -2.9, ..., 3}
/// u {+-1 +- 1e-8}, sorted and deduplicated.
std::vector<Lambda> default_accuracy_lambdas();

}  // namespace unipow
