#pragma once

#include <limits>

#include "unipow/lambda.hpp"

namespace unipow {

/// Working-precision constants and the classification windows built from
/// them. Defaults describe IEEE binary64.
struct NumericPolicy {
  double eps = std::numeric_limits<double>::epsilon();
  double tiny = std::numeric_limits<double>::min();

  constexpr double pinf_threshold() const { return 1.0 / eps; }
};

inline constexpr NumericPolicy kBinary64{};

/// Which row of the case table a lambda selects. Exactly one holds for any
/// non-NaN lambda.
enum class LambdaClass {
  PosInf,    // lambda > 1/eps
  PosOne,    // |lambda - 1| < eps
  Zero,      // |lambda| < tiny
  NegOne,    // |lambda + 1| < eps
  NegInf,    // lambda < -1/eps
  Positive,  // remaining lambda > 0
  Negative,  // remaining lambda < 0
};

const char* to_string(LambdaClass cls);

LambdaClass classify(Lambda lambda, const NumericPolicy& policy = kBinary64);

/// Scale/skip schedule for post * expm1?(mid * log1p?(pre * x)). Every case
/// of the transform shares this shape, only the constants differ.
struct BranchPlan {
  double pre_scale = 1.0;
  bool log_skip = false;
  double mid_scale = 1.0;
  bool exp_skip = false;
  double post_scale = 1.0;
};

BranchPlan branch_plan(Lambda lambda, const NumericPolicy& policy = kBinary64);

/// Applies a plan to x with no clamping. The log1p argument is kept strictly
/// above -1.
double apply_plan(const BranchPlan& plan, double x);

/// Largest admissible non-negative input: +inf for lambda <= 1, otherwise the
/// double just below lambda/(lambda-1) (just below 1 when lambda = +inf).
double max_domain(Lambda lambda);

/// Stable evaluation of the root transform. x is clamped from above to
/// max_domain(lambda). Throws std::invalid_argument for NaN x.
double f_stable(double x, Lambda lambda, const NumericPolicy& policy = kBinary64);

/// Literal pow-based closed form, kept only as the subject of accuracy
/// comparisons. Throws std::domain_error for lambda in {0, +inf, -inf} and
/// for |lambda| < tiny.
double f_naive(double x, Lambda lambda, const NumericPolicy& policy = kBinary64);

/// Inverse transform; the family is closed under lambda -> -lambda.
double f_inv(double x, Lambda lambda, const NumericPolicy& policy = kBinary64);

/// d/dx f(x, lambda), evaluated as exp(scale * log1p(pre * x)) on the clamped
/// input. Equals 1 at x = 0.
double g(double x, Lambda lambda, const NumericPolicy& policy = kBinary64);

}  // namespace unipow
