#pragma once

#include "unipow/lambda.hpp"

namespace unipow {

/// Shape of a bump; needs 1 < lambda < +inf.
struct BumpParams {
  Lambda lambda;

  explicit BumpParams(Lambda lambda_in);
};

/// Compactly supported bump on (-1, 1): exp(-f(lambda/(lambda-1) x^2, lambda)).
/// b(0) = 1 and b = 0 for |x| >= 1.
double b(double x, const BumpParams& params);

/// exp(-1/(1 - x^2)) on |x| < 1, zero elsewhere.
double b_classic(double x);

}  // namespace unipow
