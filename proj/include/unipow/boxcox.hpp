#pragma once

#include "unipow/lambda.hpp"

namespace unipow {

/// Box-Cox exponent, where 1 is the identity. Finite, never NaN.
class BoxCoxLambda {
 public:
  explicit BoxCoxLambda(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Box-Cox with unit shift: ((1+x)^lambda - 1)/lambda, log1p(x) at 0.
/// Throws std::domain_error for x <= -1.
double h(double x, BoxCoxLambda lambda);

/// Box-Cox rescaled to unit slope and curvature sign(lambda - 1) at the origin.
/// Throws std::domain_error when the base of the inner power is negative.
double h_hat(double x, BoxCoxLambda lambda);

/// f(x, lambda) routed through h:
///   lambda < 0:  -lambda h(-x/lambda, lambda + 1)
///   lambda = 0:  h(x, 1)
///   lambda > 0:  lambda/(1-lambda) h((1-lambda)/lambda x, 1/(1-lambda))
/// Throws std::domain_error for infinite lambda and lambda = 1, which have no
/// finite Box-Cox counterpart.
double f_from_h(double x, Lambda lambda);

/// h(x, lambda) routed through f:
///   lambda < 1:  f((1-lambda) x, lambda - 1) / (1 - lambda)
///   lambda = 1:  f(x, 0)
///   lambda > 1:  f((lambda-1) x, 1 - 1/lambda) / (lambda - 1)
/// Throws std::domain_error for x <= -1.
double h_from_f(double x, BoxCoxLambda lambda);

}  // namespace unipow
