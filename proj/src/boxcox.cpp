#include "unipow/boxcox.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "unipow/numeric_core.hpp"

namespace unipow {

namespace {

bool near_zero(double l) { return std::abs(l) < kBinary64.tiny; }
bool near_one(double l) { return std::abs(l - 1.0) < kBinary64.eps; }

void require_above_minus_one(double x) {
  if (!(x > -1.0)) {
    throw std::domain_error("Box-Cox needs x > -1 (got " + format_real(x) + ")");
  }
}

}  // namespace

BoxCoxLambda::BoxCoxLambda(double value) : value_(value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("Box-Cox lambda must be finite");
  }
}

double h(double x, BoxCoxLambda lambda) {
  require_above_minus_one(x);
  const double l = lambda.value();
  if (near_zero(l)) {
    return std::log1p(x);
  }
  return std::expm1(l * std::log1p(x)) / l;
}

double h_hat(double x, BoxCoxLambda lambda) {
  const double l = lambda.value();
  if (near_one(l)) {
    return x;
  }
  if (near_zero(l)) {
    require_above_minus_one(x);
    return std::log1p(x);
  }
  const double denom = l < 1.0 ? 1.0 - l : l - 1.0;
  const double u = x / denom;
  if (1.0 + u < 0.0) {
    throw std::domain_error("normalized Box-Cox base is negative at x = " + format_real(x));
  }
  return denom / l * std::expm1(l * std::log1p(u));
}

double f_from_h(double x, Lambda lambda) {
  const double l = lambda.value();
  switch (classify(lambda)) {
    case LambdaClass::PosInf:
    case LambdaClass::NegInf:
    case LambdaClass::PosOne:
      throw std::domain_error("no finite Box-Cox counterpart for lambda = " + lambda.render());
    case LambdaClass::Zero:
      return h(x, BoxCoxLambda{1.0});
    case LambdaClass::NegOne:
    case LambdaClass::Negative:
      return -l * h(-x / l, BoxCoxLambda{l + 1.0});
    case LambdaClass::Positive:
      break;
  }
  return l / (1.0 - l) * h((1.0 - l) / l * x, BoxCoxLambda{1.0 / (1.0 - l)});
}

double h_from_f(double x, BoxCoxLambda lambda) {
  require_above_minus_one(x);
  const double l = lambda.value();
  if (near_one(l)) {
    return f_stable(x, Lambda{0.0});
  }
  if (l < 1.0) {
    return f_stable((1.0 - l) * x, Lambda{l - 1.0}) / (1.0 - l);
  }
  return f_stable((l - 1.0) * x, Lambda{1.0 - 1.0 / l}) / (l - 1.0);
}

}  // namespace unipow
