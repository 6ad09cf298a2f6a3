#include "unipow/bump.hpp"

#include <cmath>
#include <stdexcept>

#include "unipow/numeric_core.hpp"

namespace unipow {

BumpParams::BumpParams(Lambda lambda_in) : lambda(lambda_in) {
  const double l = lambda.value();
  if (!(l > 1.0) || !std::isfinite(l)) {
    throw std::invalid_argument("bump needs 1 < lambda < inf (got " + lambda.render() + ")");
  }
}

double b(double x, const BumpParams& params) {
  if (!(std::abs(x) < 1.0)) {
    return 0.0;
  }
  const double l = params.lambda.value();
  return std::exp(-f_stable(l / (l - 1.0) * (x * x), params.lambda));
}

double b_classic(double x) {
  if (!(std::abs(x) < 1.0)) {
    return 0.0;
  }
  return std::exp(-1.0 / (1.0 - x * x));
}

}  // namespace unipow
