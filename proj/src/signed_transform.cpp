#include "unipow/signed_transform.hpp"

#include <cmath>
#include <numbers>

#include "unipow/numeric_core.hpp"

namespace unipow {

namespace {

const SignedParams kExpm1Pm{Lambda{1.0}, Lambda::negative_infinity()};

}  // namespace

double f_pm(double x, const SignedParams& params) {
  if (x >= 0.0) {
    return f_stable(x, params.lambda_pos);
  }
  return -f_stable(-x, params.lambda_neg);
}

double softplus_f(double x) {
  return f_pm(f_pm(x, kExpm1Pm) + 1.0, {Lambda{-1.0}, Lambda{0.0}});
}

double sigmoid_f(double x) {
  return 0.5 * f_pm(f_pm(x + std::numbers::ln2, kExpm1Pm) + 1.0, {Lambda{-2.0}, Lambda{0.0}});
}

double tanh_f(double x) {
  return 0.5 * f_pm(f_pm(2.0 * x, kExpm1Pm), {Lambda{-2.0}, Lambda{2.0}});
}

double relu_f(double x, Lambda lambda_neg) {
  return 2.0 - f_pm(f_pm(2.0 - x, {Lambda{2.0}, lambda_neg}), {Lambda{-2.0}, -lambda_neg});
}

double elu_reference(double x) { return x >= 0.0 ? x : std::exp(x) - 1.0; }

}  // namespace unipow
