#pragma once

#include "unipow/lambda.hpp"

namespace unipow {

/// Separate shapes for the non-negative and negative half-lines.
struct SignedParams {
  Lambda lambda_pos;
  Lambda lambda_neg;
};

/// f(x, lambda_pos) for x >= 0, -f(-x, lambda_neg) for x < 0.
double f_pm(double x, const SignedParams& params);

// Activations rebuilt from compositions of f_pm. The outer lambda_neg that
// never sees a negative argument is fixed at 0.

/// log(1 + e^x) = f(1 + f_pm(x, 1, -inf), -1).
double softplus_f(double x);

/// 1/(1 + e^-x) = 1/2 f(1 + f_pm(x + log 2, 1, -inf), -2).
double sigmoid_f(double x);

/// tanh(x) = 1/2 f_pm(f_pm(2x, 1, -inf), -2, 2).
double tanh_f(double x);

/// 2 - f_pm(f_pm(2 - x, 2, lambda_neg), -2, -lambda_neg). Reproduces
/// max(0, x) whenever x - 2 stays inside the domain of f(., lambda_neg),
/// which is every x for lambda_neg <= 1. For lambda_neg > 1 the inner call is
/// clamped once x - 2 reaches max_domain(lambda_neg), and the output levels
/// off near 2 + lambda_neg / (lambda_neg - 1) (3 for lambda_neg = +inf).
double relu_f(double x, Lambda lambda_neg);

/// ELU with unit alpha: x for x >= 0, e^x - 1 otherwise.
double elu_reference(double x);

}  // namespace unipow
