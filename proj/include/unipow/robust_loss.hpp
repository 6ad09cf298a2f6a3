#pragma once

#include <string_view>

#include "unipow/lambda.hpp"

namespace unipow {

/// Shape and scale of the robust loss. c must be positive and finite.
struct LossParams {
  Lambda lambda;
  double c = 1.0;

  explicit LossParams(Lambda lambda_in, double c_in = 1.0);
};

/// rho(x, lambda, c) = f(0.5 * (x/c)^2, lambda). Inputs past the domain of
/// f saturate at a large finite value.
double rho(double x, const LossParams& params);

enum class NamedLoss { L2, Cauchy, Welsch, Charbonnier, GemanMcClure };

/// Throws std::invalid_argument for unknown names.
NamedLoss parse_named_loss(std::string_view name);

/// Lambda at which the family reproduces the named loss.
Lambda lambda_of(NamedLoss loss);

/// Closed form of the named loss, written independently of rho().
double rho_reference(double x, NamedLoss loss, double c = 1.0);

}  // namespace unipow
