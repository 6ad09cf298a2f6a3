#pragma once

#include <string_view>

#include "unipow/lambda.hpp"

namespace unipow {

/// Shape and length-scale of the stationary kernel. c must be positive.
struct KernelParams {
  Lambda lambda;
  double c = 1.0;

  explicit KernelParams(Lambda lambda_in, double c_in = 1.0);
};

/// k(x, lambda, c) = g(0.5 * (x/c)^2, lambda). Computed through the
/// derivative of f, never by dividing the loss gradient by x.
double k(double x, const KernelParams& params);

/// IRLS weight for a residual when minimizing rho with the same parameters.
/// The constant 1/c^2 factor is dropped since only weight ratios matter.
double irls_weight(double residual, const KernelParams& params);

enum class NamedKernelKind { Gaussian, Inverse, RationalQuadratic, Quadratic, Multiquadric, InverseMultiquadric };

struct NamedKernel {
  NamedKernelKind kind;
  /// Only used by RationalQuadratic, which needs lambda < 0, lambda != -1.
  double lambda = 0.0;
};

/// "Gaussian", "Inverse", "Quadratic", "Multiquadric", "InverseMultiquadric"
/// or "RationalQuadratic(<lambda>)".
NamedKernel parse_named_kernel(std::string_view name);

Lambda lambda_of(const NamedKernel& kernel);

/// Closed form of the named kernel, written independently of k().
double k_reference(double x, const NamedKernel& kernel, double c = 1.0);

}  // namespace unipow
