#include "unipow/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "unipow/numeric_core.hpp"

namespace unipow {

namespace {

void require_scale(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("scale c must be positive and finite");
  }
}

}  // namespace

KernelParams::KernelParams(Lambda lambda_in, double c_in) : lambda(lambda_in), c(c_in) {
  require_scale(c);
}

double k(double x, const KernelParams& params) {
  const double z = x / params.c;
  return g(0.5 * (z * z), params.lambda);
}

double irls_weight(double residual, const KernelParams& params) { return k(residual, params); }

NamedKernel parse_named_kernel(std::string_view name) {
  if (name == "Gaussian") return {NamedKernelKind::Gaussian};
  if (name == "Inverse") return {NamedKernelKind::Inverse};
  if (name == "Quadratic") return {NamedKernelKind::Quadratic};
  if (name == "Multiquadric") return {NamedKernelKind::Multiquadric};
  if (name == "InverseMultiquadric") return {NamedKernelKind::InverseMultiquadric};
  constexpr std::string_view rq = "RationalQuadratic(";
  if (name.starts_with(rq) && name.ends_with(")")) {
    const std::string_view arg = name.substr(rq.size(), name.size() - rq.size() - 1);
    const double l = Lambda::parse(arg).value();
    if (!(l < 0.0) || l == -1.0 || !std::isfinite(l)) {
      throw std::invalid_argument("rational quadratic kernel needs finite lambda < 0, lambda != -1");
    }
    return {NamedKernelKind::RationalQuadratic, l};
  }
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

Lambda lambda_of(const NamedKernel& kernel) {
  switch (kernel.kind) {
    case NamedKernelKind::Gaussian: return Lambda::negative_infinity();
    case NamedKernelKind::Inverse: return Lambda{-1.0};
    case NamedKernelKind::RationalQuadratic: return Lambda{kernel.lambda};
    case NamedKernelKind::Quadratic: return Lambda{0.5};
    case NamedKernelKind::Multiquadric: return Lambda{1.0 / 3.0};
    case NamedKernelKind::InverseMultiquadric: return Lambda{-0.5};
  }
  throw std::invalid_argument("unknown kernel");
}

double k_reference(double x, const NamedKernel& kernel, double c) {
  require_scale(c);
  const double z2 = (x / c) * (x / c);
  switch (kernel.kind) {
    case NamedKernelKind::Gaussian: return std::exp(-0.5 * z2);
    case NamedKernelKind::Inverse: return 2.0 * c * c / (2.0 * c * c + x * x);
    case NamedKernelKind::RationalQuadratic: return std::pow(1.0 - z2 / (2.0 * kernel.lambda), kernel.lambda);
    case NamedKernelKind::Quadratic: return 1.0 + 0.5 * z2;
    case NamedKernelKind::Multiquadric: return std::sqrt(1.0 + z2);
    case NamedKernelKind::InverseMultiquadric: return 1.0 / std::sqrt(1.0 + z2);
  }
  throw std::invalid_argument("unknown kernel");
}

}  // namespace unipow
