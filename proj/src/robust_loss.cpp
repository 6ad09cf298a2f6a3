#include "unipow/robust_loss.hpp"

#include <cmath>
#include <limits>
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

LossParams::LossParams(Lambda lambda_in, double c_in) : lambda(lambda_in), c(c_in) {
  require_scale(c);
}

double rho(double x, const LossParams& params) {
  const double z = x / params.c;
  return f_stable(0.5 * (z * z), params.lambda);
}

NamedLoss parse_named_loss(std::string_view name) {
  if (name == "L2") return NamedLoss::L2;
  if (name == "Cauchy") return NamedLoss::Cauchy;
  if (name == "Welsch") return NamedLoss::Welsch;
  if (name == "Charbonnier") return NamedLoss::Charbonnier;
  if (name == "GemanMcClure") return NamedLoss::GemanMcClure;
  throw std::invalid_argument("unknown loss '" + std::string(name) + "'");
}

Lambda lambda_of(NamedLoss loss) {
  switch (loss) {
    case NamedLoss::L2: return Lambda{0.0};
    case NamedLoss::Cauchy: return Lambda{-1.0};
    case NamedLoss::Welsch: return Lambda::negative_infinity();
    case NamedLoss::Charbonnier: return Lambda{-0.5};
    case NamedLoss::GemanMcClure: return Lambda{-2.0};
  }
  throw std::invalid_argument("unknown loss");
}

double rho_reference(double x, NamedLoss loss, double c) {
  require_scale(c);
  const double z = x / c;
  const double z2 = z * z;
  switch (loss) {
    case NamedLoss::L2: return 0.5 * z2;
    case NamedLoss::Cauchy: return std::log(1.0 + 0.5 * z2);
    case NamedLoss::Welsch: return 1.0 - std::exp(-0.5 * z2);
    case NamedLoss::Charbonnier: return std::sqrt(z2 + 1.0) - 1.0;
    case NamedLoss::GemanMcClure: return 2.0 * x * x / (4.0 * c * c + x * x);
  }
  throw std::invalid_argument("unknown loss");
}

}  // namespace unipow
