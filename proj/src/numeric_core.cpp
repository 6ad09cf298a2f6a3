#include "unipow/numeric_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace unipow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Replaces near-zero denominators by tiny. Only reached by branches whose
// selected lambda keeps the denominator away from zero.
double nozero(double v, const NumericPolicy& policy) {
  return std::abs(v) < policy.tiny ? policy.tiny : v;
}

double below(double v) { return std::nextafter(v, -kInf); }

double clamp_input(double x, Lambda lambda, LambdaClass cls) {
  if (std::isnan(x)) {
    throw std::invalid_argument("x must not be NaN");
  }
  double bound = max_domain(lambda);
  // Finite lambda above 1/eps is evaluated with the +inf row, whose domain
  // ends at 1 even when lambda/(lambda-1) rounds up to 1 + eps.
  if (cls == LambdaClass::PosInf) {
    bound = std::min(bound, below(1.0));
  }
  return std::min(x, bound);
}

}  // namespace

const char* to_string(LambdaClass cls) {
  switch (cls) {
    case LambdaClass::PosInf: return "PINF";
    case LambdaClass::PosOne: return "PONE";
    case LambdaClass::Zero: return "ZERO";
    case LambdaClass::NegOne: return "NONE";
    case LambdaClass::NegInf: return "NINF";
    case LambdaClass::Positive: return "POS";
    case LambdaClass::Negative: return "NEG";
  }
  return "?";
}

LambdaClass classify(Lambda lambda, const NumericPolicy& policy) {
  const double l = lambda.value();
  if (l > policy.pinf_threshold()) return LambdaClass::PosInf;
  if (l < -policy.pinf_threshold()) return LambdaClass::NegInf;
  if (std::abs(l - 1.0) < policy.eps) return LambdaClass::PosOne;
  if (std::abs(l + 1.0) < policy.eps) return LambdaClass::NegOne;
  if (std::abs(l) < policy.tiny) return LambdaClass::Zero;
  return l > 0.0 ? LambdaClass::Positive : LambdaClass::Negative;
}

BranchPlan branch_plan(Lambda lambda, const NumericPolicy& policy) {
  const double l = lambda.value();
  switch (classify(lambda, policy)) {
    case LambdaClass::PosInf:
      return {.pre_scale = -1.0, .log_skip = false, .mid_scale = 1.0, .exp_skip = true, .post_scale = -1.0};
    case LambdaClass::PosOne:
      return {.pre_scale = 1.0, .log_skip = true, .mid_scale = 1.0, .exp_skip = false, .post_scale = 1.0};
    case LambdaClass::Positive:
      return {.pre_scale = (1.0 - l) / nozero(l, policy),
              .log_skip = false,
              .mid_scale = 1.0 / nozero(1.0 - l, policy),
              .exp_skip = false,
              .post_scale = l};
    case LambdaClass::Zero:
      return {.pre_scale = 1.0, .log_skip = true, .mid_scale = 1.0, .exp_skip = true, .post_scale = 1.0};
    case LambdaClass::Negative:
      return {.pre_scale = -1.0 / nozero(l, policy),
              .log_skip = false,
              .mid_scale = l + 1.0,
              .exp_skip = false,
              .post_scale = -l / nozero(l + 1.0, policy)};
    case LambdaClass::NegOne:
      return {.pre_scale = 1.0, .log_skip = false, .mid_scale = 1.0, .exp_skip = true, .post_scale = 1.0};
    case LambdaClass::NegInf:
      return {.pre_scale = -1.0, .log_skip = true, .mid_scale = 1.0, .exp_skip = false, .post_scale = -1.0};
  }
  return {};
}

double apply_plan(const BranchPlan& plan, double x) {
  double v = plan.pre_scale * x;
  if (!plan.log_skip) {
    v = std::log1p(std::max(v, std::nextafter(-1.0, 0.0)));
  }
  v *= plan.mid_scale;
  if (!plan.exp_skip) {
    v = std::expm1(v);
  }
  return plan.post_scale * v;
}

double max_domain(Lambda lambda) {
  const double l = lambda.value();
  if (l <= 1.0) return kInf;
  if (l == kInf) return below(1.0);
  return below(l / (l - 1.0));
}

double f_stable(double x, Lambda lambda, const NumericPolicy& policy) {
  const LambdaClass cls = classify(lambda, policy);
  return apply_plan(branch_plan(lambda, policy), clamp_input(x, lambda, cls));
}

double f_naive(double x, Lambda lambda, const NumericPolicy& policy) {
  const double l = lambda.value();
  if (!std::isfinite(l) || std::abs(l) < policy.tiny) {
    throw std::domain_error("naive form is undefined for lambda = " + lambda.render());
  }
  const double a = std::abs(l);
  const double sgn = l > 0.0 ? 1.0 : -1.0;
  const double outer = 2.0 * a / (2.0 - a + l);
  const double inner = (2.0 - a - l) / (2.0 * a);
  const double power = std::pow(1.0 - a, -sgn);
  return outer * (std::pow(1.0 + inner * x, power) - 1.0);
}

double f_inv(double x, Lambda lambda, const NumericPolicy& policy) {
  return f_stable(x, -lambda, policy);
}

double g(double x, Lambda lambda, const NumericPolicy& policy) {
  const LambdaClass cls = classify(lambda, policy);
  x = clamp_input(x, lambda, cls);
  const double l = lambda.value();
  const BranchPlan plan = branch_plan(lambda, policy);
  double scale = 1.0;
  switch (cls) {
    case LambdaClass::Zero: return 1.0;
    case LambdaClass::PosInf: scale = -1.0; break;
    case LambdaClass::PosOne: scale = 1.0; break;
    case LambdaClass::Positive: scale = l / nozero(1.0 - l, policy); break;
    case LambdaClass::Negative: scale = l; break;
    case LambdaClass::NegOne: scale = -1.0; break;
    case LambdaClass::NegInf: scale = 1.0; break;
  }
  double v = plan.pre_scale * x;
  if (!plan.log_skip) {
    v = std::log1p(std::max(v, std::nextafter(-1.0, 0.0)));
  }
  return std::exp(scale * v);
}

}  // namespace unipow
