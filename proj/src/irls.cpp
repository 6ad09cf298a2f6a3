#include "unipow/irls.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "unipow/kernels.hpp"
#include "unipow/robust_loss.hpp"

namespace unipow {

void validate(const IrlsProblem& problem) {
  if (problem.observations.empty()) {
    throw std::invalid_argument("IRLS needs at least one observation");
  }
  for (double x : problem.observations) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("IRLS observations must be finite");
    }
  }
  if (problem.lambda.value() > 0.0) {
    throw std::invalid_argument("IRLS needs lambda <= 0 (got " + problem.lambda.render() + ")");
  }
  if (!(problem.c > 0.0) || !std::isfinite(problem.c)) {
    throw std::invalid_argument("scale c must be positive and finite");
  }
  if (problem.max_iters < 1) {
    throw std::invalid_argument("max_iters must be positive");
  }
  if (!(problem.tol > 0.0)) {
    throw std::invalid_argument("tol must be positive");
  }
}

double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of an empty set");
  }
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) {
    return upper;
  }
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + 0.5 * (upper - lower);
}

double loss_objective(double mu, const IrlsProblem& problem) {
  const LossParams params{problem.lambda, problem.c};
  double total = 0.0;
  for (double x : problem.observations) {
    total += rho(x - mu, params);
  }
  return total;
}

double loss_gradient(double mu, const IrlsProblem& problem) {
  const KernelParams params{problem.lambda, problem.c};
  double total = 0.0;
  for (double x : problem.observations) {
    const double r = x - mu;
    total -= k(r, params) * r;
  }
  return total / (problem.c * problem.c);
}

IrlsResult irls_location(const IrlsProblem& problem, const IrlsObserver& observer) {
  validate(problem);
  const KernelParams params{problem.lambda, problem.c};

  IrlsResult result;
  double mu = median(problem.observations);
  if (observer) observer(0, mu);

  for (int it = 1; it <= problem.max_iters; ++it) {
    double weight_sum = 0.0;
    double weighted = 0.0;
    for (double x : problem.observations) {
      const double w = irls_weight(x - mu, params);
      weight_sum += w;
      weighted += w * x;
    }
    if (!(weight_sum > 0.0) || !std::isfinite(weight_sum)) {
      break;  // every weight underflowed; no defined update
    }
    const double next = weighted / weight_sum;
    const double step = next - mu;
    mu = next;
    result.iterations = it;
    if (observer) observer(it, mu);
    if (std::abs(step) <= problem.tol * (1.0 + std::abs(mu))) {
      result.converged = true;
      break;
    }
  }
  result.mu = mu;
  result.grad_norm = std::abs(loss_gradient(mu, problem));
  return result;
}

}  // namespace unipow
