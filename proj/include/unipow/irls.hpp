#pragma once

#include <functional>
#include <vector>

#include "unipow/lambda.hpp"

namespace unipow {

/// Robust location problem: minimize sum_i rho(x_i - mu, lambda, c).
/// Only the robust regime lambda <= 0 is accepted, where reweighting is a
/// majorize-minimize step and the objective cannot increase.
struct IrlsProblem {
  std::vector<double> observations;
  Lambda lambda;
  double c = 1.0;
  int max_iters = 500;
  double tol = 1e-12;  // stop once |step| <= tol * (1 + |mu|)
};

struct IrlsResult {
  double mu = 0.0;
  int iterations = 0;
  double grad_norm = 0.0;  // |d/dmu objective| at mu
  bool converged = false;
};

/// Throws std::invalid_argument when the problem breaks an invariant.
void validate(const IrlsProblem& problem);

double median(std::vector<double> values);

double loss_objective(double mu, const IrlsProblem& problem);

/// d/dmu of loss_objective, from the analytic derivative of f.
double loss_gradient(double mu, const IrlsProblem& problem);

/// Called with (iteration, mu) for the starting point (iteration 0) and after
/// every update.
using IrlsObserver = std::function<void(int, double)>;

/// Weighted-mean fixed-point iteration started from the median, with
/// weights irls_weight(x_i - mu).
IrlsResult irls_location(const IrlsProblem& problem, const IrlsObserver& observer = {});

}  // namespace unipow
