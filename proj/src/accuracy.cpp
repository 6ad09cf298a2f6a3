#include "unipow/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>

#include "unipow/numeric_core.hpp"

namespace unipow {

namespace {

using Quad = boost::multiprecision::float128;
using Wide = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<226, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

template <class Real>
double oracle_in(double x_in, double l) {
  using std::isinf;
  const Real x{x_in};
  Real r;
  if (l == 0.0) {
    r = x;
  } else if (isinf(l)) {
    r = l > 0 ? Real(-log1p(-x)) : Real(-expm1(-x));
  } else if (l == 1.0) {
    r = expm1(x);
  } else if (l == -1.0) {
    r = log1p(x);
  } else if (l > 0.0) {
    const Real lam{l};
    r = lam * expm1(log1p((1 - lam) / lam * x) / (1 - lam));
  } else {
    const Real lam{l};
    r = -lam / (lam + 1) * expm1((lam + 1) * log1p(-x / lam));
  }
  return static_cast<double>(r);
}

}  // namespace

double oracle_f(double x, Lambda lambda, OraclePrecision precision) {
  if (std::isnan(x)) {
    throw std::invalid_argument("x must not be NaN");
  }
  x = std::min(x, max_domain(lambda));
  if (classify(lambda) == LambdaClass::PosInf) {
    x = std::min(x, std::nextafter(1.0, 0.0));
  }
  switch (precision) {
    case OraclePrecision::Quad: return oracle_in<Quad>(x, lambda.value());
    case OraclePrecision::Wide: return oracle_in<Wide>(x, lambda.value());
  }
  return oracle_in<Quad>(x, lambda.value());
}

double geometric_mean_error(std::span<const double> errors) {
  if (errors.empty()) {
    throw std::invalid_argument("geometric mean of an empty set");
  }
  const double tiny = std::numeric_limits<double>::min();
  double sum = 0.0;
  for (double e : errors) {
    const double a = std::abs(e);
    if (std::isinf(a) || std::isnan(a)) {
      return std::numeric_limits<double>::infinity();
    }
    sum += std::log(std::max(a, tiny));
  }
  return std::exp(sum / static_cast<double>(errors.size()));
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw std::invalid_argument("log_spaced requires 0 < lo < hi and n >= 2");
  }
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  }
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

AccuracyReport error_sweep(std::span<const Lambda> lambdas, double x_lo, double x_hi, int n) {
  const std::vector<double> xs = log_spaced(x_lo, x_hi, n);
  AccuracyReport report{.x_lo = x_lo, .x_hi = x_hi, .samples = n, .rows = {}};

  std::vector<Lambda> sorted(lambdas.begin(), lambdas.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> naive_err(xs.size());
  std::vector<double> stable_err(xs.size());
  for (Lambda lambda : sorted) {
    const double l = lambda.value();
    const bool naive_defined = std::isfinite(l) && std::abs(l) >= kBinary64.tiny;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double truth = oracle_f(xs[i], lambda);
      stable_err[i] = f_stable(xs[i], lambda) - truth;
      if (naive_defined) {
        const double naive = f_naive(xs[i], lambda);
        naive_err[i] = std::isfinite(naive) ? naive - truth : std::numeric_limits<double>::infinity();
      }
    }
    AccuracyRow row{.lambda = lambda, .err_naive = std::nullopt, .err_stable = geometric_mean_error(stable_err)};
    if (naive_defined) {
      row.err_naive = geometric_mean_error(naive_err);
    }
    report.rows.push_back(row);
  }
  return report;
}

std::vector<Lambda> default_accuracy_lambdas() {
  const double eps = kBinary64.eps;
  std::vector<double> values;
  for (int k = 0; k <= 6; ++k) {
    const double step = std::pow(10.0, k) * eps;
    for (double centre : {1.0, -1.0}) {
      values.push_back(centre + step);
      values.push_back(centre - step);
    }
    values.push_back(std::pow(10.0, k));
    values.push_back(-std::pow(10.0, k));
  }
  for (int k = -30; k <= 30; ++k) {
    values.push_back(k / 10.0);
  }
  for (double centre : {1.0, -1.0}) {
    values.push_back(centre + 1e-8);
    values.push_back(centre - 1e-8);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<Lambda> out;
  out.reserve(values.size());
  for (double v : values) out.emplace_back(v);
  return out;
}

}  // namespace unipow
