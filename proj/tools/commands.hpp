#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unipow/accuracy.hpp"
#include "unipow/irls.hpp"
#include "unipow/lambda.hpp"

namespace unipow::cli {

enum class EvalFn { F, FInv, G, Rho, K, Pdf, Bump, Fpm, Softplus, Sigmoid, Tanh, Relu, H, HHat };

EvalFn parse_eval_fn(std::string_view name);
const char* to_string(EvalFn fn);

struct EvalRequest {
  EvalFn fn = EvalFn::F;
  Lambda lambda;
  Lambda lambda_neg;
  double c = 1.0;
  std::vector<double> xs;
  std::optional<std::string> ztable_path;  // pdf only; quadrature otherwise
  int num_points = 4096;
};

/// "lo:hi:count" (inclusive endpoints) or a comma-separated list. The result
/// is sorted ascending.
std::vector<double> parse_x_spec(std::string_view spec);

/// Throws std::invalid_argument when the parameters do not fit the function.
void validate(const EvalRequest& request);

using SampleSeries = std::vector<std::pair<double, double>>;

SampleSeries evaluate(const EvalRequest& request);

/// "x,value" header then one row per sample, 17 significant digits, LF.
void write_series_csv(std::ostream& out, const SampleSeries& series);

/// "lambda,err_naive,err_stable"; stable-only rows carry "nan" for err_naive.
void write_accuracy_csv(std::ostream& out, const AccuracyReport& report);

/// One observation per line. Blank lines are skipped; with has_header the
/// first non-blank line is skipped. Throws std::invalid_argument naming the
/// offending line.
std::vector<double> read_observations(std::istream& in, bool has_header);

std::string irls_result_json(const IrlsResult& result);

/// Parses argv and runs the selected subcommand. Returns the process exit
/// code: 0 success, 1 usage/validation/I-O error, 2 IRLS hit max_iters.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace unipow::cli
