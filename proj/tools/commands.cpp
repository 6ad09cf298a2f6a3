#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "unipow/boxcox.hpp"
#include "unipow/bump.hpp"
#include "unipow/distribution.hpp"
#include "unipow/kernels.hpp"
#include "unipow/numeric_core.hpp"
#include "unipow/robust_loss.hpp"
#include "unipow/signed_transform.hpp"

namespace unipow::cli {

namespace {

struct FnName {
  EvalFn fn;
  const char* name;
};

constexpr FnName kFnNames[] = {
    {EvalFn::F, "f"},       {EvalFn::FInv, "finv"},         {EvalFn::G, "g"},
    {EvalFn::Rho, "rho"},   {EvalFn::K, "k"},               {EvalFn::Pdf, "pdf"},
    {EvalFn::Bump, "bump"}, {EvalFn::Fpm, "fpm"},           {EvalFn::Softplus, "softplus"},
    {EvalFn::Sigmoid, "sigmoid"}, {EvalFn::Tanh, "tanh"},   {EvalFn::Relu, "relu"},
    {EvalFn::H, "h"},       {EvalFn::HHat, "hhat"},
};

double parse_real(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size() || std::isnan(v)) {
    throw std::invalid_argument("cannot parse number '" + std::string(text) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  const auto not_space = [](char ch) { return ch != ' ' && ch != '\t' && ch != '\r'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

int eval_command(const EvalRequest& request, std::ostream& out) {
  validate(request);
  write_series_csv(out, evaluate(request));
  return 0;
}

int accuracy_command(const std::vector<std::string>& lambda_texts, double x_lo, double x_hi, int n,
                     std::ostream& out) {
  std::vector<Lambda> lambdas;
  if (lambda_texts.empty()) {
    lambdas = default_accuracy_lambdas();
  } else {
    for (const auto& t : lambda_texts) lambdas.push_back(Lambda::parse(t));
  }
  write_accuracy_csv(out, error_sweep(lambdas, x_lo, x_hi, n));
  return 0;
}

int ztable_command(int grid_size, int num_points, const std::string& path, std::ostream& err) {
  const ZTable table = build_ztable(grid_size, num_points);
  write_ztable(table, path);

  // Spot-check interpolation halfway between every 32nd pair of nodes.
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < table.s_grid.size(); i += 32) {
    const Lambda l = s_to_lambda(0.5 * (table.s_grid[i] + table.s_grid[i + 1]));
    const double direct = z_quadrature(l, num_points);
    worst = std::max(worst, std::abs(z_lookup(table, l) - direct) / direct);
  }
  err << "wrote " << path << ": " << table.s_grid.size() << " nodes, " << table.num_points
      << " quadrature points, max spot-check relative error " << format_real(worst) << "\n";
  return 0;
}

int zlookup_command(const std::string& path, Lambda lambda, std::ostream& out) {
  out << format_real(z_lookup(read_ztable(path), lambda)) << "\n";
  return 0;
}

int irls_command(IrlsProblem problem, const std::string& path, bool has_header, std::ostream& out) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  problem.observations = read_observations(in, has_header);
  const IrlsResult result = irls_location(problem);
  out << irls_result_json(result) << "\n";
  return result.converged ? 0 : 2;
}

}  // namespace

EvalFn parse_eval_fn(std::string_view name) {
  for (const auto& entry : kFnNames) {
    if (name == entry.name) return entry.fn;
  }
  throw std::invalid_argument("unknown function '" + std::string(name) + "'");
}

const char* to_string(EvalFn fn) {
  for (const auto& entry : kFnNames) {
    if (entry.fn == fn) return entry.name;
  }
  return "?";
}

std::vector<double> parse_x_spec(std::string_view spec) {
  spec = trim(spec);
  std::vector<double> xs;
  if (spec.find(':') != std::string_view::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) {
      throw std::invalid_argument("range must look like lo:hi:count");
    }
    const double lo = parse_real(parts[0]);
    const double hi = parse_real(parts[1]);
    int count = 0;
    auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (ec != std::errc{} || ptr != parts[2].data() + parts[2].size() || count < 1) {
      throw std::invalid_argument("range count must be a positive integer");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
      throw std::invalid_argument("range needs finite lo <= hi");
    }
    if (count == 1) {
      xs.push_back(lo);
    } else {
      for (int i = 0; i < count; ++i) {
        xs.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
      }
      xs.back() = hi;
    }
  } else {
    for (auto part : split(spec, ',')) {
      xs.push_back(parse_real(part));
    }
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

void validate(const EvalRequest& request) {
  if (!(request.c > 0.0) || !std::isfinite(request.c)) {
    throw std::invalid_argument("--c must be positive and finite");
  }
  if (request.xs.empty()) {
    throw std::invalid_argument("no x values to evaluate");
  }
  const double l = request.lambda.value();
  switch (request.fn) {
    case EvalFn::Pdf:
      if (l < -1.0) throw std::invalid_argument("pdf needs lambda >= -1");
      break;
    case EvalFn::Bump:
      if (!(l > 1.0) || std::isinf(l)) throw std::invalid_argument("bump needs 1 < lambda < inf");
      break;
    case EvalFn::H:
    case EvalFn::HHat:
      if (!std::isfinite(l)) throw std::invalid_argument("Box-Cox lambda must be finite");
      break;
    default:
      break;
  }
  if (request.ztable_path && request.fn != EvalFn::Pdf) {
    throw std::invalid_argument("--ztable only applies to --fn pdf");
  }
}

SampleSeries evaluate(const EvalRequest& request) {
  validate(request);
  const Lambda l = request.lambda;
  std::optional<ZTable> table;
  if (request.ztable_path) {
    table = read_ztable(*request.ztable_path);
  }
  std::optional<double> z;
  if (request.fn == EvalFn::Pdf) {
    z = table ? z_lookup(*table, l) : z_quadrature(l, request.num_points);
  }

  SampleSeries series;
  series.reserve(request.xs.size());
  for (double x : request.xs) {
    double v = 0.0;
    switch (request.fn) {
      case EvalFn::F: v = f_stable(x, l); break;
      case EvalFn::FInv: v = f_inv(x, l); break;
      case EvalFn::G: v = g(x, l); break;
      case EvalFn::Rho: v = rho(x, LossParams{l, request.c}); break;
      case EvalFn::K: v = k(x, KernelParams{l, request.c}); break;
      case EvalFn::Pdf: v = pdf_given_z(x, DistParams{l, request.c}, *z); break;
      case EvalFn::Bump: v = b(x, BumpParams{l}); break;
      case EvalFn::Fpm: v = f_pm(x, {l, request.lambda_neg}); break;
      case EvalFn::Softplus: v = softplus_f(x); break;
      case EvalFn::Sigmoid: v = sigmoid_f(x); break;
      case EvalFn::Tanh: v = tanh_f(x); break;
      case EvalFn::Relu: v = relu_f(x, request.lambda_neg); break;
      case EvalFn::H: v = h(x, BoxCoxLambda{l.value()}); break;
      case EvalFn::HHat: v = h_hat(x, BoxCoxLambda{l.value()}); break;
    }
    series.emplace_back(x, v);
  }
  return series;
}

void write_series_csv(std::ostream& out, const SampleSeries& series) {
  out << "x,value\n";
  for (const auto& [x, v] : series) {
    out << format_real(x) << ',' << format_real(v) << '\n';
  }
}

void write_accuracy_csv(std::ostream& out, const AccuracyReport& report) {
  out << "lambda,err_naive,err_stable\n";
  for (const auto& row : report.rows) {
    out << row.lambda.render() << ',' << (row.err_naive ? format_real(*row.err_naive) : std::string("nan")) << ','
        << format_real(row.err_stable) << '\n';
  }
}

std::vector<double> read_observations(std::istream& in, bool has_header) {
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    try {
      const double v = parse_real(body);
      if (!std::isfinite(v)) throw std::invalid_argument("not finite");
      values.push_back(v);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse observation '" +
                                  std::string(body) + "'");
    }
  }
  return values;
}

std::string irls_result_json(const IrlsResult& result) {
  nlohmann::ordered_json j;
  j["mu"] = result.mu;
  j["iterations"] = result.iterations;
  j["grad_norm"] = result.grad_norm;
  j["converged"] = result.converged;
  return j.dump();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate the self-inverting power transform and the families built on it."};
  app.require_subcommand(1);

  std::string fn_name;
  std::string lambda_text = "0";
  std::string lambda_neg_text = "0";
  std::string x_spec = "0:1:11";
  std::string eval_ztable;
  EvalRequest request;
  auto* eval = app.add_subcommand("eval", "Evaluate one function on a grid of x; CSV to stdout");
  eval->add_option("--fn", fn_name, "f finv g rho k pdf bump fpm softplus sigmoid tanh relu h hhat")->required();
  eval->add_option("--lambda", lambda_text, "shape parameter (inf, -inf or decimal)");
  eval->add_option("--lambda-neg", lambda_neg_text, "negative-side shape for fpm and relu");
  eval->add_option("--c", request.c, "scale for rho, k and pdf");
  eval->add_option("--x", x_spec, "lo:hi:count or comma-separated list");
  eval->add_option("--ztable", eval_ztable, "take Z for pdf from this table instead of quadrature");
  eval->add_option("--num-points", request.num_points, "Simpson points for pdf quadrature");

  std::vector<std::string> acc_lambdas;
  double x_lo = 0.01;
  double x_hi = 1.0;
  int samples = 1000;
  auto* accuracy = app.add_subcommand("accuracy", "Naive vs stable error sweep; CSV to stdout");
  accuracy->add_option("--lambdas", acc_lambdas, "comma-separated lambdas (default grid if omitted)")
      ->delimiter(',');
  accuracy->add_option("--xmin", x_lo, "lower end of the log-spaced x window");
  accuracy->add_option("--xmax", x_hi, "upper end of the log-spaced x window");
  accuracy->add_option("--n", samples, "samples per lambda");

  int grid_size = 512;
  int num_points = 4096;
  std::string out_path;
  auto* ztable = app.add_subcommand("ztable", "Tabulate log Z and write it as JSON");
  ztable->add_option("--grid-size", grid_size, "minimum number of s nodes (>= 16)");
  ztable->add_option("--num-points", num_points, "Simpson points per quadrature");
  ztable->add_option("--out", out_path, "output path")->required();

  std::string lookup_path;
  std::string lookup_lambda = "0";
  auto* zlookup = app.add_subcommand("zlookup", "Interpolate Z(lambda) from a table");
  zlookup->add_option("--table", lookup_path, "table written by ztable")->required();
  zlookup->add_option("--lambda", lookup_lambda, "shape parameter");

  std::string data_path;
  std::string irls_lambda = "-0.5";
  bool has_header = false;
  IrlsProblem problem;
  auto* irls = app.add_subcommand("irls", "Robust location estimate by IRLS; JSON to stdout");
  irls->add_option("--data", data_path, "one-column CSV of observations")->required();
  irls->add_option("--lambda", irls_lambda, "shape parameter, must be <= 0");
  irls->add_option("--c", problem.c, "scale");
  irls->add_option("--tol", problem.tol, "relative step tolerance");
  irls->add_option("--max-iters", problem.max_iters, "iteration cap");
  irls->add_flag("--header", has_header, "skip the first non-blank line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*eval) {
      request.fn = parse_eval_fn(fn_name);
      request.lambda = Lambda::parse(lambda_text);
      request.lambda_neg = Lambda::parse(lambda_neg_text);
      request.xs = parse_x_spec(x_spec);
      if (!eval_ztable.empty()) request.ztable_path = eval_ztable;
      return eval_command(request, out);
    }
    if (*accuracy) {
      return accuracy_command(acc_lambdas, x_lo, x_hi, samples, out);
    }
    if (*ztable) {
      return ztable_command(grid_size, num_points, out_path, err);
    }
    if (*zlookup) {
      return zlookup_command(lookup_path, Lambda::parse(lookup_lambda), out);
    }
    if (*irls) {
      problem.lambda = Lambda::parse(irls_lambda);
      problem.observations = {0.0};
      validate(problem);
      return irls_command(problem, data_path, has_header, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace unipow::cli
