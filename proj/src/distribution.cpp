#include "unipow/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "unipow/numeric_core.hpp"
#include "unipow/robust_loss.hpp"

namespace unipow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_density_lambda(Lambda lambda) {
  if (lambda.value() < -1.0) {
    throw std::domain_error("the density is undefined for lambda < -1 (got " + lambda.render() + ")");
  }
}

// Tabulation coordinate t. Nodes are uniform in t on [-1/2, 1] and s = t^2
// for t >= 0, a smoothstep for t < 0. Both pieces have zero slope where log Z
// is hardest to follow: at the Gaussian (s = 0) and at the Cauchy end
// (s = -1/2), whose expansion in lambda + 1 only converges asymptotically.
double s_of_t(double t) {
  if (t >= 0.0) return t * t;
  const double u = -2.0 * t;
  return -0.5 * u * u * (3.0 - 2.0 * u);
}

double t_of_s(double s) {
  if (s >= 0.0) return std::sqrt(s);
  const double sigma = std::min(-2.0 * s, 1.0);
  const double u = 0.5 - std::sin(std::asin(1.0 - 2.0 * sigma) / 3.0);
  double t = -0.5 * u;
  const double slope = -12.0 * t * (1.0 + 2.0 * t);
  if (slope != 0.0) {
    t -= (s_of_t(t) - s) / slope;
  }
  return std::clamp(t, -0.5, 0.0);
}

// Near lambda = 0 the transform behaves like x exp(lambda log(x / |lambda|)),
// so log Z carries a (1/2) lambda log|lambda| term whose slope is unbounded.
// Tables store log Z with (1/2) s log|s| removed; what is left is smooth
// enough on either side of s = 0 for cubic interpolation.
double cusp(double s) {
  return s == 0.0 ? 0.0 : 0.5 * s * std::log(std::abs(s));
}

int panels_below_zero(std::size_t nodes) {
  return static_cast<int>((nodes - 1) / 3);
}

// Fourth-order finite-difference slope dy/dt at node i, using only nodes in
// [lo, hi] so that no stencil straddles s = 0.
double node_slope(const std::vector<double>& y, std::size_t i, std::size_t lo, std::size_t hi, double h) {
  auto at = [&](long k) { return y[static_cast<std::size_t>(static_cast<long>(i) + k)]; };
  if (i >= lo + 2 && i + 2 <= hi) {
    return (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
  }
  if (i == lo) {
    return (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) / (12.0 * h);
  }
  if (i == lo + 1) {
    return (-3.0 * at(-1) - 10.0 * at(0) + 18.0 * at(1) - 6.0 * at(2) + at(3)) / (12.0 * h);
  }
  if (i == hi) {
    return (25.0 * at(0) - 48.0 * at(-1) + 36.0 * at(-2) - 16.0 * at(-3) + 3.0 * at(-4)) / (12.0 * h);
  }
  return (3.0 * at(1) + 10.0 * at(0) - 18.0 * at(-1) + 6.0 * at(-2) - at(-3)) / (12.0 * h);
}

}  // namespace

DistParams::DistParams(Lambda lambda_in, double c_in) : lambda(lambda_in), c(c_in) {
  if (lambda.value() < -1.0) {
    throw std::invalid_argument("density needs lambda >= -1");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("scale c must be positive and finite");
  }
}

double z_quadrature(Lambda lambda, int num_points) {
  require_density_lambda(lambda);
  if (num_points < 3) {
    throw std::invalid_argument("z_quadrature needs at least 3 points");
  }
  const int n = num_points % 2 == 0 ? num_points + 1 : num_points;

  const double eps = kBinary64.eps;
  const double x_max = std::sqrt(2.0 * f_inv(-std::log(eps * eps), lambda));
  const double u_max = f_inv(x_max, Lambda{1.0});

  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<double> ys(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = u_max * static_cast<double>(i) / static_cast<double>(n - 1);
    const double x = f_stable(u, Lambda{1.0});
    xs[static_cast<std::size_t>(i)] = x;
    ys[static_cast<std::size_t>(i)] = std::exp(-f_stable(0.5 * x * x, lambda));
  }

  // Composite Simpson for uneven spacing, one pair of panels at a time.
  double total = 0.0;
  for (std::size_t i = 0; i + 2 < xs.size(); i += 2) {
    const double h0 = xs[i + 1] - xs[i];
    const double h1 = xs[i + 2] - xs[i + 1];
    const double hs = h0 + h1;
    total += hs / 6.0 *
             ((2.0 - h1 / h0) * ys[i] + hs * hs / (h0 * h1) * ys[i + 1] + (2.0 - h0 / h1) * ys[i + 2]);
  }
  return 2.0 * total;
}

double support_bound(Lambda lambda) {
  require_density_lambda(lambda);
  const double l = lambda.value();
  if (l <= 1.0) return kInf;
  if (l == kInf) return std::sqrt(2.0);
  return std::sqrt(2.0 * l / (l - 1.0));
}

double lambda_to_s(Lambda lambda) {
  const double l = lambda.value();
  if (std::isinf(l)) return l > 0 ? 1.0 : -1.0;
  return l / (1.0 + std::abs(l));
}

Lambda s_to_lambda(double s) {
  if (s >= 1.0) return Lambda::positive_infinity();
  if (s <= -1.0) return Lambda::negative_infinity();
  return Lambda{s / (1.0 - std::abs(s))};
}

ZTable build_ztable(int grid_size, int num_points) {
  if (grid_size < 16) {
    throw std::invalid_argument("grid_size must be at least 16");
  }
  const int m = (grid_size - 1 + 2) / 3;  // panels on [-1/2, 0]; 2m more on [0, 1]
  const int nodes = 3 * m + 1;

  ZTable table;
  table.num_points = num_points;
  table.s_grid.reserve(static_cast<std::size_t>(nodes));
  table.log_z.reserve(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    const double s = s_of_t(static_cast<double>(i - m) / static_cast<double>(2 * m));
    table.s_grid.push_back(s);
    table.log_z.push_back(std::log(z_quadrature(s_to_lambda(s), num_points)));
  }
  return table;
}

std::vector<double> ztable_grid(std::size_t nodes) {
  if (nodes < 16 || (nodes - 1) % 3 != 0) {
    throw std::invalid_argument("z table node count must be 3m + 1 with m >= 5");
  }
  const int m = panels_below_zero(nodes);
  std::vector<double> grid(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    grid[i] = s_of_t(static_cast<double>(static_cast<int>(i) - m) / static_cast<double>(2 * m));
  }
  return grid;
}

double z_lookup(const ZTable& table, Lambda lambda) {
  require_density_lambda(lambda);
  const auto& s_grid = table.s_grid;
  const std::size_t n = s_grid.size();
  if (n < 16 || (n - 1) % 3 != 0 || table.log_z.size() != n) {
    throw std::invalid_argument("z table does not have the layout build_ztable produces");
  }
  const double s = std::clamp(lambda_to_s(lambda), s_grid.front(), s_grid.back());

  auto it = std::upper_bound(s_grid.begin(), s_grid.end(), s);
  const std::size_t i = std::min(static_cast<std::size_t>(it - s_grid.begin()), n - 1) - 1;
  if (s == s_grid[i]) return std::exp(table.log_z[i]);
  if (s == s_grid[i + 1]) return std::exp(table.log_z[i + 1]);

  const int m = panels_below_zero(n);
  const auto zero = static_cast<std::size_t>(m);
  const std::size_t lo = i < zero ? 0 : zero;
  const std::size_t hi = i < zero ? zero : n - 1;
  const double h = 1.0 / static_cast<double>(2 * m);

  std::vector<double> y(hi - lo + 1);
  const std::size_t first = i >= lo + 3 ? i - 3 : lo;
  const std::size_t last = std::min(i + 4, hi);
  for (std::size_t j = first; j <= last; ++j) {
    y[j - lo] = table.log_z[j] - cusp(s_grid[j]);
  }
  const std::size_t li = i - lo;
  const double d0 = node_slope(y, li, 0, hi - lo, h);
  const double d1 = node_slope(y, li + 1, 0, hi - lo, h);

  const double t_i = static_cast<double>(static_cast<int>(i) - m) * h;
  const double t = std::clamp((t_of_s(s) - t_i) / h, 0.0, 1.0);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  const double log_z = h00 * y[li] + h10 * h * d0 + h01 * y[li + 1] + h11 * h * d1 + cusp(s);
  return std::exp(log_z);
}

std::string ztable_to_json(const ZTable& table) {
  nlohmann::ordered_json j;
  j["s_grid"] = table.s_grid;
  j["log_z"] = table.log_z;
  j["num_points"] = table.num_points;
  j["precision"] = table.precision;
  return j.dump(2) + "\n";
}

ZTable ztable_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("z table is not valid JSON: ") + e.what());
  }
  ZTable table;
  try {
    table.s_grid = j.at("s_grid").get<std::vector<double>>();
    table.log_z = j.at("log_z").get<std::vector<double>>();
    table.num_points = j.at("num_points").get<int>();
    table.precision = j.at("precision").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed z table: ") + e.what());
  }
  if (table.precision != "binary64") {
    throw std::invalid_argument("unsupported z table precision '" + table.precision + "'");
  }
  if (table.s_grid.size() != table.log_z.size() || table.s_grid.size() < 2) {
    throw std::invalid_argument("z table arrays must have equal length >= 2");
  }
  for (std::size_t i = 0; i < table.s_grid.size(); ++i) {
    if (!std::isfinite(table.log_z[i]) || !std::isfinite(table.s_grid[i])) {
      throw std::invalid_argument("z table entries must be finite");
    }
    if (i > 0 && !(table.s_grid[i] > table.s_grid[i - 1])) {
      throw std::invalid_argument("z table s_grid must be strictly increasing");
    }
  }
  if (table.s_grid.front() != -0.5 || table.s_grid.back() != 1.0) {
    throw std::invalid_argument("z table s_grid must span [-0.5, 1]");
  }
  const std::vector<double> expected = ztable_grid(table.s_grid.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (std::abs(table.s_grid[i] - expected[i]) > 1e-15) {
      throw std::invalid_argument("z table s_grid does not match the tabulation layout at node " +
                                  std::to_string(i));
    }
  }
  return table;
}

void write_ztable(const ZTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << ztable_to_json(table);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing '" + path + "'");
  }
}

ZTable read_ztable(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return ztable_from_json(buf.str());
}

double partition(Lambda lambda, const ZSource& source) {
  if (const auto* q = std::get_if<QuadratureZ>(&source)) {
    return z_quadrature(lambda, q->num_points);
  }
  return z_lookup(std::get<std::reference_wrapper<const ZTable>>(source).get(), lambda);
}

double pdf_given_z(double x, const DistParams& params, double z) {
  if (params.lambda.value() > 1.0 && std::abs(x / params.c) >= support_bound(params.lambda)) {
    return 0.0;
  }
  // Dividing by Z and c separately keeps pdf(x, c) == pdf(x/c, 1)/c bit-exact.
  const double density = std::exp(-rho(x, LossParams{params.lambda, params.c})) / z;
  return density / params.c;
}

double pdf(double x, const DistParams& params, const ZSource& source) {
  if (params.lambda.value() > 1.0 && std::abs(x / params.c) >= support_bound(params.lambda)) {
    return 0.0;
  }
  return pdf_given_z(x, params, partition(params.lambda, source));
}

}  // namespace unipow
