#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "unipow/lambda.hpp"

namespace unipow {

inline constexpr int kDefaultSimpsonPoints = 4096;

/// Parameters of the density. lambda >= -1 (the integral diverges below) and
/// c > 0; the constructor throws std::invalid_argument otherwise.
struct DistParams {
  Lambda lambda;
  double c = 1.0;

  explicit DistParams(Lambda lambda_in, double c_in = 1.0);
};

/// Partition function Z(lambda) = integral of exp(-rho(x, lambda, 1)).
///
/// Integrates over [0, x_max], where x_max = sqrt(2 f_inv(-log(eps^2), lambda))
/// is the point at which the integrand falls to eps^2, and doubles the result.
/// Nodes are x_i = expm1(u_i) for u_i uniform on [0, log1p(x_max)], which
/// concentrates them near the origin and lets heavy tails (lambda near -1)
/// reach x_max ~ 1e16 with a few thousand points. The composite Simpson rule
/// for uneven spacing is applied to the warped nodes. An even num_points is
/// bumped by one so the rule sees an even number of panels.
///
/// Throws std::domain_error for lambda < -1 and std::invalid_argument for
/// num_points < 3.
double z_quadrature(Lambda lambda, int num_points = kDefaultSimpsonPoints);

/// Half-width of the support for c = 1: +inf for lambda <= 1,
/// sqrt(2 lambda / (lambda - 1)) for finite lambda > 1, sqrt(2) at +inf.
double support_bound(Lambda lambda);

/// log Z sampled on the compactified axis s = lambda / (1 + |lambda|), which
/// maps [-1, +inf] onto [-1/2, 1].
struct ZTable {
  std::vector<double> s_grid;
  std::vector<double> log_z;
  int num_points = kDefaultSimpsonPoints;
  std::string precision = "binary64";
};

double lambda_to_s(Lambda lambda);
Lambda s_to_lambda(double s);

/// Tabulates log Z. The number of panels is grid_size - 1 rounded up to a
/// multiple of 3: m panels cover s in [-1/2, 0] and 2m cover [0, 1], so s = 0
/// (the Gaussian) is always a node. Nodes are uniform in an auxiliary
/// coordinate t in [-1/2, 1] with s = t^2 for t >= 0 and
/// s = -(1/2)(3u^2 - 2u^3), u = -2t, for t < 0, which packs them towards
/// s = 0 and s = -1/2. Throws std::invalid_argument for grid_size < 16.
ZTable build_ztable(int grid_size, int num_points = kDefaultSimpsonPoints);

/// The s nodes build_ztable uses for a table with `nodes` entries. Throws
/// std::invalid_argument unless nodes = 3m + 1 with m >= 5.
std::vector<double> ztable_grid(std::size_t nodes);

/// Piecewise-cubic Hermite interpolation of log Z - (1/2) s log|s| in t,
/// exponentiated after adding the (1/2) s log|s| term back. Node slopes are
/// fourth-order finite differences that never reach across s = 0. Exact at
/// nodes. Throws std::domain_error for lambda < -1 and std::invalid_argument
/// when the table does not have the build_ztable layout.
double z_lookup(const ZTable& table, Lambda lambda);

std::string ztable_to_json(const ZTable& table);
/// Parses and validates a table, including that s_grid is the build_ztable
/// layout; throws std::invalid_argument on violations.
ZTable ztable_from_json(std::string_view text);

void write_ztable(const ZTable& table, const std::string& path);
ZTable read_ztable(const std::string& path);

/// Where pdf() takes Z from.
struct QuadratureZ {
  int num_points = kDefaultSimpsonPoints;
};
using ZSource = std::variant<QuadratureZ, std::reference_wrapper<const ZTable>>;

double partition(Lambda lambda, const ZSource& source);

/// exp(-rho(x, lambda, c)) / (c Z(lambda)); exactly 0 at and beyond the
/// support bound when lambda > 1.
double pdf(double x, const DistParams& params, const ZSource& source = QuadratureZ{});

/// Same density with Z already known, for evaluating many x at one lambda.
double pdf_given_z(double x, const DistParams& params, double z);

}  // namespace unipow
