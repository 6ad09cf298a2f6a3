// Prints a PASS or FAIL line with measured figures for each acceptance criterion.
// Exits non-zero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "closed_forms.hpp"
#include "commands.hpp"
#include "oracles.hpp"
#include "unipow/accuracy.hpp"
#include "unipow/boxcox.hpp"
#include "unipow/bump.hpp"
#include "unipow/distribution.hpp"
#include "unipow/irls.hpp"
#include "unipow/kernels.hpp"
#include "unipow/numeric_core.hpp"
#include "unipow/robust_loss.hpp"
#include "unipow/signed_transform.hpp"

using namespace unipow;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kEps = std::numeric_limits<double>::epsilon();

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

std::string lambda_list(const std::vector<double>& ls) {
  std::string out;
  for (double l : ls) out += (out.empty() ? "" : " ") + format_real(l);
  return out.empty() ? "none" : out;
}

std::vector<double> x_samples(double hi, int n) {
  std::vector<double> xs;
  for (int i = 0; i <= n; ++i) xs.push_back(hi * i / n);
  for (int i = 1; i <= n; ++i) xs.push_back(hi * std::pow(10.0, -12.0 * i / n));
  return xs;
}

double x_limit(Lambda l) { return 0.9 * std::min(max_domain(l), 1e6); }

Verdict stability_dominance() {
  const AccuracyReport report = error_sweep(default_accuracy_lambdas(), 0.01, 1.0, 1000);
  double worst_ratio = 0.0;
  std::vector<double> violators;
  for (const AccuracyRow& row : report.rows) {
    if (!row.err_naive) continue;
    worst_ratio = std::max(worst_ratio, row.err_stable / *row.err_naive);
    if (row.err_stable > *row.err_naive * (1.0 + 1e-3)) violators.push_back(row.lambda.value());
  }
  double weakest_gain = kInf;
  for (double l : {1.0 - 1e-8, 1.0 + 1e-8, -1.0 - 1e-8, -1.0 + 1e-8}) {
    const auto row = std::find_if(report.rows.begin(), report.rows.end(),
                                  [&](const AccuracyRow& r) { return r.lambda == Lambda{l}; });
    weakest_gain = row == report.rows.end() ? 0.0 : std::min(weakest_gain, *row->err_naive / row->err_stable);
  }
  return {violators.empty() && weakest_gain >= 1e3,
          std::to_string(report.rows.size()) + " lambdas, max stable/naive " + sci(worst_ratio) +
              ", violations: " + lambda_list(violators) + ", min naive/stable at +-1+-1e-8 " + sci(weakest_gain)};
}

Verdict self_inversion() {
  const std::vector<double> grid = {-kInf, -1e6, -10.0, -2.0, -1.0 - 1e-8, -1.0 + 1e-8, -0.5, 0.0,
                                    0.5,   1.0 - 1e-8, 1.0 + 1e-8, 2.0, 10.0, 1e6, kInf};
  double worst = 0.0;
  std::vector<double> failing;
  for (double lv : grid) {
    const Lambda l{lv};
    double worst_here = 0.0;
    for (double x : x_samples(x_limit(l), 4000)) {
      const double back = f_inv(f_stable(x, l), l);
      const double err = std::isnan(back) ? kInf : std::abs(back - x) / (1.0 + x);
      worst_here = std::max(worst_here, err);
    }
    worst = std::max(worst, worst_here);
    if (worst_here > 1e-9) failing.push_back(lv);
  }
  return {failing.empty(), "worst |f_inv(f(x)) - x|/(1+|x|) " + sci(worst) + ", lambdas over 1e-9: " +
                               lambda_list(failing)};
}

Verdict closed_forms() {
  std::int64_t worst_ulp = 0;
  std::vector<double> over_four;
  for (double lv : {3.0, -3.0, 2.0, -2.0, 1.5, -1.5, 0.5, -0.5}) {
    std::int64_t here = 0;
    for (double x : x_samples(x_limit(Lambda{lv}), 3000)) {
      here = std::max(here, oracle::ulp_distance(f_stable(x, Lambda{lv}), oracle::f_closed(x, lv)));
    }
    worst_ulp = std::max(worst_ulp, here);
    if (here > 4) over_four.push_back(lv);
  }
  double loss_rel = 0.0;
  for (NamedLoss loss : oracle::named_losses()) {
    for (double c : {0.1, 1.0, 7.0}) {
      for (double x : oracle::linspace(-10.0 * c, 10.0 * c, 2001)) {
        loss_rel = std::max(loss_rel, oracle::rel_err(rho(x, LossParams{lambda_of(loss), c}),
                                                      oracle::loss_closed(loss, x, c)));
      }
    }
  }
  double kernel_rel = 0.0;
  for (const NamedKernel& kernel : oracle::named_kernels()) {
    for (double c : {0.1, 1.0, 7.0}) {
      for (double x : oracle::linspace(0.0, 10.0 * c, 2001)) {
        kernel_rel = std::max(kernel_rel, oracle::rel_err(k(x, KernelParams{lambda_of(kernel), c}),
                                                          oracle::kernel_closed(kernel, x, c)));
      }
    }
  }
  return {over_four.empty() && loss_rel <= 1e-12 && kernel_rel <= 1e-12,
          "f worst " + std::to_string(worst_ulp) + " ulp (over 4 at " + lambda_list(over_four) +
              "), losses " + sci(loss_rel) + " rel, kernels " + sci(kernel_rel) + " rel"};
}

Verdict derivatives() {
  double worst_g = 0.0;
  const double h_rel = std::cbrt(kEps);
  for (double lv : {-kInf, -1e6, -10.0, -3.0, -2.0, -1.0, -0.5, 0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 10.0, 1e6, kInf}) {
    const Lambda l{lv};
    const double hi = 0.9 * std::min(max_domain(l), 20.0);
    for (int i = 1; i < 200; ++i) {
      const double x = hi * i / 200.0;
      const double h = h_rel * std::max(1.0, x);
      const double fd = (f_stable(x + h, l) - f_stable(x - h, l)) / (2.0 * h);
      const double gx = g(x, l);
      worst_g = std::max(worst_g, std::abs(gx - fd) / std::max(1.0, gx));
    }
  }
  double worst_k = 0.0;
  for (double lv : {-kInf, -1e6, -4.0, -2.0, -1.0, -0.5, -0.2, 0.0, 0.2, 0.5, 1.0 / 3.0, 1.0, 1.05, 1.08}) {
    for (double c : {0.25, 1.0, 3.0}) {
      const LossParams loss{Lambda{lv}, c};
      const KernelParams kernel{Lambda{lv}, c};
      for (double x : oracle::linspace(0.1 * c, 5.0 * c, 300)) {
        const double h = 1e-5 * c;
        const double slope = (rho(x + h, loss) - rho(x - h, loss)) / (2.0 * h);
        const double kv = k(x, kernel);
        worst_k = std::max(worst_k, std::abs(kv - c * c / x * slope) / kv);
      }
    }
  }
  return {worst_g <= 1e-6 && worst_k <= 1e-5, "g vs differences " + sci(worst_g) + ", kernel vs loss slope " +
                                                  sci(worst_k)};
}

Verdict partition_constants() {
  const double k1 = oracle::bessel_k1_series(1.0);
  const std::array<std::pair<double, double>, 4> constants = {{
      {0.0, std::sqrt(2.0 * std::numbers::pi)},
      {-1.0, std::numbers::pi * std::sqrt(2.0)},
      {kInf, 4.0 * std::sqrt(2.0) / 3.0},
      {-0.5, 2.0 * std::numbers::e * k1},
  }};
  double worst_const = 0.0;
  for (const auto& [l, z] : constants) worst_const = std::max(worst_const, oracle::rel_err(z_quadrature(Lambda{l}), z));

  double worst_norm = 0.0;
  for (double l : {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0, kInf}) {
    for (double c : {0.5, 1.0, 3.0}) {
      const DistParams params{Lambda{l}, c};
      const double z = z_quadrature(params.lambda);
      auto density = [&](double x) { return pdf_given_z(x, params, z); };
      const double edge = c * support_bound(params.lambda);
      const double half = std::isinf(edge) ? oracle::integrate_half_line(density)
                                           : oracle::integrate_interval(density, 0.0, edge);
      worst_norm = std::max(worst_norm, std::abs(2.0 * half - 1.0));
    }
  }

  const ZTable table = build_ztable(512);
  double worst_table = 0.0;
  for (double s : oracle::linspace(-0.5, 1.0, 3001)) {
    const Lambda l = s_to_lambda(s);
    worst_table = std::max(worst_table, oracle::rel_err(z_lookup(table, l), z_quadrature(l)));
  }
  return {worst_const <= 1e-6 && worst_norm <= 1e-6 && worst_table <= 1e-6,
          "constants " + sci(worst_const) + " rel (Z(-1/2) = 2 e K1(1)), normalization " + sci(worst_norm) +
              ", table " + sci(worst_table) + " rel"};
}

Verdict bump_identities() {
  double worst_identity = 0.0;
  for (double x : oracle::linspace(-1.0, 1.0, 20001)) {
    const double scaled = std::numbers::e * b_classic(x);
    worst_identity = std::max(worst_identity, std::abs(b(x, BumpParams{Lambda{2.0}}) - scaled * scaled));
  }
  bool support_ok = true;
  for (double l : {1.0 + 1e-9, 1.5, 2.0, 10.0, 1e6}) {
    const BumpParams params{Lambda{l}};
    for (double x : {1.0, -1.0, std::nextafter(1.0, 2.0), 1.5, -7.0, kInf}) support_ok &= b(x, params) == 0.0;
    support_ok &= b(0.0, params) == 1.0;
    support_ok &= b(std::nextafter(1.0, 0.0), params) >= 0.0;
    if (l >= 1.5) support_ok &= b(0.5, params) > 0.0;
  }
  const BumpParams spike{Lambda{1.0 + 1e-6}};
  double worst_tail = 0.0;
  for (double x : oracle::linspace(0.1, 1.0, 901)) worst_tail = std::max({worst_tail, b(x, spike), b(-x, spike)});
  return {worst_identity <= 1e-12 && support_ok && worst_tail <= 1e-6 && b(0.0, spike) == 1.0,
          "classic identity " + sci(worst_identity) + ", support " + (support_ok ? "exact" : "violated") +
              ", b(|x|>=0.1, 1+1e-6) <= " + sci(worst_tail)};
}

Verdict activations() {
  double softplus_err = 0.0;
  double sigmoid_err = 0.0;
  double tanh_err = 0.0;
  for (int i = -3000; i <= 3000; ++i) {
    const double x = i / 100.0;
    softplus_err = std::max(softplus_err, std::abs(softplus_f(x) - oracle::softplus(x)));
    sigmoid_err = std::max(sigmoid_err, std::abs(sigmoid_f(x) - oracle::sigmoid(x)));
    tanh_err = std::max(tanh_err, std::abs(tanh_f(x) - std::tanh(x)));
  }
  bool pass = softplus_err <= 1e-9 && sigmoid_err <= 1e-9 && tanh_err <= 1e-9;
  std::string relu_detail;
  for (double ln : {-3.0, 0.5, 2.0, kInf}) {
    double worst = 0.0;
    for (int i = -1000; i <= 1000; ++i) {
      const double x = i / 100.0;
      worst = std::max(worst, std::abs(relu_f(x, Lambda{ln}) - oracle::relu(x)));
    }
    pass &= worst <= 1e-9;
    relu_detail += " " + format_real(ln) + ":" + sci(worst);
  }
  return {pass, "softplus " + sci(softplus_err) + ", sigmoid " + sci(sigmoid_err) + ", tanh " + sci(tanh_err) +
                    ", relu by lambda_neg" + relu_detail};
}

Verdict boxcox_bijection() {
  double forward = 0.0;
  for (double l : {-3.0, -1.5, -0.5, 0.5, 1.5, 3.0}) {
    for (double x : oracle::linspace(0.0, x_limit(Lambda{l}), 2001)) {
      const double want = f_stable(x, Lambda{l});
      forward = std::max(forward, std::abs(f_from_h(x, Lambda{l}) - want) / (1.0 + std::abs(want)));
    }
  }
  double reverse = 0.0;
  for (double l : {-2.0, -0.5, 0.5, 1.0, 2.0, 4.0}) {
    for (double x : oracle::linspace(0.0, 5.0, 2001)) {
      const double want = h(x, BoxCoxLambda{l});
      reverse = std::max(reverse, std::abs(h_from_f(x, BoxCoxLambda{l}) - want) / (1.0 + std::abs(want)));
    }
  }
  return {forward <= 1e-10 && reverse <= 1e-10, "f via h " + sci(forward) + ", h via f " + sci(reverse)};
}

std::vector<double> contaminated_sample(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> inlier(0.0, 1.0);
  std::uniform_real_distribution<double> outlier(-30.0, 30.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double centre = 10.0 * (unit(rng) - 0.5);
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(unit(rng) < 0.8 ? centre + inlier(rng) : outlier(rng));
  return xs;
}

Verdict irls() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 50);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double shapes[] = {0.0, -0.1, -0.5, -1.0, -1.5, -2.0, -5.0, -40.0, -kInf};
  int increases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    IrlsProblem p;
    p.observations = contaminated_sample(rng, size(rng));
    p.lambda = Lambda{shapes[trial % 9]};
    p.c = 0.5 + 2.5 * unit(rng);
    double prev = kInf;
    bool ok = true;
    irls_location(p, [&](int, double mu) {
      const double v = loss_objective(mu, p);
      if (v > prev + 1e-14 * (1.0 + std::abs(prev))) ok = false;
      prev = v;
    });
    increases += ok ? 0 : 1;
  }
  double worst_mu = 0.0;
  bool all_converged = true;
  for (double l : {0.0, -0.5, -1.0, -2.0, -kInf}) {
    for (int trial = 0; trial < 20; ++trial) {
      IrlsProblem p;
      p.observations = contaminated_sample(rng, 3 + trial);
      p.lambda = Lambda{l};
      p.c = 1.0 + trial % 3;
      const IrlsResult r = irls_location(p);
      all_converged &= r.converged;
      worst_mu = std::max(worst_mu, std::abs(r.mu - oracle::reference_location(p.observations, l, p.c)));
    }
  }
  int mean_mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    IrlsProblem p;
    p.observations = contaminated_sample(rng, 1 + trial);
    p.lambda = Lambda{0.0};
    double sum = 0.0;
    for (double x : p.observations) sum += x;
    mean_mismatches += irls_location(p).mu == sum / static_cast<double>(p.observations.size()) ? 0 : 1;
  }
  return {increases == 0 && all_converged && worst_mu <= 1e-8 && mean_mismatches == 0,
          "datasets with an objective increase " + std::to_string(increases) + "/100, worst |mu - reference| " +
              sci(worst_mu) + ", least-squares mismatches " + std::to_string(mean_mismatches) + "/50"};
}

struct ToolRun {
  int code = -1;
  std::string out;
};

ToolRun tool(const std::string& args) {
  const std::string cmd = std::string(UNIPOW_TOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  ToolRun run;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) run.out.append(buf.data(), got);
  const int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

Verdict cli_determinism() {
  const auto dir = std::filesystem::temp_directory_path();
  const auto table_a = dir / "unipow_acceptance_a.json";
  const auto table_b = dir / "unipow_acceptance_b.json";
  const auto data = dir / "unipow_acceptance_obs.csv";
  {
    std::ofstream f(data);
    f << "0\n0\n10\n0.25\n";
  }

  int mismatches = 0;
  const std::vector<std::string> repeated = {"eval --fn pdf --lambda -0.75 --c 2 --x -5:5:201",
                                            "eval --fn relu --lambda-neg 0.5 --x -3,0,3",
                                            "accuracy --lambdas -1,0,1e-3,2 --n 200",
                                            "irls --data " + data.string() + " --lambda -1"};
  for (const std::string& args : repeated) {
    if (tool(args).out != tool(args).out) ++mismatches;
  }
  tool("ztable --grid-size 64 --num-points 1025 --out " + table_a.string());
  tool("ztable --grid-size 64 --num-points 1025 --out " + table_b.string());
  if (slurp(table_a) != slurp(table_b)) ++mismatches;

  int exit_failures = 0;
  const std::vector<std::string> invalid = {"eval --fn bump --lambda 1",
                                           "eval --fn pdf --lambda -2",
                                           "eval --fn f --x 1:0",
                                           "irls --data " + data.string() + " --lambda 0.5",
                                           "ztable --grid-size 8 --out " + table_a.string(),
                                           "nonsense"};
  for (const std::string& args : invalid) {
    if (tool(args).code == 0) ++exit_failures;
  }

  int lossy = 0;
  cli::EvalRequest request;
  request.fn = cli::EvalFn::F;
  request.lambda = Lambda{0.3};
  request.xs = cli::parse_x_spec("0:3:301");
  const cli::SampleSeries direct = cli::evaluate(request);
  std::istringstream csv(tool("eval --fn f --lambda 0.3 --x 0:3:301").out);
  std::string line;
  std::getline(csv, line);
  std::size_t row = 0;
  while (std::getline(csv, line)) {
    const auto comma = line.find(',');
    const double x = std::stod(line.substr(0, comma));
    const double v = std::stod(line.substr(comma + 1));
    if (row >= direct.size() || x != direct[row].first || v != direct[row].second) ++lossy;
    ++row;
  }
  if (row != direct.size()) ++lossy;
  if (read_ztable(table_a.string()).log_z != build_ztable(64, 1025).log_z) ++lossy;
  IrlsProblem problem;
  problem.observations = {0.0, 0.0, 10.0, 0.25};
  problem.lambda = Lambda{-1.0};
  const auto j = nlohmann::json::parse(tool("irls --data " + data.string() + " --lambda -1").out);
  if (j.at("mu").get<double>() != irls_location(problem).mu) ++lossy;

  std::filesystem::remove(table_a);
  std::filesystem::remove(table_b);
  std::filesystem::remove(data);
  return {mismatches == 0 && exit_failures == 0 && lossy == 0,
          "non-identical reruns " + std::to_string(mismatches) + ", invalid inputs exiting 0 " +
              std::to_string(exit_failures) + ", values lost in CSV/JSON " + std::to_string(lossy)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "stability dominance", 10.0, stability_dominance},
      {2, "self-inversion", 5.0, self_inversion},
      {3, "closed-form equivalences", 5.0, closed_forms},
      {4, "derivative correctness", 5.0, derivatives},
      {5, "partition constants", 30.0, partition_constants},
      {6, "bump identities", 2.0, bump_identities},
      {7, "activation reconstructions", 5.0, activations},
      {8, "Box-Cox bijection", 2.0, boxcox_bijection},
      {9, "IRLS", 20.0, irls},
      {10, "CLI determinism", 5.0, cli_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool on_time = seconds <= c.budget_seconds;
    const bool pass = v.pass && on_time;
    failed += pass ? 0 : 1;
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << seconds << " s of " << c.budget_seconds << " s";
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << v.detail << "; "
              << time.str() << (on_time ? "" : " (over budget)") << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
