#include "binq/bench.hpp"

#include <algorithm>
#include <cmath>

#include "binq/encoder.hpp"
#include "binq/errors.hpp"
#include "binq/parallel.hpp"
#include "binq/rng.hpp"
#include "binq/stats.hpp"

namespace binq {

namespace {

constexpr std::uint64_t kTagBenchSolve = 0x55;
constexpr std::uint64_t kTagBootstrap = 0x66;

// Pairwise summation: the reduction order is fixed by the vector layout, so
// means do not depend on the worker count.
double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

std::vector<double> per_sample_errors(double r, int n_q, int n_samples, const SolverConfig& solver,
                                      std::uint64_t seed, int threads) {
  if (!(r > 1.0)) throw ContractError("appendix bench: r must be > 1");
  if (n_samples < 1) throw ContractError("appendix bench: n_samples must be >= 1");

  const GeometricBasis basis = GeometricBasis::make(r, n_q);
  Dictionary dict;
  dict.phi.resize(1, n_q);
  for (int j = 0; j < n_q; ++j) dict.phi(0, j) = basis.weights[static_cast<std::size_t>(j)];

  std::vector<double> z(static_cast<std::size_t>(n_samples));
  Rng rng(seed);
  for (double& v : z) v = rng.uniform();

  std::vector<double> errors(static_cast<std::size_t>(n_samples));
  parallel_for(static_cast<std::size_t>(n_samples), resolve_threads(threads), [&](std::size_t i) {
    Eigen::VectorXd x(1);
    x(0) = z[i];
    const QuboProblem problem = build_qubo(dict, x);
    const Solution sol = solver.with_seed(mix_seed(seed, kTagBenchSolve, i)).solve(problem);
    errors[i] = std::sqrt(std::max(0.0, sol.energy));
  });
  return errors;
}

}  // namespace

GeometricBasis GeometricBasis::make(double r, int n_q) {
  if (!(r > 1.0)) throw ContractError("GeometricBasis: r must be > 1");
  if (n_q < 1) throw ContractError("GeometricBasis: n_q must be >= 1");
  GeometricBasis basis;
  basis.r = r;
  basis.n_q = n_q;
  basis.weights.resize(static_cast<std::size_t>(n_q));
  const double big_r = 1.0 / (r - 1.0);  // sum_{n>=1} r^-n in closed form
  for (int n = 1; n <= n_q; ++n)
    basis.weights[static_cast<std::size_t>(n - 1)] = std::pow(r, -n) / big_r;
  return basis;
}

double geometric_error(const GeometricBasis& basis, double z, const BitCode& code) {
  if (!(z >= 0.0 && z < 1.0)) throw ContractError("geometric_error: z must be in [0, 1)");
  if (code.size() != basis.weights.size())
    throw ContractError("geometric_error: code length != n_q");
  double recon = 0.0;
  for (std::size_t j = 0; j < code.size(); ++j)
    if (code.test(j)) recon += basis.weights[j];
  return std::abs(z - recon);
}

double run_appendix_bench(double r, int n_q, int n_samples, const SolverConfig& solver,
                          std::uint64_t seed, int threads) {
  const std::vector<double> errors = per_sample_errors(r, n_q, n_samples, solver, seed, threads);
  return pairwise_sum(errors.data(), errors.size()) / static_cast<double>(errors.size());
}

BenchPoint appendix_point(double r, int n_q, int n_samples, const SolverConfig& solver,
                          std::uint64_t seed, int threads) {
  const std::vector<double> errors = per_sample_errors(r, n_q, n_samples, solver, seed, threads);
  BenchPoint point;
  point.n_q = n_q;
  point.avg_error = pairwise_sum(errors.data(), errors.size()) / static_cast<double>(errors.size());
  point.error_bar = bootstrap_error(errors, 500, mix_seed(seed, kTagBootstrap, n_q));
  return point;
}

PowerLawFit fit_power_law(const std::vector<BenchPoint>& points) {
  if (points.size() < 3) throw ContractError("fit_power_law: need at least 3 points");
  for (const BenchPoint& p : points) {
    if (!(p.avg_error > 0.0)) throw ContractError("fit_power_law: avg_error must be > 0");
    if (!(p.error_bar > 0.0)) throw ContractError("fit_power_law: error_bar must be > 0");
  }

  // log(E) = alpha * n_q + beta with alpha = log a, beta = b log a;
  // weights from the delta method, sigma_log = bar / value.
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (const BenchPoint& p : points) {
    const double x = static_cast<double>(p.n_q);
    const double y = std::log(p.avg_error);
    const double sigma = p.error_bar / p.avg_error;
    const double w = 1.0 / (sigma * sigma);
    sw += w;
    swx += w * x;
    swy += w * y;
    swxx += w * x * x;
    swxy += w * x * y;
  }
  const double denom = sw * swxx - swx * swx;
  if (denom == 0.0) throw ContractError("fit_power_law: degenerate abscissae");
  const double alpha = (sw * swxy - swx * swy) / denom;
  const double beta = (swxx * swy - swx * swxy) / denom;

  PowerLawFit fit;
  fit.a = std::exp(alpha);
  fit.b = beta / alpha;
  double chi2 = 0.0;
  for (const BenchPoint& p : points) {
    const double sigma = p.error_bar / p.avg_error;
    const double resid = (std::log(p.avg_error) - alpha * p.n_q - beta) / sigma;
    chi2 += resid * resid;
  }
  fit.chi2_per_dof = chi2 / static_cast<double>(points.size() - 2);
  return fit;
}

Eigen::MatrixXd gen_correlated(std::int64_t n, int d, double rho, std::uint64_t seed) {
  if (n < 1 || d < 1) throw ContractError("gen_correlated: n and d must be >= 1");
  if (!(rho >= 0.0 && rho < 1.0)) throw ContractError("gen_correlated: rho must be in [0, 1)");

  const double innovation = std::sqrt(1.0 - rho * rho);
  Rng rng(seed);
  Eigen::MatrixXd out(n, d);
  for (std::int64_t k = 0; k < n; ++k) {
    out(k, 0) = rng.normal();
    for (int i = 1; i < d; ++i) out(k, i) = rho * out(k, i - 1) + innovation * rng.normal();
  }
  return out;
}

}  // namespace binq
