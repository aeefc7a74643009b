#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "binq/qubo.hpp"

namespace binq {

// Solver-quality benchmark basis: weight_n = r^-n / R for n = 1..n_q with
// R = 1/(r-1), so the weights of an all-ones code sum to 1 - r^-n_q / ...
// (exactly 1 - 2^-n_q when r = 2). Approximating a uniform z in [0,1) with
// a subset sum probes how close a solver gets to the true ground state.
struct GeometricBasis {
  double r = 2.0;
  int n_q = 0;
  std::vector<double> weights;

  static GeometricBasis make(double r, int n_q);
};

struct BenchPoint {
  int n_q = 0;
  double avg_error = 0.0;
  double error_bar = 0.0;
};

struct PowerLawFit {
  double a = 0.0;
  double b = 0.0;
  double chi2_per_dof = 0.0;
};

// |z - sum_n a_n weight_n|; z must lie in [0, 1).
double geometric_error(const GeometricBasis& basis, double z, const BitCode& code);

// Mean absolute reconstruction error over n_samples uniform draws, each
// encoded through the QUBO pipeline with the given solver.
double run_appendix_bench(double r, int n_q, int n_samples, const SolverConfig& solver,
                          std::uint64_t seed, int threads = 1);

// Same run with a bootstrap error bar on the mean.
BenchPoint appendix_point(double r, int n_q, int n_samples, const SolverConfig& solver,
                          std::uint64_t seed, int threads = 1);

// Weighted least squares of log(avg_error) = (n_q + b) log(a).
PowerLawFit fit_power_law(const std::vector<BenchPoint>& points);

// Zero-mean Gaussian rows with correlation C_ij = rho^|i-j| via the AR(1)
// triangular factorization; the synthetic stand-in for correlated
// measurement data.
Eigen::MatrixXd gen_correlated(std::int64_t n, int d, double rho, std::uint64_t seed);

}  // namespace binq
