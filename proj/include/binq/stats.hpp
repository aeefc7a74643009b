#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace binq {

enum class BcSelection { First, Strided, Explicit };

// Which original samples are retained for bias correction and how samples
// are grouped into bins for the error estimate. n_bin must divide both n
// and n_bc; bin i covers samples [i*M, (i+1)*M) with M = n/n_bin.
struct BiasCorrectionPlan {
  std::int64_t n = 0;
  std::int64_t n_bc = 0;
  std::int64_t n_bin = 1;
  BcSelection selection = BcSelection::First;
  std::vector<std::int64_t> explicit_indices;  // used when selection == Explicit

  void validate() const;

  // Retained sample indices, ascending. First: the leading M_bc samples of
  // each bin. Strided: M_bc maximally separated samples per bin.
  std::vector<std::int64_t> selected_indices() const;
};

struct EstimateWithError {
  double value = 0.0;
  double error = 0.0;
  std::int64_t n_bin = 0;
};

// Mean over components of Var(X_i - Xtilde_i) / Var(X_i), unbiased sample
// variances. Throws DegenerateInputError when a component of the original
// has zero variance.
double q_squared(const Eigen::MatrixXd& original, const Eigen::MatrixXd& reconstructed);

// The per-component ratios that q_squared averages.
std::vector<double> per_component_variance_ratio(const Eigen::MatrixXd& original,
                                                 const Eigen::MatrixXd& reconstructed);

// Unbiased binned estimator: per bin, mean of f_tilde over the bin plus the
// mean of (f_orig - f_tilde) over the bin's retained samples; the estimate
// is the bin average and the error is stdev(bins)/sqrt(n_bin). f_orig is
// aligned with plan.selected_indices().
EstimateWithError bias_corrected_mean(std::span<const double> f_tilde,
                                      std::span<const double> f_orig,
                                      const BiasCorrectionPlan& plan);

// Predicted statistical error increase 1 + alpha * (n / 2 n_bc) * q2.
double error_increase_estimate(std::int64_t n, std::int64_t n_bc, double q2, double alpha = 1.0);

// Standard deviation of n_resamples seeded with-replacement resample means.
double bootstrap_error(std::span<const double> samples, int n_resamples, std::uint64_t seed);

}  // namespace binq
