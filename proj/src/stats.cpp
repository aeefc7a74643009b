#include "binq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "binq/errors.hpp"
#include "binq/rng.hpp"

namespace binq {

namespace {

double sample_variance(const Eigen::VectorXd& v) {
  const double mean = v.mean();
  return (v.array() - mean).square().sum() / static_cast<double>(v.size() - 1);
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stdev_of(std::span<const double> v) {
  const double mean = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

void BiasCorrectionPlan::validate() const {
  if (n < 1) throw ContractError("BiasCorrectionPlan: n must be >= 1");
  if (n_bc < 1 || n_bc > n) throw ContractError("BiasCorrectionPlan: need 1 <= n_bc <= n");
  if (n_bin < 1) throw ContractError("BiasCorrectionPlan: n_bin must be >= 1");
  if (n % n_bin != 0 || n_bc % n_bin != 0)
    throw ContractError("BiasCorrectionPlan: n_bin must divide both n and n_bc");
  if (selection == BcSelection::Explicit) {
    if (static_cast<std::int64_t>(explicit_indices.size()) != n_bc)
      throw ContractError("BiasCorrectionPlan: explicit index count != n_bc");
    const std::int64_t bin_size = n / n_bin;
    const std::int64_t per_bin = n_bc / n_bin;
    std::vector<std::int64_t> bin_fill(static_cast<std::size_t>(n_bin), 0);
    std::int64_t prev = -1;
    for (std::int64_t idx : explicit_indices) {
      if (idx < 0 || idx >= n) throw ContractError("BiasCorrectionPlan: index out of range");
      if (idx <= prev) throw ContractError("BiasCorrectionPlan: indices must be strictly increasing");
      prev = idx;
      ++bin_fill[static_cast<std::size_t>(idx / bin_size)];
    }
    for (std::int64_t fill : bin_fill)
      if (fill != per_bin)
        throw ContractError("BiasCorrectionPlan: every bin needs exactly " +
                            std::to_string(per_bin) + " retained samples");
  }
}

std::vector<std::int64_t> BiasCorrectionPlan::selected_indices() const {
  validate();
  if (selection == BcSelection::Explicit) return explicit_indices;

  const std::int64_t bin_size = n / n_bin;
  const std::int64_t per_bin = n_bc / n_bin;
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n_bc));
  for (std::int64_t bin = 0; bin < n_bin; ++bin) {
    const std::int64_t base = bin * bin_size;
    for (std::int64_t j = 0; j < per_bin; ++j) {
      const std::int64_t off = selection == BcSelection::First ? j : j * bin_size / per_bin;
      out.push_back(base + off);
    }
  }
  return out;
}

std::vector<double> per_component_variance_ratio(const Eigen::MatrixXd& original,
                                                 const Eigen::MatrixXd& reconstructed) {
  if (original.rows() != reconstructed.rows() || original.cols() != reconstructed.cols())
    throw ContractError("q_squared: shape mismatch");
  if (original.rows() < 2) throw ContractError("q_squared: need at least 2 samples");

  std::vector<double> ratios(static_cast<std::size_t>(original.cols()));
  for (Eigen::Index i = 0; i < original.cols(); ++i) {
    const double var_orig = sample_variance(original.col(i));
    if (var_orig == 0.0)
      throw DegenerateInputError("q_squared: component " + std::to_string(i) +
                                 " has zero sample variance");
    const double var_diff = sample_variance(original.col(i) - reconstructed.col(i));
    ratios[static_cast<std::size_t>(i)] = var_diff / var_orig;
  }
  return ratios;
}

double q_squared(const Eigen::MatrixXd& original, const Eigen::MatrixXd& reconstructed) {
  const std::vector<double> ratios = per_component_variance_ratio(original, reconstructed);
  double sum = 0.0;
  for (double r : ratios) sum += r;
  return sum / static_cast<double>(ratios.size());
}

EstimateWithError bias_corrected_mean(std::span<const double> f_tilde,
                                      std::span<const double> f_orig,
                                      const BiasCorrectionPlan& plan) {
  plan.validate();
  if (static_cast<std::int64_t>(f_tilde.size()) != plan.n)
    throw ContractError("bias_corrected_mean: f_tilde length != plan.n");
  const std::vector<std::int64_t> selected = plan.selected_indices();
  if (f_orig.size() != selected.size())
    throw ContractError("bias_corrected_mean: f_orig length != retained sample count");
  for (double v : f_tilde)
    if (!std::isfinite(v)) throw ContractError("bias_corrected_mean: non-finite f_tilde value");
  for (double v : f_orig)
    if (!std::isfinite(v)) throw ContractError("bias_corrected_mean: non-finite f_orig value");

  const std::int64_t bin_size = plan.n / plan.n_bin;
  const std::int64_t per_bin = plan.n_bc / plan.n_bin;
  std::vector<double> bins(static_cast<std::size_t>(plan.n_bin));

  if (plan.n_bc == plan.n) {
    // every sample retained: the sloppy term cancels algebraically, so the
    // bins are plain means of f_orig (this keeps the reduction exact)
    for (std::int64_t bin = 0; bin < plan.n_bin; ++bin) {
      double s = 0.0;
      for (std::int64_t k = 0; k < bin_size; ++k)
        s += f_orig[static_cast<std::size_t>(bin * bin_size + k)];
      bins[static_cast<std::size_t>(bin)] = s / static_cast<double>(bin_size);
    }
  } else {
    std::size_t cursor = 0;  // selected[] is ascending, so bins consume it in order
    for (std::int64_t bin = 0; bin < plan.n_bin; ++bin) {
      double sloppy = 0.0;
      for (std::int64_t k = 0; k < bin_size; ++k)
        sloppy += f_tilde[static_cast<std::size_t>(bin * bin_size + k)];
      sloppy /= static_cast<double>(bin_size);

      double correction = 0.0;
      for (std::int64_t j = 0; j < per_bin; ++j, ++cursor)
        correction += f_orig[cursor] - f_tilde[static_cast<std::size_t>(selected[cursor])];
      correction /= static_cast<double>(per_bin);

      bins[static_cast<std::size_t>(bin)] = sloppy + correction;
    }
  }

  EstimateWithError out;
  out.n_bin = plan.n_bin;
  out.value = mean_of(bins);
  out.error = plan.n_bin >= 2 ? stdev_of(bins) / std::sqrt(static_cast<double>(plan.n_bin)) : 0.0;
  return out;
}

double error_increase_estimate(std::int64_t n, std::int64_t n_bc, double q2, double alpha) {
  if (n_bc < 1) throw ContractError("error_increase_estimate: n_bc must be >= 1");
  if (q2 < 0.0) throw ContractError("error_increase_estimate: q2 must be >= 0");
  return 1.0 + alpha * (static_cast<double>(n) / (2.0 * static_cast<double>(n_bc))) * q2;
}

double bootstrap_error(std::span<const double> samples, int n_resamples, std::uint64_t seed) {
  if (samples.size() < 2) throw ContractError("bootstrap_error: need at least 2 samples");
  if (n_resamples < 2) throw ContractError("bootstrap_error: need at least 2 resamples");

  Rng rng(seed);
  std::vector<double> means(static_cast<std::size_t>(n_resamples));
  for (int r = 0; r < n_resamples; ++r) {
    double s = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) s += samples[rng.below(samples.size())];
    means[static_cast<std::size_t>(r)] = s / static_cast<double>(samples.size());
  }
  return stdev_of(means);
}

}  // namespace binq
