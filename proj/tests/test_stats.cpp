#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "binq/errors.hpp"
#include "binq/rng.hpp"
#include "binq/stats.hpp"

using namespace binq;

TEST_CASE("q_squared: perfect and mean-level reconstructions") {
  Rng rng(2);
  Eigen::MatrixXd data(50, 3);
  for (int k = 0; k < 50; ++k)
    for (int i = 0; i < 3; ++i) data(k, i) = rng.normal() + i;

  CHECK(q_squared(data, data) == doctest::Approx(0.0));

  Eigen::MatrixXd mean_recon = data;
  for (int i = 0; i < 3; ++i) mean_recon.col(i).setConstant(data.col(i).mean());
  CHECK(q_squared(data, mean_recon) == doctest::Approx(1.0));
}

TEST_CASE("q_squared is invariant under per-component affine maps") {
  Rng rng(3);
  Eigen::MatrixXd data(40, 4), recon(40, 4);
  for (int k = 0; k < 40; ++k)
    for (int i = 0; i < 4; ++i) {
      data(k, i) = rng.normal();
      recon(k, i) = data(k, i) + 0.3 * rng.normal();
    }
  const double base = q_squared(data, recon);

  const double scale[] = {2.0, -0.5, 10.0, 0.01};
  const double shift[] = {1.0, -7.0, 0.0, 100.0};
  Eigen::MatrixXd data2 = data, recon2 = recon;
  for (int i = 0; i < 4; ++i) {
    data2.col(i) = scale[i] * data.col(i).array() + shift[i];
    recon2.col(i) = scale[i] * recon.col(i).array() + shift[i];
  }
  CHECK(q_squared(data2, recon2) == doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("q_squared names the degenerate component") {
  Eigen::MatrixXd data(4, 2);
  data << 1, 5, 2, 5, 3, 5, 4, 5;
  CHECK_THROWS_WITH_AS(q_squared(data, data), doctest::Contains("component 1"),
                       DegenerateInputError);
  Eigen::MatrixXd other(3, 2);
  CHECK_THROWS_AS(q_squared(data, other), ContractError);
}

TEST_CASE("bias_corrected_mean: worked binned example") {
  // N=4, two bins, one retained sample per bin (indices 0 and 2)
  BiasCorrectionPlan plan;
  plan.n = 4;
  plan.n_bc = 2;
  plan.n_bin = 2;
  plan.selection = BcSelection::First;
  const std::vector<double> f_tilde = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> f_orig = {2.0, 5.0};

  const EstimateWithError est = bias_corrected_mean(f_tilde, f_orig, plan);
  CHECK(est.value == doctest::Approx(4.0));
  CHECK(est.error == doctest::Approx(1.5));
  CHECK(est.n_bin == 2);
}

TEST_CASE("bias_corrected_mean: zero correction and constant data") {
  BiasCorrectionPlan plan;
  plan.n = 8;
  plan.n_bc = 4;
  plan.n_bin = 4;
  const std::vector<double> f_tilde = {1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<double> f_orig;
  for (std::int64_t idx : plan.selected_indices()) f_orig.push_back(f_tilde[idx]);

  const EstimateWithError est = bias_corrected_mean(f_tilde, f_orig, plan);
  CHECK(est.value == doctest::Approx(4.5));  // plain mean, correction 0

  const std::vector<double> constant(8, 3.25);
  const std::vector<double> constant_bc(4, 3.25);
  const EstimateWithError flat = bias_corrected_mean(constant, constant_bc, plan);
  CHECK(flat.value == doctest::Approx(3.25));
  CHECK(flat.error == doctest::Approx(0.0));
}

TEST_CASE("bias_corrected_mean with every sample retained is the plain mean") {
  Rng rng(11);
  const int n = 24;
  std::vector<double> f_tilde(n), f_orig(n);
  for (int i = 0; i < n; ++i) {
    f_tilde[i] = rng.normal();
    f_orig[i] = rng.normal();
  }
  BiasCorrectionPlan plan;
  plan.n = n;
  plan.n_bc = n;
  plan.n_bin = 4;

  double mean = 0.0;
  for (int bin = 0; bin < 4; ++bin) {
    double s = 0.0;
    for (int k = 0; k < 6; ++k) s += f_orig[bin * 6 + k];
    mean += s / 6.0;
  }
  mean /= 4.0;
  CHECK(bias_corrected_mean(f_tilde, f_orig, plan).value == mean);  // exact
}

TEST_CASE("selection patterns: first vs strided vs explicit") {
  BiasCorrectionPlan plan;
  plan.n = 12;
  plan.n_bc = 4;
  plan.n_bin = 2;

  plan.selection = BcSelection::First;
  CHECK(plan.selected_indices() == std::vector<std::int64_t>{0, 1, 6, 7});

  plan.selection = BcSelection::Strided;
  CHECK(plan.selected_indices() == std::vector<std::int64_t>{0, 3, 6, 9});

  plan.selection = BcSelection::Explicit;
  plan.explicit_indices = {1, 4, 7, 10};
  CHECK(plan.selected_indices() == plan.explicit_indices);

  plan.explicit_indices = {1, 2, 3, 10};  // bin 0 holds three, bin 1 holds one
  CHECK_THROWS_AS(plan.validate(), ContractError);
  plan.explicit_indices = {1, 1, 7, 10};
  CHECK_THROWS_AS(plan.validate(), ContractError);
}

TEST_CASE("plan divisibility violations are rejected") {
  BiasCorrectionPlan plan;
  plan.n = 10;
  plan.n_bc = 4;
  plan.n_bin = 3;
  CHECK_THROWS_AS(plan.validate(), ContractError);
  plan.n_bin = 2;
  CHECK_NOTHROW(plan.validate());
  plan.n_bc = 5;
  CHECK_THROWS_AS(plan.validate(), ContractError);  // n_bin does not divide n_bc
  plan.n_bc = 20;
  CHECK_THROWS_AS(plan.validate(), ContractError);  // n_bc > n
}

TEST_CASE("bias_corrected_mean rejects mismatched inputs") {
  BiasCorrectionPlan plan;
  plan.n = 4;
  plan.n_bc = 2;
  plan.n_bin = 2;
  const std::vector<double> f_tilde = {1, 2, 3, 4};
  const std::vector<double> wrong = {1, 2, 3};
  CHECK_THROWS_AS(bias_corrected_mean(f_tilde, wrong, plan), ContractError);
  const std::vector<double> bad = {std::nan(""), 0.0};
  CHECK_THROWS_AS(bias_corrected_mean(f_tilde, bad, plan), ContractError);
}

TEST_CASE("bias correction is unbiased where the sloppy mean is not") {
  // Replication study with a deliberately biased reconstruction:
  // f_tilde = f + systematic shift + noise.
  const int reps = 200, n = 2000, n_bc = 200, n_bin = 100;
  const double truth = 0.7, shift = 0.05, noise = 0.1;

  BiasCorrectionPlan plan;
  plan.n = n;
  plan.n_bc = n_bc;
  plan.n_bin = n_bin;
  const std::vector<std::int64_t> selected = plan.selected_indices();

  std::vector<double> bc_estimates(reps), sloppy_estimates(reps);
  for (int r = 0; r < reps; ++r) {
    Rng rng(mix_seed(1000, r));
    std::vector<double> f_orig_all(n), f_tilde(n);
    for (int k = 0; k < n; ++k) {
      f_orig_all[k] = truth + rng.normal();
      f_tilde[k] = f_orig_all[k] + shift + noise * rng.normal();
    }
    std::vector<double> f_orig(selected.size());
    for (std::size_t i = 0; i < selected.size(); ++i) f_orig[i] = f_orig_all[selected[i]];

    bc_estimates[r] = bias_corrected_mean(f_tilde, f_orig, plan).value;
    double sloppy = 0.0;
    for (double v : f_tilde) sloppy += v;
    sloppy_estimates[r] = sloppy / n;
  }

  const auto mean_and_se = [&](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= v.size();
    double var = 0.0;
    for (double x : v) var += (x - m) * (x - m);
    var /= (v.size() - 1);
    return std::pair<double, double>{m, std::sqrt(var / v.size())};
  };

  const auto [bc_mean, bc_se] = mean_and_se(bc_estimates);
  const auto [sl_mean, sl_se] = mean_and_se(sloppy_estimates);
  CHECK(std::abs(bc_mean - truth) < 4.0 * bc_se);
  CHECK(std::abs(sl_mean - truth) > 4.0 * sl_se);  // the bias is real
}

TEST_CASE("error_increase_estimate: direct values and monotonicity") {
  CHECK(error_increase_estimate(100, 10, 0.0) == doctest::Approx(1.0));
  CHECK(error_increase_estimate(3200, 320, 0.01) == doctest::Approx(1.05));
  CHECK(error_increase_estimate(3200, 320, 0.01, 0.5) == doctest::Approx(1.025));

  CHECK(error_increase_estimate(1000, 100, 0.02) < error_increase_estimate(1000, 100, 0.03));
  CHECK(error_increase_estimate(1000, 200, 0.02) < error_increase_estimate(1000, 100, 0.02));

  CHECK_THROWS_AS(error_increase_estimate(10, 0, 0.1), ContractError);
  CHECK_THROWS_AS(error_increase_estimate(10, 5, -0.1), ContractError);
}

TEST_CASE("bootstrap_error: constants, determinism, and scale") {
  const std::vector<double> constant(64, 2.5);
  CHECK(bootstrap_error(constant, 100, 9) == doctest::Approx(0.0));

  Rng rng(15);
  std::vector<double> samples(1000);
  for (double& v : samples) v = rng.normal();
  const double a = bootstrap_error(samples, 2000, 77);
  const double b = bootstrap_error(samples, 2000, 77);
  CHECK(a == b);

  const double expected = 1.0 / std::sqrt(1000.0);
  CHECK(a == doctest::Approx(expected).epsilon(0.15));

  CHECK_THROWS_AS(bootstrap_error(std::vector<double>{1.0}, 10, 0), ContractError);
  CHECK_THROWS_AS(bootstrap_error(samples, 1, 0), ContractError);
}
