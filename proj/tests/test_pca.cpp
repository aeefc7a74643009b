#include <doctest.h>

#include <cmath>

#include <Eigen/Core>

#include "binq/errors.hpp"
#include "binq/pca.hpp"
#include "binq/rng.hpp"
#include "binq/stats.hpp"

using namespace binq;

namespace {

Eigen::MatrixXd correlated_rows(int n, int d, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd data(n, d);
  for (int k = 0; k < n; ++k) {
    data(k, 0) = rng.normal();
    for (int i = 1; i < d; ++i) data(k, i) = 0.6 * data(k, i - 1) + rng.normal();
  }
  return data;
}

}  // namespace

TEST_CASE("pca_fit finds the dominant direction of near-rank-1 data") {
  Rng rng(5);
  Eigen::MatrixXd data(200, 2);
  for (int k = 0; k < 200; ++k) {
    const double t = rng.normal();
    data(k, 0) = t + 1e-4 * rng.normal();
    data(k, 1) = t + 1e-4 * rng.normal();
  }
  const PcaModel model = pca_fit(data, 1);
  model.validate();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(model.components(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-3));
  CHECK(model.components(0, 1) == doctest::Approx(inv_sqrt2).epsilon(1e-3));
}

TEST_CASE("pca_fit with n_z = D yields a complete orthonormal basis") {
  const Eigen::MatrixXd data = correlated_rows(100, 5, 6);
  const PcaModel model = pca_fit(data, 5);
  model.validate();
  const Eigen::MatrixXd gram = model.components * model.components.transpose();
  CHECK((gram - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
  for (int i = 1; i < 5; ++i) CHECK(model.eigenvalues(i) <= model.eigenvalues(i - 1) + 1e-12);
}

TEST_CASE("pca_fit is deterministic") {
  const Eigen::MatrixXd data = correlated_rows(80, 4, 7);
  const PcaModel a = pca_fit(data, 3);
  const PcaModel b = pca_fit(data, 3);
  CHECK(a.components == b.components);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.mean == b.mean);
}

TEST_CASE("pca_roundtrip: complete basis and exact rank-1 data reproduce the input") {
  const Eigen::MatrixXd data = correlated_rows(60, 4, 8);
  const PcaModel full = pca_fit(data, 4);
  CHECK((pca_roundtrip(full, data) - data).cwiseAbs().maxCoeff() < 1e-8);

  Rng rng(9);
  Eigen::MatrixXd rank1(50, 3);
  Eigen::VectorXd direction(3);
  direction << 1.0, -2.0, 0.5;
  for (int k = 0; k < 50; ++k) rank1.row(k) = (rng.normal() * direction).transpose();
  const PcaModel one = pca_fit(rank1, 1);
  CHECK((pca_roundtrip(one, rank1) - rank1).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("pca_roundtrip projects orthogonal data onto the mean") {
  // components orthogonal to (data - mean) leave only the mean
  Eigen::MatrixXd data(4, 2);
  data << 1, 0, 2, 0, 3, 0, 4, 0;  // varies along x only
  PcaModel model;
  model.mean = data.colwise().mean();
  model.components.resize(1, 2);
  model.components << 0.0, 1.0;  // y direction, orthogonal to the variation
  model.eigenvalues.resize(1);
  model.eigenvalues << 0.0;
  const Eigen::MatrixXd recon = pca_roundtrip(model, data);
  for (int k = 0; k < 4; ++k) {
    CHECK(recon(k, 0) == doctest::Approx(2.5));
    CHECK(recon(k, 1) == doctest::Approx(0.0));
  }
}

TEST_CASE("pca_roundtrip is idempotent") {
  const Eigen::MatrixXd data = correlated_rows(90, 5, 10);
  const PcaModel model = pca_fit(data, 2);
  const Eigen::MatrixXd once = pca_roundtrip(model, data);
  const Eigen::MatrixXd twice = pca_roundtrip(model, once);
  CHECK((once - twice).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Q^2 of the PCA reconstruction never increases with n_z") {
  const Eigen::MatrixXd data = correlated_rows(150, 6, 11);
  double prev = std::numeric_limits<double>::infinity();
  for (int n_z = 1; n_z <= 6; ++n_z) {
    const double q2 = q_squared(data, pca_roundtrip(pca_fit(data, n_z), data));
    CHECK(q2 <= prev + 1e-12);
    prev = q2;
  }
}

TEST_CASE("reconstruction MSE equals the discarded eigenvalue mass") {
  const Eigen::MatrixXd data = correlated_rows(120, 5, 12);
  const PcaModel full = pca_fit(data, 5);
  const double trace = full.eigenvalues.sum();
  for (int n_z = 1; n_z <= 4; ++n_z) {
    const PcaModel model = pca_fit(data, n_z);
    const Eigen::MatrixXd recon = pca_roundtrip(model, data);
    const double mse = (data - recon).squaredNorm() / static_cast<double>(data.rows() - 1);
    double discarded = 0.0;
    for (int j = n_z; j < 5; ++j) discarded += full.eigenvalues(j);
    CHECK(std::abs(mse - discarded) <= 1e-8 * trace);
  }
}

TEST_CASE("pca_fit rejects degenerate requests") {
  const Eigen::MatrixXd data = correlated_rows(10, 3, 13);
  CHECK_THROWS_AS(pca_fit(data, 0), ContractError);
  CHECK_THROWS_AS(pca_fit(data, 4), ContractError);
  Eigen::MatrixXd single(1, 3);
  single.setZero();
  CHECK_THROWS_AS(pca_fit(single, 1), ContractError);

  const PcaModel model = pca_fit(data, 2);
  Eigen::MatrixXd wrong(5, 4);
  wrong.setZero();
  CHECK_THROWS_AS(pca_roundtrip(model, wrong), ContractError);
}
