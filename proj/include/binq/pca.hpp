#pragma once

#include <Eigen/Core>

namespace binq {

// Principal-component model: rows of `components` are orthonormal directions
// in descending eigenvalue order; the sign convention makes the
// largest-magnitude entry of every component positive.
struct PcaModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd components;   // n_z x D
  Eigen::VectorXd eigenvalues;  // n_z, non-increasing

  int n_z() const { return static_cast<int>(components.rows()); }
  void validate() const;
};

// Eigendecomposition of the unbiased sample covariance, top n_z directions.
PcaModel pca_fit(const Eigen::MatrixXd& data, int n_z);

// mean + ((data - mean) C^T) C: projection onto the retained components.
Eigen::MatrixXd pca_roundtrip(const PcaModel& model, const Eigen::MatrixXd& data);

}  // namespace binq
