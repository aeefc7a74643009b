#include "binq/pca.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "binq/errors.hpp"

namespace binq {

void PcaModel::validate() const {
  if (components.rows() < 1) throw ContractError("PcaModel: no components");
  if (mean.size() != components.cols()) throw ContractError("PcaModel: mean/component size mismatch");
  const Eigen::MatrixXd gram = components * components.transpose();
  if ((gram - Eigen::MatrixXd::Identity(n_z(), n_z())).cwiseAbs().maxCoeff() > 1e-8)
    throw ContractError("PcaModel: components are not orthonormal");
  for (int i = 0; i < n_z(); ++i) {
    if (eigenvalues(i) < -1e-10) throw ContractError("PcaModel: negative eigenvalue");
    if (i > 0 && eigenvalues(i) > eigenvalues(i - 1) + 1e-12)
      throw ContractError("PcaModel: eigenvalues not sorted");
  }
}

PcaModel pca_fit(const Eigen::MatrixXd& data, int n_z) {
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.cols();
  if (n < 2) throw ContractError("pca_fit: need at least 2 samples");
  if (n_z < 1 || n_z > d) throw ContractError("pca_fit: need 1 <= n_z <= D");

  PcaModel model;
  model.mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw ContractError("pca_fit: eigendecomposition failed");

  // Eigen sorts ascending; take the top n_z in descending order.
  model.components.resize(n_z, d);
  model.eigenvalues.resize(n_z);
  for (int k = 0; k < n_z; ++k) {
    const Eigen::Index src = d - 1 - k;
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    Eigen::Index arg_max = 0;
    v.cwiseAbs().maxCoeff(&arg_max);
    if (v(arg_max) < 0.0) v = -v;
    model.components.row(k) = v.transpose();
    model.eigenvalues(k) = solver.eigenvalues()(src);
  }
  return model;
}

Eigen::MatrixXd pca_roundtrip(const PcaModel& model, const Eigen::MatrixXd& data) {
  if (data.cols() != model.components.cols())
    throw ContractError("pca_roundtrip: column count mismatch");
  const Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
  Eigen::MatrixXd out = (centered * model.components.transpose()) * model.components;
  out.rowwise() += model.mean.transpose();
  return out;
}

}  // namespace binq
