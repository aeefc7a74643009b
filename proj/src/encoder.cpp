#include "binq/encoder.hpp"

#include <cmath>
#include <string>

#include "binq/errors.hpp"

namespace binq {

void Dictionary::validate() const {
  if (phi.rows() < 1 || phi.cols() < 1) throw ContractError("Dictionary: empty phi");
  if (!phi.allFinite()) throw ContractError("Dictionary: non-finite entry in phi");
  if (element_bound) {
    if (!(*element_bound > 0.0)) throw ContractError("Dictionary: element_bound must be > 0");
    if (phi.cwiseAbs().maxCoeff() > *element_bound)
      throw ContractError("Dictionary: max|phi_ij| exceeds element_bound");
  }
}

QuboProblem build_qubo(const Dictionary& dict, const Eigen::VectorXd& x) {
  dict.validate();
  if (x.size() != dict.phi.rows())
    throw ContractError("build_qubo: x has length " + std::to_string(x.size()) +
                        ", dictionary expects " + std::to_string(dict.phi.rows()));
  if (!x.allFinite()) throw ContractError("build_qubo: non-finite entry in x");

  const Eigen::MatrixXd gram = dict.phi.transpose() * dict.phi;
  const Eigen::VectorXd proj = dict.phi.transpose() * x;
  const int n_q = dict.n_q();

  QuboProblem problem;
  problem.n_vars = n_q;
  problem.linear.resize(static_cast<std::size_t>(n_q));
  for (int i = 0; i < n_q; ++i)
    problem.linear[static_cast<std::size_t>(i)] = -2.0 * proj(i) + gram(i, i);
  for (int i = 0; i < n_q; ++i)
    for (int j = i + 1; j < n_q; ++j)
      if (gram(i, j) != 0.0) problem.quadratic[{i, j}] = 2.0 * gram(i, j);
  problem.offset = x.squaredNorm();
  return problem;
}

BitCode encode(const Dictionary& dict, const Eigen::VectorXd& x, const SolverConfig& solver) {
  return solver.solve(build_qubo(dict, x)).code;
}

Eigen::VectorXd reconstruct(const Dictionary& dict, const BitCode& code) {
  if (static_cast<int>(code.size()) != dict.n_q())
    throw ContractError("reconstruct: code length != n_q");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dict.phi.rows());
  for (int j = 0; j < dict.n_q(); ++j)
    if (code.test(static_cast<std::size_t>(j))) out += dict.phi.col(j);
  return out;
}

}  // namespace binq
