#pragma once

#include <optional>

#include <Eigen/Core>

#include "binq/qubo.hpp"

namespace binq {

// Shared basis matrix phi (D x N_q). A sample x is represented by a binary
// code a with reconstruction phi * a. element_bound, when set, caps
// max|phi_ij| (the constrained mode used to tame analog coefficient error).
struct Dictionary {
  Eigen::MatrixXd phi;
  std::optional<double> element_bound;

  int d() const { return static_cast<int>(phi.rows()); }
  int n_q() const { return static_cast<int>(phi.cols()); }
  void validate() const;
};

// QUBO whose energy at any code a equals ||x - phi a||^2 exactly:
//   linear_i = -2 (phi^T x)_i + (phi^T phi)_ii
//   quadratic_ij = 2 (phi^T phi)_ij   (i < j)
//   offset = x^T x
QuboProblem build_qubo(const Dictionary& dict, const Eigen::VectorXd& x);

// Solves build_qubo(dict, x) with the given solver.
BitCode encode(const Dictionary& dict, const Eigen::VectorXd& x, const SolverConfig& solver);

// phi * a with bits as 0/1 reals.
Eigen::VectorXd reconstruct(const Dictionary& dict, const BitCode& code);

}  // namespace binq
