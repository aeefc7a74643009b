#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "binq/encoder.hpp"

namespace binq {

struct TrainConfig {
  int n_q = 16;
  int batch_size = 50;
  double eta0 = 0.9;
  double eta_decay = 0.8;
  int epochs = 30;
  std::uint64_t seed = 0;
  std::optional<double> element_bound;
  SolverConfig solver;
  double ridge_epsilon = 1e-8;
  int threads = 1;
  std::ostream* log = nullptr;  // optional diagnostic stream

  void validate() const;
};

struct StageResult {
  Dictionary dictionary;
  CodeMatrix codes;                           // N x n_q
  std::vector<double> training_mse_history;   // per epoch, full dataset
};

// Entries i.i.d. uniform on [-1/sqrt(n_q), 1/sqrt(n_q)], deterministic in seed.
Dictionary init_dictionary(int d, int n_q, std::uint64_t seed);

// Re-encode one sample with the cache rule train() applies: the previous
// code is kept when it has strictly lower reconstruction error under the
// current dictionary. Guarantees the per-sample error never increases
// across successive re-encodings, whatever the solver returns.
BitCode encode_with_cache(const Dictionary& dict, const Eigen::VectorXd& x, const BitCode& cached,
                          const SolverConfig& solver);

// Ridge-regularized least-squares minimizer of the batch reconstruction
// error for fixed codes: phi = X^T A^T (A A^T + eps I)^{-1} with codes
// stacked as columns of A. The ridge is scaled by trace(AA^T)/n_q so it
// survives degenerate batches (duplicated or all-zero code columns).
Dictionary solve_phi(const Eigen::MatrixXd& batch_x, const CodeMatrix& batch_codes,
                     double ridge_epsilon);

// Convex combination current + eta * (candidate - current); entries are then
// clamped to +-element_bound when the current dictionary carries one.
Dictionary update_phi(const Dictionary& current, const Dictionary& candidate, double eta);

// Alternating optimization: per epoch, a seeded permutation of the samples is
// split into batches; each batch is re-encoded with the configured solver
// (a sample keeps its previous code when that code has strictly lower
// reconstruction error), then the dictionary moves toward the batch
// least-squares solution with eta = eta0 * eta_decay^epoch. All samples are
// re-encoded once against the final dictionary.
StageResult train(const Eigen::MatrixXd& dataset, const TrainConfig& config);

// Residual boosting: stage 0 trains on the dataset, stage m on the residual
// after subtracting all previous stage reconstructions.
std::vector<StageResult> boost(const Eigen::MatrixXd& dataset, const std::vector<int>& stage_nqs,
                               const TrainConfig& config);

// Dense N x D reconstruction for a whole code matrix.
Eigen::MatrixXd reconstruct_all(const Dictionary& dict, const CodeMatrix& codes);

// Mean squared reconstruction error per matrix element.
double reconstruction_mse(const Eigen::MatrixXd& dataset, const Dictionary& dict,
                          const CodeMatrix& codes);

}  // namespace binq
