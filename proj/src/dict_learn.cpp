#include "binq/dict_learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <Eigen/Dense>

#include "binq/errors.hpp"
#include "binq/parallel.hpp"
#include "binq/rng.hpp"

namespace binq {

namespace {

// seed-stream tags so the independent random uses cannot collide
constexpr std::uint64_t kTagInitCodes = 0x11;
constexpr std::uint64_t kTagShuffle = 0x22;
constexpr std::uint64_t kTagEncode = 0x33;
constexpr std::uint64_t kTagStage = 0x44;

void clamp_in_place(Eigen::MatrixXd& phi, double bound) {
  phi = phi.cwiseMax(-bound).cwiseMin(bound);
}

Eigen::MatrixXd codes_as_dense(const CodeMatrix& codes) {
  Eigen::MatrixXd dense(codes.rows(), codes.cols());
  for (std::size_t r = 0; r < codes.rows(); ++r)
    for (std::size_t c = 0; c < codes.cols(); ++c) dense(r, c) = codes.get(r, c) ? 1.0 : 0.0;
  return dense;
}

}  // namespace

// The QUBO energy of a code is exactly its reconstruction error, so both
// candidates are compared on the same problem.
BitCode encode_with_cache(const Dictionary& dict, const Eigen::VectorXd& x, const BitCode& cached,
                          const SolverConfig& solver) {
  const QuboProblem problem = build_qubo(dict, x);
  const Solution fresh = solver.solve(problem);
  const double cached_err = energy(problem, cached);
  return cached_err < fresh.energy ? cached : fresh.code;
}

void TrainConfig::validate() const {
  if (n_q < 1) throw ContractError("TrainConfig: n_q must be >= 1");
  if (batch_size < 1) throw ContractError("TrainConfig: batch_size must be >= 1");
  if (!(eta0 > 0.0 && eta0 <= 1.0)) throw ContractError("TrainConfig: eta0 must be in (0, 1]");
  if (!(eta_decay > 0.0 && eta_decay < 1.0))
    throw ContractError("TrainConfig: eta_decay must be in (0, 1)");
  if (epochs < 1) throw ContractError("TrainConfig: epochs must be >= 1");
  if (!(ridge_epsilon > 0.0)) throw ContractError("TrainConfig: ridge_epsilon must be > 0");
}

Dictionary init_dictionary(int d, int n_q, std::uint64_t seed) {
  if (d < 1 || n_q < 1) throw ContractError("init_dictionary: d and n_q must be >= 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_q));
  Rng rng(seed);
  Eigen::MatrixXd phi(d, n_q);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n_q; ++j) phi(i, j) = scale * (2.0 * rng.uniform() - 1.0);
  return Dictionary{phi, std::nullopt};
}

Dictionary solve_phi(const Eigen::MatrixXd& batch_x, const CodeMatrix& batch_codes,
                     double ridge_epsilon) {
  if (static_cast<std::size_t>(batch_x.rows()) != batch_codes.rows())
    throw ContractError("solve_phi: batch row counts differ");
  if (!(ridge_epsilon > 0.0)) throw ContractError("solve_phi: ridge_epsilon must be > 0");

  const int n_q = static_cast<int>(batch_codes.cols());
  const Eigen::MatrixXd a = codes_as_dense(batch_codes).transpose();  // n_q x N_b
  Eigen::MatrixXd normal = a * a.transpose();
  const double trace = normal.trace();
  const double eps = ridge_epsilon * (trace > 0.0 ? trace / n_q : 1.0);
  normal.diagonal().array() += eps;

  // phi (AA^T + eps I) = X^T A^T, solved as the transposed symmetric system
  const Eigen::MatrixXd rhs = a * batch_x;  // n_q x D
  Eigen::MatrixXd phi = normal.ldlt().solve(rhs).transpose();
  return Dictionary{std::move(phi), std::nullopt};
}

Dictionary update_phi(const Dictionary& current, const Dictionary& candidate, double eta) {
  if (current.phi.rows() != candidate.phi.rows() || current.phi.cols() != candidate.phi.cols())
    throw ContractError("update_phi: shape mismatch");
  if (!(eta >= 0.0 && eta <= 1.0)) throw ContractError("update_phi: eta must be in [0, 1]");

  Dictionary out = current;
  if (eta == 1.0) {
    out.phi = candidate.phi;
  } else if (eta != 0.0) {
    out.phi = current.phi + eta * (candidate.phi - current.phi);
  }
  if (out.element_bound) clamp_in_place(out.phi, *out.element_bound);
  return out;
}

Eigen::MatrixXd reconstruct_all(const Dictionary& dict, const CodeMatrix& codes) {
  if (static_cast<int>(codes.cols()) != dict.n_q())
    throw ContractError("reconstruct_all: code width != n_q");
  return codes_as_dense(codes) * dict.phi.transpose();
}

double reconstruction_mse(const Eigen::MatrixXd& dataset, const Dictionary& dict,
                          const CodeMatrix& codes) {
  if (dataset.rows() != static_cast<Eigen::Index>(codes.rows()))
    throw ContractError("reconstruction_mse: row counts differ");
  const Eigen::MatrixXd recon = reconstruct_all(dict, codes);
  return (dataset - recon).squaredNorm() / static_cast<double>(dataset.size());
}

StageResult train(const Eigen::MatrixXd& dataset, const TrainConfig& config) {
  config.validate();
  const Eigen::Index n = dataset.rows();
  const int d = static_cast<int>(dataset.cols());
  if (n < config.batch_size) throw ContractError("train: dataset smaller than batch_size");
  if (!dataset.allFinite()) throw ContractError("train: dataset contains non-finite values");

  Dictionary dict = init_dictionary(d, config.n_q, config.seed);
  dict.element_bound = config.element_bound;
  if (dict.element_bound) clamp_in_place(dict.phi, *dict.element_bound);

  CodeMatrix codes(static_cast<std::size_t>(n), static_cast<std::size_t>(config.n_q));
  {
    Rng rng(mix_seed(config.seed, kTagInitCodes));
    for (std::size_t r = 0; r < codes.rows(); ++r)
      for (std::size_t c = 0; c < codes.cols(); ++c) codes.set(r, c, rng.bit());
  }

  const int threads = resolve_threads(config.threads);

  // epoch index `config.epochs` is reserved for the final re-encode pass
  const auto encode_pass = [&](int epoch, const std::vector<Eigen::Index>& index_of) {
    std::vector<BitCode> fresh(index_of.size());
    parallel_for(index_of.size(), threads, [&](std::size_t slot) {
      const Eigen::Index k = index_of[slot];
      const SolverConfig solver = config.solver.with_seed(
          mix_seed(config.seed, kTagEncode, static_cast<std::uint64_t>(epoch),
                   static_cast<std::uint64_t>(k)));
      fresh[slot] = encode_with_cache(dict, dataset.row(k).transpose(),
                                      codes.row(static_cast<std::size_t>(k)), solver);
    });
    for (std::size_t slot = 0; slot < fresh.size(); ++slot)
      codes.set_row(static_cast<std::size_t>(index_of[slot]), fresh[slot]);
  };

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  StageResult result;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double eta = config.eta0 * std::pow(config.eta_decay, epoch);

    // Fisher-Yates with the library generator keeps the permutation
    // identical across standard libraries and thread counts.
    Rng shuffle_rng(mix_seed(config.seed, kTagShuffle, static_cast<std::uint64_t>(epoch)));
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[shuffle_rng.below(i)]);

    for (Eigen::Index start = 0; start < n; start += config.batch_size) {
      const Eigen::Index batch_n = std::min<Eigen::Index>(config.batch_size, n - start);
      const std::vector<Eigen::Index> batch(order.begin() + start,
                                            order.begin() + start + batch_n);
      encode_pass(epoch, batch);

      Eigen::MatrixXd batch_x(batch_n, d);
      CodeMatrix batch_codes(static_cast<std::size_t>(batch_n),
                             static_cast<std::size_t>(config.n_q));
      for (Eigen::Index b = 0; b < batch_n; ++b) {
        const std::size_t k = static_cast<std::size_t>(batch[static_cast<std::size_t>(b)]);
        batch_x.row(b) = dataset.row(static_cast<Eigen::Index>(k));
        batch_codes.set_row(static_cast<std::size_t>(b), codes.row(k));
      }
      const Dictionary candidate = solve_phi(batch_x, batch_codes, config.ridge_epsilon);
      dict = update_phi(dict, candidate, eta);
    }

    const double mse = reconstruction_mse(dataset, dict, codes);
    result.training_mse_history.push_back(mse);
    if (config.log)
      (*config.log) << "epoch " << epoch << " eta " << eta << " mse " << mse << '\n';
  }

  std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  encode_pass(config.epochs, all);

  result.dictionary = std::move(dict);
  result.codes = std::move(codes);
  return result;
}

std::vector<StageResult> boost(const Eigen::MatrixXd& dataset, const std::vector<int>& stage_nqs,
                               const TrainConfig& config) {
  if (stage_nqs.empty()) throw ContractError("boost: need at least one stage");
  for (int nq : stage_nqs)
    if (nq < 1) throw ContractError("boost: every stage size must be >= 1");

  std::vector<StageResult> stages;
  stages.reserve(stage_nqs.size());
  Eigen::MatrixXd residual = dataset;
  for (std::size_t s = 0; s < stage_nqs.size(); ++s) {
    TrainConfig stage_config = config;
    stage_config.n_q = stage_nqs[s];
    if (s > 0) stage_config.seed = mix_seed(config.seed, kTagStage, s);
    StageResult stage = train(residual, stage_config);
    residual -= reconstruct_all(stage.dictionary, stage.codes);
    stages.push_back(std::move(stage));
  }
  return stages;
}

}  // namespace binq
