#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "binq/bits.hpp"

namespace binq {

// Quadratic unconstrained binary optimization problem over a in {0,1}^n:
//   E(a) = offset + sum_i linear[i] a_i + sum_{i<j} quadratic[{i,j}] a_i a_j
// Stored in the binary-variable convention; for problems built from a
// dictionary the offset carries ||x||^2 so E(a) is the reconstruction error.
struct QuboProblem {
  int n_vars = 0;
  std::vector<double> linear;
  std::map<std::pair<int, int>, double> quadratic;  // keys (i, j) with i < j
  double offset = 0.0;

  // Accumulates v onto the (i, j) coupling, normalizing index order.
  void add_quadratic(int i, int j, double v);

  void validate() const;

  // max |c| over linear and quadratic coefficients (offset excluded)
  double max_abs_coefficient() const;
};

// Restart-based simulated annealing parameters. When the schedule endpoints
// are unset they are derived from the problem: beta_hot = 1/max|coefficient|
// and beta_cold = 1000 * beta_hot.
struct SaParams {
  int num_reads = 150;
  int sweeps = 1000;
  std::optional<double> beta_hot;
  std::optional<double> beta_cold;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Solution {
  BitCode code;
  double energy = 0.0;
};

inline constexpr int kDefaultExactCap = 24;

// E(a) as defined above; throws ContractError on a length mismatch.
double energy(const QuboProblem& problem, const BitCode& code);

// Global minimum over all 2^n_vars codes; ties resolved toward the lowest
// unsigned-integer code. Refuses problems with n_vars above `cap`.
Solution solve_exact(const QuboProblem& problem, int cap = kDefaultExactCap);

// Best of num_reads independent annealing restarts. Deterministic for fixed
// (problem, params): per-read generators are seeded by hash(seed, read), so
// reads can run in any order, and the reduction (min energy, then lowest
// unsigned-integer code) is order independent.
Solution solve_sa(const QuboProblem& problem, const SaParams& params);

// Adds relative_noise * max|coefficient| * N(0,1) to every linear and
// quadratic coefficient, deterministically in seed. Offset is unchanged.
// Emulates analog control error on annealing hardware.
QuboProblem perturb(const QuboProblem& problem, double relative_noise, std::uint64_t seed);

// Solver selection for code paths that accept either backend.
enum class SolverKind { Exact, SimulatedAnnealing };

struct SolverConfig {
  SolverKind kind = SolverKind::Exact;
  int exact_cap = kDefaultExactCap;
  SaParams sa;

  Solution solve(const QuboProblem& problem) const;
  SolverConfig with_seed(std::uint64_t seed) const;
};

}  // namespace binq
