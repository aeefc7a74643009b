#include "binq/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "binq/errors.hpp"
#include "binq/rng.hpp"

namespace binq {

namespace {

// Dense view used by the solvers: full symmetric coupling matrix with a
// zero diagonal, contiguous for cheap row traversal.
struct DenseQubo {
  int n = 0;
  std::vector<double> linear;
  std::vector<double> coupling;  // n*n, symmetric, zero diagonal
  double offset = 0.0;

  double at(int i, int j) const { return coupling[static_cast<std::size_t>(i) * n + j]; }
};

DenseQubo densify(const QuboProblem& p) {
  DenseQubo d;
  d.n = p.n_vars;
  d.linear = p.linear;
  d.offset = p.offset;
  d.coupling.assign(static_cast<std::size_t>(p.n_vars) * p.n_vars, 0.0);
  for (const auto& [key, v] : p.quadratic) {
    d.coupling[static_cast<std::size_t>(key.first) * d.n + key.second] = v;
    d.coupling[static_cast<std::size_t>(key.second) * d.n + key.first] = v;
  }
  return d;
}

}  // namespace

void QuboProblem::add_quadratic(int i, int j, double v) {
  if (i == j) throw ContractError("QuboProblem::add_quadratic: diagonal term (fold into linear)");
  if (i > j) std::swap(i, j);
  quadratic[{i, j}] += v;
}

void QuboProblem::validate() const {
  if (n_vars < 1) throw ContractError("QuboProblem: n_vars must be >= 1");
  if (static_cast<int>(linear.size()) != n_vars)
    throw ContractError("QuboProblem: linear length != n_vars");
  if (!std::isfinite(offset)) throw ContractError("QuboProblem: offset not finite");
  for (double c : linear)
    if (!std::isfinite(c)) throw ContractError("QuboProblem: non-finite linear coefficient");
  for (const auto& [key, v] : quadratic) {
    if (key.first < 0 || key.first >= key.second || key.second >= n_vars)
      throw ContractError("QuboProblem: quadratic key outside 0 <= i < j < n_vars");
    if (!std::isfinite(v)) throw ContractError("QuboProblem: non-finite quadratic coefficient");
  }
}

double QuboProblem::max_abs_coefficient() const {
  double m = 0.0;
  for (double c : linear) m = std::max(m, std::abs(c));
  for (const auto& [key, v] : quadratic) m = std::max(m, std::abs(v));
  return m;
}

void SaParams::validate() const {
  if (num_reads < 1) throw ContractError("SaParams: num_reads must be >= 1");
  if (sweeps < 1) throw ContractError("SaParams: sweeps must be >= 1");
  if (beta_hot && !(*beta_hot > 0.0)) throw ContractError("SaParams: beta_hot must be > 0");
  if (beta_hot && beta_cold && !(*beta_hot <= *beta_cold))
    throw ContractError("SaParams: beta_hot must be <= beta_cold");
  if (beta_cold && !(*beta_cold > 0.0)) throw ContractError("SaParams: beta_cold must be > 0");
}

double energy(const QuboProblem& problem, const BitCode& code) {
  if (static_cast<int>(code.size()) != problem.n_vars)
    throw ContractError("energy: code length != n_vars");
  double e = problem.offset;
  for (int i = 0; i < problem.n_vars; ++i)
    if (code.test(static_cast<std::size_t>(i))) e += problem.linear[static_cast<std::size_t>(i)];
  for (const auto& [key, v] : problem.quadratic)
    if (code.test(static_cast<std::size_t>(key.first)) && code.test(static_cast<std::size_t>(key.second)))
      e += v;
  return e;
}

// Depth-first branch-and-bound enumeration. Bits are assigned from index
// n-1 down to 0 with the zero branch first, so leaves appear in increasing
// unsigned-integer order; recording only strict improvements then realizes
// the lowest-integer tie-break, and pruning with >= can never drop a tie
// that would win it. `fields[i]` holds linear_i plus the couplings to the
// already-assigned set bits. The bound charges each pair (i, j), i < j, to
// its higher index j: any completion gains at least
// min(0, fields[j] + halfneg[j]) from bit j, with
// halfneg[j] = sum_{i<j} min(0, Q_ij).
namespace {

struct ExactSearch {
  const DenseQubo& q;
  std::vector<double> fields;
  std::vector<double> halfneg;
  std::vector<std::uint8_t> assignment;
  std::vector<std::uint8_t> best;
  double current = 0.0;
  double best_energy = std::numeric_limits<double>::infinity();

  explicit ExactSearch(const DenseQubo& dq)
      : q(dq),
        fields(dq.linear),
        halfneg(static_cast<std::size_t>(dq.n), 0.0),
        assignment(static_cast<std::size_t>(dq.n), 0),
        best(static_cast<std::size_t>(dq.n), 0),
        current(dq.offset) {
    for (int j = 0; j < q.n; ++j)
      for (int i = 0; i < j; ++i) halfneg[static_cast<std::size_t>(j)] += std::min(0.0, q.at(i, j));
  }

  void run(int t) {
    if (t < 0) {
      if (current < best_energy) {
        best_energy = current;
        best = assignment;
      }
      return;
    }
    double bound = 0.0;
    for (int j = 0; j <= t; ++j)
      bound += std::min(0.0, fields[static_cast<std::size_t>(j)] + halfneg[static_cast<std::size_t>(j)]);
    if (current + bound >= best_energy) return;

    run(t - 1);  // a_t = 0

    current += fields[static_cast<std::size_t>(t)];
    assignment[static_cast<std::size_t>(t)] = 1;
    for (int j = 0; j < t; ++j) fields[static_cast<std::size_t>(j)] += q.at(j, t);
    run(t - 1);  // a_t = 1
    for (int j = 0; j < t; ++j) fields[static_cast<std::size_t>(j)] -= q.at(j, t);
    assignment[static_cast<std::size_t>(t)] = 0;
    current -= fields[static_cast<std::size_t>(t)];
  }
};

}  // namespace

Solution solve_exact(const QuboProblem& problem, int cap) {
  problem.validate();
  if (problem.n_vars > cap)
    throw UnsupportedError("solve_exact: n_vars=" + std::to_string(problem.n_vars) +
                           " exceeds the enumeration cap of " + std::to_string(cap));

  const DenseQubo dense = densify(problem);
  ExactSearch search(dense);
  search.run(dense.n - 1);

  Solution sol;
  sol.code.bits = search.best;
  sol.energy = energy(problem, sol.code);  // exact, free of incremental drift
  return sol;
}

Solution solve_sa(const QuboProblem& problem, const SaParams& params) {
  problem.validate();
  params.validate();

  const DenseQubo dense = densify(problem);
  const int n = dense.n;

  const double max_coeff = problem.max_abs_coefficient();
  const double hot = params.beta_hot ? *params.beta_hot : (max_coeff > 0.0 ? 1.0 / max_coeff : 1.0);
  const double cold = params.beta_cold ? *params.beta_cold : 1000.0 * hot;
  if (!(hot > 0.0) || !(hot <= cold))
    throw ContractError("solve_sa: invalid derived schedule (beta_hot must be in (0, beta_cold])");

  std::vector<double> betas(static_cast<std::size_t>(params.sweeps));
  if (params.sweeps == 1) {
    betas[0] = cold;
  } else {
    const double ratio = std::pow(cold / hot, 1.0 / (params.sweeps - 1));
    double b = hot;
    for (int k = 0; k < params.sweeps; ++k) {
      betas[static_cast<std::size_t>(k)] = b;
      b *= ratio;
    }
  }

  Solution best;
  bool have_best = false;

  std::vector<std::uint8_t> state(static_cast<std::size_t>(n));
  std::vector<std::uint8_t> read_best(static_cast<std::size_t>(n));
  std::vector<double> fields(static_cast<std::size_t>(n));

  for (int read = 0; read < params.num_reads; ++read) {
    Rng rng(mix_seed(params.seed, static_cast<std::uint64_t>(read)));

    for (int i = 0; i < n; ++i) state[static_cast<std::size_t>(i)] = rng.bit() ? 1 : 0;

    fields = dense.linear;
    double e = dense.offset;
    for (int i = 0; i < n; ++i) {
      if (state[static_cast<std::size_t>(i)]) e += dense.linear[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j) {
        const double c = dense.at(i, j);
        if (c == 0.0) continue;
        if (state[static_cast<std::size_t>(j)]) fields[static_cast<std::size_t>(i)] += c;
        if (state[static_cast<std::size_t>(i)]) fields[static_cast<std::size_t>(j)] += c;
        if (state[static_cast<std::size_t>(i)] && state[static_cast<std::size_t>(j)]) e += c;
      }
    }

    read_best = state;
    double read_best_e = e;

    for (int sweep = 0; sweep < params.sweeps; ++sweep) {
      const double beta = betas[static_cast<std::size_t>(sweep)];
      for (int i = 0; i < n; ++i) {
        const double de = (state[static_cast<std::size_t>(i)] ? -1.0 : 1.0) * fields[static_cast<std::size_t>(i)];
        if (de > 0.0 && rng.uniform() >= std::exp(-beta * de)) continue;
        state[static_cast<std::size_t>(i)] ^= 1u;
        e += de;
        const double sign = state[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
        const double* row = &dense.coupling[static_cast<std::size_t>(i) * n];
        for (int j = 0; j < n; ++j) fields[static_cast<std::size_t>(j)] += sign * row[j];
        if (e < read_best_e) {
          read_best_e = e;
          read_best = state;
        }
      }
    }

    BitCode candidate;
    candidate.bits = read_best;
    const double exact_e = energy(problem, candidate);  // re-evaluated, drift-free
    if (!have_best || exact_e < best.energy ||
        (exact_e == best.energy && unsigned_less(candidate, best.code))) {
      best.code = std::move(candidate);
      best.energy = exact_e;
      have_best = true;
    }
  }
  return best;
}

QuboProblem perturb(const QuboProblem& problem, double relative_noise, std::uint64_t seed) {
  problem.validate();
  if (relative_noise < 0.0) throw ContractError("perturb: relative_noise must be >= 0");

  QuboProblem out = problem;
  if (relative_noise == 0.0) return out;

  const double scale = relative_noise * problem.max_abs_coefficient();
  Rng rng(seed);
  for (double& c : out.linear) c += scale * rng.normal();
  for (auto& [key, v] : out.quadratic) v += scale * rng.normal();  // map order: deterministic
  return out;
}

Solution SolverConfig::solve(const QuboProblem& problem) const {
  return kind == SolverKind::Exact ? solve_exact(problem, exact_cap) : solve_sa(problem, sa);
}

SolverConfig SolverConfig::with_seed(std::uint64_t seed) const {
  SolverConfig copy = *this;
  copy.sa.seed = seed;
  return copy;
}

}  // namespace binq
