#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>

#include <Eigen/Core>

#include "binq/encoder.hpp"
#include "binq/errors.hpp"
#include "binq/rng.hpp"

using namespace binq;

namespace {

BitCode code_from_u64(std::uint64_t v, int n) {
  BitCode c(n);
  for (int i = 0; i < n; ++i) c.set(i, (v >> i) & 1u);
  return c;
}

// Independent oracle: minimize ||x - phi a||^2 by direct enumeration with
// Eigen arithmetic, never touching the QUBO path.
std::pair<BitCode, double> brute_force_encode(const Dictionary& dict, const Eigen::VectorXd& x) {
  const int n = dict.n_q();
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_v = 0;
  for (std::uint64_t v = 0; v < (1ull << n); ++v) {
    Eigen::VectorXd recon = Eigen::VectorXd::Zero(dict.d());
    for (int j = 0; j < n; ++j)
      if ((v >> j) & 1u) recon += dict.phi.col(j);
    const double err = (x - recon).squaredNorm();
    if (err < best) {
      best = err;
      best_v = v;
    }
  }
  return {code_from_u64(best_v, n), best};
}

Dictionary random_dict(int d, int n_q, Rng& rng) {
  Eigen::MatrixXd phi(d, n_q);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n_q; ++j) phi(i, j) = 2.0 * rng.uniform() - 1.0;
  return Dictionary{phi, std::nullopt};
}

}  // namespace

TEST_CASE("build_qubo: identity dictionary example") {
  Dictionary dict{Eigen::MatrixXd::Identity(2, 2), std::nullopt};
  Eigen::VectorXd x(2);
  x << 1.0, 0.0;
  const QuboProblem q = build_qubo(dict, x);
  CHECK(q.linear[0] == doctest::Approx(-1.0));
  CHECK(q.linear[1] == doctest::Approx(1.0));
  CHECK(q.quadratic.empty());
  CHECK(q.offset == doctest::Approx(1.0));
  const auto sol = solve_exact(q);
  CHECK(sol.code == code_from_u64(0b01, 2));
  CHECK(sol.energy == doctest::Approx(0.0));
}

TEST_CASE("build_qubo: coupled example") {
  Eigen::MatrixXd phi(2, 2);
  phi << 1.0, 1.0, 0.0, 1.0;
  Dictionary dict{phi, std::nullopt};
  Eigen::VectorXd x(2);
  x << 1.0, 1.0;
  const QuboProblem q = build_qubo(dict, x);
  CHECK(q.linear[0] == doctest::Approx(-1.0));
  CHECK(q.linear[1] == doctest::Approx(-2.0));
  CHECK(q.quadratic.at({0, 1}) == doctest::Approx(2.0));
  CHECK(q.offset == doctest::Approx(2.0));
  const auto sol = solve_exact(q);
  CHECK(sol.code == code_from_u64(0b10, 2));
  CHECK(sol.energy == doctest::Approx(0.0));
}

TEST_CASE("build_qubo: zero target is minimized by the zero code") {
  Rng rng(3);
  const Dictionary dict = random_dict(4, 5, rng);
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  const auto sol = solve_exact(build_qubo(dict, x));
  CHECK(sol.code == BitCode(5));
  CHECK(sol.energy == doctest::Approx(0.0));
}

TEST_CASE("QUBO energy equals the reconstruction error for random triples") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(8));
    const int n_q = 1 + static_cast<int>(rng.below(8));
    const Dictionary dict = random_dict(d, n_q, rng);
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x(i) = 4.0 * rng.uniform() - 2.0;
    const QuboProblem q = build_qubo(dict, x);
    const BitCode a = code_from_u64(rng.next_u64() & ((1ull << n_q) - 1), n_q);
    const double direct = (x - reconstruct(dict, a)).squaredNorm();
    CHECK(std::abs(energy(q, a) - direct) <= 1e-9 * (1.0 + x.squaredNorm()));
  }
}

TEST_CASE("encode with the exact solver attains the brute-force minimum") {
  Rng rng(23);
  SolverConfig exact;
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(6));
    const int n_q = 2 + static_cast<int>(rng.below(11));  // up to 12
    const Dictionary dict = random_dict(d, n_q, rng);
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x(i) = 4.0 * rng.uniform() - 2.0;
    const auto oracle = brute_force_encode(dict, x);
    const BitCode code = encode(dict, x, exact);
    const double err = (x - reconstruct(dict, code)).squaredNorm();
    CHECK(err == doctest::Approx(oracle.second).epsilon(1e-9));
    CHECK(code == oracle.first);
  }
}

TEST_CASE("encode: worked example and realizable targets") {
  Eigen::MatrixXd phi(2, 2);
  phi << 1.0, 1.0, 0.0, 1.0;
  Dictionary dict{phi, std::nullopt};
  SolverConfig exact;

  Eigen::VectorXd x(2);
  x << 1.0, 1.0;
  CHECK(encode(dict, x, exact) == code_from_u64(0b10, 2));

  // a realizable target is reconstructed exactly
  Rng rng(29);
  const Dictionary rd = random_dict(5, 6, rng);
  const BitCode target = code_from_u64(0b101101, 6);
  const Eigen::VectorXd y = reconstruct(rd, target);
  const BitCode code = encode(rd, y, exact);
  CHECK((y - reconstruct(rd, code)).squaredNorm() == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(encode(rd, Eigen::VectorXd::Zero(5), exact) == BitCode(6));
}

TEST_CASE("reconstruct: examples and linearity") {
  Dictionary id{Eigen::MatrixXd::Identity(2, 2), std::nullopt};
  Eigen::VectorXd r = reconstruct(id, code_from_u64(0b01, 2));
  CHECK(r(0) == doctest::Approx(1.0));
  CHECK(r(1) == doctest::Approx(0.0));

  CHECK(reconstruct(id, BitCode(2)).isZero());

  Eigen::MatrixXd phi(2, 2);
  phi << 1.0, 1.0, 0.0, 1.0;
  Dictionary dict{phi, std::nullopt};
  r = reconstruct(dict, code_from_u64(0b10, 2));
  CHECK(r(0) == doctest::Approx(1.0));
  CHECK(r(1) == doctest::Approx(1.0));

  // linearity: reconstructing disjoint codes and summing equals phi*(a+b)
  Rng rng(31);
  const Dictionary rd = random_dict(4, 8, rng);
  const BitCode a = code_from_u64(0b00101101, 8);
  const BitCode b = code_from_u64(0b11010010, 8);
  Eigen::VectorXd sum = reconstruct(rd, a) + reconstruct(rd, b);
  Eigen::VectorXd joint = Eigen::VectorXd::Zero(4);
  for (int j = 0; j < 8; ++j)
    if (a.test(j) || b.test(j)) joint += rd.phi.col(j);
  CHECK((sum - joint).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("encoder contract violations") {
  Dictionary dict{Eigen::MatrixXd::Identity(3, 3), std::nullopt};
  Eigen::VectorXd x(2);
  x << 1.0, 2.0;
  CHECK_THROWS_AS(build_qubo(dict, x), ContractError);
  CHECK_THROWS_AS(reconstruct(dict, BitCode(2)), ContractError);

  Dictionary bad{Eigen::MatrixXd::Constant(2, 2, 3.0), 1.0};
  CHECK_THROWS_AS(bad.validate(), ContractError);
}
