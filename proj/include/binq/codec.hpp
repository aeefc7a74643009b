#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "binq/bits.hpp"
#include "binq/encoder.hpp"

namespace binq {

// The on-disk artifact: standardization parameters, boosting stages, packed
// codes, and the retained originals for bias correction. See docs/FORMAT.md
// for the byte layout.
struct CompressedDataset {
  std::int64_t d = 0;
  std::int64_t n = 0;
  Eigen::VectorXd means;   // length d
  Eigen::VectorXd scales;  // length d, all > 0
  std::vector<Dictionary> stages;
  CodeMatrix codes;                       // n rows, n_q_total columns
  std::vector<std::int64_t> bc_indices;   // strictly increasing, in [0, n)
  Eigen::MatrixXd bc_samples;             // |bc_indices| x d, original units

  std::int64_t n_q_total() const;
  void validate() const;
};

struct CompressionReport {
  double q2 = 0.0;
  std::vector<double> per_component_ratio;
  std::uint64_t payload_bits = 0;
  std::uint64_t total_bits = 0;
  double predicted_error_increase = std::numeric_limits<double>::quiet_NaN();
};

struct Standardization {
  Eigen::MatrixXd data;
  Eigen::VectorXd means;
  Eigen::VectorXd scales;
};

// Shifts/scales every column to sample mean 0 and unbiased sample standard
// deviation 1. Throws DegenerateInputError on zero-variance columns.
Standardization standardize(const Eigen::MatrixXd& data);
Eigen::MatrixXd destandardize(const Eigen::MatrixXd& data, const Eigen::VectorXd& means,
                              const Eigen::VectorXd& scales);

// Serializes to the BINQ format; byte-identical for identical inputs.
// Returns the number of bytes written.
std::size_t write(const CompressedDataset& dataset, std::ostream& sink);
CompressedDataset read(std::istream& source);

// Sums stage reconstructions in standardized space, then inverts the
// standardization. Rows at bc_indices are reconstructions like any other;
// substituting originals is the analysis layer's decision.
Eigen::MatrixXd decompress(const CompressedDataset& dataset);

// sum_k x_k evaluated in compressed space via integer column counts.
Eigen::VectorXd compressed_sum(const CompressedDataset& dataset);

// sum_k ||phi a_k||^2 (standardized space) via integer bit and bit-pair
// counts. Single-stage datasets only.
double compressed_norm2_sum(const CompressedDataset& dataset);

std::uint64_t payload_bits(const CompressedDataset& dataset);
std::uint64_t total_bits(const CompressedDataset& dataset);

// Full quality report against the original data (original units).
CompressionReport make_report(const CompressedDataset& dataset, const Eigen::MatrixXd& original);

}  // namespace binq
