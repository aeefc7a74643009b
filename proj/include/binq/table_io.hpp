#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "binq/errors.hpp"

namespace binq {

// Numeric table interchange. Text: one sample per row, whitespace-separated
// decimals, '#' starts a comment line. Float64: raw little-endian row-major
// doubles with the shape in a "<path>.shape" sidecar ("rows cols").
enum class TableFormat { Text, Float64 };

class TableParseError : public Error {
public:
  TableParseError(const std::string& path, std::int64_t row, std::int64_t col,
                  const std::string& msg);
  std::int64_t row;  // 1-based, 0 when not applicable
  std::int64_t col;
};

Eigen::MatrixXd read_table(const std::string& path, TableFormat format);

// Text output uses shortest round-trip formatting, so read_table(write_table(x))
// reproduces x bit-exactly in either format.
void write_table(const std::string& path, const Eigen::MatrixXd& data, TableFormat format);

}  // namespace binq
