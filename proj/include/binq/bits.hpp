#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace binq {

// One sample's binary coefficients. Bits are kept unpacked (one byte per
// bit) for fast solver access; CodeMatrix holds the packed form.
struct BitCode {
  std::vector<std::uint8_t> bits;  // each entry 0 or 1

  BitCode() = default;
  explicit BitCode(std::size_t n) : bits(n, 0) {}

  std::size_t size() const { return bits.size(); }
  bool test(std::size_t i) const { return bits[i] != 0; }
  void set(std::size_t i, bool v) { bits[i] = v ? 1 : 0; }
  std::size_t popcount() const;

  bool operator==(const BitCode&) const = default;
};

// true when a < b under the unsigned-integer interpretation of the bit
// vector (bit 0 = least significant). Lengths must match.
bool unsigned_less(const BitCode& a, const BitCode& b);

// Row-major bit-packed code matrix. Every row is padded to a whole byte so
// samples stay independently addressable; bits are packed LSB-first within
// each byte. The packed buffer is exactly the codes region of a BINQ file.
class CodeMatrix {
public:
  CodeMatrix() = default;
  CodeMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), bytes_per_row_((cols + 7) / 8), data_(rows * bytes_per_row_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t bytes_per_row() const { return bytes_per_row_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * bytes_per_row_ + c / 8] >> (c % 8)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    std::uint8_t& byte = data_[r * bytes_per_row_ + c / 8];
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << (c % 8));
    byte = v ? (byte | mask) : (byte & static_cast<std::uint8_t>(~mask));
  }

  BitCode row(std::size_t r) const;
  void set_row(std::size_t r, const BitCode& code);

  // Column range [col_begin, col_end) of one row, as a BitCode.
  BitCode row_slice(std::size_t r, std::size_t col_begin, std::size_t col_end) const;
  void set_row_slice(std::size_t r, std::size_t col_begin, const BitCode& code);

  // Per-column set-bit counts over all rows (sum_k a_j^(k)).
  std::vector<std::uint64_t> column_counts() const;

  const std::vector<std::uint8_t>& packed() const { return data_; }
  std::vector<std::uint8_t>& packed() { return data_; }

  bool operator==(const CodeMatrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t bytes_per_row_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace binq
