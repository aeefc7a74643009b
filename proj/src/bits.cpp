#include "binq/bits.hpp"

#include "binq/errors.hpp"

namespace binq {

std::size_t BitCode::popcount() const {
  std::size_t count = 0;
  for (std::uint8_t b : bits) count += b;
  return count;
}

bool unsigned_less(const BitCode& a, const BitCode& b) {
  if (a.size() != b.size())
    throw ContractError("unsigned_less: code lengths differ");
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a.bits[i] != b.bits[i]) return a.bits[i] < b.bits[i];
  }
  return false;
}

BitCode CodeMatrix::row(std::size_t r) const { return row_slice(r, 0, cols_); }

void CodeMatrix::set_row(std::size_t r, const BitCode& code) {
  if (code.size() != cols_)
    throw ContractError("CodeMatrix::set_row: code length mismatch");
  set_row_slice(r, 0, code);
}

BitCode CodeMatrix::row_slice(std::size_t r, std::size_t col_begin, std::size_t col_end) const {
  if (r >= rows_ || col_begin > col_end || col_end > cols_)
    throw ContractError("CodeMatrix::row_slice: out of range");
  BitCode code(col_end - col_begin);
  for (std::size_t c = col_begin; c < col_end; ++c)
    code.bits[c - col_begin] = get(r, c) ? 1 : 0;
  return code;
}

void CodeMatrix::set_row_slice(std::size_t r, std::size_t col_begin, const BitCode& code) {
  if (r >= rows_ || col_begin + code.size() > cols_)
    throw ContractError("CodeMatrix::set_row_slice: out of range");
  for (std::size_t i = 0; i < code.size(); ++i) set(r, col_begin + i, code.test(i));
}

std::vector<std::uint64_t> CodeMatrix::column_counts() const {
  std::vector<std::uint64_t> counts(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) ++counts[c];
  return counts;
}

}  // namespace binq
