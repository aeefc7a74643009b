#include "binq/table_io.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace binq {

TableParseError::TableParseError(const std::string& path, std::int64_t row_, std::int64_t col_,
                                 const std::string& msg)
    : Error(path + (row_ > 0 ? ":" + std::to_string(row_) +
                                   (col_ > 0 ? ":" + std::to_string(col_) : "")
                             : "") +
            ": " + msg),
      row(row_),
      col(col_) {}

namespace {

Eigen::MatrixXd read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableParseError(path, 0, 0, "cannot open file");

  std::vector<std::vector<double>> rows;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<double> values;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    std::int64_t col = 0;
    while (p < end) {
      while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
      if (p >= end || *p == '#') break;
      ++col;
      double v = 0.0;
      const auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{} || (next < end && !std::isspace(static_cast<unsigned char>(*next))))
        throw TableParseError(path, line_no, col, "malformed number");
      if (!std::isfinite(v)) throw TableParseError(path, line_no, col, "non-finite value");
      values.push_back(v);
      p = next;
    }
    if (values.empty()) continue;  // blank or comment line
    if (!rows.empty() && values.size() != rows.front().size())
      throw TableParseError(path, line_no, 0,
                            "row has " + std::to_string(values.size()) + " values, expected " +
                                std::to_string(rows.front().size()));
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw TableParseError(path, 0, 0, "no data rows");

  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index r = 0; r < out.rows(); ++r)
    for (Eigen::Index c = 0; c < out.cols(); ++c)
      out(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return out;
}

Eigen::MatrixXd read_f64(const std::string& path) {
  const std::string shape_path = path + ".shape";
  std::ifstream shape_in(shape_path);
  if (!shape_in) throw TableParseError(shape_path, 0, 0, "cannot open shape sidecar");
  std::int64_t rows = 0, cols = 0;
  shape_in >> rows >> cols;
  if (!shape_in || rows < 1 || cols < 1)
    throw TableParseError(shape_path, 0, 0, "shape sidecar must contain 'rows cols'");

  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableParseError(path, 0, 0, "cannot open file");
  Eigen::MatrixXd out(rows, cols);
  std::vector<unsigned char> buf(static_cast<std::size_t>(cols) * 8);
  for (Eigen::Index r = 0; r < rows; ++r) {
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size())
      throw TableParseError(path, r + 1, 0, "truncated float64 data");
    for (Eigen::Index c = 0; c < cols; ++c) {
      std::uint64_t bits = 0;
      for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(buf[static_cast<std::size_t>(c) * 8 + i]) << (8 * i);
      out(r, c) = std::bit_cast<double>(bits);
      if (!std::isfinite(out(r, c))) throw TableParseError(path, r + 1, c + 1, "non-finite value");
    }
  }
  return out;
}

void append_shortest(std::string& line, double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  line.append(buf, static_cast<std::size_t>(p - buf));
  (void)ec;
}

void write_text(const std::string& path, const Eigen::MatrixXd& data) {
  std::ofstream out(path);
  if (!out) throw TableParseError(path, 0, 0, "cannot open file for writing");
  std::string line;
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    line.clear();
    for (Eigen::Index c = 0; c < data.cols(); ++c) {
      if (c > 0) line.push_back(' ');
      append_shortest(line, data(r, c));
    }
    line.push_back('\n');
    out << line;
  }
  if (!out) throw TableParseError(path, 0, 0, "write failed");
}

void write_f64(const std::string& path, const Eigen::MatrixXd& data) {
  {
    std::ofstream shape_out(path + ".shape");
    if (!shape_out) throw TableParseError(path + ".shape", 0, 0, "cannot open file for writing");
    shape_out << data.rows() << ' ' << data.cols() << '\n';
    if (!shape_out) throw TableParseError(path + ".shape", 0, 0, "write failed");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TableParseError(path, 0, 0, "cannot open file for writing");
  std::vector<unsigned char> buf(static_cast<std::size_t>(data.cols()) * 8);
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.cols(); ++c) {
      const std::uint64_t bits = std::bit_cast<std::uint64_t>(data(r, c));
      for (int i = 0; i < 8; ++i)
        buf[static_cast<std::size_t>(c) * 8 + i] =
            static_cast<unsigned char>((bits >> (8 * i)) & 0xffu);
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw TableParseError(path, 0, 0, "write failed");
}

}  // namespace

Eigen::MatrixXd read_table(const std::string& path, TableFormat format) {
  return format == TableFormat::Text ? read_text(path) : read_f64(path);
}

void write_table(const std::string& path, const Eigen::MatrixXd& data, TableFormat format) {
  if (format == TableFormat::Text)
    write_text(path, data);
  else
    write_f64(path, data);
}

}  // namespace binq
