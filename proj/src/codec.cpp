#include "binq/codec.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "binq/dict_learn.hpp"
#include "binq/errors.hpp"
#include "binq/stats.hpp"

namespace binq {

namespace {

constexpr char kMagic[4] = {'B', 'I', 'N', 'Q'};
constexpr std::uint16_t kVersion = 1;

class ByteWriter {
public:
  explicit ByteWriter(std::ostream& out) : out_(out) {}

  std::size_t written() const { return count_; }

  void bytes(const void* data, std::size_t len) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
    if (!out_) throw FormatError(FormatError::Kind::Io, count_, "write failed");
    count_ += len;
  }
  void u16(std::uint16_t v) { little(v); }
  void u32(std::uint32_t v) { little(v); }
  void u64(std::uint64_t v) { little(v); }
  void f64(double v) { little(std::bit_cast<std::uint64_t>(v)); }

private:
  template <class T>
  void little(T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i)
      buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xffu);
    bytes(buf, sizeof(T));
  }

  std::ostream& out_;
  std::size_t count_ = 0;
};

class ByteReader {
public:
  explicit ByteReader(std::istream& in) : in_(in) {}

  std::size_t position() const { return count_; }

  void bytes(void* data, std::size_t len) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in_.gcount()) != len)
      throw FormatError(FormatError::Kind::Truncated, count_,
                        "unexpected end of stream, wanted " + std::to_string(len) + " bytes");
    count_ += len;
  }
  std::uint16_t u16() { return little<std::uint16_t>(); }
  std::uint32_t u32() { return little<std::uint32_t>(); }
  std::uint64_t u64() { return little<std::uint64_t>(); }
  double f64() { return std::bit_cast<double>(little<std::uint64_t>()); }

private:
  template <class T>
  T little() {
    unsigned char buf[sizeof(T)];
    bytes(buf, sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
  }

  std::istream& in_;
  std::size_t count_ = 0;
};

[[noreturn]] void invariant_fail(std::size_t pos, const std::string& msg) {
  throw FormatError(FormatError::Kind::Invariant, pos, msg);
}

}  // namespace

std::int64_t CompressedDataset::n_q_total() const {
  std::int64_t total = 0;
  for (const Dictionary& s : stages) total += s.n_q();
  return total;
}

void CompressedDataset::validate() const {
  if (d < 1) throw ContractError("CompressedDataset: d must be >= 1");
  if (n < 1) throw ContractError("CompressedDataset: n must be >= 1");
  if (means.size() != d || scales.size() != d)
    throw ContractError("CompressedDataset: standardization vectors must have length d");
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!(scales(i) > 0.0)) throw ContractError("CompressedDataset: scales must be > 0");
    if (!std::isfinite(means(i)) || !std::isfinite(scales(i)))
      throw ContractError("CompressedDataset: non-finite standardization entry");
  }
  if (stages.empty()) throw ContractError("CompressedDataset: need at least one stage");
  for (const Dictionary& s : stages) {
    s.validate();
    if (s.d() != d) throw ContractError("CompressedDataset: stage dimension != d");
  }
  if (codes.rows() != static_cast<std::size_t>(n) ||
      codes.cols() != static_cast<std::size_t>(n_q_total()))
    throw ContractError("CompressedDataset: code matrix shape mismatch");
  if (bc_samples.rows() != static_cast<Eigen::Index>(bc_indices.size()) ||
      (bc_indices.size() > 0 && bc_samples.cols() != d))
    throw ContractError("CompressedDataset: bc sample shape mismatch");
  std::int64_t prev = -1;
  for (std::int64_t idx : bc_indices) {
    if (idx < 0 || idx >= n) throw ContractError("CompressedDataset: bc index out of range");
    if (idx <= prev) throw ContractError("CompressedDataset: bc indices must be strictly increasing");
    prev = idx;
  }
}

Standardization standardize(const Eigen::MatrixXd& data) {
  const Eigen::Index n = data.rows();
  if (n < 2) throw ContractError("standardize: need at least 2 samples");
  if (!data.allFinite()) throw ContractError("standardize: non-finite input");

  Standardization out;
  out.means = data.colwise().mean();
  out.scales.resize(data.cols());
  for (Eigen::Index i = 0; i < data.cols(); ++i) {
    const double var =
        (data.col(i).array() - out.means(i)).square().sum() / static_cast<double>(n - 1);
    const double sd = std::sqrt(var);
    if (!(sd > 0.0))
      throw DegenerateInputError("standardize: component " + std::to_string(i) +
                                 " has zero sample standard deviation");
    out.scales(i) = sd;
  }
  out.data = (data.rowwise() - out.means.transpose()).array().rowwise() /
             out.scales.transpose().array();
  return out;
}

Eigen::MatrixXd destandardize(const Eigen::MatrixXd& data, const Eigen::VectorXd& means,
                              const Eigen::VectorXd& scales) {
  if (data.cols() != means.size() || data.cols() != scales.size())
    throw ContractError("destandardize: shape mismatch");
  return (data.array().rowwise() * scales.transpose().array()).rowwise() +
         means.transpose().array();
}

std::size_t write(const CompressedDataset& dataset, std::ostream& sink) {
  dataset.validate();
  ByteWriter w(sink);
  w.bytes(kMagic, 4);
  w.u16(kVersion);
  w.u64(static_cast<std::uint64_t>(dataset.d));
  w.u64(static_cast<std::uint64_t>(dataset.n));
  w.u32(static_cast<std::uint32_t>(dataset.stages.size()));
  for (Eigen::Index i = 0; i < dataset.d; ++i) w.f64(dataset.means(i));
  for (Eigen::Index i = 0; i < dataset.d; ++i) w.f64(dataset.scales(i));
  for (const Dictionary& stage : dataset.stages) {
    w.u32(static_cast<std::uint32_t>(stage.n_q()));
    const bool has_bound = stage.element_bound.has_value();
    const std::uint8_t flag = has_bound ? 1 : 0;
    w.bytes(&flag, 1);
    w.f64(has_bound ? *stage.element_bound : 0.0);
    for (int r = 0; r < stage.d(); ++r)
      for (int c = 0; c < stage.n_q(); ++c) w.f64(stage.phi(r, c));
  }
  w.bytes(dataset.codes.packed().data(), dataset.codes.packed().size());
  w.u64(static_cast<std::uint64_t>(dataset.bc_indices.size()));
  for (std::int64_t idx : dataset.bc_indices) w.u64(static_cast<std::uint64_t>(idx));
  for (Eigen::Index r = 0; r < dataset.bc_samples.rows(); ++r)
    for (Eigen::Index c = 0; c < dataset.bc_samples.cols(); ++c) w.f64(dataset.bc_samples(r, c));
  sink.flush();
  if (!sink) throw FormatError(FormatError::Kind::Io, w.written(), "flush failed");
  return w.written();
}

CompressedDataset read(std::istream& source) {
  ByteReader r(source);

  char magic[4];
  r.bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw FormatError(FormatError::Kind::BadMagic, 0, "not a BINQ stream (bad magic)");
  const std::uint16_t version = r.u16();
  if (version != kVersion)
    throw FormatError(FormatError::Kind::BadVersion, 4,
                      "unsupported BINQ version " + std::to_string(version));

  CompressedDataset ds;
  ds.d = static_cast<std::int64_t>(r.u64());
  ds.n = static_cast<std::int64_t>(r.u64());
  const std::uint32_t n_stages = r.u32();
  if (ds.d < 1 || ds.d > (1 << 24)) invariant_fail(r.position(), "implausible dimension");
  if (ds.n < 1) invariant_fail(r.position(), "sample count must be >= 1");
  if (n_stages < 1 || n_stages > (1 << 16)) invariant_fail(r.position(), "implausible stage count");

  ds.means.resize(ds.d);
  ds.scales.resize(ds.d);
  for (Eigen::Index i = 0; i < ds.d; ++i) ds.means(i) = r.f64();
  for (Eigen::Index i = 0; i < ds.d; ++i) {
    ds.scales(i) = r.f64();
    if (!(ds.scales(i) > 0.0)) invariant_fail(r.position(), "scale must be > 0");
  }

  ds.stages.reserve(n_stages);
  for (std::uint32_t s = 0; s < n_stages; ++s) {
    const std::uint32_t n_q = r.u32();
    if (n_q < 1 || n_q > (1 << 20)) invariant_fail(r.position(), "implausible stage n_q");
    std::uint8_t flag = 0;
    r.bytes(&flag, 1);
    if (flag > 1) invariant_fail(r.position(), "bound flag must be 0 or 1");
    const double bound = r.f64();
    Dictionary stage;
    stage.phi.resize(ds.d, static_cast<Eigen::Index>(n_q));
    if (flag) stage.element_bound = bound;
    for (Eigen::Index i = 0; i < ds.d; ++i)
      for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n_q); ++j) stage.phi(i, j) = r.f64();
    ds.stages.push_back(std::move(stage));
  }

  ds.codes = CodeMatrix(static_cast<std::size_t>(ds.n),
                        static_cast<std::size_t>(ds.n_q_total()));
  r.bytes(ds.codes.packed().data(), ds.codes.packed().size());

  const std::uint64_t n_bc = r.u64();
  if (n_bc > static_cast<std::uint64_t>(ds.n)) invariant_fail(r.position(), "n_bc exceeds n");
  ds.bc_indices.resize(n_bc);
  for (std::uint64_t i = 0; i < n_bc; ++i)
    ds.bc_indices[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(r.u64());
  ds.bc_samples.resize(static_cast<Eigen::Index>(n_bc), ds.d);
  for (Eigen::Index i = 0; i < ds.bc_samples.rows(); ++i)
    for (Eigen::Index j = 0; j < ds.d; ++j) ds.bc_samples(i, j) = r.f64();

  try {
    ds.validate();
  } catch (const ContractError& e) {
    invariant_fail(r.position(), e.what());
  }
  return ds;
}

Eigen::MatrixXd decompress(const CompressedDataset& dataset) {
  dataset.validate();
  Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(dataset.n, dataset.d);
  std::size_t col = 0;
  for (const Dictionary& stage : dataset.stages) {
    CodeMatrix block(static_cast<std::size_t>(dataset.n),
                     static_cast<std::size_t>(stage.n_q()));
    for (std::size_t k = 0; k < block.rows(); ++k)
      block.set_row(k, dataset.codes.row_slice(k, col, col + static_cast<std::size_t>(stage.n_q())));
    recon += reconstruct_all(stage, block);
    col += static_cast<std::size_t>(stage.n_q());
  }
  return destandardize(recon, dataset.means, dataset.scales);
}

Eigen::VectorXd compressed_sum(const CompressedDataset& dataset) {
  dataset.validate();
  const std::vector<std::uint64_t> counts = dataset.codes.column_counts();
  Eigen::VectorXd std_sum = Eigen::VectorXd::Zero(dataset.d);
  std::size_t col = 0;
  for (const Dictionary& stage : dataset.stages) {
    for (int j = 0; j < stage.n_q(); ++j)
      std_sum += static_cast<double>(counts[col + static_cast<std::size_t>(j)]) * stage.phi.col(j);
    col += static_cast<std::size_t>(stage.n_q());
  }
  // sum_k (scale .* r_k + mean) = scale .* sum_k r_k + n * mean
  return std_sum.cwiseProduct(dataset.scales) + static_cast<double>(dataset.n) * dataset.means;
}

double compressed_norm2_sum(const CompressedDataset& dataset) {
  dataset.validate();
  if (dataset.stages.size() != 1)
    throw UnsupportedError("compressed_norm2_sum: only single-stage datasets are supported");

  const Dictionary& stage = dataset.stages.front();
  const int n_q = stage.n_q();
  const std::vector<std::uint64_t> counts = dataset.codes.column_counts();

  // pair counts sum_k a_l a_m accumulated in integers for determinism
  std::vector<std::uint64_t> pair_counts(static_cast<std::size_t>(n_q) * n_q, 0);
  std::vector<int> set_bits;
  set_bits.reserve(static_cast<std::size_t>(n_q));
  for (std::size_t k = 0; k < dataset.codes.rows(); ++k) {
    set_bits.clear();
    for (int j = 0; j < n_q; ++j)
      if (dataset.codes.get(k, static_cast<std::size_t>(j))) set_bits.push_back(j);
    for (std::size_t a = 0; a < set_bits.size(); ++a)
      for (std::size_t b = a + 1; b < set_bits.size(); ++b)
        ++pair_counts[static_cast<std::size_t>(set_bits[a]) * n_q + set_bits[b]];
  }

  const Eigen::MatrixXd gram = stage.phi.transpose() * stage.phi;
  double total = 0.0;
  for (int j = 0; j < n_q; ++j)
    total += gram(j, j) * static_cast<double>(counts[static_cast<std::size_t>(j)]);
  for (int l = 0; l < n_q; ++l)
    for (int m = l + 1; m < n_q; ++m)
      total += 2.0 * gram(l, m) *
               static_cast<double>(pair_counts[static_cast<std::size_t>(l) * n_q + m]);
  return total;
}

std::uint64_t payload_bits(const CompressedDataset& dataset) {
  return static_cast<std::uint64_t>(dataset.n) * static_cast<std::uint64_t>(dataset.n_q_total());
}

std::uint64_t total_bits(const CompressedDataset& dataset) {
  std::uint64_t bits = payload_bits(dataset);
  for (const Dictionary& stage : dataset.stages)
    bits += 64ull * static_cast<std::uint64_t>(stage.d()) * static_cast<std::uint64_t>(stage.n_q());
  bits += 2ull * 64ull * static_cast<std::uint64_t>(dataset.d);   // means + scales
  bits += static_cast<std::uint64_t>(dataset.bc_indices.size()) *
          (64ull + 64ull * static_cast<std::uint64_t>(dataset.d));  // index + sample
  return bits;
}

CompressionReport make_report(const CompressedDataset& dataset, const Eigen::MatrixXd& original) {
  if (original.rows() != dataset.n || original.cols() != dataset.d)
    throw ContractError("make_report: original shape does not match dataset");
  CompressionReport report;
  const Eigen::MatrixXd recon = decompress(dataset);
  report.per_component_ratio = per_component_variance_ratio(original, recon);
  double sum = 0.0;
  for (double r : report.per_component_ratio) sum += r;
  report.q2 = sum / static_cast<double>(report.per_component_ratio.size());
  report.payload_bits = payload_bits(dataset);
  report.total_bits = total_bits(dataset);
  if (!dataset.bc_indices.empty())
    report.predicted_error_increase = error_increase_estimate(
        dataset.n, static_cast<std::int64_t>(dataset.bc_indices.size()), report.q2);
  return report;
}

}  // namespace binq
