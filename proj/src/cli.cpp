#include "binq/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "binq/bench.hpp"
#include "binq/codec.hpp"
#include "binq/dict_learn.hpp"
#include "binq/errors.hpp"
#include "binq/pca.hpp"
#include "binq/stats.hpp"
#include "binq/table_io.hpp"

namespace binq::cli {

namespace {

using nlohmann::ordered_json;

// Flag combination problems detected after parsing.
class UsageError : public Error {
public:
  using Error::Error;
};

int verbosity() {
  const char* env = std::getenv("BINQ_LOG");
  if (!env || !*env) return 0;
  return std::atoi(env);
}

TableFormat parse_format(const std::string& name) {
  if (name == "text") return TableFormat::Text;
  if (name == "f64") return TableFormat::Float64;
  throw UsageError("unknown table format '" + name + "' (expected text or f64)");
}

BcSelection parse_selection(const std::string& name) {
  if (name == "first") return BcSelection::First;
  if (name == "strided") return BcSelection::Strided;
  throw UsageError("unknown bc selection '" + name + "' (expected first or strided)");
}

std::vector<int> parse_int_list(const std::string& spec, const char* what) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(token, &used);
      if (used != token.size() || v < 1) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": bad entry '" + token + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(10);
  ss << v;
  return ss.str();
}

// Options shared by every command that trains.
struct TrainFlags {
  int nq = 16;
  std::string stages;  // comma list; overrides --nq when set
  int batch_size = 50;
  double eta0 = 0.9;
  double eta_decay = 0.8;
  int epochs = 30;
  std::string solver = "sa";
  int num_reads = 150;
  int sweeps = 1000;
  int exact_cap = kDefaultExactCap;
  double element_bound = 0.0;  // 0 disables
  std::uint64_t seed = 1;
  int threads = 0;

  void add_to(CLI::App& app) {
    app.add_option("--nq", nq, "code bits per sample (single stage)");
    app.add_option("--stages", stages, "comma-separated boosting stage sizes, e.g. 8,8");
    app.add_option("--batch-size", batch_size, "mini-batch size");
    app.add_option("--eta0", eta0, "initial learning rate");
    app.add_option("--eta-decay", eta_decay, "per-epoch learning-rate decay");
    app.add_option("--epochs", epochs, "training epochs");
    app.add_option("--solver", solver, "code solver: exact or sa");
    app.add_option("--num-reads", num_reads, "annealing restarts per solve");
    app.add_option("--sweeps", sweeps, "annealing sweeps per read");
    app.add_option("--exact-cap", exact_cap, "exact solver enumeration cap");
    app.add_option("--element-bound", element_bound, "max |phi_ij| (0 disables the bound)");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
  }

  std::vector<int> stage_list() const {
    if (!stages.empty()) return parse_int_list(stages, "--stages");
    if (nq < 1) throw UsageError("--nq must be >= 1");
    return {nq};
  }

  SolverConfig solver_config() const {
    SolverConfig config;
    if (solver == "exact") {
      config.kind = SolverKind::Exact;
    } else if (solver == "sa") {
      config.kind = SolverKind::SimulatedAnnealing;
    } else {
      throw UsageError("unknown solver '" + solver + "' (expected exact or sa)");
    }
    config.exact_cap = exact_cap;
    config.sa.num_reads = num_reads;
    config.sa.sweeps = sweeps;
    return config;
  }

  TrainConfig train_config(std::ostream* log) const {
    TrainConfig config;
    config.batch_size = batch_size;
    config.eta0 = eta0;
    config.eta_decay = eta_decay;
    config.epochs = epochs;
    config.seed = seed;
    if (element_bound > 0.0) config.element_bound = element_bound;
    config.solver = solver_config();
    config.threads = threads;
    config.log = log;
    return config;
  }
};

struct CompressFlags {
  TrainFlags train;
  std::string input, output;
  std::string format = "text";
  std::string report_path;
  std::int64_t nbc = -1;   // -1: auto (n/10), 0: none
  std::int64_t nbin = -1;  // -1: auto (gcd(n, nbc))
  std::string bc_selection = "first";
};

struct DecompressFlags {
  std::string input, output;
  std::string format = "text";
};

struct ReportFlags {
  std::string input;
  std::string original;
  std::string format = "text";
  std::string json_path;
  std::int64_t nbin = -1;  // -1: infer from the stored indices
};

struct BenchAppendixFlags {
  double r = 2.0;
  std::string nq_list = "8,10,12,14,16";
  int samples = 10000;
  std::string solver = "exact";
  int num_reads = 150;
  int sweeps = 1000;
  int exact_cap = 32;
  std::uint64_t seed = 1;
  int threads = 0;
  bool fit = false;
  std::string json_path;
};

struct BenchCompareFlags {
  TrainFlags train;
  std::string input;
  std::string format = "text";
  std::string nq_list = "8,16";
  std::string nz_list = "1,2";
  bool split = false;  // also run each even nq as two boosted halves
  std::string json_path;
};

struct BenchGendataFlags {
  std::int64_t n = 3200;
  int d = 16;
  double rho = 0.95;
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "text";
};

void write_json_doc(const std::string& path, const ordered_json& doc) {
  std::ofstream out(path);
  if (!out) throw TableParseError(path, 0, 0, "cannot open file for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw TableParseError(path, 0, 0, "write failed");
}

// Builds the complete artifact from a raw data matrix.
CompressedDataset compress_pipeline(const Eigen::MatrixXd& data, const std::vector<int>& stage_nqs,
                                    const TrainConfig& base_config, std::int64_t nbc,
                                    std::int64_t nbin, BcSelection selection) {
  const Standardization std_data = standardize(data);
  const std::vector<StageResult> results = boost(std_data.data, stage_nqs, base_config);

  CompressedDataset ds;
  ds.d = data.cols();
  ds.n = data.rows();
  ds.means = std_data.means;
  ds.scales = std_data.scales;

  std::int64_t nq_total = 0;
  for (const StageResult& r : results) nq_total += r.dictionary.n_q();
  ds.codes = CodeMatrix(static_cast<std::size_t>(ds.n), static_cast<std::size_t>(nq_total));
  std::size_t col = 0;
  for (const StageResult& r : results) {
    ds.stages.push_back(r.dictionary);
    for (std::size_t k = 0; k < static_cast<std::size_t>(ds.n); ++k)
      ds.codes.set_row_slice(k, col, r.codes.row(k));
    col += static_cast<std::size_t>(r.dictionary.n_q());
  }

  if (nbc > 0) {
    BiasCorrectionPlan plan;
    plan.n = ds.n;
    plan.n_bc = nbc;
    plan.n_bin = nbin;
    plan.selection = selection;
    try {
      plan.validate();
    } catch (const ContractError& e) {
      throw UsageError(std::string("bias-correction plan: ") + e.what());
    }
    ds.bc_indices = plan.selected_indices();
    ds.bc_samples.resize(static_cast<Eigen::Index>(ds.bc_indices.size()), ds.d);
    for (std::size_t i = 0; i < ds.bc_indices.size(); ++i)
      ds.bc_samples.row(static_cast<Eigen::Index>(i)) = data.row(ds.bc_indices[i]);
  } else {
    ds.bc_samples.resize(0, ds.d);
  }
  return ds;
}

std::string stages_label(const CompressedDataset& ds) {
  std::string label;
  for (std::size_t s = 0; s < ds.stages.size(); ++s) {
    if (s > 0) label += '+';
    label += std::to_string(ds.stages[s].n_q());
  }
  return label;
}

void report_to_json(ordered_json& doc, const CompressionReport& report) {
  doc["q2"] = report.q2;
  doc["payload_bits"] = report.payload_bits;
  doc["total_bits"] = report.total_bits;
  if (std::isfinite(report.predicted_error_increase))
    doc["predicted_error_increase"] = report.predicted_error_increase;
  for (std::size_t i = 0; i < report.per_component_ratio.size(); ++i)
    doc["component_ratio_" + std::to_string(i)] = report.per_component_ratio[i];
}

void print_report(std::ostream& out, const CompressedDataset& ds, const CompressionReport& report) {
  out << "samples              " << ds.n << '\n';
  out << "components           " << ds.d << '\n';
  out << "stages               " << stages_label(ds) << '\n';
  out << "payload bits         " << report.payload_bits << '\n';
  out << "total bits           " << report.total_bits << '\n';
  out << "bits per sample      " << ds.n_q_total() << '\n';
  out << "Q^2                  " << format_double(report.q2) << '\n';
  if (std::isfinite(report.predicted_error_increase))
    out << "pred. error increase " << format_double(report.predicted_error_increase) << '\n';
  out << "bc samples           " << ds.bc_indices.size() << '\n';
}

int cmd_compress(const CompressFlags& flags) {
  const Eigen::MatrixXd data = read_table(flags.input, parse_format(flags.format));
  const bool chatty = verbosity() >= 1;
  const TrainConfig config = flags.train.train_config(chatty ? &std::cerr : nullptr);
  const std::vector<int> stage_nqs = flags.train.stage_list();

  std::int64_t nbc = flags.nbc;
  if (nbc < 0) nbc = std::max<std::int64_t>(1, data.rows() / 10);
  std::int64_t nbin = flags.nbin;
  if (nbin < 0) nbin = nbc > 0 ? std::gcd(data.rows(), nbc) : 1;

  const CompressedDataset ds = compress_pipeline(data, stage_nqs, config, nbc, nbin,
                                                 parse_selection(flags.bc_selection));

  std::ofstream out(flags.output, std::ios::binary);
  if (!out) throw TableParseError(flags.output, 0, 0, "cannot open file for writing");
  const std::size_t bytes = write(ds, out);

  const CompressionReport report = make_report(ds, data);
  print_report(std::cout, ds, report);
  std::cout << "wrote                " << flags.output << " (" << bytes << " bytes)\n";

  if (!flags.report_path.empty()) {
    ordered_json doc;
    doc["command"] = "compress";
    doc["input"] = flags.input;
    doc["n"] = ds.n;
    doc["d"] = ds.d;
    doc["stages"] = stages_label(ds);
    doc["nq_total"] = ds.n_q_total();
    doc["solver"] = flags.train.solver;
    doc["seed"] = flags.train.seed;
    doc["nbc"] = static_cast<std::int64_t>(ds.bc_indices.size());
    doc["nbin"] = nbin;
    report_to_json(doc, report);
    write_json_doc(flags.report_path, doc);
  }
  return kExitOk;
}

CompressedDataset read_binq_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableParseError(path, 0, 0, "cannot open file");
  return read(in);
}

int cmd_decompress(const DecompressFlags& flags) {
  const CompressedDataset ds = read_binq_file(flags.input);
  write_table(flags.output, decompress(ds), parse_format(flags.format));
  std::cout << "wrote " << flags.output << " (" << ds.n << " x " << ds.d << ")\n";
  return kExitOk;
}

// The stored index list fixes which samples were retained; binning is a
// report-time choice. Infer a bin count consistent with the list: contiguous
// runs (first-selection layouts), then one bin per retained sample (strided
// layouts), then a single bin.
std::int64_t infer_nbin(const CompressedDataset& ds) {
  const std::vector<std::int64_t>& idx = ds.bc_indices;
  std::int64_t runs = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (i == 0 || idx[i] != idx[i - 1] + 1) ++runs;
  for (std::int64_t candidate : {runs, static_cast<std::int64_t>(idx.size()), std::int64_t{1}}) {
    if (candidate < 1) continue;
    BiasCorrectionPlan plan;
    plan.n = ds.n;
    plan.n_bc = static_cast<std::int64_t>(idx.size());
    plan.n_bin = candidate;
    plan.selection = BcSelection::Explicit;
    plan.explicit_indices = idx;
    try {
      plan.validate();
      return candidate;
    } catch (const ContractError&) {
    }
  }
  throw UsageError("cannot infer a bin count for the stored bc indices; pass --nbin");
}

int cmd_report(const ReportFlags& flags) {
  const CompressedDataset ds = read_binq_file(flags.input);
  ordered_json doc;
  doc["command"] = "report";
  doc["n"] = ds.n;
  doc["d"] = ds.d;
  doc["stages"] = stages_label(ds);
  doc["nq_total"] = ds.n_q_total();
  doc["payload_bits"] = payload_bits(ds);
  doc["total_bits"] = total_bits(ds);

  if (!flags.original.empty()) {
    const Eigen::MatrixXd original = read_table(flags.original, parse_format(flags.format));
    const CompressionReport report = make_report(ds, original);
    print_report(std::cout, ds, report);
    report_to_json(doc, report);
  } else {
    std::cout << "samples              " << ds.n << '\n';
    std::cout << "components           " << ds.d << '\n';
    std::cout << "stages               " << stages_label(ds) << '\n';
    std::cout << "payload bits         " << payload_bits(ds) << '\n';
    std::cout << "total bits           " << total_bits(ds) << '\n';
    std::cout << "bc samples           " << ds.bc_indices.size() << '\n';
  }

  if (!ds.bc_indices.empty()) {
    const std::int64_t nbin = flags.nbin > 0 ? flags.nbin : infer_nbin(ds);
    BiasCorrectionPlan plan;
    plan.n = ds.n;
    plan.n_bc = static_cast<std::int64_t>(ds.bc_indices.size());
    plan.n_bin = nbin;
    plan.selection = BcSelection::Explicit;
    plan.explicit_indices = ds.bc_indices;
    try {
      plan.validate();
    } catch (const ContractError& e) {
      throw UsageError(std::string("--nbin: ") + e.what());
    }

    const Eigen::MatrixXd recon = decompress(ds);
    doc["bc_nbin"] = nbin;
    std::cout << "bias-corrected component means (nbin=" << nbin << "):\n";
    for (Eigen::Index c = 0; c < ds.d; ++c) {
      std::vector<double> f_tilde(recon.col(c).data(), recon.col(c).data() + recon.rows());
      std::vector<double> f_orig(static_cast<std::size_t>(ds.bc_samples.rows()));
      for (Eigen::Index i = 0; i < ds.bc_samples.rows(); ++i)
        f_orig[static_cast<std::size_t>(i)] = ds.bc_samples(i, c);
      const EstimateWithError est = bias_corrected_mean(f_tilde, f_orig, plan);
      std::cout << "  [" << c << "] " << format_double(est.value) << " +- "
                << format_double(est.error) << '\n';
      doc["bc_mean_" + std::to_string(c)] = est.value;
      doc["bc_error_" + std::to_string(c)] = est.error;
    }
  }

  if (!flags.json_path.empty()) write_json_doc(flags.json_path, doc);
  return kExitOk;
}

int cmd_bench_appendix(const BenchAppendixFlags& flags) {
  SolverConfig solver;
  if (flags.solver == "exact") {
    solver.kind = SolverKind::Exact;
  } else if (flags.solver == "sa") {
    solver.kind = SolverKind::SimulatedAnnealing;
  } else {
    throw UsageError("unknown solver '" + flags.solver + "'");
  }
  solver.exact_cap = flags.exact_cap;
  solver.sa.num_reads = flags.num_reads;
  solver.sa.sweeps = flags.sweeps;

  std::ofstream json_out;
  if (!flags.json_path.empty()) {
    json_out.open(flags.json_path);
    if (!json_out) throw TableParseError(flags.json_path, 0, 0, "cannot open file for writing");
  }

  std::vector<BenchPoint> points;
  std::cout << "# nq  mean_error  stderr" << (flags.r == 2.0 ? "  ideal" : "") << '\n';
  for (int nq : parse_int_list(flags.nq_list, "--nq")) {
    const BenchPoint p =
        appendix_point(flags.r, nq, flags.samples, solver, flags.seed, flags.threads);
    points.push_back(p);
    std::cout << nq << "  " << format_double(p.avg_error) << "  " << format_double(p.error_bar);
    if (flags.r == 2.0) std::cout << "  " << format_double(std::pow(2.0, -(nq + 2)));
    std::cout << '\n';
    if (json_out.is_open()) {
      ordered_json rec;
      rec["command"] = "bench-appendix";
      rec["r"] = flags.r;
      rec["nq"] = nq;
      rec["samples"] = flags.samples;
      rec["solver"] = flags.solver;
      rec["mean_error"] = p.avg_error;
      rec["stderr"] = p.error_bar;
      json_out << rec.dump() << '\n';
    }
  }

  if (flags.fit) {
    const PowerLawFit fit = fit_power_law(points);
    std::cout << "fit a=" << format_double(fit.a) << " b=" << format_double(fit.b)
              << " chi2/dof=" << format_double(fit.chi2_per_dof) << '\n';
    if (json_out.is_open()) {
      ordered_json rec;
      rec["command"] = "bench-appendix-fit";
      rec["a"] = fit.a;
      rec["b"] = fit.b;
      rec["chi2_per_dof"] = fit.chi2_per_dof;
      json_out << rec.dump() << '\n';
    }
  }
  return kExitOk;
}

int cmd_bench_compare(const BenchCompareFlags& flags) {
  const Eigen::MatrixXd data = read_table(flags.input, parse_format(flags.format));
  const bool chatty = verbosity() >= 1;
  const TrainConfig config = flags.train.train_config(chatty ? &std::cerr : nullptr);

  std::ofstream json_out;
  if (!flags.json_path.empty()) {
    json_out.open(flags.json_path);
    if (!json_out) throw TableParseError(flags.json_path, 0, 0, "cannot open file for writing");
  }

  const auto emit = [&](const std::string& label, std::int64_t bits_per_sample, double q2) {
    std::cout << label << "  " << bits_per_sample << "  " << format_double(q2) << '\n';
    if (json_out.is_open()) {
      ordered_json rec;
      rec["command"] = "bench-compare";
      rec["label"] = label;
      rec["bits_per_sample"] = bits_per_sample;
      rec["q2"] = q2;
      json_out << rec.dump() << '\n';
    }
  };

  std::cout << "# label  bits_per_sample  q2\n";
  for (int nq : parse_int_list(flags.nq_list, "--nq")) {
    std::vector<std::vector<int>> runs;
    runs.push_back({nq});
    if (flags.split && nq % 2 == 0 && nq >= 2) runs.push_back({nq / 2, nq / 2});
    for (const std::vector<int>& stage_nqs : runs) {
      const CompressedDataset ds =
          compress_pipeline(data, stage_nqs, config, 0, 1, BcSelection::First);
      const CompressionReport report = make_report(ds, data);
      std::string label = "binary-";
      for (std::size_t s = 0; s < stage_nqs.size(); ++s)
        label += (s ? "+" : "") + std::to_string(stage_nqs[s]);
      emit(label, ds.n_q_total(), report.q2);
    }
  }

  for (int nz : parse_int_list(flags.nz_list, "--nz")) {
    if (nz > data.cols()) continue;
    const PcaModel model = pca_fit(data, nz);
    const double q2 = q_squared(data, pca_roundtrip(model, data));
    emit("pca-" + std::to_string(nz), 32ll * nz, q2);
  }
  return kExitOk;
}

int cmd_bench_gendata(const BenchGendataFlags& flags) {
  const Eigen::MatrixXd data = gen_correlated(flags.n, flags.d, flags.rho, flags.seed);
  write_table(flags.output, data, parse_format(flags.format));
  std::cout << "wrote " << flags.output << " (" << flags.n << " x " << flags.d << ")\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"binq - lossy compression of statistical float data with binary codes"};
  app.require_subcommand(1);
  app.set_config("--config");

  CompressFlags compress_flags;
  CLI::App* compress = app.add_subcommand("compress", "compress a numeric table to BINQ");
  compress->add_option("input", compress_flags.input, "input table")->required();
  compress->add_option("-o,--output", compress_flags.output, "output BINQ file")->required();
  compress->add_option("--format", compress_flags.format, "input table format: text or f64");
  compress->add_option("--report", compress_flags.report_path, "write a JSON report here");
  compress->add_option("--nbc", compress_flags.nbc, "retained originals (-1 auto, 0 none)");
  compress->add_option("--nbin", compress_flags.nbin, "bias-correction bins (-1 auto)");
  compress->add_option("--bc-selection", compress_flags.bc_selection, "first or strided");
  compress_flags.train.add_to(*compress);

  DecompressFlags decompress_flags;
  CLI::App* decompress = app.add_subcommand("decompress", "reconstruct a table from BINQ");
  decompress->add_option("input", decompress_flags.input, "BINQ file")->required();
  decompress->add_option("-o,--output", decompress_flags.output, "output table")->required();
  decompress->add_option("--format", decompress_flags.format, "output format: text or f64");

  ReportFlags report_flags;
  CLI::App* report = app.add_subcommand("report", "quality report and bias-corrected means");
  report->add_option("input", report_flags.input, "BINQ file")->required();
  report->add_option("--original", report_flags.original, "original table for a full report");
  report->add_option("--format", report_flags.format, "original table format");
  report->add_option("--json", report_flags.json_path, "write a JSON report here");
  report->add_option("--nbin", report_flags.nbin, "bias-correction bins (-1 infer)");

  CLI::App* bench = app.add_subcommand("bench", "benchmarks and data generation");
  bench->require_subcommand(1);

  BenchAppendixFlags appendix_flags;
  CLI::App* appendix = bench->add_subcommand("appendix", "solver-quality benchmark");
  appendix->add_option("--r", appendix_flags.r, "geometric base r > 1");
  appendix->add_option("--nq", appendix_flags.nq_list, "comma list of code sizes");
  appendix->add_option("--samples", appendix_flags.samples, "random targets per point");
  appendix->add_option("--solver", appendix_flags.solver, "exact or sa");
  appendix->add_option("--num-reads", appendix_flags.num_reads, "annealing restarts");
  appendix->add_option("--sweeps", appendix_flags.sweeps, "annealing sweeps per read");
  appendix->add_option("--exact-cap", appendix_flags.exact_cap, "exact enumeration cap");
  appendix->add_option("--seed", appendix_flags.seed, "random seed");
  appendix->add_option("--threads", appendix_flags.threads, "worker threads (0 = hardware)");
  appendix->add_flag("--fit", appendix_flags.fit, "fit a^(nq+b) to the sweep");
  appendix->add_option("--json", appendix_flags.json_path, "write JSON-lines records here");

  BenchCompareFlags compare_flags;
  CLI::App* compare = bench->add_subcommand("compare", "Q^2 vs bits for binary and PCA");
  compare->add_option("--input", compare_flags.input, "data table")->required();
  compare->add_option("--format", compare_flags.format, "input format: text or f64");
  compare->add_option("--nz", compare_flags.nz_list, "comma list of PCA component counts");
  compare->add_flag("--split", compare_flags.split, "also run each even nq as two halves");
  compare->add_option("--json", compare_flags.json_path, "write JSON-lines records here");
  compare_flags.train.add_to(*compare);

  BenchGendataFlags gendata_flags;
  CLI::App* gendata = bench->add_subcommand("gendata", "synthetic correlated Gaussian data");
  gendata->add_option("--n", gendata_flags.n, "sample count");
  gendata->add_option("--d", gendata_flags.d, "components per sample");
  gendata->add_option("--rho", gendata_flags.rho, "neighbor correlation in [0, 1)");
  gendata->add_option("--seed", gendata_flags.seed, "random seed");
  gendata->add_option("-o,--output", gendata_flags.output, "output table")->required();
  gendata->add_option("--format", gendata_flags.format, "output format: text or f64");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compress->parsed()) return cmd_compress(compress_flags);
    if (decompress->parsed()) return cmd_decompress(decompress_flags);
    if (report->parsed()) return cmd_report(report_flags);
    if (bench->parsed()) {
      if (appendix->parsed()) return cmd_bench_appendix(appendix_flags);
      if (compare->parsed()) return cmd_bench_compare(compare_flags);
      if (gendata->parsed()) return cmd_bench_gendata(gendata_flags);
    }
    std::cerr << "error: no command\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TableParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
}

}  // namespace binq::cli
