#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mshape/acceptance.hpp"
#include "mshape/brownian.hpp"
#include "mshape/covariance.hpp"
#include "mshape/io.hpp"
#include "mshape/markov.hpp"
#include "mshape/rmt.hpp"
#include "mshape/stats.hpp"
#include "mshape/tableau.hpp"

using json = nlohmann::json;
using namespace mshape;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumerical = 2;
constexpr int kVerifyFailed = 3;

json num(double x) { return io::round12(x); }

json matrix_json(const Matrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(num(a(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(num(v(i)));
  return out;
}

// Writes to the --out file when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw io::FileError("cannot write output file: " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int run_analyze(const std::string& matrix_path, const std::string& out_path) {
  const TransitionMatrix P = io::read_matrix_file(matrix_path);
  const int m = P.m();
  const ChainDiagnostics d = validate_chain(P);
  json report;
  report["m"] = m;
  report["diagnostics"] = {{"irreducible", d.irreducible},
                           {"aperiodic", d.aperiodic},
                           {"doubly_stochastic", d.doubly_stochastic},
                           {"cyclic", d.cyclic},
                           {"period", d.period}};
  Output out(out_path);
  if (!d.irreducible || !d.aperiodic) {
    report["error"] = "covariance requires an irreducible aperiodic chain";
    out.stream() << report.dump(2) << '\n';
    std::cerr << "error: covariance requires an irreducible aperiodic chain\n";
    return kNumerical;
  }
  const Vector pi = stationary_distribution(P);
  const SpectralData sd = spectral_decomposition(P);
  const CovarianceMatrix sig = asymptotic_covariance(P);
  report["pi"] = vector_json(pi);
  json eig = json::array();
  for (int i = 0; i < m; ++i) eig.push_back({{"re", num(sd.eigenvalues(i).real())}, {"im", num(sd.eigenvalues(i).imag())}});
  report["eigenvalues"] = eig;
  report["sigma"] = matrix_json(sig.sigma);
  try {
    report["correlation"] = matrix_json(correlation_matrix(sig));
  } catch (const Error&) {
    report["correlation"] = nullptr;
  }
  const MultiplicityStructure ms = multiplicity_structure(pi);
  json tau = json::array(), blocks = json::array();
  for (int r = 0; r < m; ++r) tau.push_back(ms.tau[r] + 1);
  for (int r = 0; r < m; r += ms.d_r[r]) {
    json letters = json::array();
    for (int i = r; i < r + ms.d_r[r]; ++i) letters.push_back(ms.tau[i] + 1);
    blocks.push_back({{"probability", num(pi(ms.tau[r]))}, {"m_r", ms.m_r[r]}, {"d_r", ms.d_r[r]}, {"letters", letters}});
  }
  report["multiplicity"] = {{"tau", tau}, {"nu", vector_json(ms.nu)}, {"blocks", blocks}};
  if (d.cyclic) {
    const CyclicIidResult res = cyclic_iid_test(cyclic_first_column(P));
    if (res.equivalent)
      report["cyclic_iid_test"] = {{"result", "Equivalent"}, {"scale", num(res.scale)}};
    else
      report["cyclic_iid_test"] = {{"result", "NotEquivalent"}, {"spread", num(res.spread)}};
  } else {
    report["cyclic_iid_test"] = nullptr;
  }
  out.stream() << report.dump(2) << '\n';
  return kOk;
}

int run_simulate_word(const std::string& matrix_path, int n, int reps, std::uint64_t seed, const std::string& out_path) {
  const TransitionMatrix P = io::read_matrix_file(matrix_path);
  const ShapeSampleSet s = simulate_shapes(P, n, reps, seed);
  Output out(out_path);
  io::write_csv(out.stream(), io::numbered_columns("r", P.m()), s.scaled);
  return kOk;
}

int run_simulate_limit(const std::string& matrix_path, int grid, int reps, std::uint64_t seed, int r,
                       const std::string& out_path) {
  const TransitionMatrix P = io::read_matrix_file(matrix_path);
  const int m = P.m();
  if (r != 0 && (r < 1 || r > m)) throw CLI::ValidationError("--r", "must lie in 1..m");
  if (grid < 1 || reps < 1) throw CLI::ValidationError("--grid/--reps", "must be >= 1");
  const CovarianceMatrix sig = asymptotic_covariance(P);
  const MultiplicityStructure ms = multiplicity_structure(stationary_distribution(P));
  const PathSampler sampler(sig);
  Matrix rows(reps, r ? 1 : m);
  PathBundle bundle;
  for (int i = 0; i < reps; ++i) {
    Rng rng = make_rng(seed, i);
    sampler.sample(bundle, grid, rng);
    if (r)
      rows(i, 0) = limit_functional_v(bundle, ms, r);
    else
      rows.row(i) = limit_shape_rows(bundle, ms).transpose();
  }
  Output out(out_path);
  io::write_csv(out.stream(), r ? std::vector<std::string>{"value"} : io::numbered_columns("r", m), rows);
  return kOk;
}

int run_rmt_sample(const std::string& ensemble, int m, int reps, std::uint64_t seed, const std::string& scale_name,
                   const std::string& matrix_path, const std::string& out_path) {
  GueScale scale = GueScale::PhiDensity;
  if (scale_name == "unit") scale = GueScale::UnitVariance;
  else if (scale_name == "unit-traceless") scale = GueScale::UnitTraceless;
  if (reps < 1) throw CLI::ValidationError("--reps", "must be >= 1");

  Vector pi;
  CovarianceMatrix sig;
  if (ensemble == "block") {
    if (matrix_path.empty()) throw CLI::ValidationError("--matrix", "required for the block ensemble");
    const TransitionMatrix P = io::read_matrix_file(matrix_path);
    pi = stationary_distribution(P);
    sig = asymptotic_covariance(P);
    m = P.m();
    std::cerr << "note: block ensemble is a conjecture sampler\n";
  } else if (m < 1) {
    throw CLI::ValidationError("--m", "required and >= 1");
  }
  Matrix rows(reps, m);
  for (int i = 0; i < reps; ++i) {
    Rng rng = make_rng(seed, i);
    if (ensemble == "gue")
      rows.row(i) = sample_gue_spectrum(m, rng, scale).transpose();
    else if (ensemble == "traceless")
      rows.row(i) = sample_traceless_gue_spectrum(m, rng, scale).transpose();
    else
      rows.row(i) = sample_block_conjecture(pi, sig, rng).transpose();
  }
  Output out(out_path);
  io::write_csv(out.stream(), io::numbered_columns("l", m), rows);
  return kOk;
}

int run_compare(const std::string& a, const std::string& b, const std::string& col, const std::string& col_b,
                const std::string& out_path) {
  const auto ta = io::read_csv(a);
  const auto tb = io::read_csv(b);
  const KsReport ks = ks_two_sample(io::csv_column(ta, col), io::csv_column(tb, col_b.empty() ? col : col_b));
  json report = {{"statistic", num(ks.statistic)},
                 {"p_value", num(ks.p_value)},
                 {"n1", ks.n1},
                 {"n2", ks.n2},
                 {"critical_1pct", num(ks_critical_value(0.01, ks.n1, ks.n2))}};
  Output out(out_path);
  out.stream() << report.dump(2) << '\n';
  return kOk;
}

int run_verify(const std::string& suite_name, std::uint64_t seed) {
  std::vector<acceptance::Suite> suites;
  if (suite_name == "all") {
    suites = {acceptance::Suite::Exact, acceptance::Suite::Oracle, acceptance::Suite::MonteCarlo};
  } else {
    suites = {*acceptance::parse_suite(suite_name)};
  }
  std::cout << "seed " << seed << '\n';
  bool all = true;
  for (auto s : suites) {
    auto results = acceptance::run_suite(s, seed, [](const acceptance::CriterionResult& r) {
      std::cout << acceptance::format_line(r) << std::endl;
    });
    for (const auto& r : results) all = all && r.pass;
  }
  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Letter-count covariance, random-word tableaux and their Brownian and random-matrix limits"};
  app.require_subcommand(1);

  std::string matrix, out, ensemble, scale = "phi", csv_a, csv_b, col, col_b, suite = "all", block_matrix;
  int n = 0, reps = 0, grid = 0, r = 0, m = 0;
  std::uint64_t seed = 0;

  auto* analyze = app.add_subcommand("analyze", "JSON report for a transition matrix");
  analyze->add_option("matrix", matrix, "matrix file")->required();
  analyze->add_option("-o,--out", out, "output path");

  auto* sim_word = app.add_subcommand("simulate-word", "scaled RSK shapes of sampled words (CSV)");
  sim_word->add_option("matrix", matrix, "matrix file")->required();
  sim_word->add_option("--n", n, "word length")->required()->check(CLI::PositiveNumber);
  sim_word->add_option("--reps", reps, "replicas")->required()->check(CLI::PositiveNumber);
  sim_word->add_option("--seed", seed, "64-bit seed")->required();
  sim_word->add_option("-o,--out", out, "output path");

  auto* sim_limit = app.add_subcommand("simulate-limit", "Brownian limit functionals (CSV)");
  sim_limit->add_option("matrix", matrix, "matrix file")->required();
  sim_limit->add_option("--grid", grid, "grid size N")->required()->check(CLI::PositiveNumber);
  sim_limit->add_option("--reps", reps, "replicas")->required()->check(CLI::PositiveNumber);
  sim_limit->add_option("--seed", seed, "64-bit seed")->required();
  sim_limit->add_option("--r", r, "single row-sum V^r instead of all rows");
  sim_limit->add_option("-o,--out", out, "output path");

  auto* rmt = app.add_subcommand("rmt-sample", "random-matrix spectra (CSV)");
  rmt->add_option("--ensemble", ensemble, "gue | traceless | block")
      ->required()
      ->check(CLI::IsMember({"gue", "traceless", "block"}));
  rmt->add_option("--m", m, "matrix size (gue, traceless)");
  rmt->add_option("--reps", reps, "replicas")->required()->check(CLI::PositiveNumber);
  rmt->add_option("--seed", seed, "64-bit seed")->required();
  rmt->add_option("--scale", scale, "phi | unit | unit-traceless")
      ->check(CLI::IsMember({"phi", "unit", "unit-traceless"}));
  rmt->add_option("--matrix", block_matrix, "matrix file (block ensemble)");
  rmt->add_option("-o,--out", out, "output path");

  auto* compare = app.add_subcommand("compare", "two-sample KS between CSV columns (JSON)");
  compare->add_option("a", csv_a, "first CSV")->required();
  compare->add_option("b", csv_b, "second CSV")->required();
  compare->add_option("--col", col, "column name")->required();
  compare->add_option("--col-b", col_b, "column name in the second file (default: --col)");
  compare->add_option("-o,--out", out, "output path");

  auto* verify = app.add_subcommand("verify", "run acceptance suites");
  verify->add_option("--suite", suite, "exact | oracle | montecarlo | all")
      ->check(CLI::IsMember({"exact", "oracle", "montecarlo", "all"}));
  verify->add_option("--seed", seed, "64-bit seed")->default_val(acceptance::kDefaultSeed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return run_analyze(matrix, out);
    if (*sim_word) return run_simulate_word(matrix, n, reps, seed, out);
    if (*sim_limit) return run_simulate_limit(matrix, grid, reps, seed, r, out);
    if (*rmt) return run_rmt_sample(ensemble, m, reps, seed, scale, block_matrix, out);
    if (*compare) return run_compare(csv_a, csv_b, col, col_b, out);
    if (*verify) return run_verify(suite, seed);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const io::FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
