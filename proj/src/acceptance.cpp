#include "mshape/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "mshape/brownian.hpp"
#include "mshape/covariance.hpp"
#include "mshape/markov.hpp"
#include "mshape/rmt.hpp"
#include "mshape/staircase.hpp"
#include "mshape/stats.hpp"
#include "mshape/tableau.hpp"

namespace mshape::acceptance {
namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

Vector dirichlet(int m, Rng& rng, double floor = 0.0) {
  std::exponential_distribution<double> e(1.0);
  Vector a(m);
  for (int i = 0; i < m; ++i) a(i) = e(rng) + floor;
  return a / a.sum();
}

TransitionMatrix random_chain(int m, Rng& rng) {
  Matrix p(m, m);
  for (int r = 0; r < m; ++r) p.row(r) = dirichlet(m, rng, 0.05).transpose();
  return TransitionMatrix(std::move(p));
}

Vector cyclic_vector(int m, Rng& rng) {
  Vector a = dirichlet(m, rng, 0.05);
  a(m - 1) = 1.0 - (a.sum() - a(m - 1));
  return a;
}

WordSample random_word(int n, int m, Rng& rng) {
  Vector w = dirichlet(m, rng, 0.2);
  std::discrete_distribution<int> pick(w.data(), w.data() + m);
  std::vector<int> letters(n);
  for (auto& x : letters) x = pick(rng);
  return WordSample::from_letters(m, std::move(letters));
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

TransitionMatrix example1() { return cyclic_chain((Vector(4) << 0.4, 0.1, 0.2, 0.3).finished()); }

TransitionMatrix example2() {
  return TransitionMatrix((Matrix(3, 3) << 0.4, 0.6, 0.0, 0.6, 0.0, 0.4, 0.0, 0.4, 0.6).finished());
}

TransitionMatrix two_letter(double a, double b) {
  return TransitionMatrix((Matrix(2, 2) << 1.0 - a, a, b, 1.0 - b).finished());
}

std::vector<double> column(const Matrix& m, int c) {
  std::vector<double> v(m.rows());
  for (int i = 0; i < m.rows(); ++i) v[i] = m(i, c);
  return v;
}

// ---------------------------------------------------------------- exact

Outcome c1_example1() {
  const Matrix expected_corr = (Matrix(4, 4) << 1.000, -0.357, -0.287, -0.357,  //
                                -0.357, 1.000, -0.357, -0.287,                   //
                                -0.287, -0.357, 1.000, -0.357,                   //
                                -0.357, -0.287, -0.357, 1.000)
                                   .finished();
  const CovarianceMatrix sig = asymptotic_covariance(example1());
  const double diag_err = (sig.sigma.diagonal().array() - 0.263).abs().maxCoeff();
  const double corr_err = max_abs(correlation_matrix(sig) - expected_corr);
  return {diag_err <= 5e-4 && corr_err <= 5e-4,
          fmt::format("sigma^2={:.6f} |diag err|={:.2e} |corr err|={:.2e} tol 5e-4", sig.sigma(0, 0), diag_err,
                      corr_err)};
}

Outcome c2_example2() {
  const Matrix expected_sigma =
      (Matrix(3, 3) << 0.459, 0.049, -0.506, 0.049, 0.086, -0.136, -0.506, -0.136, 0.642).finished();
  const Matrix expected_corr =
      (Matrix(3, 3) << 1.0, 0.246, -0.935, 0.246, 1.0, -0.577, -0.935, -0.577, 1.0).finished();
  const CovarianceMatrix sig = asymptotic_covariance(example2());
  const double s_err = max_abs(sig.sigma - expected_sigma);
  const double c_err = max_abs(correlation_matrix(sig) - expected_corr);
  // Rows of any covariance of letter counts sum to zero; report how far the table is from that.
  const double table_row_sum = expected_sigma.rowwise().sum().cwiseAbs().maxCoeff();
  return {s_err <= 5e-4 && c_err <= 5e-4,
          fmt::format("|sigma err|={:.2e} |corr err|={:.2e} tol 5e-4; sigma_11={:.6f}, table row-sum defect {:.3f}",
                      s_err, c_err, sig.sigma(0, 0), table_row_sum)};
}

Outcome c3_cyclic_cross_route(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int m = 3 + i % 5;
    const Vector a = cyclic_vector(m, rng);
    worst = std::max(worst, max_abs(cyclic_covariance(a).sigma - asymptotic_covariance(cyclic_chain(a)).sigma));
  }
  return {worst < 1e-9, fmt::format("200 chains m=3..7, max diff {:.2e} < 1e-9", worst)};
}

Outcome c4_interpolation(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int m = 2 + i % 5;
    const TransitionMatrix P0 = random_chain(m, rng);
    const double delta = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    const CovarianceMatrix via = interpolated_covariance(asymptotic_covariance(P0), stationary_distribution(P0), delta);
    const CovarianceMatrix direct = asymptotic_covariance(blended_chain(P0, delta));
    worst = std::max(worst, max_abs(via.sigma - direct.sigma));
  }
  return {worst < 1e-9, fmt::format("50 pairs, max diff {:.2e} < 1e-9", worst)};
}

Outcome c5_cyclic_structure(std::uint64_t seed) {
  Rng rng(seed);
  // m = 3: Sigma is a multiple of M^(1).
  double prop = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Vector a = cyclic_vector(3, rng);
    const CovarianceMatrix sig = asymptotic_covariance(cyclic_chain(a));
    const CyclicSpectrum cs = cyclic_spectrum(a);
    const Matrix closed = (2.0 / 9.0) * (1.0 + 2.0 * cs.gamma(1).real()) * cs.M[0];
    prop = std::max(prop, max_abs(sig.sigma - closed));
    prop = std::max(prop, max_abs(sig.sigma - sig.sigma(0, 0) * cs.M[0]));
  }
  // m = 4: iid-equivalent exactly when a3^2 = a2 a4.
  int agree = 0;
  int equivalent_points = 0;
  for (int i = 0; i < 20; ++i) {
    const double a2 = 0.05 + 0.01 * i;
    const double a4 = 0.30 - 0.01 * i;
    double a3 = std::sqrt(a2 * a4);
    if (i % 2 == 1) a3 += 0.01 + 0.002 * i;
    const Vector a = (Vector(4) << 1.0 - a2 - a3 - a4, a2, a3, a4).finished();
    const bool condition = std::abs(a3 * a3 - a2 * a4) <= 1e-9;
    const CyclicIidResult res = cyclic_iid_test(a, 1e-9);
    equivalent_points += condition;
    agree += (res.equivalent == condition);
  }
  // Lazy chains: a_2 = ... = a_m = a, whose nontrivial eigenvalues are 1 - m a.
  double lazy = 0.0;
  double printed_gap = 0.0;
  for (int m = 3; m <= 6; ++m) {
    for (double frac : {0.2, 0.5, 0.8}) {
      const double a = frac / (m - 1);
      Vector v = Vector::Constant(m, a);
      v(0) = 1.0 - (m - 1) * a;
      const CyclicIidResult res = cyclic_iid_test(v, 1e-9);
      const double expected = (2.0 - m * a) / (m * a);
      const double printed = (2.0 - (m - 1) * a) / ((m - 1) * a);
      lazy = std::max(lazy, res.equivalent ? std::abs(res.scale - expected) : INFINITY);
      printed_gap = std::max(printed_gap, std::abs(res.scale - printed));
    }
  }
  // Scored against the stated form (2-(m-1)a)/((m-1)a). The nontrivial eigenvalue of
  // this chain is 1 - m a, so only (2-ma)/(ma) can match; both gaps are reported.
  const bool pass = prop < 1e-9 && agree == 20 && printed_gap < 1e-12;
  return {pass, fmt::format("m=3 proportionality {:.2e}; m=4 sweep {}/20 agree ({} equivalent); lazy scale vs "
                            "(2-(m-1)a)/((m-1)a) off by up to {:.3f}, vs (2-ma)/(ma) err {:.2e}",
                            prop, agree, equivalent_points, printed_gap, lazy)};
}

Outcome c6_two_letter() {
  double route = 0.0;
  double closed = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double a = 0.05 + 0.1 * i;
      const double b = 0.05 + 0.1 * j;
      const TwoLetterForms f = two_letter_forms(a, b);
      const Matrix s = asymptotic_covariance(two_letter(a, b)).sigma;
      route = std::max(route, std::abs(f.sigma_tilde2 - (s(0, 0) - 2.0 * s(0, 1) + s(1, 1))));
      const double var = a * b * (2.0 - a - b) / std::pow(a + b, 3);
      closed = std::max(closed, std::abs(f.sigma_tilde2 / 4.0 - var));
    }
  }
  return {route < 1e-9 && closed < 1e-9,
          fmt::format("10x10 grid: sigma~^2 vs Sigma route {:.2e}, variance closed form {:.2e} (tol 1e-9)", route,
                      closed)};
}

// ---------------------------------------------------------------- oracle

Outcome c7_vr_bruteforce(std::uint64_t seed) {
  Rng rng(seed);
  int bad = 0, checks = 0;
  for (int i = 0; i < 1000; ++i) {
    const WordSample w = random_word(uniform_int(rng, 1, 12), uniform_int(rng, 2, 4), rng);
    const TableauShape sh = rsk_shape(w);
    int prefix = 0;
    for (int r = 1; r <= w.m; ++r) {
      prefix += sh.rows[r - 1];
      ++checks;
      bad += v_r_bruteforce(w, r) != prefix;
    }
  }
  return {bad == 0, fmt::format("1000 words, {} (word, r) checks, {} mismatches", checks, bad)};
}

Outcome c8_li_dp(std::uint64_t seed) {
  Rng rng(seed);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const WordSample w = random_word(uniform_int(rng, 1, 200), uniform_int(rng, 2, 6), rng);
    bad += li_dp(w) != rsk_shape(w).rows[0];
  }
  return {bad == 0, fmt::format("10000 words (n<=200, m<=6), {} mismatches", bad)};
}

Outcome c9_disjoint(std::uint64_t seed) {
  Rng rng(seed);
  int bad = 0, checks = 0;
  for (int i = 0; i < 500; ++i) {
    const WordSample w = random_word(uniform_int(rng, 1, 10), uniform_int(rng, 2, 4), rng);
    for (int r = 1; r <= w.m; ++r) {
      ++checks;
      bad += disjoint_subsequences_oracle(w, r) != v_r_bruteforce(w, r);
    }
  }
  return {bad == 0, fmt::format("500 words, {} (word, r) checks, {} mismatches", checks, bad)};
}

// ---------------------------------------------------------------- monte carlo

Outcome c10_empirical_cov(std::uint64_t seed) {
  const TransitionMatrix chains[] = {iid_chain(Vector::Constant(3, 1.0 / 3.0)), example1(), example2()};
  const char* names[] = {"iid uniform m=3", "Example 1", "Example 2"};
  bool pass = true;
  std::string detail;
  for (int c = 0; c < 3; ++c) {
    const Matrix emp = empirical_t_covariance(chains[c], 10000, 5000, sub_seed(seed, c));
    const double err = max_abs(emp - asymptotic_covariance(chains[c]).sigma);
    pass = pass && err <= 0.03;
    detail += fmt::format("{}{}: {:.4f}", c ? "; " : "", names[c], err);
  }
  return {pass, detail + " (max entry error, tol 0.03)"};
}

Outcome c11_two_letter_law(std::uint64_t seed) {
  const double a = 0.25;
  const ShapeSampleSet s = simulate_shapes(two_letter(a, a), 100000, 5000, seed);
  const KsReport ks = ks_one_sample(column(s.scaled, 0), [a](double y) { return li_limit_cdf(a, y); });
  return {ks.statistic < 0.03, fmt::format("one-sample KS {:.4f} < 0.03 (5000 reps, n=1e5)", ks.statistic)};
}

Outcome c12_local_score(std::uint64_t seed) {
  const int N = 4096, reps = 100000;
  std::vector<double> score(reps), reflected(reps), grid_score(reps), grid_reflected(reps);
  for (int i = 0; i < reps; ++i) {
    Rng ra = make_rng(seed, 2 * static_cast<std::uint64_t>(i));
    Rng rb = make_rng(seed, 2 * static_cast<std::uint64_t>(i) + 1);
    const auto pa = sample_standard_path(N, ra);
    const auto pb = sample_standard_path(N, rb);
    score[i] = local_score_bridged(pa, 1.0 / N, ra);
    reflected[i] = reflected_max_bridged(pb, 1.0 / N, rb);
    grid_score[i] = local_score_pair(pa).score;
    grid_reflected[i] = local_score_pair(pb).reflected_max;
  }
  const double crit = ks_critical_value(0.01, reps, reps);
  const KsReport ks = ks_two_sample(score, reflected);
  const KsReport grid = ks_two_sample(grid_score, grid_reflected);
  return {ks.statistic < crit,
          fmt::format("bridge-refined KS {:.4f} < {:.4f} (grid-only KS {:.4f})", ks.statistic, crit, grid.statistic)};
}

Outcome c13_pair_identity(std::uint64_t seed) {
  const int N = 2048, reps = 100000;
  const Matrix blocks[] = {asymptotic_covariance(two_letter(0.5, 0.5)).sigma,
                           (Matrix(2, 2) << 0.30, -0.12, -0.12, 0.18).finished()};
  const char* names[] = {"uniform 2-letter", "asymmetric"};
  const double crit = ks_critical_value(0.01, reps, reps);
  bool pass = true;
  std::string detail;
  for (int b = 0; b < 2; ++b) {
    const Matrix& sig2 = blocks[b];
    const PathSampler sampler(CovarianceMatrix{sig2});
    std::vector<double> l1(reps), lsum(reps), v1(reps), v2(reps);
    PathBundle bundle;
    for (int i = 0; i < reps; ++i) {
      Rng rp = make_rng(seed, 4 * static_cast<std::uint64_t>(i) + 2 * b);
      Rng rb = make_rng(seed, 4 * static_cast<std::uint64_t>(i) + 2 * b + 1);
      std::tie(l1[i], lsum[i]) = two_by_two_pair_sampler(sig2, rp);
      sampler.sample(bundle, N, rb);
      std::tie(v1[i], v2[i]) = block_rows_bridged(bundle, rb);
    }
    const KsReport k1 = ks_two_sample(l1, v1);
    bool ok = k1.statistic < crit;
    std::string sum_part;
    if (pair_params(sig2).hat1_sq <= 1e-12) {
      // lambda1 + lambda2 and V^2 are both identically zero here.
      double worst = 0.0;
      for (int i = 0; i < reps; ++i) worst = std::max({worst, std::abs(lsum[i]), std::abs(v2[i])});
      ok = ok && worst < 1e-9;
      sum_part = fmt::format("sum marginal degenerate, max |value| {:.1e}", worst);
    } else {
      const KsReport k2 = ks_two_sample(lsum, v2);
      ok = ok && k2.statistic < crit;
      sum_part = fmt::format("sum KS {:.4f}", k2.statistic);
    }
    pass = pass && ok;
    detail += fmt::format("{}{}: top KS {:.4f}, {}", b ? "; " : "", names[b], k1.statistic, sum_part);
  }
  return {pass, detail + fmt::format(" (crit {:.4f})", crit)};
}

Outcome c14_gue_shape(std::uint64_t seed) {
  const int n = 100000, reps = 5000, gue_reps = 100000;
  Matrix gue(gue_reps, 3);
  for (int i = 0; i < gue_reps; ++i) {
    Rng rng = make_rng(seed, 1000000 + static_cast<std::uint64_t>(i));
    gue.row(i) = sample_traceless_gue_spectrum(3, rng, GueScale::UnitVariance).transpose() / std::sqrt(3.0);
  }
  const Vector cyc = (Vector(3) << 0.5, 0.3, 0.2).finished();
  const CyclicIidResult eq = cyclic_iid_test(cyc);
  const TransitionMatrix chains[] = {iid_chain(Vector::Constant(3, 1.0 / 3.0)), cyclic_chain(cyc)};
  const double scale[] = {1.0, std::sqrt(eq.scale)};
  const char* names[] = {"iid uniform", "cyclic (0.5,0.3,0.2)"};
  bool pass = eq.equivalent;
  std::string detail;
  for (int c = 0; c < 2; ++c) {
    const ShapeSampleSet s = simulate_shapes(chains[c], n, reps, sub_seed(seed, c));
    detail += fmt::format("{}{}: KS", c ? "; " : "", names[c]);
    for (int k = 0; k < 3; ++k) {
      std::vector<double> rows = column(s.scaled, k);
      for (double& x : rows) x /= scale[c];
      const KsReport ks = ks_two_sample(rows, column(gue, k));
      pass = pass && ks.statistic < 0.05;
      detail += fmt::format(" {:.4f}", ks.statistic);
    }
  }
  return {pass, detail + fmt::format(" (tol 0.05; cyclic scale 1+2gamma={:.4f})", eq.scale)};
}

std::vector<double> top_row_samples(const TransitionMatrix& P, int N, int reps, std::uint64_t seed) {
  const CovarianceMatrix sig = asymptotic_covariance(P);
  const MultiplicityStructure ms = multiplicity_structure(stationary_distribution(P));
  const PathSampler sampler(sig);
  std::vector<double> out(reps);
  PathBundle bundle;
  for (int i = 0; i < reps; ++i) {
    Rng rng = make_rng(seed, i);
    sampler.sample(bundle, N, rng);
    out[i] = limit_functional_v(bundle, ms, 1);
  }
  return out;
}

Outcome c15_negative_control(std::uint64_t seed) {
  const int N = 1024, reps = 100000;
  const TransitionMatrix ex1 = example1();
  const TransitionMatrix iid = iid_chain(Vector::Constant(4, 0.25));
  std::vector<double> a = top_row_samples(ex1, N, reps, sub_seed(seed, 0));
  std::vector<double> b = top_row_samples(iid, N, reps, sub_seed(seed, 1));
  const KsReport raw = ks_two_sample(a, b);
  // Compare the laws up to the common scale sigma.
  const double sa = asymptotic_covariance(ex1).sd(0);
  const double sb = asymptotic_covariance(iid).sd(0);
  for (double& x : a) x /= sa;
  for (double& x : b) x /= sb;
  const KsReport ks = ks_two_sample(a, b);
  const double crit = ks_critical_value(0.001, reps, reps);
  return {ks.statistic > crit, fmt::format("sigma-normalized KS {:.4f} vs 0.1% crit {:.4f} must exceed (unnormalized KS "
                                           "{:.4f})",
                                           ks.statistic, crit, raw.statistic)};
}

Outcome c16_symmetry(std::uint64_t seed) {
  const int N = 1024, reps = 100000;
  const TransitionMatrix P = example2();
  const CovarianceMatrix sig = asymptotic_covariance(P);
  const MultiplicityStructure ms = multiplicity_structure(stationary_distribution(P));
  const PathSampler sampler(sig);
  std::vector<double> v1(reps), v2(reps);
  PathBundle bundle;
  for (int i = 0; i < reps; ++i) {
    Rng r1 = make_rng(seed, 2 * static_cast<std::uint64_t>(i));
    sampler.sample(bundle, N, r1);
    v1[i] = limit_functional_v(bundle, ms, 1);
    Rng r2 = make_rng(seed, 2 * static_cast<std::uint64_t>(i) + 1);
    sampler.sample(bundle, N, r2);
    v2[i] = limit_functional_v(bundle, ms, 2);
  }
  const KsReport ks = ks_two_sample(v1, v2);
  const double crit = ks_critical_value(0.01, reps, reps);
  return {ks.statistic < crit, fmt::format("Example 2 chain, KS {:.4f} < {:.4f}", ks.statistic, crit)};
}

struct Criterion {
  int id;
  Suite suite;
  const char* title;
  std::function<Outcome(std::uint64_t)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, Suite::Exact, "Example 1 covariance and correlations", [](auto) { return c1_example1(); }},
      {2, Suite::Exact, "Example 2 covariance and correlations", [](auto) { return c2_example2(); }},
      {3, Suite::Exact, "cyclic closed form = spectral route", c3_cyclic_cross_route},
      {4, Suite::Exact, "interpolated chain covariance", c4_interpolation},
      {5, Suite::Exact, "cyclic proportionality, m=4 equivalence, lazy scale", c5_cyclic_structure},
      {6, Suite::Exact, "two-letter closed forms", [](auto) { return c6_two_letter(); }},
      {7, Suite::Oracle, "staircase enumeration = RSK prefix sums", c7_vr_bruteforce},
      {8, Suite::Oracle, "chained-max LI = RSK top row", c8_li_dp},
      {9, Suite::Oracle, "disjoint subsequences = staircase enumeration", c9_disjoint},
      {10, Suite::MonteCarlo, "empirical T covariance", c10_empirical_cov},
      {11, Suite::MonteCarlo, "two-letter a=b=0.25 limit law", c11_two_letter_law},
      {12, Suite::MonteCarlo, "local score vs reflected maximum", c12_local_score},
      {13, Suite::MonteCarlo, "2x2 pair sampler vs Brownian block", c13_pair_identity},
      {14, Suite::MonteCarlo, "m=3 RSK rows vs traceless GUE", c14_gue_shape},
      {15, Suite::MonteCarlo, "Example 1 differs from uniform iid (negative control)", c15_negative_control},
      {16, Suite::MonteCarlo, "V^1 vs V^2 symmetry, doubly stochastic m=3", c16_symmetry},
  };
  return all;
}

}  // namespace

std::string_view suite_name(Suite s) {
  switch (s) {
    case Suite::Exact: return "exact";
    case Suite::Oracle: return "oracle";
    case Suite::MonteCarlo: return "montecarlo";
  }
  return "?";
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : {Suite::Exact, Suite::Oracle, Suite::MonteCarlo})
    if (suite_name(s) == name) return s;
  return std::nullopt;
}

std::vector<CriterionResult> run_suite(Suite suite, std::uint64_t seed, const Listener& on_result) {
  std::vector<CriterionResult> out;
  for (const Criterion& c : criteria()) {
    if (c.suite != suite) continue;
    CriterionResult r;
    r.id = c.id;
    r.suite = c.suite;
    r.title = c.title;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = c.run(sub_seed(seed, static_cast<std::uint64_t>(c.id)));
      r.pass = o.pass;
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  return fmt::format("criterion {:>2} [{}] {}: {} ({}; {:.1f}s)", r.id, suite_name(r.suite), r.title,
                     r.pass ? "PASS" : "FAIL", r.detail, r.seconds);
}

}  // namespace mshape::acceptance
