#include "mshape/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mshape/kernels.hpp"
#include "mshape/staircase.hpp"

namespace mshape {
namespace {

// Max of a Brownian bridge from a to b whose total variance is v.
double bridge_max(double a, double b, double v, double u) {
  return 0.5 * (a + b + std::sqrt((b - a) * (b - a) - 2.0 * v * std::log(u)));
}

double bridge_min(double a, double b, double v, double u) {
  return 0.5 * (a + b - std::sqrt((b - a) * (b - a) - 2.0 * v * std::log(u)));
}

// Uniform on (0, 1].
double unit_open(Rng& rng) { return 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

IncrementMatrix block_increments(const PathBundle& b, const std::vector<int>& rows) {
  RowMatrix W(static_cast<int>(rows.size()), b.N + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) W.row(static_cast<int>(i)) = b.paths.row(rows[i]);
  return IncrementMatrix::from_prefix(std::move(W));
}

}  // namespace

PathSampler::PathSampler(CovarianceMatrix sig) : sig_(std::move(sig)), C_(psd_factor(sig_)) {}

void PathSampler::sample(PathBundle& out, int N, Rng& rng) const {
  if (N < 1) throw Error("grid size N must be >= 1");
  const int m = sig_.m();
  std::normal_distribution<double> normal;
  RowMatrix Z(m, N);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < N; ++k) Z(i, k) = normal(rng);
  RowMatrix incr = (C_ * Z) * (1.0 / std::sqrt(static_cast<double>(N)));
  out.m = m;
  out.N = N;
  out.sigma = sig_;
  out.paths.resize(m, N + 1);
  for (int l = 0; l < m; ++l) {
    out.paths(l, 0) = 0.0;
    kernels::cumsum(incr.data() + static_cast<std::ptrdiff_t>(l) * N,
                    out.paths.data() + static_cast<std::ptrdiff_t>(l) * (N + 1) + 1, static_cast<std::size_t>(N));
  }
}

PathBundle PathSampler::sample(int N, Rng& rng) const {
  PathBundle b;
  sample(b, N, rng);
  return b;
}

PathBundle sample_path_bundle(const CovarianceMatrix& sig, int N, std::uint64_t seed) {
  Rng rng(seed);
  return PathSampler(sig).sample(N, rng);
}

std::vector<double> sample_standard_path(int N, Rng& rng) {
  if (N < 1) throw Error("grid size N must be >= 1");
  std::normal_distribution<double> normal;
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  std::vector<double> steps(N), path(static_cast<std::size_t>(N) + 1, 0.0);
  for (auto& s : steps) s = normal(rng) * scale;
  kernels::cumsum(steps.data(), path.data() + 1, steps.size());
  return path;
}

double limit_functional_v(const PathBundle& bundle, const MultiplicityStructure& ms, int r) {
  const int m = bundle.m;
  if (static_cast<int>(ms.tau.size()) != m) throw Error("multiplicity structure does not match the bundle");
  if (r < 1 || r > m) throw Error("row index r must satisfy 1 <= r <= m");
  const int mr = ms.m_r[r - 1];
  const int dr = ms.d_r[r - 1];
  double gauss = 0.0;
  for (int i = 0; i < mr; ++i) gauss += bundle.end(ms.tau[i]);
  std::vector<int> rows(ms.tau.begin() + mr, ms.tau.begin() + mr + dr);
  try {
    return gauss + staircase_max_multi(block_increments(bundle, rows), r - mr);
  } catch (const Error&) {
    throw Error("instance too large for exact multi-row maximization; lower the grid size N or r");
  }
}

Vector limit_shape_rows(const PathBundle& bundle, const MultiplicityStructure& ms) {
  const int m = bundle.m;
  Vector R(m);
  double prev = 0.0;
  for (int r = 1; r <= m; ++r) {
    double v = limit_functional_v(bundle, ms, r);
    R(r - 1) = v - prev;
    prev = v;
  }
  return R;
}

double d_functional(const PathBundle& std_bundle, int r) {
  return staircase_max_multi(IncrementMatrix::from_prefix(std_bundle.paths), r);
}

double h_functional(const PathBundle& std_bundle, int r) {
  double total = 0.0;
  for (int i = 0; i < std_bundle.m; ++i) total += std_bundle.end(i);
  return -(static_cast<double>(r) / std_bundle.m) * total + d_functional(std_bundle, r);
}

double u_functional(std::span<const double> path, double beta) {
  return (beta - 0.5) * path.back() + kernels::max(path.data(), path.size());
}

LocalScore local_score_pair(std::span<const double> path) {
  LocalScore s;
  s.score = kernels::max_drawup(path.data(), path.size());
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : path) hi = std::max(hi, std::abs(x));
  s.reflected_max = hi;
  return s;
}

double local_score_bridged(std::span<const double> path, double step_var, Rng& rng) {
  double low = path[0];
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double a = path[i], b = path[i + 1];
    const double hi = bridge_max(a, b, step_var, unit_open(rng));
    best = std::max(best, hi - std::min(low, a));
    low = std::min(low, bridge_min(a, b, step_var, unit_open(rng)));
  }
  return best;
}

double reflected_max_bridged(std::span<const double> path, double step_var, Rng& rng) {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double a = path[i], b = path[i + 1];
    best = std::max(best, bridge_max(a, b, step_var, unit_open(rng)));
    best = std::max(best, -bridge_min(a, b, step_var, unit_open(rng)));
  }
  return best;
}

double running_max_bridged(std::span<const double> path, double step_var, Rng& rng) {
  double best = path[0];
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    best = std::max(best, bridge_max(path[i], path[i + 1], step_var, unit_open(rng)));
  return best;
}

std::pair<double, double> block_rows_bridged(const PathBundle& two_paths, Rng& rng) {
  if (two_paths.m != 2) throw Error("block functional needs exactly two paths");
  const Matrix& s = two_paths.sigma.sigma;
  const double rate = s(0, 0) - 2.0 * s(0, 1) + s(1, 1);
  std::vector<double> y(static_cast<std::size_t>(two_paths.N) + 1);
  kernels::sub(two_paths.paths.data(), two_paths.paths.data() + two_paths.N + 1, y.data(), y.size());
  const double top = two_paths.end(1) + running_max_bridged(y, std::max(rate, 0.0) / two_paths.N, rng);
  return {top, two_paths.end(0) + two_paths.end(1)};
}

}  // namespace mshape
