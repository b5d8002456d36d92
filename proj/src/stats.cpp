#include "mshape/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mshape {
namespace {

double p_from_stat(double d, double n_eff) { return std::clamp(kolmogorov_q(std::sqrt(n_eff) * d), 0.0, 1.0); }

}  // namespace

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;  // series converges too slowly; Q is 1 to 1e-12 here
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return 2.0 * sum;
}

double ks_critical_value(double alpha, std::size_t n1, std::size_t n2) {
  const double n_eff = n2 == 0 ? static_cast<double>(n1) : static_cast<double>(n1) * n2 / (n1 + n2);
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(n_eff);
}

KsReport ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
  if (xs.empty() || ys.empty()) throw Error("KS needs nonempty samples");
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double n1 = static_cast<double>(xs.size());
  const double n2 = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double t = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == t) ++i;
    while (j < ys.size() && ys[j] == t) ++j;
    d = std::max(d, std::abs(i / n1 - j / n2));
  }
  KsReport r;
  r.statistic = d;
  r.n1 = xs.size();
  r.n2 = ys.size();
  r.p_value = p_from_stat(d, n1 * n2 / (n1 + n2));
  return r;
}

KsReport ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw Error("KS needs a nonempty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    const double t = xs[i];
    const double below = i / n;
    while (i < xs.size() && xs[i] == t) ++i;
    // Left limit taken just below t so atoms in the reference law are handled exactly.
    const double f_left = cdf(std::nextafter(t, -std::numeric_limits<double>::infinity()));
    const double f = cdf(t);
    d = std::max({d, std::abs(f_left - below), std::abs(i / n - f)});
  }
  KsReport r;
  r.statistic = d;
  r.n1 = xs.size();
  r.p_value = p_from_stat(d, n);
  return r;
}

Matrix empirical_cov(const Matrix& samples) {
  if (samples.rows() < 2) throw Error("need at least 2 replicas");
  Matrix centered = samples.rowwise() - samples.colwise().mean();
  Matrix cov = centered.transpose() * centered / static_cast<double>(samples.rows() - 1);
  return 0.5 * (cov + cov.transpose());
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw Error("quantile of an empty sample");
  const double h = (sorted.size() - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::vector<double> xs) {
  if (xs.size() < 2) throw Error("need at least 2 values");
  Summary s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.var = ss / (xs.size() - 1);
  std::sort(xs.begin(), xs.end());
  for (int q = 1; q <= 99; ++q) s.quantiles.push_back(quantile_sorted(xs, q / 100.0));
  return s;
}

double chi3_cdf(double x) {
  if (x <= 0.0) return 0.0;
  return std::erf(x / std::numbers::sqrt2) - std::sqrt(2.0 / std::numbers::pi) * x * std::exp(-0.5 * x * x);
}

}  // namespace mshape
