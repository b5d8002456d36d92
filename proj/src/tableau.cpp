#include "mshape/tableau.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mshape/covariance.hpp"
#include "mshape/staircase.hpp"
#include "mshape/stats.hpp"

namespace mshape {

RskShapeBuilder::RskShapeBuilder(int m)
    : m_(m), cnt_(static_cast<std::size_t>(m) * m, 0), len_(m, 0) {
  if (m < 1) throw Error("alphabet size must be >= 1");
}

void RskShapeBuilder::insert(int letter) {
  if (letter < 0 || letter >= m_) throw Error("letter out of range");
  ++n_;
  int x = letter;
  for (int i = 0; i < m_; ++i) {
    int* row = &cnt_[static_cast<std::size_t>(i) * m_];
    int y = x + 1;
    while (y < m_ && row[y] == 0) ++y;
    ++row[x];
    if (y == m_) {
      ++len_[i];
      return;
    }
    --row[y];
    x = y;
  }
  throw Error("RSK insertion overflowed the alphabet bound");
}

TableauShape RskShapeBuilder::shape() const { return {len_, n_}; }

TableauShape rsk_shape(const WordSample& word) {
  if (word.letters.empty()) throw Error("word must be nonempty");
  RskShapeBuilder b(word.m);
  for (int x : word.letters) b.insert(x);
  return b.shape();
}

int li_dp(const WordSample& word) {
  if (word.letters.empty()) throw Error("word must be nonempty");
  const int m = word.m;
  const int n = word.n();
  if (m == 1) return n;
  // Row c holds a^c - a^{m-1}, so consecutive differences are the S^c walks.
  RowMatrix W = RowMatrix::Zero(m, n + 1);
  for (int c = 0; c + 1 < m; ++c)
    for (int k = 0; k <= n; ++k) W(c, k) = word.count(k, c) - word.count(k, m - 1);
  const double best = staircase_max_single(IncrementMatrix::from_prefix(std::move(W))).value;
  double drift = 0.0;
  for (int q = 0; q + 1 < m; ++q) drift += (q + 1) * word.S(n, q);
  const double li = static_cast<double>(n) / m - drift / m + best;
  const double rounded = std::round(li);
  if (std::abs(li - rounded) > 1e-9) throw Error("non-integral LI from the chained maximum");
  return static_cast<int>(rounded);
}

int v_r_bruteforce(const WordSample& word, int r) {
  if (word.n() > 14 || word.m > 5) throw Error("v_r_bruteforce limited to n <= 14, m <= 5");
  const int m = word.m;
  const int n = word.n();
  RowMatrix W(m, n + 1);
  for (int l = 0; l < m; ++l)
    for (int k = 0; k <= n; ++k) W(l, k) = word.count(k, l);
  return static_cast<int>(std::lround(staircase_max_multi_enumerate(IncrementMatrix::from_prefix(std::move(W)), r)));
}

int disjoint_subsequences_oracle(const WordSample& word, int r) {
  const int n = word.n();
  if (n > 10) throw Error("disjoint_subsequences_oracle limited to n <= 10");
  if (r < 1) throw Error("r must be >= 1");
  std::vector<int> last(r, -1);  // -1: class still empty
  int best = 0;
  auto dfs = [&](auto&& self, int pos, int acc) -> void {
    if (acc + (n - pos) <= best) return;
    if (pos == n) {
      best = acc;
      return;
    }
    const int x = word.letters[pos];
    bool opened = false;
    for (int c = 0; c < r; ++c) {
      if (last[c] < 0) {
        if (opened) continue;  // empty classes are interchangeable
        opened = true;
      } else if (x < last[c]) {
        continue;
      }
      int saved = last[c];
      last[c] = x;
      self(self, pos + 1, acc + 1);
      last[c] = saved;
    }
    self(self, pos + 1, acc);
  };
  dfs(dfs, 0, 0);
  return best;
}

ShapeSampleSet simulate_shapes(const TransitionMatrix& P, int n, int reps, std::uint64_t seed) {
  if (n < 1 || reps < 1) throw Error("n and reps must be >= 1");
  const auto diag = validate_chain(P);
  if (!diag.irreducible || !diag.aperiodic) throw Error("shape simulation needs an irreducible aperiodic chain");
  const int m = P.m();
  const Vector pi = stationary_distribution(P);
  const MultiplicityStructure ms = multiplicity_structure(pi);
  ShapeSampleSet out;
  out.reps = reps;
  out.m = m;
  out.scaled.resize(reps, m);
  out.rawV.resize(reps, m);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (int i = 0; i < reps; ++i) {
    ChainSampler sampler(P, pi, Start::stationary(), sub_seed(seed, i));
    RskShapeBuilder b(m);
    for (int k = 0; k < n; ++k) b.insert(sampler.next());
    double v = 0.0;
    for (int k = 0; k < m; ++k) {
      v += b.row(k);
      out.rawV(i, k) = v;
      out.scaled(i, k) = (b.row(k) - pi(ms.tau[k]) * n) / root_n;
    }
  }
  return out;
}

Matrix empirical_t_covariance(const TransitionMatrix& P, int n, int reps, std::uint64_t seed) {
  if (n < 1) throw Error("n must be >= 1");
  if (reps < 2) throw Error("need at least 2 replicas");
  const int m = P.m();
  const Vector pi = stationary_distribution(P);
  Matrix samples(reps, m);
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<int> counts(m);
  for (int i = 0; i < reps; ++i) {
    ChainSampler sampler(P, pi, Start::stationary(), sub_seed(seed, i));
    std::fill(counts.begin(), counts.end(), 0);
    for (int k = 0; k < n; ++k) ++counts[sampler.next()];
    for (int r = 0; r < m; ++r) samples(i, r) = (counts[r] - pi(r) * n) / root_n;
  }
  return empirical_cov(samples);
}

double li_limit_density(double a, double y) {
  if (y < 0.0) return 0.0;
  const double k = a / (1.0 - a);
  return 16.0 / std::sqrt(2.0 * std::numbers::pi) * std::pow(k, 1.5) * y * y * std::exp(-2.0 * k * y * y);
}

double li_limit_cdf(double a, double y) {
  if (y <= 0.0) return 0.0;
  const double c = std::sqrt((1.0 - a) / a);
  return chi3_cdf(2.0 * y / c);
}

}  // namespace mshape
