#include "mshape/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mshape/kernels.hpp"

namespace mshape {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// g[d](x) = W[d][x] - W[d+1][x], the gain of switching from letter d to d+1 at step x.
std::vector<std::vector<double>> switch_gains(const IncrementMatrix& inc) {
  const int m = inc.m();
  const std::size_t len = static_cast<std::size_t>(inc.N()) + 1;
  std::vector<std::vector<double>> g(std::max(m - 1, 0), std::vector<double>(len));
  for (int d = 0; d + 1 < m; ++d) kernels::sub(inc.row(d), inc.row(d + 1), g[d].data(), len);
  return g;
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Maximize sum_{i,t} h[i+t](A[i][t]) over s x T arrays with entries in [0,N],
// rows nondecreasing in t and columns nonincreasing in i.
double dominance_dp(const std::vector<const std::vector<double>*>& h, int s, int T, int N) {
  const std::size_t base = static_cast<std::size_t>(N) + 1;
  if (s == 1) {
    std::vector<double> F(*h[0]), next(base);
    for (int t = 1; t < T; ++t) {
      kernels::add_prefix_max(h[t]->data(), F.data(), next.data(), base);
      F.swap(next);
    }
    return kernels::max(F.data(), base);
  }

  std::size_t total = 1;
  std::vector<std::size_t> stride(s);
  for (int i = 0; i < s; ++i) {
    stride[i] = total;
    total *= base;
  }
  std::vector<int> v(s);
  auto decode = [&](std::size_t idx) {
    for (int i = 0; i < s; ++i) {
      v[i] = static_cast<int>(idx % base);
      idx /= base;
    }
  };
  auto ordered = [&]() {
    for (int i = 1; i < s; ++i)
      if (v[i] > v[i - 1]) return false;
    return true;
  };

  std::vector<double> F(total, kNegInf);
  for (std::size_t idx = 0; idx < total; ++idx) {
    decode(idx);
    if (!ordered()) continue;
    double acc = 0.0;
    for (int i = 0; i < s; ++i) acc += (*h[i])[v[i]];
    F[idx] = acc;
  }
  for (int t = 1; t < T; ++t) {
    for (int i = 0; i < s; ++i) {
      for (std::size_t idx = 0; idx < total; ++idx)
        if ((idx / stride[i]) % base != 0) F[idx] = std::max(F[idx], F[idx - stride[i]]);
    }
    for (std::size_t idx = 0; idx < total; ++idx) {
      decode(idx);
      if (!ordered()) {
        F[idx] = kNegInf;
        continue;
      }
      double acc = 0.0;
      for (int i = 0; i < s; ++i) acc += (*h[i + t])[v[i]];
      F[idx] += acc;
    }
  }
  return *std::max_element(F.begin(), F.end());
}

void check_rows(const IncrementMatrix& inc, int r) {
  if (r < 1 || r > inc.m()) throw Error("row count r must satisfy 1 <= r <= m");
}

}  // namespace

IncrementMatrix::IncrementMatrix(int m, int N) : W_(RowMatrix::Zero(m, N + 1)) {}

IncrementMatrix IncrementMatrix::from_increments(const RowMatrix& w) {
  IncrementMatrix inc(static_cast<int>(w.rows()), static_cast<int>(w.cols()));
  for (int l = 0; l < w.rows(); ++l)
    kernels::cumsum(w.data() + l * w.cols(), inc.W_.data() + l * inc.W_.cols() + 1,
                    static_cast<std::size_t>(w.cols()), 0.0);
  return inc;
}

IncrementMatrix IncrementMatrix::from_prefix(RowMatrix W) {
  if (W.cols() < 1) throw Error("prefix matrix needs at least one column");
  IncrementMatrix inc;
  inc.W_ = std::move(W);
  return inc;
}

StaircaseResult staircase_max_single(const IncrementMatrix& inc) {
  const int m = inc.m();
  const int N = inc.N();
  StaircaseResult res;
  res.argmax.r = 1;
  res.argmax.k.assign(1, std::vector<int>(m + 1, 0));
  res.argmax.k[0][m] = N;
  if (m == 0) return res;
  const double constant = inc.W(m - 1, N);
  if (m == 1) {
    res.value = constant;
    return res;
  }
  auto g = switch_gains(inc);
  const int T = m - 1;
  const std::size_t len = static_cast<std::size_t>(N) + 1;
  // B[c][x]: best gain of columns c..T-1 with x_c = x; S[c][x] = max_{y >= x} B[c][y].
  std::vector<std::vector<double>> B(T, std::vector<double>(len)), S(T, std::vector<double>(len));
  for (int c = T - 1; c >= 0; --c) {
    for (std::size_t x = 0; x < len; ++x) B[c][x] = g[c][x] + (c + 1 < T ? S[c + 1][x] : 0.0);
    double best = kNegInf;
    for (std::size_t x = len; x-- > 0;) {
      best = std::max(best, B[c][x]);
      S[c][x] = best;
    }
  }
  // Lexicographically smallest optimal breakpoints.
  std::size_t x = 0;
  double target = S[0][0];
  for (int c = 0; c < T; ++c) {
    while (B[c][x] != target) ++x;
    res.argmax.k[0][c + 1] = static_cast<int>(x);
    if (c + 1 < T) target = S[c + 1][x];
  }
  res.value = constant + S[0][0];
  return res;
}

double staircase_max_multi(const IncrementMatrix& inc, int r) {
  check_rows(inc, r);
  const int m = inc.m();
  const int N = inc.N();
  const int C = m - r;
  double constant = 0.0;
  for (int j = 0; j < r; ++j) constant += inc.W(C + j, N);
  if (C == 0) return constant;

  auto g = switch_gains(inc);
  const int s = std::min(r, C);
  const int T = std::max(r, C);
  if (s > 1 && ipow(N + 1.0, s) * T * s > kStaircaseBudget)
    throw Error("instance too large for exact multi-row maximization");
  std::vector<const std::vector<double>*> h(m - 1);
  for (int d = 0; d + 1 < m; ++d) h[d] = (r <= C) ? &g[d] : &g[m - 2 - d];
  return constant + dominance_dp(h, s, T, N);
}

double staircase_max_multi_enumerate(const IncrementMatrix& inc, int r) {
  check_rows(inc, r);
  const int m = inc.m();
  const int N = inc.N();
  const int C = m - r;
  double constant = 0.0;
  for (int j = 0; j < r; ++j) constant += inc.W(C + j, N);
  if (C == 0) return constant;
  if (ipow(N + 1.0, r * C) > kStaircaseBudget)
    throw Error("instance too large for exact multi-row maximization");

  auto g = switch_gains(inc);
  std::vector<int> x(static_cast<std::size_t>(r) * C);
  double best = kNegInf;
  auto dfs = [&](auto&& self, int cell, double acc) -> void {
    if (cell == r * C) {
      best = std::max(best, acc);
      return;
    }
    const int j = cell / C;
    const int c = cell % C;
    const int lo = c > 0 ? x[cell - 1] : 0;
    const int hi = j > 0 ? x[cell - C] : N;
    for (int v = lo; v <= hi; ++v) {
      x[cell] = v;
      self(self, cell + 1, acc + g[j + c][v]);
    }
  };
  dfs(dfs, 0, 0.0);
  return constant + best;
}

double staircase_objective(const IncrementMatrix& inc, const StaircaseAssignment& a) {
  const int m = inc.m();
  const int C = m - a.r;
  double total = 0.0;
  for (int j = 0; j < a.r; ++j)
    for (int l = j; l <= C + j; ++l) total += inc.W(l, a.k[j][l + 1]) - inc.W(l, a.k[j][l]);
  return total;
}

bool staircase_feasible(const StaircaseAssignment& a, int m, int N) {
  const int C = m - a.r;
  for (int j = 0; j < a.r; ++j) {
    if (a.k[j][j] != 0 || a.k[j][C + j + 1] != N) return false;
    for (int l = j + 1; l <= C + j + 1; ++l) {
      if (a.k[j][l - 1] > a.k[j][l]) return false;
      if (j > 0 && l >= j + 1 && l <= C + j && a.k[j][l] > a.k[j - 1][l - 1]) return false;
    }
  }
  return true;
}

}  // namespace mshape
