#include "mshape/markov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

namespace mshape {
namespace {

constexpr double kRowTol = 1e-12;

std::vector<int> bfs_levels(const Matrix& p, bool transpose) {
  const int m = static_cast<int>(p.rows());
  std::vector<int> level(m, -1);
  std::queue<int> q;
  level[0] = 0;
  q.push(0);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < m; ++v) {
      double e = transpose ? p(v, u) : p(u, v);
      if (e > 0.0 && level[v] < 0) {
        level[v] = level[u] + 1;
        q.push(v);
      }
    }
  }
  return level;
}

}  // namespace

TransitionMatrix::TransitionMatrix(Matrix p) : p_(std::move(p)) {
  if (p_.rows() != p_.cols()) throw Error("transition matrix must be square");
  if (p_.rows() < 2) throw Error("transition matrix needs m >= 2");
  for (int r = 0; r < p_.rows(); ++r) {
    for (int s = 0; s < p_.cols(); ++s) {
      double v = p_(r, s);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw Error("transition matrix entry out of [0,1] at row " + std::to_string(r + 1));
    }
    if (std::abs(p_.row(r).sum() - 1.0) > kRowTol)
      throw Error("transition matrix row " + std::to_string(r + 1) + " does not sum to 1");
  }
}

ChainDiagnostics validate_chain(const TransitionMatrix& P) {
  const Matrix& p = P.p();
  const int m = P.m();
  ChainDiagnostics d;

  auto fwd = bfs_levels(p, false);
  auto bwd = bfs_levels(p, true);
  d.irreducible = std::all_of(fwd.begin(), fwd.end(), [](int l) { return l >= 0; }) &&
                  std::all_of(bwd.begin(), bwd.end(), [](int l) { return l >= 0; });

  int g = 0;
  for (int u = 0; u < m; ++u) {
    if (fwd[u] < 0) continue;
    for (int v = 0; v < m; ++v)
      if (p(u, v) > 0.0 && fwd[v] >= 0) g = std::gcd(g, std::abs(fwd[u] + 1 - fwd[v]));
  }
  d.period = g;
  d.aperiodic = g == 1;

  d.doubly_stochastic = true;
  for (int s = 0; s < m; ++s)
    if (std::abs(p.col(s).sum() - 1.0) > kRowTol) d.doubly_stochastic = false;

  d.cyclic = true;
  for (int i = 0; i < m && d.cyclic; ++i)
    for (int j = 0; j < m; ++j)
      if (std::abs(p(i, j) - p((i + 1) % m, (j + 1) % m)) > kRowTol) {
        d.cyclic = false;
        break;
      }
  return d;
}

Vector stationary_distribution(const TransitionMatrix& P) {
  if (!validate_chain(P).irreducible) throw Error("no unique stationary distribution");
  const int m = P.m();
  Matrix A = P.p().transpose() - Matrix::Identity(m, m);
  A.row(m - 1).setOnes();
  Vector b = Vector::Zero(m);
  b(m - 1) = 1.0;
  Vector pi = A.fullPivLu().solve(b);
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  double resid = (pi.transpose() * P.p() - pi.transpose()).cwiseAbs().maxCoeff();
  if (resid > 1e-10) throw Error("stationary distribution residual too large");
  return pi;
}

SpectralData spectral_decomposition(const TransitionMatrix& P) {
  const int m = P.m();
  Eigen::EigenSolver<Matrix> es(P.p().transpose());
  if (es.info() != Eigen::Success) throw Error("eigen decomposition failed");
  CVector vals = es.eigenvalues();
  CMatrix vecs = es.eigenvectors();

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto lead = std::min_element(order.begin(), order.end(),
                               [&](int a, int b) { return std::abs(vals(a) - 1.0) < std::abs(vals(b) - 1.0); });
  std::iter_swap(order.begin(), lead);
  constexpr double tie = 1e-12;
  std::stable_sort(order.begin() + 1, order.end(), [&](int a, int b) {
    Complex x = vals(a), y = vals(b);
    if (std::abs(std::abs(x) - std::abs(y)) > tie) return std::abs(x) > std::abs(y);
    if (std::abs(x.real() - y.real()) > tie) return x.real() > y.real();
    return x.imag() > y.imag();
  });

  if (std::abs(vals(order[0]) - 1.0) > 1e-9) throw Error("no unit eigenvalue");
  if (m > 1 && std::abs(vals(order[1])) >= 1.0 - 1e-12) throw Error("not aperiodic-irreducible");

  SpectralData sd;
  sd.eigenvalues.resize(m);
  sd.S.resize(m, m);
  for (int i = 0; i < m; ++i) {
    sd.eigenvalues(i) = vals(order[i]);
    sd.S.row(i) = vecs.col(order[i]).transpose().normalized();
  }
  sd.eigenvalues(0) = 1.0;

  Eigen::JacobiSVD<CMatrix> svd(sd.S);
  const auto& sv = svd.singularValues();
  if (sv(m - 1) <= 0.0 || sv(0) / sv(m - 1) > 1e12) throw Error("near-defective transition matrix");

  sd.S.row(0) /= sd.S.row(0).sum();
  sd.S_inv = sd.S.inverse();

  sd.D.resize(m);
  sd.D(0) = -0.5;
  for (int j = 1; j < m; ++j) sd.D(j) = sd.eigenvalues(j) / (1.0 - sd.eigenvalues(j));
  return sd;
}

TransitionMatrix cyclic_chain(const Vector& a) {
  const int m = static_cast<int>(a.size());
  if (m < 2) throw Error("cyclic chain needs m >= 2");
  if ((a.array() < 0.0).any() || std::abs(a.sum() - 1.0) > 1e-12)
    throw Error("cyclic chain needs a probability vector");
  Matrix p(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) p(i, j) = a(((i - j) % m + m) % m);
  return TransitionMatrix(std::move(p));
}

Vector cyclic_first_column(const TransitionMatrix& P) { return P.p().col(0); }

TransitionMatrix iid_chain(const Vector& pi) {
  const int m = static_cast<int>(pi.size());
  Matrix p(m, m);
  for (int i = 0; i < m; ++i) p.row(i) = pi.transpose();
  return TransitionMatrix(std::move(p));
}

TransitionMatrix blended_chain(const TransitionMatrix& P0, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw Error("blend weight must lie in (0,1]");
  const int m = P0.m();
  return TransitionMatrix((1.0 - delta) * Matrix::Identity(m, m) + delta * P0.p());
}

WordSample WordSample::from_letters(int m, std::vector<int> letters) {
  WordSample w;
  w.m = m;
  w.letters = std::move(letters);
  const std::size_t n = w.letters.size();
  w.counts.assign((n + 1) * m, 0);
  for (std::size_t k = 0; k < n; ++k) {
    int x = w.letters[k];
    if (x < 0 || x >= m) throw Error("letter out of range");
    std::copy_n(&w.counts[k * m], m, &w.counts[(k + 1) * m]);
    ++w.counts[(k + 1) * m + x];
  }
  return w;
}

ChainSampler::ChainSampler(const TransitionMatrix& P, Start start, std::uint64_t seed)
    : ChainSampler(P, start.state < 0 ? stationary_distribution(P) : Vector(), start, seed) {}

ChainSampler::ChainSampler(const TransitionMatrix& P, const Vector& pi, Start start, std::uint64_t seed)
    : m_(P.m()), cumulative_(static_cast<std::size_t>(P.m()) * P.m()), rng_(seed) {
  for (int r = 0; r < m_; ++r) {
    double acc = 0.0;
    for (int s = 0; s < m_; ++s) {
      acc += P(r, s);
      cumulative_[r * m_ + s] = acc;
    }
  }
  if (start.state >= 0) {
    if (start.state >= m_) throw Error("start state out of range");
    state_ = start.state;
  } else {
    std::vector<double> cum(m_);
    std::partial_sum(pi.data(), pi.data() + m_, cum.begin());
    state_ = draw(cum.data());
  }
}

int ChainSampler::draw(const double* cumulative) {
  double u = unif_(rng_);
  int j = 0;
  while (j < m_ - 1 && u >= cumulative[j]) ++j;
  // Skip zero-probability letters that the final fallback could land on.
  while (j > 0 && cumulative[j] == cumulative[j - 1]) --j;
  return j;
}

int ChainSampler::next() {
  state_ = draw(&cumulative_[static_cast<std::size_t>(state_) * m_]);
  return state_;
}

WordSample sample_word(const TransitionMatrix& P, Start start, int n, std::uint64_t seed) {
  if (n < 1) throw Error("word length must be >= 1");
  if (!validate_chain(P).irreducible) throw Error("word sampling needs an irreducible chain");
  ChainSampler sampler(P, start, seed);
  std::vector<int> letters(n);
  for (auto& x : letters) x = sampler.next();
  return WordSample::from_letters(P.m(), std::move(letters));
}

}  // namespace mshape
