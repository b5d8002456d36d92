#pragma once

#include <cstdint>
#include <vector>

#include "mshape/core.hpp"

namespace mshape {

// Row-stochastic m x m matrix; p(r, s) = P(next = s | current = r).
// Letters are 0-based throughout the library: letter r is alpha_{r+1}.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(Matrix p);

  int m() const { return static_cast<int>(p_.rows()); }
  const Matrix& p() const { return p_; }
  double operator()(int r, int s) const { return p_(r, s); }

 private:
  Matrix p_;
};

struct ChainDiagnostics {
  bool irreducible = false;
  bool aperiodic = false;
  bool doubly_stochastic = false;
  bool cyclic = false;
  int period = 0;
};

struct SpectralData {
  CVector eigenvalues;  // eigenvalues(0) == 1, rest by descending modulus
  CMatrix S;            // left eigenvectors as rows, row 0 == pi
  CMatrix S_inv;        // column 0 == (1, ..., 1)
  CVector D;            // diagonal of D: -1/2, lambda_j / (1 - lambda_j)
};

ChainDiagnostics validate_chain(const TransitionMatrix& P);

Vector stationary_distribution(const TransitionMatrix& P);

SpectralData spectral_decomposition(const TransitionMatrix& P);

// Circulant with first row (a_1, a_m, ..., a_2); row i+1 is row i shifted right.
TransitionMatrix cyclic_chain(const Vector& a);

// Inverse of cyclic_chain on circulant matrices: a_k = p(k-1, 0).
Vector cyclic_first_column(const TransitionMatrix& P);

// Rows all equal to pi.
TransitionMatrix iid_chain(const Vector& pi);

// (1 - delta) I + delta P0.
TransitionMatrix blended_chain(const TransitionMatrix& P0, double delta);

struct Start {
  int state = -1;  // -1: X_0 ~ pi

  static Start stationary() { return {}; }
  static Start at(int k) { return {k}; }
};

struct WordSample {
  int m = 0;
  std::vector<int> letters;  // X_1..X_n, 0-based
  std::vector<int> counts;   // (n+1) x m row-major: counts[k*m + r] = a^r_k

  int n() const { return static_cast<int>(letters.size()); }
  int count(int k, int r) const { return counts[static_cast<std::size_t>(k) * m + r]; }
  double T(int k, int r, const Vector& pi) const { return count(k, r) - pi(r) * k; }
  int S(int k, int r) const { return count(k, r) - count(k, r + 1); }

  static WordSample from_letters(int m, std::vector<int> letters);
};

// Streams letters of a chain; X_0 is drawn on construction and not emitted.
class ChainSampler {
 public:
  ChainSampler(const TransitionMatrix& P, Start start, std::uint64_t seed);
  ChainSampler(const TransitionMatrix& P, const Vector& pi, Start start, std::uint64_t seed);

  int next();
  int current() const { return state_; }

 private:
  int draw(const double* cumulative);

  int m_;
  std::vector<double> cumulative_;  // m x m row-wise cumulative sums
  Rng rng_;
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
  int state_ = 0;
};

WordSample sample_word(const TransitionMatrix& P, Start start, int n, std::uint64_t seed);

}  // namespace mshape
