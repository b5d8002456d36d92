#pragma once

#include <cstdint>
#include <vector>

#include "mshape/core.hpp"
#include "mshape/markov.hpp"

namespace mshape {

struct TableauShape {
  std::vector<int> rows;  // length m, nonincreasing
  int n = 0;
};

// Row insertion for letters in 0..m-1. A row is weakly increasing, so it is
// stored as per-letter counts; an inserted letter bumps the leftmost strictly
// greater entry.
class RskShapeBuilder {
 public:
  explicit RskShapeBuilder(int m);

  void insert(int letter);
  TableauShape shape() const;
  int row(int i) const { return len_[i]; }
  int m() const { return m_; }

 private:
  int m_;
  int n_ = 0;
  std::vector<int> cnt_;  // m rows x m letters
  std::vector<int> len_;
};

TableauShape rsk_shape(const WordSample& word);

int li_dp(const WordSample& word);

// Sum of the first r RSK rows via exhaustive staircase enumeration.
int v_r_bruteforce(const WordSample& word, int r);

// Largest total length of r disjoint weakly increasing subsequences.
int disjoint_subsequences_oracle(const WordSample& word, int r);

struct ShapeSampleSet {
  int reps = 0;
  int m = 0;
  Matrix scaled;  // reps x m: (R^k_n - pi_tau(k) n) / sqrt(n)
  Matrix rawV;    // reps x m: V^r_n
};

ShapeSampleSet simulate_shapes(const TransitionMatrix& P, int n, int reps, std::uint64_t seed);

// Sample covariance of (T^1_n, ..., T^m_n) / sqrt(n) over reps stationary runs.
Matrix empirical_t_covariance(const TransitionMatrix& P, int n, int reps, std::uint64_t seed);

// Limit law of (LI_n - n/2)/sqrt(n) for the symmetric two-letter chain a = b.
double li_limit_density(double a, double y);
double li_limit_cdf(double a, double y);

}  // namespace mshape
