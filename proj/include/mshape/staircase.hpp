#pragma once

#include <vector>

#include "mshape/core.hpp"

namespace mshape {

// m components over N steps, stored as prefix sums W[l][k], k = 0..N, W[l][0] = 0.
class IncrementMatrix {
 public:
  IncrementMatrix() = default;
  IncrementMatrix(int m, int N);

  // w is m x N; row l holds the per-step increments of component l.
  static IncrementMatrix from_increments(const RowMatrix& w);
  // W is m x (N+1) with W(l, 0) == 0 (e.g. a Brownian path bundle).
  static IncrementMatrix from_prefix(RowMatrix W);

  int m() const { return static_cast<int>(W_.rows()); }
  int N() const { return static_cast<int>(W_.cols()) - 1; }
  double W(int l, int k) const { return W_(l, k); }
  const double* row(int l) const { return W_.data() + static_cast<std::ptrdiff_t>(l) * W_.cols(); }
  const RowMatrix& prefix() const { return W_; }

 private:
  RowMatrix W_;
};

// k[j][l] for row j = 0..r-1 and l = 0..m; entries outside row j's span are -1.
// Row j covers letters j..m-r+j with k[j][j] = 0 and k[j][m-r+j+1] = N.
struct StaircaseAssignment {
  int r = 0;
  std::vector<std::vector<int>> k;
};

struct StaircaseResult {
  double value = 0.0;
  StaircaseAssignment argmax;
};

StaircaseResult staircase_max_single(const IncrementMatrix& inc);

// Budget on candidate evaluations shared by both multi-row routes.
inline constexpr double kStaircaseBudget = 1e8;

// Exact maximum over the r-row staircase set by a dominance DP.
double staircase_max_multi(const IncrementMatrix& inc, int r);

// Same maximum by depth-first enumeration of the free breakpoints.
double staircase_max_multi_enumerate(const IncrementMatrix& inc, int r);

// Objective of one assignment (no feasibility check).
double staircase_objective(const IncrementMatrix& inc, const StaircaseAssignment& a);

bool staircase_feasible(const StaircaseAssignment& a, int m, int N);

}  // namespace mshape
