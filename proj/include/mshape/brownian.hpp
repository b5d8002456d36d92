#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mshape/core.hpp"
#include "mshape/covariance.hpp"

namespace mshape {

// paths(l, k) = sigma_l * Btilde^l(k / N); covariance of column k is (k/N) Sigma.
struct PathBundle {
  int m = 0;
  int N = 0;
  RowMatrix paths;
  CovarianceMatrix sigma;

  std::span<const double> path(int l) const {
    return {paths.data() + static_cast<std::ptrdiff_t>(l) * (N + 1), static_cast<std::size_t>(N) + 1};
  }
  double end(int l) const { return paths(l, N); }
};

// Holds the factor of Sigma so repeated draws skip the eigensolve.
class PathSampler {
 public:
  explicit PathSampler(CovarianceMatrix sig);

  void sample(PathBundle& out, int N, Rng& rng) const;
  PathBundle sample(int N, Rng& rng) const;
  const Matrix& factor() const { return C_; }

 private:
  CovarianceMatrix sig_;
  Matrix C_;
};

PathBundle sample_path_bundle(const CovarianceMatrix& sig, int N, std::uint64_t seed);

// Standard Brownian path on the grid k/N, k = 0..N.
std::vector<double> sample_standard_path(int N, Rng& rng);

// r is 1-based, as are the rows of the limit shape.
double limit_functional_v(const PathBundle& bundle, const MultiplicityStructure& ms, int r);
Vector limit_shape_rows(const PathBundle& bundle, const MultiplicityStructure& ms);

double d_functional(const PathBundle& std_bundle, int r);
double h_functional(const PathBundle& std_bundle, int r);

double u_functional(std::span<const double> path, double beta);

struct LocalScore {
  double score = 0.0;
  double reflected_max = 0.0;
};

LocalScore local_score_pair(std::span<const double> path);

// Continuum-refined extremes: each grid step is filled in by an independent
// Brownian bridge with variance step_var, and its max/min are drawn exactly.
double local_score_bridged(std::span<const double> path, double step_var, Rng& rng);
double reflected_max_bridged(std::span<const double> path, double step_var, Rng& rng);
double running_max_bridged(std::span<const double> path, double step_var, Rng& rng);

// (V^1, V^2) of a two-path block, r = 1 maximum refined by bridges.
std::pair<double, double> block_rows_bridged(const PathBundle& two_paths, Rng& rng);

}  // namespace mshape
