#pragma once

#include <functional>
#include <vector>

#include "mshape/core.hpp"

namespace mshape {

struct KsReport {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;  // 0 for one-sample
};

KsReport ks_two_sample(std::vector<double> xs, std::vector<double> ys);
KsReport ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf);

// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);
// Asymptotic critical value c(alpha)/sqrt(n_eff); n2 == 0 means one-sample.
double ks_critical_value(double alpha, std::size_t n1, std::size_t n2 = 0);

// Unbiased covariance of the columns of a reps x m sample matrix.
Matrix empirical_cov(const Matrix& samples);

struct Summary {
  double mean = 0.0;
  double var = 0.0;
  std::vector<double> quantiles;  // q01..q99
};

Summary summarize(std::vector<double> xs);

// Linear interpolation between order statistics (inclusive rule).
double quantile_sorted(const std::vector<double>& sorted, double p);

double chi3_cdf(double x);

}  // namespace mshape
