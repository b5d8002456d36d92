#pragma once

#include <cstdint>
#include <utility>

#include "mshape/core.hpp"
#include "mshape/covariance.hpp"

namespace mshape {

enum class GueScale {
  // density proportional to exp(-Tr M^2): diagonal N(0, 1/2), off-diagonal parts N(0, 1/4)
  PhiDensity,
  // diagonal N(0, 1), off-diagonal parts N(0, 1/2)
  UnitVariance,
  // twice UnitVariance's variances; after the trace is removed an m = 2 matrix
  // has diagonal +-X with Var X = 1 and off-diagonal parts of variance 1
  UnitTraceless,
};

// Eigenvalues sorted descending.
using SpectrumSample = Vector;

SpectrumSample sample_gue_spectrum(int m, Rng& rng, GueScale scale = GueScale::PhiDensity);
SpectrumSample sample_traceless_gue_spectrum(int m, Rng& rng, GueScale scale = GueScale::PhiDensity);

// Conjecture sampler: tau-permuted Gaussian diagonal with one Hermitian 2x2
// coupling per tie block of size 2.
SpectrumSample sample_block_conjecture(const Vector& pi, const CovarianceMatrix& sig, Rng& rng);

struct PairParams {
  double hat1_sq;  // Var W1
  double hat2_sq;  // Var W2 = Var W3 = Var W4
  double cov12;    // Cov(W1, W2)
  double beta;     // endpoint weight of the equivalent single-path functional
};

PairParams pair_params(const Matrix& sig2);

// Returns (lambda1, lambda1 + lambda2) of the 2x2 block.
std::pair<double, double> two_by_two_pair_sampler(const Matrix& sig2, Rng& rng);

double perturbed_lambda1(double rho, Rng& rng);

}  // namespace mshape
