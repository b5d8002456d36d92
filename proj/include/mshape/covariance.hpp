#pragma once

#include <vector>

#include "mshape/core.hpp"
#include "mshape/markov.hpp"

namespace mshape {

struct CovarianceMatrix {
  Matrix sigma;

  int m() const { return static_cast<int>(sigma.rows()); }
  double sd(int r) const { return std::sqrt(sigma(r, r)); }
};

struct MultiplicityStructure {
  std::vector<int> tau;  // 0-based letters by descending pi, ties by ascending index
  Vector nu;             // nu(r) = pi_tau(0) + ... + pi_tau(r)
  std::vector<int> m_r;  // per row r (0-based): letters strictly more probable than tau(r)
  std::vector<int> d_r;  // per row r: size of the tie block containing tau(r)
  double tol = 1e-9;
};

struct CyclicSpectrum {
  CVector gamma;               // gamma(j), j = 0..m-1; gamma(0) unused (0)
  Vector beta;                 // beta(j) = cos(2 pi j / m)
  std::vector<Matrix> M;       // M[0] = M^(1), M[j-1] = M^(j)
};

struct CyclicIidResult {
  bool equivalent = false;
  double scale = 0.0;   // 1 + 2 gamma when equivalent
  double spread = 0.0;  // max_j |Re gamma_j - mean|
};

struct FactorCondition {
  bool feasible = false;
  double b2_low = 0.0;  // closed interval [b2_low, b2_high] when feasible
  double b2_high = 0.0;
};

struct TwoLetterForms {
  double mu, sigma2, lambda2, sigma_tilde2;
};

CovarianceMatrix asymptotic_covariance(const TransitionMatrix& P);
CovarianceMatrix iid_covariance(const Vector& pi);
Matrix correlation_matrix(const CovarianceMatrix& sig);

CyclicSpectrum cyclic_spectrum(const Vector& a);
CovarianceMatrix cyclic_covariance(const Vector& a);
CyclicIidResult cyclic_iid_test(const Vector& a, double tol = 1e-9);

CovarianceMatrix interpolated_covariance(const CovarianceMatrix& sigma0, const Vector& pi, double delta);

// C with C C^T = Sigma; columns ordered by descending eigenvalue.
Matrix psd_factor(const CovarianceMatrix& sig, double tol = 1e-10);

MultiplicityStructure multiplicity_structure(const Vector& pi, double tol = 1e-9);

FactorCondition structured_factor_condition(const std::vector<double>& vars, double Gamma, int d1);

TwoLetterForms two_letter_forms(double a, double b);

}  // namespace mshape
