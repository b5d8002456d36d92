#include "mshape/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace mshape {

CovarianceMatrix asymptotic_covariance(const TransitionMatrix& P) {
  SpectralData sd = spectral_decomposition(P);
  Vector pi = stationary_distribution(P);
  CMatrix A = sd.S_inv * sd.D.asDiagonal() * sd.S;
  CMatrix Pi = pi.cast<Complex>().asDiagonal();
  CMatrix full = Pi + Pi * A + A.transpose() * Pi;
  if (full.imag().cwiseAbs().maxCoeff() >= 1e-9) throw Error("non-real covariance");
  Matrix sigma = full.real();
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
  return {sigma};
}

CovarianceMatrix iid_covariance(const Vector& pi) {
  Matrix sigma = Matrix(pi.asDiagonal()) - pi * pi.transpose();
  return {sigma};
}

Matrix correlation_matrix(const CovarianceMatrix& sig) {
  const int m = sig.m();
  Vector sd(m);
  for (int r = 0; r < m; ++r) {
    if (!(sig.sigma(r, r) > 0.0)) throw Error("degenerate component");
    sd(r) = sig.sd(r);
  }
  Matrix corr = sig.sigma.array() / (sd * sd.transpose()).array();
  corr.diagonal().setOnes();
  return corr;
}

CyclicSpectrum cyclic_spectrum(const Vector& a) {
  const int m = static_cast<int>(a.size());
  const double tau = 2.0 * std::numbers::pi / m;
  CyclicSpectrum cs;
  cs.gamma = CVector::Zero(m);
  cs.beta.resize(m);
  for (int j = 0; j < m; ++j) {
    cs.beta(j) = std::cos(tau * j);
    if (j == 0) continue;
    Complex lambda = 0.0;
    for (int k = 0; k < m; ++k) lambda += a(k) * std::polar(1.0, tau * ((k * j) % m));
    cs.gamma(j) = lambda / (1.0 - lambda);
  }
  cs.M.resize(m);
  cs.M[0] = Matrix::Constant(m, m, -1.0 / (m - 1));
  cs.M[0].diagonal().setOnes();
  for (int j = 1; j < m; ++j) {
    cs.M[j].resize(m, m);
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) cs.M[j](k, l) = std::cos(tau * ((j * std::abs(k - l)) % m));
  }
  return cs;
}

CovarianceMatrix cyclic_covariance(const Vector& a) {
  const int m = static_cast<int>(a.size());
  const auto d = validate_chain(cyclic_chain(a));
  if (!d.irreducible || !d.aperiodic) throw Error("cyclic chain must be irreducible and aperiodic");
  CyclicSpectrum cs = cyclic_spectrum(a);
  const double m2 = static_cast<double>(m) * m;
  Matrix sigma = ((m - 1) / m2) * cs.M[0];
  // 1-based index j runs 2..m0+1 (odd m) or 2..m0 plus the real middle term (even m).
  const int m0 = m / 2;
  const int last = (m % 2 == 1) ? m0 + 1 : m0;
  for (int j = 2; j <= last; ++j) sigma += (4.0 / m2) * cs.gamma(j - 1).real() * cs.M[j - 1];
  if (m % 2 == 0) sigma += (2.0 / m2) * cs.gamma(m0).real() * cs.M[m0];
  return {sigma};
}

CyclicIidResult cyclic_iid_test(const Vector& a, double tol) {
  const int m = static_cast<int>(a.size());
  CyclicSpectrum cs = cyclic_spectrum(a);
  double mean = 0.0;
  for (int j = 1; j < m; ++j) mean += cs.gamma(j).real();
  mean /= (m - 1);
  CyclicIidResult res;
  for (int j = 1; j < m; ++j) res.spread = std::max(res.spread, std::abs(cs.gamma(j).real() - mean));
  res.equivalent = res.spread <= tol;
  if (res.equivalent) res.scale = 1.0 + 2.0 * mean;
  return res;
}

CovarianceMatrix interpolated_covariance(const CovarianceMatrix& sigma0, const Vector& pi, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw Error("delta must lie in (0,1]");
  Matrix s = (sigma0.sigma + (1.0 - delta) * iid_covariance(pi).sigma) / delta;
  return {s};
}

Matrix psd_factor(const CovarianceMatrix& sig, double tol) {
  const int m = sig.m();
  Eigen::SelfAdjointEigenSolver<Matrix> es(sig.sigma);
  if (es.info() != Eigen::Success) throw Error("eigen decomposition failed");
  Matrix C(m, m);
  for (int i = 0; i < m; ++i) {
    int src = m - 1 - i;
    double lam = es.eigenvalues()(src);
    if (lam < -tol) throw Error("not positive semidefinite");
    // Sigma is singular by construction; treat |lambda| <= tol as an exact zero.
    double s = lam <= tol ? 0.0 : std::sqrt(lam);
    C.col(i) = s * es.eigenvectors().col(src);
  }
  return C;
}

MultiplicityStructure multiplicity_structure(const Vector& pi, double tol) {
  const int m = static_cast<int>(pi.size());
  MultiplicityStructure ms;
  ms.tol = tol;
  ms.tau.resize(m);
  std::iota(ms.tau.begin(), ms.tau.end(), 0);
  std::stable_sort(ms.tau.begin(), ms.tau.end(), [&](int a, int b) {
    if (std::abs(pi(a) - pi(b)) > tol) return pi(a) > pi(b);
    return a < b;
  });
  ms.nu.resize(m);
  ms.m_r.assign(m, 0);
  ms.d_r.assign(m, 0);
  double acc = 0.0;
  for (int r = 0; r < m; ++r) {
    acc += pi(ms.tau[r]);
    ms.nu(r) = acc;
  }
  int start = 0;
  while (start < m) {
    int end = start + 1;
    while (end < m && pi(ms.tau[start]) - pi(ms.tau[end]) <= tol) ++end;
    for (int r = start; r < end; ++r) {
      ms.m_r[r] = start;
      ms.d_r[r] = end - start;
    }
    start = end;
  }
  return ms;
}

FactorCondition structured_factor_condition(const std::vector<double>& vars, double Gamma, int d1) {
  if (d1 < 2) throw Error("d1 must be >= 2");
  if (static_cast<int>(vars.size()) != d1) throw Error("need exactly d1 variances");
  double s2 = 0.0, s4 = 0.0;
  for (double v : vars) {
    s2 += v;
    s4 += v * v;
  }
  s2 /= d1;
  s4 /= d1;
  const double spread = s4 - s2 * s2;
  const double gap = s2 - Gamma;
  FactorCondition fc;
  if (!(gap > 0.0) || spread > gap * gap / (d1 - 1)) return fc;
  const double root = std::sqrt(std::max(0.0, gap * gap - (d1 - 1) * spread));
  const double k = d1 / (2.0 * (d1 - 1));
  fc.feasible = true;
  fc.b2_low = k * (gap - root);
  fc.b2_high = k * (gap + root);
  return fc;
}

TwoLetterForms two_letter_forms(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) throw Error("two-letter parameters must lie in [0,1]");
  const double s = a + b;
  if (!(s > 0.0 && s < 2.0)) throw Error("degenerate two-letter chain");
  TwoLetterForms f;
  f.mu = (b - a) / s;
  f.sigma2 = 4.0 * a * b / (s * s);
  f.lambda2 = 1.0 - s;
  f.sigma_tilde2 = f.sigma2 * (1.0 + f.lambda2) / (1.0 - f.lambda2);
  return f;
}

}  // namespace mshape
