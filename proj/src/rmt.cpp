#include "mshape/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace mshape {
namespace {

struct Variances {
  double diag;
  double off;
};

Variances variances(GueScale scale) {
  switch (scale) {
    case GueScale::PhiDensity: return {0.5, 0.25};
    case GueScale::UnitVariance: return {1.0, 0.5};
    case GueScale::UnitTraceless: return {2.0, 1.0};
  }
  return {1.0, 0.5};
}

SpectrumSample hermitian_spectrum(const CMatrix& H) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
  Vector ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  return ev;
}

CMatrix gue_matrix(int m, Rng& rng, GueScale scale) {
  if (m < 1) throw Error("matrix size must be >= 1");
  const Variances v = variances(scale);
  std::normal_distribution<double> normal;
  const double sd_diag = std::sqrt(v.diag);
  const double sd_off = std::sqrt(v.off);
  CMatrix H = CMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    H(i, i) = sd_diag * normal(rng);
    for (int j = i + 1; j < m; ++j) {
      const double re = sd_off * normal(rng);
      const double im = sd_off * normal(rng);
      H(i, j) = Complex(re, im);
      H(j, i) = Complex(re, -im);
    }
  }
  return H;
}

}  // namespace

SpectrumSample sample_gue_spectrum(int m, Rng& rng, GueScale scale) {
  return hermitian_spectrum(gue_matrix(m, rng, scale));
}

SpectrumSample sample_traceless_gue_spectrum(int m, Rng& rng, GueScale scale) {
  if (m < 2) throw Error("traceless ensemble needs m >= 2");
  CMatrix H = gue_matrix(m, rng, scale);
  const Complex mean = H.diagonal().mean();
  H.diagonal().array() -= mean.real();
  SpectrumSample ev = hermitian_spectrum(H);
  ev.array() -= ev.mean();  // removes solver round-off; the trace is zero exactly
  return ev;
}

SpectrumSample sample_block_conjecture(const Vector& pi, const CovarianceMatrix& sig, Rng& rng) {
  const int m = static_cast<int>(pi.size());
  if (sig.m() != m) throw Error("covariance size does not match pi");
  const MultiplicityStructure ms = multiplicity_structure(pi);
  for (int r = 0; r < m; ++r)
    if (ms.d_r[r] > 2) throw Error("conjecture sampler limited to multiplicity <= 2");

  Matrix perm(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) perm(i, j) = sig.sigma(ms.tau[i], ms.tau[j]);
  const Matrix C = psd_factor({perm});
  std::normal_distribution<double> normal;
  Vector z(m);
  for (int i = 0; i < m; ++i) z(i) = normal(rng);
  const Vector x = C * z;

  SpectrumSample out(m);
  int r = 0;
  while (r < m) {
    if (ms.d_r[r] == 1) {
      out(r) = x(r);
      ++r;
      continue;
    }
    const double v = (perm(r, r) - 2.0 * perm(r, r + 1) + perm(r + 1, r + 1)) / 4.0;
    const double sd = std::sqrt(std::max(v, 0.0));
    const double re = sd * normal(rng), im = sd * normal(rng);
    const double mid = 0.5 * (x(r) + x(r + 1));
    const double half = 0.5 * (x(r) - x(r + 1));
    const double rad = std::sqrt(half * half + re * re + im * im);
    out(r) = mid + rad;
    out(r + 1) = mid - rad;
    r += 2;
  }
  std::sort(out.data(), out.data() + m, std::greater<>());
  return out;
}

PairParams pair_params(const Matrix& sig2) {
  if (sig2.rows() != 2 || sig2.cols() != 2) throw Error("pair sampler needs a 2x2 block");
  const double s11 = sig2(0, 0), s12 = sig2(0, 1), s22 = sig2(1, 1);
  if (!(s11 > 0.0 && s22 > 0.0)) throw Error("pair sampler needs positive variances");
  if (std::abs(s12 - sig2(1, 0)) > 1e-12 || s11 * s22 - s12 * s12 < -1e-12) throw Error("block is not PSD");
  PairParams p;
  p.hat1_sq = (s11 + 2.0 * s12 + s22) / 4.0;
  p.hat2_sq = (s11 - 2.0 * s12 + s22) / 4.0;
  p.cov12 = (s11 - s22) / 4.0;
  const double spread = s11 - 2.0 * s12 + s22;
  p.beta = spread > 0.0 ? (s11 - s22) / (2.0 * std::sqrt(spread)) : 0.0;
  return p;
}

std::pair<double, double> two_by_two_pair_sampler(const Matrix& sig2, Rng& rng) {
  const PairParams p = pair_params(sig2);
  const Matrix C = psd_factor({sig2});
  std::normal_distribution<double> normal;
  const double z1 = normal(rng), z2 = normal(rng);
  const double x1 = C(0, 0) * z1 + C(0, 1) * z2;
  const double x2 = C(1, 0) * z1 + C(1, 1) * z2;
  const double w1 = 0.5 * (x1 + x2);
  const double w2 = 0.5 * (x1 - x2);
  const double sd = std::sqrt(std::max(p.hat2_sq, 0.0));
  const double w3 = sd * normal(rng), w4 = sd * normal(rng);
  return {w1 + std::sqrt(w2 * w2 + w3 * w3 + w4 * w4), 2.0 * w1};
}

double perturbed_lambda1(double rho, Rng& rng) {
  if (!(std::abs(rho) <= 1.0)) throw Error("rho must lie in [-1, 1]");
  std::normal_distribution<double> normal;
  const double g = normal(rng);
  const double lambda10 = sample_traceless_gue_spectrum(2, rng, GueScale::UnitTraceless)(0);
  return std::sqrt((1.0 + rho) / 2.0) * g + std::sqrt((1.0 - rho) / 2.0) * lambda10;
}

}  // namespace mshape
