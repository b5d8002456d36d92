#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mshape/brownian.hpp"
#include "mshape/stats.hpp"

using namespace mshape;

namespace {

const Vector kEx1A = (Vector(4) << 0.4, 0.1, 0.2, 0.3).finished();

PathBundle standard_bundle(int m, int N, Rng& rng) {
  return PathSampler(CovarianceMatrix{Matrix::Identity(m, m)}).sample(N, rng);
}

}  // namespace

TEST_CASE("path bundles") {
  const auto sig = asymptotic_covariance(cyclic_chain(kEx1A));
  Rng rng(1);
  const PathSampler sampler(sig);
  for (int t = 0; t < 20; ++t) {
    const PathBundle b = sampler.sample(64, rng);
    for (int l = 0; l < 4; ++l) CHECK(b.paths(l, 0) == 0.0);
    for (int k = 0; k <= 64; ++k) CHECK(std::abs(b.paths.col(k).sum()) < 1e-8);
  }
  const PathBundle z = sample_path_bundle(CovarianceMatrix{Matrix::Zero(3, 3)}, 32, 4);
  CHECK(z.paths.cwiseAbs().maxCoeff() == 0.0);

  SUBCASE("endpoint variance of a single path") {
    const int reps = 20000;
    std::vector<double> ends;
    Rng r2(2);
    const PathSampler one(CovarianceMatrix{Matrix::Identity(1, 1)});
    for (int i = 0; i < reps; ++i) ends.push_back(one.sample(16, r2).end(0));
    const Summary s = summarize(ends);
    CHECK(std::abs(s.var - 1.0) < 3 * std::sqrt(2.0 / reps));
  }
  SUBCASE("seeded bundles repeat") {
    CHECK(sample_path_bundle(sig, 8, 9).paths == sample_path_bundle(sig, 8, 9).paths);
  }
}

TEST_CASE("limit functionals") {
  Rng rng(3);
  SUBCASE("distinct probabilities need no maximization") {
    const TransitionMatrix P = iid_chain((Vector(3) << 0.5, 0.2, 0.3).finished());
    const auto sig = asymptotic_covariance(P);
    const auto ms = multiplicity_structure(stationary_distribution(P));
    const PathBundle b = PathSampler(sig).sample(50, rng);
    CHECK(limit_functional_v(b, ms, 1) == doctest::Approx(b.end(0)));
    CHECK(limit_functional_v(b, ms, 2) == doctest::Approx(b.end(0) + b.end(2)));
    const Vector R = limit_shape_rows(b, ms);
    CHECK(R(1) == doctest::Approx(b.end(2)));
  }
  SUBCASE("r = m vanishes, rows of the uniform 2-letter case are opposite") {
    const Vector u = Vector::Constant(2, 0.5);
    const auto sig = iid_covariance(u);
    const auto ms = multiplicity_structure(u);
    for (int t = 0; t < 10; ++t) {
      const PathBundle b = PathSampler(sig).sample(40, rng);
      CHECK(std::abs(limit_functional_v(b, ms, 2)) < 1e-9);
      const Vector R = limit_shape_rows(b, ms);
      CHECK(R(0) == doctest::Approx(-R(1)));
      CHECK(R(0) >= b.end(0) - 1e-12);
    }
  }
  SUBCASE("D, H and U") {
    for (int t = 0; t < 10; ++t) {
      const PathBundle b = standard_bundle(3, 30, rng);
      const double total = b.end(0) + b.end(1) + b.end(2);
      CHECK(d_functional(b, 3) == doctest::Approx(total));
      CHECK(std::abs(h_functional(b, 3)) < 1e-12);
      CHECK(d_functional(b, 1) >= b.end(0) - 1e-12);
      const PathBundle one = standard_bundle(1, 30, rng);
      CHECK(d_functional(one, 1) == doctest::Approx(one.end(0)));
      CHECK(std::abs(h_functional(one, 1)) < 1e-12);
      const auto path = one.path(0);
      CHECK(u_functional(path, 0.5) >= 0.0);
      CHECK(u_functional(path, 0.9) >= 0.4 * path.back() - 1e-12);
    }
  }
}

TEST_CASE("local score on a grid") {
  const std::vector<double> up{0.0, 0.5, 0.7, 1.2};
  CHECK(local_score_pair(up).score == doctest::Approx(1.2));
  const std::vector<double> dip{0.0, -1.0, 0.5, 0.2};
  const auto s = local_score_pair(dip);
  CHECK(s.score == doctest::Approx(1.5));
  CHECK(s.reflected_max == doctest::Approx(1.0));
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const auto p = sample_standard_path(100, rng);
    const auto g = local_score_pair(p);
    CHECK(g.score >= *std::max_element(p.begin(), p.end()) - 1e-15);
    CHECK(local_score_bridged(p, 0.01, rng) >= g.score - 1e-15);
    CHECK(reflected_max_bridged(p, 0.01, rng) >= g.reflected_max - 1e-15);
    CHECK(running_max_bridged(p, 0.0, rng) == doctest::Approx(*std::max_element(p.begin(), p.end())));
  }
}

TEST_CASE("law identities (reduced sizes)") {
  const int reps = 20000, N = 256;
  Rng rng(5);
  SUBCASE("local score and reflected maximum") {
    std::vector<double> xs, ys;
    for (int i = 0; i < reps; ++i) xs.push_back(local_score_bridged(sample_standard_path(N, rng), 1.0 / N, rng));
    for (int i = 0; i < reps; ++i) ys.push_back(reflected_max_bridged(sample_standard_path(N, rng), 1.0 / N, rng));
    CHECK(ks_two_sample(xs, ys).statistic < ks_critical_value(0.01, reps, reps));
  }
  SUBCASE("2 max B - B(1) is chi_3") {
    std::vector<double> xs;
    for (int i = 0; i < reps; ++i) {
      const auto p = sample_standard_path(N, rng);
      xs.push_back(2 * running_max_bridged(p, 1.0 / N, rng) - p.back());
    }
    CHECK(ks_one_sample(xs, chi3_cdf).statistic < ks_critical_value(0.01, reps));
  }
  SUBCASE("uniform iid V^1 equals H_{1,3} / sqrt 3 in law") {
    const int n = 4000;
    const Vector u = Vector::Constant(3, 1.0 / 3);
    const PathSampler sampler(iid_covariance(u));
    const auto ms = multiplicity_structure(u);
    std::vector<double> xs, ys;
    for (int i = 0; i < n; ++i) xs.push_back(limit_functional_v(sampler.sample(N, rng), ms, 1));
    for (int i = 0; i < n; ++i) ys.push_back(h_functional(standard_bundle(3, N, rng), 1) / std::sqrt(3.0));
    CHECK(ks_two_sample(xs, ys).statistic < ks_critical_value(0.01, n, n));
  }
}
