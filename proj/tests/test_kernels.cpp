#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mshape/kernels.hpp"

namespace k = mshape::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

double naive_drawup(const std::vector<double>& x) {
  double best = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t i = 0; i <= j; ++i) best = std::max(best, x[j] - x[i]);
  return best;
}

const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 101, 1000};

}  // namespace

TEST_CASE("scalar kernels match naive definitions") {
  const auto& s = k::scalar();
  std::mt19937_64 rng(1);
  for (std::size_t n : kLengths) {
    if (n == 0) continue;
    auto a = random_vec(n, rng), b = random_vec(n, rng);
    std::vector<double> out(n);
    s.cumsum(a.data(), out.data(), n, 0.5);
    double acc = 0.5;
    for (std::size_t i = 0; i < n; ++i) {
      acc += a[i];
      CHECK(out[i] == doctest::Approx(acc).epsilon(1e-12));
    }
    s.prefix_max(a.data(), out.data(), n);
    double mx = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
      mx = std::max(mx, a[i]);
      CHECK(out[i] == mx);
    }
    s.add_prefix_max(a.data(), b.data(), out.data(), n);
    mx = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
      mx = std::max(mx, b[i]);
      CHECK(out[i] == a[i] + mx);
    }
    CHECK(s.max_drawup(a.data(), n) == doctest::Approx(naive_drawup(a)).epsilon(1e-14));
    CHECK(s.max(a.data(), n) == *std::max_element(a.begin(), a.end()));
  }
}

TEST_CASE("AVX2 kernels are equivalent to the scalar reference") {
  const auto* v = k::avx2();
  if (!v) {
    MESSAGE("AVX2 unavailable; equivalence not exercised");
    return;
  }
  const auto& s = k::scalar();
  std::mt19937_64 rng(2);
  for (std::size_t n : kLengths) {
    CAPTURE(n);
    auto a = random_vec(n, rng), b = random_vec(n, rng);
    std::vector<double> o1(n + 1), o2(n + 1);

    s.cumsum(a.data(), o1.data(), n, -1.25);
    v->cumsum(a.data(), o2.data(), n, -1.25);
    for (std::size_t i = 0; i < n; ++i) CHECK(o2[i] == doctest::Approx(o1[i]).epsilon(1e-12).scale(1.0));

    s.prefix_max(a.data(), o1.data(), n);
    v->prefix_max(a.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(o2[i] == o1[i]);

    s.add_prefix_max(a.data(), b.data(), o1.data(), n);
    v->add_prefix_max(a.data(), b.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(o2[i] == o1[i]);

    s.sub(a.data(), b.data(), o1.data(), n);
    v->sub(a.data(), b.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(o2[i] == o1[i]);

    if (n > 0) {
      CHECK(v->max_drawup(a.data(), n) == s.max_drawup(a.data(), n));
      CHECK(v->max(a.data(), n) == s.max(a.data(), n));
    }
  }
}

TEST_CASE("in-place cumsum") {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9};
  k::cumsum(x.data(), x.data(), x.size());
  CHECK(x.back() == 45.0);
  CHECK(x[3] == 10.0);
}

TEST_CASE("active table honours its selection") {
  const auto& t = k::active();
  CHECK((t.name == "scalar" || t.name == "avx2"));
}
