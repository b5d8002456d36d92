#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "mshape/staircase.hpp"

using namespace mshape;

namespace {

RowMatrix random_increments(int m, int N, std::mt19937_64& rng, bool integer) {
  RowMatrix w(m, N);
  std::normal_distribution<double> z;
  std::uniform_int_distribution<int> bit(0, 1);
  for (int l = 0; l < m; ++l)
    for (int k = 0; k < N; ++k) w(l, k) = integer ? bit(rng) : z(rng);
  return w;
}

// Single row by brute force over nondecreasing breakpoints 0 <= k_1 <= ... <= k_{m-1} <= N.
double single_bruteforce(const IncrementMatrix& inc) {
  const int m = inc.m(), N = inc.N();
  std::vector<int> k(m + 1, 0);
  k[m] = N;
  double best = -INFINITY;
  std::function<void(int)> rec = [&](int l) {
    if (l == m) {
      double v = 0.0;
      for (int i = 0; i < m; ++i) v += inc.W(i, k[i + 1]) - inc.W(i, k[i]);
      best = std::max(best, v);
      return;
    }
    for (int x = k[l - 1]; x <= N; ++x) {
      k[l] = x;
      rec(l + 1);
    }
  };
  rec(1);
  return best;
}

}  // namespace

TEST_CASE("increment matrix") {
  RowMatrix w(2, 3);
  w << 1, 0, 1, 0, 1, 1;
  const auto inc = IncrementMatrix::from_increments(w);
  CHECK(inc.m() == 2);
  CHECK(inc.N() == 3);
  CHECK(inc.W(0, 0) == 0.0);
  CHECK(inc.W(0, 3) == 2.0);
  CHECK(inc.W(1, 2) == 1.0);
  const auto again = IncrementMatrix::from_prefix(inc.prefix());
  CHECK(again.W(1, 3) == 2.0);
}

TEST_CASE("single row") {
  SUBCASE("zero increments") {
    const auto res = staircase_max_single(IncrementMatrix(3, 5));
    CHECK(res.value == 0.0);
    for (int l = 1; l < 3; ++l) CHECK(res.argmax.k[0][l] == 0);
  }
  SUBCASE("one component") {
    RowMatrix w(1, 4);
    w << 0.5, -1.0, 2.0, 0.25;
    CHECK(staircase_max_single(IncrementMatrix::from_increments(w)).value == doctest::Approx(1.75));
  }
  SUBCASE("word a1 a2 a1") {
    RowMatrix w(2, 3);
    w << 1, 0, 1, 0, 1, 0;
    const auto res = staircase_max_single(IncrementMatrix::from_increments(w));
    CHECK(res.value == 2.0);
    CHECK(staircase_objective(IncrementMatrix::from_increments(w), res.argmax) == 2.0);
  }
  SUBCASE("matches brute force and returns a feasible argmax") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
      const int m = 1 + t % 4, N = 1 + t % 7;
      const auto inc = IncrementMatrix::from_increments(random_increments(m, N, rng, t % 2 == 0));
      const auto res = staircase_max_single(inc);
      CHECK(res.value == doctest::Approx(single_bruteforce(inc)).epsilon(1e-12));
      CHECK(staircase_feasible(res.argmax, m, N));
      CHECK(staircase_objective(inc, res.argmax) == doctest::Approx(res.value).epsilon(1e-12));
    }
  }
}

TEST_CASE("multi row") {
  SUBCASE("r = m covers everything") {
    std::mt19937_64 rng(6);
    const auto inc = IncrementMatrix::from_increments(random_increments(4, 9, rng, false));
    double total = 0.0;
    for (int l = 0; l < 4; ++l) total += inc.W(l, 9);
    CHECK(staircase_max_multi(inc, 4) == doctest::Approx(total).epsilon(1e-12));
    CHECK(staircase_max_multi_enumerate(inc, 4) == doctest::Approx(total).epsilon(1e-12));
  }
  SUBCASE("r = 1 agrees with the single-row routine") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
      const int m = 1 + t % 5, N = 1 + t % 20;
      const auto inc = IncrementMatrix::from_increments(random_increments(m, N, rng, true));
      CHECK(staircase_max_multi(inc, 1) == staircase_max_single(inc).value);
    }
  }
  SUBCASE("dominance DP agrees with enumeration") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 400; ++t) {
      const int m = 2 + t % 5, N = 1 + t % 6;
      const bool integer = t % 3 == 0;
      const auto inc = IncrementMatrix::from_increments(random_increments(m, N, rng, integer));
      for (int r = 1; r <= m; ++r) {
        CAPTURE(m);
        CAPTURE(N);
        CAPTURE(r);
        CHECK(staircase_max_multi(inc, r) == doctest::Approx(staircase_max_multi_enumerate(inc, r)).epsilon(1e-12));
      }
    }
  }
  SUBCASE("value is nondecreasing in the row count for counts") {
    std::mt19937_64 rng(9);
    const auto inc = IncrementMatrix::from_increments(random_increments(4, 12, rng, true));
    double prev = 0.0;
    for (int r = 1; r <= 4; ++r) {
      const double v = staircase_max_multi(inc, r);
      CHECK(v >= prev);
      prev = v;
    }
  }
  CHECK_THROWS_AS(staircase_max_multi(IncrementMatrix(3, 4), 0), Error);
  CHECK_THROWS_AS(staircase_max_multi(IncrementMatrix(3, 4), 4), Error);
}

TEST_CASE("feasibility") {
  // m = 3, r = 2, N = 4: row 0 covers letters 0..1, row 1 covers letters 1..2.
  StaircaseAssignment a;
  a.r = 2;
  a.k = {{0, 2, 4, -1}, {-1, 0, 1, 4}};
  CHECK(staircase_feasible(a, 3, 4));
  a.k[1][2] = 3;  // k[1][2] must not exceed k[0][1]
  CHECK_FALSE(staircase_feasible(a, 3, 4));
  a.k[1][2] = 1;
  a.k[0][1] = 5;
  CHECK_FALSE(staircase_feasible(a, 3, 4));
}
