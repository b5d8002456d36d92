#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "mshape/markov.hpp"

using namespace mshape;

namespace {

Matrix example1() {
  return (Matrix(4, 4) << 0.4, 0.3, 0.2, 0.1, 0.1, 0.4, 0.3, 0.2, 0.2, 0.1, 0.4, 0.3, 0.3, 0.2, 0.1, 0.4).finished();
}

Matrix example2() { return (Matrix(3, 3) << 0.4, 0.6, 0.0, 0.6, 0.0, 0.4, 0.0, 0.4, 0.6).finished(); }

TransitionMatrix two_letter(double a, double b) {
  return TransitionMatrix((Matrix(2, 2) << 1 - a, a, b, 1 - b).finished());
}

}  // namespace

TEST_CASE("construction rejects malformed matrices") {
  CHECK_THROWS_AS(TransitionMatrix((Matrix(2, 2) << 0.5, 0.5, 0.3, 0.6).finished()), Error);
  CHECK_THROWS_AS(TransitionMatrix((Matrix(2, 2) << 1.1, -0.1, 0.5, 0.5).finished()), Error);
  CHECK_THROWS_AS(TransitionMatrix(Matrix::Ones(2, 3) / 3.0), Error);
  CHECK_THROWS_AS(TransitionMatrix(Matrix::Ones(1, 1)), Error);
  CHECK_NOTHROW(TransitionMatrix((Matrix(2, 2) << 0.5, 0.5, 0.3, 0.7).finished()));
}

TEST_CASE("diagnostics") {
  SUBCASE("Example 1 is cyclic") {
    const auto d = validate_chain(TransitionMatrix(example1()));
    CHECK(d.irreducible);
    CHECK(d.aperiodic);
    CHECK(d.doubly_stochastic);
    CHECK(d.cyclic);
  }
  SUBCASE("Example 2 is doubly stochastic but not cyclic") {
    const auto d = validate_chain(TransitionMatrix(example2()));
    CHECK(d.doubly_stochastic);
    CHECK_FALSE(d.cyclic);
    CHECK(d.aperiodic);
  }
  SUBCASE("flip chain has period 2") {
    const auto d = validate_chain(two_letter(1.0, 1.0));
    CHECK(d.irreducible);
    CHECK_FALSE(d.aperiodic);
    CHECK(d.period == 2);
  }
  SUBCASE("absorbing state is reducible") {
    const auto d = validate_chain(two_letter(0.0, 0.5));
    CHECK_FALSE(d.irreducible);
  }
}

TEST_CASE("stationary distribution") {
  const Vector pi = stationary_distribution(two_letter(0.2, 0.6));
  CHECK(pi(0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(pi(1) == doctest::Approx(0.25).epsilon(1e-12));

  const Vector u = stationary_distribution(TransitionMatrix(example2()));
  for (int i = 0; i < 3; ++i) CHECK(u(i) == doctest::Approx(1.0 / 3).epsilon(1e-12));

  const Vector p = (Vector(3) << 0.5, 0.3, 0.2).finished();
  CHECK((stationary_distribution(iid_chain(p)) - p).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_WITH_AS(stationary_distribution(two_letter(0.0, 0.5)), "no unique stationary distribution", Error);
}

TEST_CASE("spectral decomposition") {
  SUBCASE("two letters") {
    const auto sd = spectral_decomposition(two_letter(0.2, 0.6));
    CHECK(sd.eigenvalues(0).real() == doctest::Approx(1.0));
    CHECK(sd.eigenvalues(1).real() == doctest::Approx(0.2));
    CHECK(std::abs(sd.D(0) + 0.5) < 1e-12);
    CHECK(std::abs(sd.D(1) - 0.2 / 0.8) < 1e-12);
  }
  SUBCASE("cyclic chain eigenvalues are the DFT of its first column") {
    const Vector a = (Vector(4) << 0.4, 0.1, 0.2, 0.3).finished();
    const TransitionMatrix P = cyclic_chain(a);
    CHECK((P.p() - example1()).cwiseAbs().maxCoeff() < 1e-15);
    const auto sd = spectral_decomposition(P);
    const std::complex<double> w = std::polar(1.0, 2 * std::numbers::pi / 4);
    for (int j = 0; j < 4; ++j) {
      std::complex<double> lam = 0;
      for (int k = 0; k < 4; ++k) lam += a(k) * std::pow(w, k * j);
      double best = INFINITY;
      for (int i = 0; i < 4; ++i) best = std::min(best, std::abs(sd.eigenvalues(i) - lam));
      CHECK(best < 1e-12);
    }
  }
  SUBCASE("iid chain has zero nontrivial spectrum") {
    const auto sd = spectral_decomposition(iid_chain((Vector(3) << 0.5, 0.3, 0.2).finished()));
    CHECK(std::abs(sd.eigenvalues(1)) < 1e-12);
    CHECK(std::abs(sd.eigenvalues(2)) < 1e-12);
  }
  SUBCASE("factorization reproduces P and row 0 is pi") {
    const TransitionMatrix P(example2());
    const auto sd = spectral_decomposition(P);
    const CMatrix back = sd.S_inv * sd.eigenvalues.asDiagonal() * sd.S;
    CHECK((back.real() - P.p()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(back.imag().cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(sd.S(0, i) - 1.0 / 3) < 1e-12);
    for (int k = 1; k < 3; ++k) CHECK(std::abs(sd.eigenvalues(k - 1)) >= std::abs(sd.eigenvalues(k)) - 1e-12);
  }
  SUBCASE("errors") {
    CHECK_THROWS_WITH_AS(spectral_decomposition(two_letter(1.0, 1.0)), "not aperiodic-irreducible", Error);
    const Matrix jordan = (Matrix(3, 3) << 0.5, 0.5, 0.0, 0.0, 0.5, 0.5, 0.5, 0.0, 0.5).finished();
    CHECK_NOTHROW(spectral_decomposition(TransitionMatrix(jordan)));
  }
}

TEST_CASE("blended chain") {
  const TransitionMatrix P0(example2());
  const TransitionMatrix P = blended_chain(P0, 0.25);
  CHECK(P(0, 0) == doctest::Approx(0.75 + 0.25 * 0.4));
  CHECK(P(0, 1) == doctest::Approx(0.25 * 0.6));
  CHECK_THROWS_AS(blended_chain(P0, 0.0), Error);
}

TEST_CASE("word sampling") {
  const TransitionMatrix P(example2());
  const WordSample w = sample_word(P, Start::at(1), 500, 42);
  CHECK(w.n() == 500);
  // Example 2 forbids 0 -> 2 and 2 -> 0.
  for (int k = 1; k < w.n(); ++k) CHECK(std::abs(w.letters[k] - w.letters[k - 1]) != 2);
  int total = 0;
  for (int r = 0; r < 3; ++r) total += w.count(500, r);
  CHECK(total == 500);
  for (int r = 0; r < 3; ++r) CHECK(w.count(0, r) == 0);

  SUBCASE("same seed, same word") {
    const WordSample v = sample_word(P, Start::at(1), 500, 42);
    CHECK(v.letters == w.letters);
  }
  SUBCASE("letter frequencies approach pi") {
    const WordSample big = sample_word(two_letter(0.2, 0.6), Start::stationary(), 200000, 7);
    CHECK(big.count(200000, 0) / 200000.0 == doctest::Approx(0.75).epsilon(0.01));
  }
  SUBCASE("from_letters counts") {
    const WordSample s = WordSample::from_letters(3, {0, 2, 2, 1});
    CHECK(s.count(4, 2) == 2);
    CHECK(s.count(2, 0) == 1);
    CHECK(s.S(4, 0) == 0);
    CHECK(s.S(4, 1) == -1);
    CHECK_THROWS_AS(WordSample::from_letters(3, {0, 3}), Error);
  }
}
