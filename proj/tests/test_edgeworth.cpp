#include <doctest.h>

#include <random>

#include "lslab/edgeworth.hpp"
#include "lslab/errors.hpp"
#include "lslab/exact_kernel.hpp"
#include "lslab/poly_engine.hpp"

using namespace lslab;

namespace {

// He_m from the Rodrigues form: d^m/dx^m e^{-x^2/2} = P_m(x) e^{-x^2/2} with
// P_{m+1} = P_m' - x P_m, and He_m = (-1)^m P_m.
IntegerPolynomial rodrigues_hermite(std::size_t m) {
  IntegerPolynomial p{1};
  for (std::size_t k = 0; k < m; ++k) p = p.derivative() - p.shifted(1);
  return m % 2 == 0 ? p : -p;
}

BernoulliArray<Rational> random_array(std::mt19937& rng, std::size_t n) {
  BernoulliArray<Rational> array;
  std::uniform_int_distribution<long> den(1, 16);
  for (std::size_t v = 0; v < n; ++v) {
    long d = den(rng);
    Rational p(BigInt(std::uniform_int_distribution<long>(0, d)(rng)), BigInt(d));
    p.canonicalize();
    array.probabilities.push_back(p);
  }
  return array;
}

std::vector<Rational> enumerate(const BernoulliArray<Rational>& array) {
  const std::size_t n = array.n();
  std::vector<Rational> out(n + 1, Rational(0));
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    Rational w(1);
    std::size_t ones = 0;
    for (std::size_t v = 0; v < n; ++v) {
      bool on = (mask >> v) & 1UL;
      w *= on ? array.probabilities[v] : Rational(1 - array.probabilities[v]);
      ones += on;
    }
    out[ones] += w;
  }
  return out;
}

std::vector<Rational> row_distribution(const std::vector<BigInt>& row) {
  const BigInt total = derivatives_at_one(row).value;
  std::vector<Rational> dist;
  for (const auto& c : row) {
    Rational p(c, total);
    p.canonicalize();
    dist.push_back(p);
  }
  return dist;
}

}  // namespace

TEST_CASE("Hermite recurrence equals the Rodrigues form") {
  for (std::size_t m = 0; m <= 12; ++m) {
    IntegerPolynomial ref = rodrigues_hermite(m);
    for (const char* x : {"-2.5", "0", "0.3", "1.7"}) {
      Real xx = Real::parse(x, 192);
      CHECK(abs(hermite(m, xx) - ref.evaluate(xx)) < exp2i(-150, 192) * (1 + abs(ref.evaluate(xx))));
    }
  }
  CHECK(rodrigues_hermite(4) == IntegerPolynomial{3, 0, -6, 0, 1});
}

TEST_CASE("distribution equals brute-force enumeration") {
  std::mt19937 rng(5);
  for (std::size_t n = 0; n <= 12; ++n) {
    BernoulliArray<Rational> array = random_array(rng, n);
    REQUIRE(distribution(array) == enumerate(array));
  }
}

TEST_CASE("exact cumulants equal central moments of the enumeration") {
  std::mt19937 rng(9);
  for (std::size_t n = 1; n <= 12; ++n) {
    BernoulliArray<Rational> array = random_array(rng, n);
    std::vector<Rational> dist = enumerate(array);
    Rational mean(0);
    for (std::size_t j = 0; j <= n; ++j) mean += dist[j] * static_cast<long>(j);
    Rational m2(0), m3(0), m4(0);
    for (std::size_t j = 0; j <= n; ++j) {
      Rational d = Rational(static_cast<long>(j)) - mean;
      m2 += dist[j] * d * d;
      m3 += dist[j] * d * d * d;
      m4 += dist[j] * d * d * d * d;
    }
    std::vector<Rational> kappa = exact_cumulants(array, 4);
    CHECK(kappa[1] == mean);
    CHECK(kappa[2] == m2);
    CHECK(kappa[3] == m3);
    CHECK(kappa[4] == m4 - 3 * m2 * m2);
  }
}

TEST_CASE("factorial-moment path equals per-variable path exactly") {
  // prod (s + a_v) with integer a_v >= 0 is the generating polynomial of an
  // array with p_v = 1 / (1 + a_v).
  std::mt19937 rng(13);
  std::uniform_int_distribution<long> shift(0, 9), size(1, 10);
  for (int trial = 0; trial < 25; ++trial) {
    IntegerPolynomial poly{1};
    BernoulliArray<Rational> array;
    const long n = size(rng);
    for (long v = 0; v < n; ++v) {
      long a = shift(rng);
      poly = poly * IntegerPolynomial{a, 1};
      array.probabilities.push_back(Rational(BigInt(1), BigInt(a + 1)));
    }
    REQUIRE(factorial_moment_cumulants(poly, 6) == exact_cumulants(array, 6));
  }
}

TEST_CASE("Bernoulli array from the zeros of M_n") {
  BernoulliArray<Real> array = bernoulli_array_for_M(12, 256);
  CHECK(array.n() == 12);
  std::vector<Real> p = distribution(array);
  std::vector<Rational> exact = row_distribution(modified_ls_row(12));
  for (std::size_t j = 0; j <= 12; ++j) CHECK(abs(p[j] - Real(exact[j], 256)) < exp2i(-120, 256));

  CumulantProfile a = cumulants_from_probs(array, 4);
  CumulantProfile b = cumulants_from_factorial_moments(modified_ls_row(12), 4);
  for (std::size_t v = 1; v <= 4; ++v) CHECK(abs(a.kappa(v) - b.kappa(v)) < exp2i(-120, 256) * (1 + abs(b.kappa(v))));
}

TEST_CASE("array errors") {
  CHECK_THROWS_AS(probs_from_roots({Real::parse("0.5", 64)}), DomainError);
  BernoulliArray<Rational> bad{{Rational(BigInt(3), BigInt(2))}};
  CHECK_THROWS_AS(distribution(bad), DomainError);
  BernoulliArray<Rational> point{{Rational(1), Rational(0)}};
  CHECK_THROWS_AS(cumulants_from_probs(point, 4), DegenerateVarianceError);
  CHECK_THROWS_AS(exact_cumulants(point, 1), DomainError);
}

TEST_CASE("profile accessors") {
  CumulantProfile profile = cumulants_from_factorial_moments(modified_ls_row(40), 4);
  CHECK(profile.max_order() == 4);
  CHECK(profile.lambda(2) == 1);
  CHECK_THROWS_AS(profile.lambda(5), InsufficientCumulantsError);
  CHECK_THROWS_AS(profile.kappa(0), InsufficientCumulantsError);
  CHECK_THROWS_AS(q_correction(3, profile, Real(0L, 256)), InsufficientCumulantsError);
  CHECK_THROWS_AS(q_correction(0, profile, Real(0L, 256)), DomainError);
}

TEST_CASE("correction terms in closed form") {
  CumulantProfile profile = cumulants_from_factorial_moments(modified_ls_row(60), 6);
  const Real l3 = profile.lambda(3);
  const Real l4 = profile.lambda(4);
  for (const char* x : {"-1.3", "0.2", "2.1"}) {
    Real xx = Real::parse(x, 256);
    Real phi = standard_normal_density(xx);
    Real q1 = phi * l3 / 6 * hermite(3, xx);
    Real q2 = phi * (l4 / 24 * hermite(4, xx) + l3 * l3 / 72 * hermite(6, xx));
    CHECK(abs(q_correction(1, profile, xx) - q1) < exp2i(-200, 256));
    CHECK(abs(q_correction(2, profile, xx) - q2) < exp2i(-200, 256));
  }
}

TEST_CASE("expansion orders and the variance floor") {
  CumulantProfile profile = cumulants_from_factorial_moments(modified_ls_row(30), 6);
  CHECK_THROWS_AS(lclt_expand(profile, 10, 1), DomainError);
  CHECK_THROWS_AS(lclt_expand(profile, 10, 5), DomainError);
  CHECK_NOTHROW(lclt_expand(profile, 10, 4));

  BernoulliArray<Rational> thin;
  for (int v = 0; v < 10; ++v) thin.probabilities.push_back(Rational(BigInt(1), BigInt(1000)));
  CumulantProfile small = cumulants_from_probs(thin, 4);
  CHECK_THROWS_AS(lclt_expand(small, 0, 2), ConditionViolation);
  CHECK_NOTHROW(lclt_expand(small, 0, 2, 0.0001));
}

TEST_CASE("expansion errors shrink with the order") {
  struct Expected {
    std::size_t n;
    double k2, k3, k4;
  };
  for (Expected e : {Expected{50, 0.04219, 0.00748, 0.00321}, Expected{100, 0.02870, 0.00471, 0.00104},
                     Expected{200, 0.01939, 0.00236, 0.000328}}) {
    const std::vector<BigInt> row = modified_ls_row(e.n);
    const std::vector<Rational> dist = row_distribution(row);
    CumulantProfile profile = cumulants_from_factorial_moments(row, 6);
    ExpansionErrors errors = max_expansion_errors(expansion_table(dist, profile));
    CHECK(errors.max_error2.to_double() == doctest::Approx(e.k2).epsilon(2e-3));
    CHECK(errors.max_error3.to_double() == doctest::Approx(e.k3).epsilon(2e-3));
    Real worst4(0L, 256);
    for (std::size_t j = 0; j < dist.size(); ++j) {
      Real exact = profile.sigma() * Real(dist[j], 256);
      worst4 = max(worst4, abs(exact - lclt_expand(profile, static_cast<long>(j), 4)));
    }
    CHECK(worst4.to_double() == doctest::Approx(e.k4).epsilon(5e-3));
    CHECK(errors.max_error3 < errors.max_error2);
  }
  CumulantProfile p200 = cumulants_from_factorial_moments(modified_ls_row(200), 4);
  CHECK(p200.lambda(3).to_double() == doctest::Approx(-2.8827).epsilon(1e-3));
  CHECK(p200.lambda(4).to_double() == doctest::Approx(4.4430).epsilon(1e-3));
}
