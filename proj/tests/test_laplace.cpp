#include <doctest.h>

#include <cmath>
#include <mpfr.h>

#include "lslab/clt.hpp"
#include "lslab/errors.hpp"
#include "lslab/laplace.hpp"
#include "lslab/poly_engine.hpp"

using namespace lslab;

namespace {

// Composite Simpson rule for the defining integral on [0, 80]; the integrand
// is below 1e-25 beyond that for the small r, n, z used here.
double laplace_quadrature(int r, int n, double z) {
  auto f = [&](double xi) {
    return std::exp(-xi * z) * std::pow(xi, r) * (std::pow(xi + 1, n) + std::pow(xi - 1, n));
  };
  const int steps = 200000;
  const double h = 80.0 / steps;
  double sum = f(0) + f(80.0);
  for (int i = 1; i < steps; ++i) sum += f(i * h) * (i % 2 ? 4 : 2);
  return sum * h / 3;
}

Real reference_zeta(const Real& s) {
  Real out(0L, s.precision());
  mpfr_zeta(out.raw(), s.raw(), MPFR_RNDN);
  return out;
}

}  // namespace

TEST_CASE("closed form matches quadrature") {
  for (int r = 0; r <= 4; ++r)
    for (int n = 0; n <= 4; ++n)
      for (double z : {0.7, 1.5, 3.0}) {
        LaplaceClosedForm form = laplace_closed_form(r, n);
        double exact = form.evaluate(Real::parse(std::to_string(z), 128)).to_double();
        double numeric = laplace_quadrature(r, n, z);
        CHECK(exact == doctest::Approx(numeric).epsilon(1e-9));
      }
}

TEST_CASE("closed form structure") {
  // I_{0,0}(z) = 2/z, I_{0,1}(z) = 2/z^2.
  LaplaceClosedForm f00 = laplace_closed_form(0, 0);
  REQUIRE(f00.terms.size() == 1);
  CHECK(f00.terms[0] == LaplaceTerm{BigInt(2), 1});
  LaplaceClosedForm f01 = laplace_closed_form(0, 1);
  REQUIRE(f01.terms.size() == 1);
  CHECK(f01.terms[0] == LaplaceTerm{BigInt(2), 2});
  LaplaceClosedForm f = laplace_closed_form(3, 6);
  for (std::size_t i = 1; i < f.terms.size(); ++i) CHECK(f.terms[i].inverse_power < f.terms[i - 1].inverse_power);
}

TEST_CASE("derivative identity") {
  for (std::size_t r = 0; r <= 8; ++r)
    for (std::size_t n = 0; n <= 8; ++n)
      for (std::size_t order = 1; order <= 3; ++order) REQUIRE(laplace_derivative_check(r, n, order));
}

TEST_CASE("complex evaluation agrees with real evaluation on the axis") {
  LaplaceClosedForm f = laplace_closed_form(5, 7);
  Real z = Real::parse("1.25", 192);
  Complex zc{z, Real(0L, 192)};
  Complex value = f.evaluate(zc);
  CHECK(abs(value.re - f.evaluate(z)) < exp2i(-170, 192) * f.evaluate(z));
  CHECK(value.im.is_zero());
}

TEST_CASE("zeta against an independent evaluation") {
  for (const char* s : {"1.5", "2", "2.5", "5.5", "26"}) {
    Real x = Real::parse(s, 256);
    Real mine = zeta(x);
    CHECK(abs(mine - reference_zeta(x)) < exp2i(-128, 256));
  }
  CHECK_THROWS_AS(zeta(Real(1L, 64)), DomainError);
}

TEST_CASE("tail bound") {
  const Real w = omega();
  CHECK(tail_bound(2, w).to_double() == doctest::Approx(0.110739).epsilon(1e-5));
  CHECK(tail_bound(10, w).to_double() == doctest::Approx(1.4952e-6).epsilon(1e-4));
  CHECK(tail_bound(11, w) < tail_bound(10, w));
  CHECK_THROWS_AS(tail_bound(1, w), DomainError);
  CHECK_THROWS_AS(tail_bound(4, Real(0L, 64)), DomainError);
}

TEST_CASE("lattice sums reproduce polynomial values") {
  const Real w = omega();
  EisensteinResult l1 = eisenstein_L(1, w);
  CHECK(abs(l1.value - 2) < Real::parse("1e-6", 256));
  EisensteinResult l2 = eisenstein_L(2, w);
  CHECK(abs(l2.value - 26) / 26 < Real::parse("1e-9", 256));
  CHECK(l2.imag_residual < Real::parse("1e-60", 256));
  EisensteinResult m3 = eisenstein_M(3, w);
  CHECK(abs(m3.value - 920) / 920 < m3.tail_bound);
  CHECK(abs(m3.value - 920) / 920 < Real::parse("1e-11", 256));
  CHECK_FALSE(eisenstein_M(1, w).tail_bound.is_finite());
  CHECK_THROWS_AS(eisenstein_L(0, w), DomainError);
  CHECK_THROWS_AS(eisenstein_M(2, -w), DomainError);
}

TEST_CASE("leading lattice term stays within the bound") {
  const Real w = omega() * 2;
  EisensteinResult lead = eisenstein_L(2, w, 0);
  const Real exact = build_L(2).evaluate(g_of(w));
  Real relative = (lead.value - exact) / exact;
  CHECK(relative.to_double() == doctest::Approx(-0.0044).epsilon(0.05));
  CHECK(abs(relative) < lead.tail_bound);
}

TEST_CASE("saddle coefficients") {
  SaddleCoefficients c = saddle_coefficients(0, Real(2L, 128));
  CHECK(c.b.to_double() == doctest::Approx(std::cosh(1.0)));
  // nu = 0, z = 2: -(1/8)(2 cosh 1 + cosh 1)
  CHECK(c.b_nu.to_double() == doctest::Approx(-3 * std::cosh(1.0) / 8));
  CHECK_THROWS_AS(saddle_coefficients(1, Real(0L, 64)), DomainError);
}

TEST_CASE("second-order saddle coefficient matches extrapolated residuals") {
  const Real w = omega();
  for (std::size_t nu = 0; nu <= 2; ++nu) {
    for (const Real& z : {w, Real(1L, 256), Real(2L, 256)}) {
      SaddleReport report = saddle_convergence_check(nu, z, {200, 400});
      CHECK(report.residual_shrinks);
      CHECK(report.precision_bits >= 256);
      // Richardson: 2 s(400) - s(200) removes the 1/n term of n (Q - b).
      Real extrapolated = 2 * report.rows[1].scaled - report.rows[0].scaled;
      Real relative = abs(extrapolated - report.coefficients.b_nu) / abs(report.coefficients.b_nu);
      CHECK(relative < Real::parse("1e-3", 256));
      CHECK(abs(report.rows[1].second_order) / abs(report.coefficients.b_nu) < Real::parse("0.05", 256));
    }
  }
  CHECK_THROWS_AS(saddle_convergence_check(0, w, {200, 100}), DomainError);
}
