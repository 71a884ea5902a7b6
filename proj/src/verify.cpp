#include "lslab/verify.hpp"

#include <random>
#include <sstream>

#include "lslab/clt.hpp"
#include "lslab/edgeworth.hpp"
#include "lslab/errors.hpp"
#include "lslab/exact_kernel.hpp"
#include "lslab/laplace.hpp"
#include "lslab/poly_engine.hpp"

namespace lslab {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome pass(std::string detail = {}) { return {true, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

std::string at(std::size_t n, std::size_t j) {
  return "(" + std::to_string(n) + "," + std::to_string(j) + ")";
}

class Runner {
 public:
  explicit Runner(const CheckSink& sink) : sink_(sink) {}

  template <typename Body>
  void check(std::string name, Body&& body) {
    CheckResult result{std::move(name), false, {}};
    try {
      Outcome outcome = body();
      result.passed = outcome.passed;
      result.detail = std::move(outcome.detail);
    } catch (const std::exception& e) {
      result.detail = std::string("exception: ") + e.what();
    }
    if (sink_) sink_(result);
    results_.push_back(std::move(result));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const CheckSink& sink_;
  std::vector<CheckResult> results_;
};

Real lit(const char* text, long bits) { return Real::parse(text, bits); }

// |a - b| <= 2^(-bits/2) max(1, |b|)
bool close(const Real& a, const Real& b, long bits) {
  return abs(a - b) <= exp2i(-bits / 2, bits) * max(Real(1L, bits), abs(b));
}

std::string sci(const Real& x) { return format_sci(x, 8); }

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"identities", "roots", "eisenstein", "clt", "edgeworth", "all"};
  return names;
}

std::vector<CheckResult> verify_identities(const VerifyConfig& config, const CheckSink& sink) {
  Runner run(sink);
  const std::size_t n_max = config.n_max;
  const GammaParam legendre = GammaParam::legendre();
  const GammaParam chebyshev = GammaParam::chebyshev();

  run.check("cross-formula equality n<=" + std::to_string(n_max) + " (gamma=1)", [&] {
    for (std::size_t n = 0; n <= n_max; ++n) {
      for (std::size_t j = 0; j <= n; ++j) {
        Rational rec = js_recurrence(n, j, legendre);
        if (js_explicit(n, j, legendre) != rec || Rational(ls_altsum(n, j)) != rec ||
            Rational(ls_binsum(n, j)) != rec)
          return fail("representations disagree at " + at(n, j));
      }
    }
    return pass();
  });

  run.check("cross-formula equality n<=" + std::to_string(n_max) + " (gamma=1/2)", [&] {
    for (std::size_t n = 0; n <= n_max; ++n) {
      for (std::size_t j = 0; j <= n; ++j) {
        Rational rec = js_recurrence(n, j, chebyshev);
        if (js_explicit(n, j, chebyshev) != rec || Rational(cs_binsum(n, j)) != rec)
          return fail("representations disagree at " + at(n, j));
      }
    }
    return pass();
  });

  run.check("odd-power central differences vanish j,l<=12", [&] {
    for (std::size_t j = 0; j <= 12; ++j)
      for (std::size_t l = 0; l <= 12; ++l)
        if (central_difference_sum(j, 2 * l + 1) != 0)
          return fail("nonzero at j=" + std::to_string(j) + ", l=" + std::to_string(l));
    return pass();
  });

  run.check("connection formulas k<=20", [&] {
    auto triangle = TriangleCache::global().get(legendre, 41);
    for (std::size_t k = 0; k <= 20; ++k) {
      for (std::size_t j = 0; j <= 2 * k + 1; ++j) {
        if (Rational(connect_odd(k, j)) != triangle->at(2 * k + 1, j))
          return fail("odd formula fails at k=" + std::to_string(k) + ", j=" + std::to_string(j));
        if (Rational(connect_even(k, j)) != triangle->at(2 * k, j))
          return fail("even formula fails at k=" + std::to_string(k) + ", j=" + std::to_string(j));
      }
    }
    return pass();
  });

  run.check("connection polynomials k<=40", [&] {
    for (std::size_t k = 0; k <= 40; ++k) {
      if (!(connect_polynomials(k, Parity::odd) == build_M_recurrence(2 * k + 1)))
        return fail("odd polynomial identity fails at k=" + std::to_string(k));
      if (!(connect_polynomials(k, Parity::even) == build_M_recurrence(2 * k)))
        return fail("even polynomial identity fails at k=" + std::to_string(k));
    }
    return pass();
  });

  run.check("first column equals 2^(n-1) for n<=200", [&] {
    auto triangle = TriangleCache::global().get(legendre, 200);
    for (std::size_t n = 1; n <= 200; ++n)
      if (triangle->at(n, 1) != Rational(ipow(BigInt(2), n - 1))) return fail("fails at n=" + std::to_string(n));
    return pass();
  });

  run.check("fixed-j leading term j<=3 at n=200, 400", [&] {
    const Rational tolerance(1, 1000000);
    for (const GammaParam& g : {chebyshev, legendre}) {
      for (std::size_t j = 1; j <= 3; ++j) {
        Rational d200 = abs(fixed_j_ratio(200, j, g) - 1);
        Rational d400 = abs(fixed_j_ratio(400, j, g) - 1);
        std::string where = "gamma=" + to_decimal(g.value()) + ", j=" + std::to_string(j);
        if (d200 > tolerance) return fail("ratio not within 1e-6 of 1 at n=200, " + where);
        // Exact agreement at both n (j = 1) counts as no loss of accuracy.
        if (!(d400 < d200 || (d400 == 0 && d200 == 0))) return fail("no improvement from n=200 to 400, " + where);
      }
    }
    return pass();
  });

  run.check("modified triangle equals (2j)! {n,j}_1 for n<=" + std::to_string(n_max), [&] {
    ModifiedRowCursor cursor;
    for (std::size_t n = 0; n <= n_max; ++n) {
      cursor.advance_to(n);
      for (std::size_t j = 0; j <= n; ++j)
        if (cursor.row()[j] != factorial(2 * j) * ls_binsum(n, j)) return fail("mismatch at " + at(n, j));
    }
    return pass();
  });

  run.check("M_n recurrence equals triangle polynomial n<=" + std::to_string(n_max), [&] {
    if (!(build_M_recurrence(1) == IntegerPolynomial{0, 2}) ||
        !(build_M_recurrence(2) == IntegerPolynomial{0, 4, 24}) ||
        !(build_M_recurrence(3) == IntegerPolynomial{0, 8, 192, 720}))
      return fail("M_1, M_2, M_3 differ from 2s, 4s(6s+1), 8s(90s^2+24s+1)");
    for (std::size_t n = 0; n <= n_max; ++n)
      if (!(build_M_recurrence(n) == build_M_from_triangle(n))) return fail("mismatch at n=" + std::to_string(n));
    return pass();
  });

  run.check("gamma=0 shift identity 1<=j<=n<=40", [&] {
    for (std::size_t n = 1; n <= 40; ++n)
      for (std::size_t j = 1; j <= n; ++j) gamma_zero_shift(n, j);
    return pass();
  });

  return run.take();
}

std::vector<CheckResult> verify_roots(const VerifyConfig& config, const CheckSink& sink) {
  Runner run(sink);
  const std::size_t n_max = config.n_max;

  run.check("root certificates 1<=n<=" + std::to_string(n_max), [&] {
    for (std::size_t n = 1; n <= n_max; ++n) {
      RootCertificate cert = certify_roots(n);
      const int expected_sign = n % 2 == 0 ? 1 : -1;
      if (cert.isolating_intervals.size() != n - 1 || cert.sign_at_quarter != expected_sign)
        return fail("certificate for n=" + std::to_string(n) + " is incomplete");
    }
    return pass(std::to_string(n_max) + " certificates");
  });

  run.check("refined roots lie in their intervals (n=" + std::to_string(n_max) + ")", [&] {
    RootCertificate cert = certify_roots(n_max);
    std::vector<Real> roots = refine_roots(cert, config.precision_bits, config.threads);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const Interval& iv = cert.isolating_intervals[i];
      const long bits = roots[i].precision();
      if (roots[i] < Real(iv.lo, bits) || roots[i] > Real(iv.hi, bits))
        return fail("root " + std::to_string(i) + " escaped its interval");
    }
    return pass(roots.empty() ? std::string() : "leftmost root " + format_fixed(roots.front(), 12));
  });

  run.check("unimodality 3<=n<=300", [&] {
    ModifiedRowCursor cursor;
    std::size_t plateaus = 0;
    for (std::size_t n = 3; n <= 300; ++n) {
      cursor.advance_to(n);
      if (unimodality_of(cursor.row(), n).plateau) ++plateaus;
    }
    return pass(std::to_string(plateaus) + " plateaus");
  });

  return run.take();
}

std::vector<CheckResult> verify_eisenstein(const VerifyConfig& config, const CheckSink& sink) {
  Runner run(sink);
  const long bits = config.precision_bits;
  const Real w = omega(bits);

  run.check("Laplace closed-form derivative identity r,n<=10", [&] {
    for (std::size_t r = 0; r <= 10; ++r)
      for (std::size_t n = 0; n <= 10; ++n)
        for (std::size_t order = 1; order <= 3; ++order)
          if (!laplace_derivative_check(r, n, order))
            return fail("fails at r=" + std::to_string(r) + ", n=" + std::to_string(n));
    return pass();
  });

  run.check("Eisenstein sum for L_n(1) within tail bound n<=30", [&] {
    for (std::size_t n = 1; n <= 30; ++n) {
      EisensteinResult e = eisenstein_L(n, w);
      Real exact(build_L(n).evaluate(BigInt(1)), bits);
      Real deviation = abs(e.value - exact) / exact;
      if (deviation > e.tail_bound) return fail("n=" + std::to_string(n) + " deviation " + sci(deviation));
    }
    return pass();
  });

  run.check("Eisenstein sum for M_n within tail bound n<=50, w in {omega/2, omega, 2 omega}", [&] {
    Real worst(0L, bits);
    for (const Real& z : {w / 2, w, w * 2}) {
      const Real s = g_of(z);
      const Real prefactor = (cosh(z) - 1) / sinh(z);
      for (std::size_t n = 1; n <= 50; ++n) {
        EisensteinResult e = eisenstein_M(n, z);
        Real exact = build_M_recurrence(n).evaluate(s);
        Real leading = laplace_closed_form(n, n).evaluate(z) * prefactor;
        Real truncated_deviation = abs(e.value - exact) / exact;
        Real leading_deviation = abs(leading - exact) / exact;
        if (truncated_deviation > e.tail_bound || leading_deviation > e.tail_bound)
          return fail("n=" + std::to_string(n) + ", w=" + sci(z) + ": deviation " + sci(leading_deviation) +
                      " above bound " + sci(e.tail_bound));
        if (e.tail_bound.is_finite()) worst = max(worst, leading_deviation / e.tail_bound);
      }
    }
    return pass("largest deviation/bound " + sci(worst));
  });

  run.check("saddle expansion n(Q-b) within 5% of b_nu at n=400", [&] {
    const Real tolerance = lit(kSaddleTolerance, bits);
    for (std::size_t nu = 0; nu <= 2; ++nu) {
      for (const Real& z : {w, Real(1L, bits), Real(2L, bits)}) {
        SaddleReport report = saddle_convergence_check(nu, z, {100, 200, 400}, bits);
        const SaddleRow& last = report.rows.back();
        Real relative = abs(last.second_order) / abs(report.coefficients.b_nu);
        if (relative > tolerance || !report.residual_shrinks)
          return fail("nu=" + std::to_string(nu) + ", z=" + sci(z) + ": relative deviation " + sci(relative));
      }
    }
    return pass();
  });

  return run.take();
}

std::vector<CheckResult> verify_clt(const VerifyConfig& config, const CheckSink& sink) {
  Runner run(sink);
  const long bits = config.precision_bits;

  run.check("omega solves 2(cosh w - 1) = 1 with f(omega)=sqrt5, g(omega)=1", [&] {
    Real w = omega(bits);
    const Real tolerance = exp2i(-bits + 4, bits);
    Real sqrt5 = sqrt(Real(5L, bits));
    if (abs(2 * (cosh(w) - 1) - 1) > tolerance) return fail("defining equation residual too large");
    if (abs(f_of(w) - sqrt5) > tolerance * 4 || abs(g_of(w) - 1) > tolerance * 4) return fail("f or g off");
    return pass("omega = " + format_fixed(w, 20));
  });

  const bool published = config.n == 1000 && config.j == 930;
  run.check(published ? "ratio {1000,930}_1 / A(1000,930) in [1.0438485, 1.0438495]"
                      : "ratio {" + std::to_string(config.n) + "," + std::to_string(config.j) + "}_1 / A",
            [&] {
              RatioReport report = ratio_check(config.n, config.j, bits, true);
              std::string detail = "ratio " + format_fixed(report.ratio, 10);
              if (!published) return pass(detail);
              bool inside = report.ratio >= lit(kReportedRatioLow, bits) && report.ratio <= lit(kReportedRatioHigh, bits);
              return Outcome{inside, detail};
            });

  MomentResidualReport residuals;
  run.check("mean residual doubling ratios in (0.3, 0.7) for n=100, 200", [&] {
    residuals = moment_residuals({100, 200, 400}, bits);
    std::string detail;
    for (const auto& d : residuals.mean_doubling) {
      detail += "n=" + std::to_string(d.n) + ": " + format_fixed(d.ratio, 4) + " ";
      if (d.ratio <= lit("0.3", bits) || d.ratio >= lit("0.7", bits)) return fail(detail);
    }
    return pass(detail);
  });

  run.check("variance residual bounded for n=100, 200, 400", [&] {
    if (residuals.rows.size() != 3) return fail("mean residual step did not complete");
    const Real ceiling = lit(kVarianceResidualCeiling, bits);
    const Real step = lit(kVarianceResidualStep, bits);
    std::string detail;
    for (std::size_t i = 0; i < residuals.rows.size(); ++i) {
      const Real r = abs(residuals.rows[i].variance_residual);
      detail += "n=" + std::to_string(residuals.rows[i].n) + ": " + sci(r) + " ";
      if (r > ceiling) return fail(detail);
      if (i > 0 && r - abs(residuals.rows[i - 1].variance_residual) > step) return fail(detail);
    }
    return pass(detail);
  });

  run.check("local limit residual at n=400 below n=100, n=100 below 0.05", [&] {
    Real r100 = local_limit_residual(100, bits, config.threads).max_residual;
    Real r400 = local_limit_residual(400, bits, config.threads).max_residual;
    std::string detail = "n=100: " + sci(r100) + ", n=400: " + sci(r400);
    return Outcome{r400 < r100 && r100 < lit(kLocalResidualCeiling, bits), detail};
  });

  run.check("normalization residual doubling ratios in (0.3, 0.7) for n=50, 100, 200", [&] {
    std::vector<Real> r;
    for (std::size_t n : {50, 100, 200, 400}) r.push_back(normalization_residual(n, bits));
    std::string detail;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      Real ratio = r[i + 1] / r[i];
      detail += format_fixed(ratio, 4) + " ";
      if (ratio <= lit("0.3", bits) || ratio >= lit("0.7", bits)) return fail(detail);
    }
    return pass(detail);
  });

  run.check("Kolmogorov distance on y in [-4, 4] shrinks from n=100 to n=400", [&] {
    const Rational lo(-4), hi(4), step(1, 10);
    Real d100 = ks_distance(cdf_table(100, lo, hi, step, bits));
    Real d400 = ks_distance(cdf_table(400, lo, hi, step, bits));
    return Outcome{d400 < d100, "n=100: " + sci(d100) + ", n=400: " + sci(d400)};
  });

  const std::size_t moment_n = std::min<std::size_t>(std::max<std::size_t>(config.n_max, 2), 50);
  run.check("moment identities against lattice sums 2<=n<=" + std::to_string(moment_n), [&] {
    for (std::size_t n = 2; n <= moment_n; ++n)
      for (const auto& c : moment_identity_checks(n, 16, bits))
        if (c.relative_deviation > c.bound)
          return fail("n=" + std::to_string(n) + ", shift " + std::to_string(c.shift) + ": " +
                      sci(c.relative_deviation));
    return pass();
  });

  return run.take();
}

std::vector<CheckResult> verify_edgeworth(const VerifyConfig& config, const CheckSink& sink) {
  Runner run(sink);
  const long bits = config.precision_bits;

  run.check("distribution and cumulants equal brute-force enumeration n<=12", [&] {
    std::mt19937 rng(20240611);
    for (std::size_t n = 1; n <= 12; ++n) {
      BernoulliArray<Rational> array;
      for (std::size_t v = 0; v < n; ++v) {
        long den = std::uniform_int_distribution<long>(1, 20)(rng);
        long num = std::uniform_int_distribution<long>(0, den)(rng);
        Rational p(num, den);
        p.canonicalize();
        array.probabilities.push_back(p);
      }
      std::vector<Rational> brute(n + 1, Rational(0));
      for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        Rational weight(1);
        std::size_t ones = 0;
        for (std::size_t v = 0; v < n; ++v) {
          const bool on = (mask >> v) & 1UL;
          weight *= on ? array.probabilities[v] : 1 - array.probabilities[v];
          ones += on;
        }
        brute[ones] += weight;
      }
      if (distribution(array) != brute) return fail("distribution differs at n=" + std::to_string(n));

      Rational mean(0);
      for (std::size_t j = 0; j <= n; ++j) mean += brute[j] * static_cast<long>(j);
      Rational central[5] = {0, 0, 0, 0, 0};
      for (std::size_t j = 0; j <= n; ++j) {
        Rational d = Rational(static_cast<long>(j)) - mean;
        Rational power(1);
        for (int k = 1; k <= 4; ++k) {
          power *= d;
          central[k] += brute[j] * power;
        }
      }
      std::vector<Rational> kappa = exact_cumulants(array, 4);
      if (kappa[1] != mean || kappa[2] != central[2] || kappa[3] != central[3] ||
          kappa[4] != central[4] - 3 * central[2] * central[2])
        return fail("cumulants differ at n=" + std::to_string(n));
    }
    return pass();
  });

  run.check("cumulants from roots equal factorial-moment cumulants n in {5, 10, 20, 50}", [&] {
    for (std::size_t n : {5, 10, 20, 50}) {
      CumulantProfile from_roots = cumulants_from_probs(bernoulli_array_for_M(n, bits, config.threads), 4);
      CumulantProfile from_moments = cumulants_from_factorial_moments(modified_ls_row(n), 4, bits);
      for (std::size_t order = 1; order <= 4; ++order)
        if (!close(from_roots.kappa(order), from_moments.kappa(order), bits))
          return fail("kappa_" + std::to_string(order) + " differs at n=" + std::to_string(n));
    }
    return pass();
  });

  run.check("local limit values equal Bernoulli-array distribution n in {10, 30, 50}", [&] {
    for (std::size_t n : {10, 30, 50}) {
      std::vector<Real> scaled = local_limit_scaled(n, bits);
      std::vector<Real> p = distribution(bernoulli_array_for_M(n, bits, config.threads));
      const CltConstants c = constants(n, bits);
      MeanVariance mv = mu_sigma_exact(n);
      const Real sigma = sqrt(Real(mv.variance, bits));
      Real normalization = Real(derivatives_at_one(modified_ls_row(n)).value, bits) *
                           pow(c.omega, static_cast<long>(2 * n + 1)) / Real(factorial(2 * n), bits);
      for (std::size_t j = 0; j <= n; ++j) {
        Real composed = sigma * p[j] * (sqrt(c.b_n) / sigma) * normalization;
        if (!close(composed, scaled[j], bits)) return fail("mismatch at " + at(n, j));
      }
    }
    return pass();
  });

  run.check("k=3 expansion improves on k=2 at n=200", [&] {
    const std::vector<BigInt> row = modified_ls_row(200);
    const BigInt total = derivatives_at_one(row).value;
    std::vector<Rational> dist;
    for (const auto& entry : row) {
      Rational p(entry, total);
      p.canonicalize();
      dist.push_back(p);
    }
    CumulantProfile profile = cumulants_from_factorial_moments(row, 6, bits);
    ExpansionErrors errors = max_expansion_errors(expansion_table(dist, profile));
    return Outcome{errors.max_error3 < errors.max_error2,
                   "k=2: " + sci(errors.max_error2) + ", k=3: " + sci(errors.max_error3)};
  });

  return run.take();
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& config, const CheckSink& sink) {
  if (suite == "identities") return verify_identities(config, sink);
  if (suite == "roots") return verify_roots(config, sink);
  if (suite == "eisenstein") return verify_eisenstein(config, sink);
  if (suite == "clt") return verify_clt(config, sink);
  if (suite == "edgeworth") return verify_edgeworth(config, sink);
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (const auto& name : suite_names()) {
      if (name == "all") continue;
      auto part = run_suite(name, config, sink);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw DomainError("unknown suite '" + suite + "'");
}

}  // namespace lslab
