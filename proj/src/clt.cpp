#include "lslab/clt.hpp"

#include <algorithm>

#include "lslab/edgeworth.hpp"
#include "lslab/errors.hpp"
#include "lslab/exact_kernel.hpp"
#include "lslab/laplace.hpp"
#include "lslab/parallel.hpp"
#include "lslab/poly_engine.hpp"

namespace lslab {

namespace {

void require_precision(long bits) {
  if (bits < 64) throw DomainError("precision must be at least 64 bits");
}

}  // namespace

Real omega_by_root_solve(long precision_bits) {
  const long work = precision_bits + 32;
  Real w = Real::parse("0.9624", work);
  const Real tolerance = exp2i(-precision_bits - 16, work);
  for (int iteration = 0; iteration < 200; ++iteration) {
    // h(w) = 2 cosh w - 3, h'(w) = 2 sinh w
    Real step = (2 * cosh(w) - 3) / (2 * sinh(w));
    w -= step;
    if (abs(step) < tolerance) return w.with_precision(precision_bits);
  }
  throw PrecisionError("Newton iteration for omega did not converge");
}

Real omega(long precision_bits) {
  require_precision(precision_bits);
  const Real five(5L, precision_bits);
  Real closed = 2 * log((sqrt(five) + 1) / 2);
  Real solved = omega_by_root_solve(precision_bits);
  if (abs(closed - solved) > exp2i(-precision_bits + 4, precision_bits))
    throw InvariantViolation("closed-form omega disagrees with the root of 2(cosh w - 1) = 1");
  return closed;
}

Real f_of(const Real& w) { return sinh(w) / (cosh(w) - 1); }

Real g_of(const Real& w) { return 1 / (2 * (cosh(w) - 1)); }

CltConstants constants(std::size_t n, long precision_bits) {
  if (n < 1) throw DomainError("constants require n >= 1");
  Real w = omega(precision_bits);
  const Real sqrt5 = sqrt(Real(5L, precision_bits));
  const long nn = static_cast<long>(n);
  Real a = Real(2 * nn + 1, precision_bits) / (sqrt5 * w) - Real(Rational(1, 2), precision_bits);
  Real two_over_w = 2 / w;
  Real b = (Real(Rational(1, 2), precision_bits) - w / sqrt5) * two_over_w * two_over_w * nn / 5;
  return {n, std::move(w), std::move(a), std::move(b)};
}

MeanVariance mean_variance_from_row(const std::vector<BigInt>& row) {
  DerivativesAtOne d = derivatives_at_one(row);
  if (d.value == 0) throw DomainError("row sums to zero");
  Rational mean(d.first, d.value);
  mean.canonicalize();
  Rational second(d.second, d.value);
  second.canonicalize();
  Rational variance = second + mean - mean * mean;
  return {mean, variance};
}

MeanVariance mu_sigma_exact(std::size_t n) {
  if (n < 2) throw DegenerateVarianceError("p(1, .) is a point mass; variance is zero");
  return mean_variance_from_row(modified_ls_row(n));
}

MomentResidualReport moment_residuals(const std::vector<std::size_t>& n_list, long precision_bits) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw DomainError("n_list must be strictly ascending");
  MomentResidualReport report;
  ModifiedRowCursor cursor;
  for (std::size_t n : n_list) {
    if (n < 2) throw DegenerateVarianceError("mean and variance residuals need n >= 2");
    cursor.advance_to(n);
    MeanVariance mv = mean_variance_from_row(cursor.row());
    CltConstants c = constants(n, precision_bits);
    Real mean_residual = Real(mv.mean, precision_bits) - c.a_n;
    Real variance_residual = Real(mv.variance, precision_bits) - c.b_n;
    report.rows.push_back({n, std::move(mv), std::move(mean_residual), std::move(variance_residual)});
  }
  for (const auto& row : report.rows) {
    auto twice = std::find_if(report.rows.begin(), report.rows.end(),
                              [&](const MomentResidualRow& r) { return r.n == 2 * row.n; });
    if (twice != report.rows.end())
      report.mean_doubling.push_back({row.n, abs(twice->mean_residual) / abs(row.mean_residual)});
  }
  return report;
}

namespace {

Real log_density_approx(std::size_t n, std::size_t j, long bits) {
  require_precision(bits);
  if (j < 1 || j > n) throw DomainError("A(n, j) requires 1 <= j <= n");
  CltConstants c = constants(n, bits);
  // (2n)! / (2j)! as an exact integer
  BigInt falling(1);
  for (unsigned long t = 2 * j + 1; t <= 2 * n; ++t) falling *= t;
  Real x = (Real(static_cast<long>(j), bits) - c.a_n) / sqrt(c.b_n);
  Real value = log(Real(falling, bits)) - log(c.omega) * static_cast<long>(2 * n + 1) -
               log(2 * Real::pi(bits) * c.b_n) / 2 - x * x / 2;
  // exp turns an absolute error |log A| 2^-bits into a relative one.
  const long magnitude_bits = static_cast<long>(mpfr_get_exp(abs(value).raw()));
  if (!value.is_zero() && magnitude_bits > bits / 2)
    throw PrecisionError("log A(n, j) needs more than " + std::to_string(bits) + " bits");
  return value;
}

}  // namespace

Real lclt_density_approx(std::size_t n, std::size_t j, long precision_bits) {
  return exp(log_density_approx(n, j, precision_bits));
}

RatioReport ratio_check(std::size_t n, std::size_t j, long precision_bits, bool cross_check) {
  RatioReport report;
  report.n = n;
  report.j = j;
  report.precision_bits = precision_bits;
  report.exact = ls_binsum(n, j);
  if (cross_check) {
    std::vector<BigInt> row = modified_ls_row(n);
    if (row[j] != factorial(2 * j) * report.exact)
      throw InvariantViolation("binomial sum and modified-triangle recurrence disagree at (" +
                               std::to_string(n) + "," + std::to_string(j) + ")");
    report.cross_checked = true;
  }
  Real log_a = log_density_approx(n, j, precision_bits);
  report.approximation = exp(log_a);
  if (report.exact == 0) throw DomainError("{n, j}_1 vanishes; ratio undefined");
  report.ratio = exp(log(Real(report.exact, precision_bits)) - log_a);
  return report;
}

std::vector<Real> local_limit_scaled(std::size_t n, long precision_bits) {
  CltConstants c = constants(n, precision_bits);
  const std::vector<BigInt> row = modified_ls_row(n);
  Real scale = sqrt(c.b_n) * pow(c.omega, static_cast<long>(2 * n + 1)) / Real(factorial(2 * n), precision_bits);
  std::vector<Real> out;
  out.reserve(row.size());
  for (const auto& entry : row) out.push_back(scale * Real(entry, precision_bits));
  return out;
}

ResidualResult local_limit_residual(std::size_t n, long precision_bits, unsigned threads) {
  if (n < 2) throw DomainError("local_limit_residual requires n >= 2");
  CltConstants c = constants(n, precision_bits);
  const std::vector<Real> scaled = local_limit_scaled(n, precision_bits);
  const Real root_b = sqrt(c.b_n);
  std::vector<Real> residuals = parallel_map(scaled.size(), threads, [&](std::size_t j) {
    Real x = (Real(static_cast<long>(j), precision_bits) - c.a_n) / root_b;
    return abs(scaled[j] - standard_normal_density(x));
  });
  ResidualResult result{n, Real(0L, precision_bits), 0};
  for (std::size_t j = 0; j < residuals.size(); ++j) {
    if (residuals[j] > result.max_residual) {
      result.max_residual = residuals[j];
      result.argmax = j;
    }
  }
  return result;
}

Real normalization_residual(std::size_t n, long precision_bits) {
  Real w = omega(precision_bits);
  DerivativesAtOne d = derivatives_at_one(modified_ls_row(n));
  Real value = Real(d.value, precision_bits) * pow(w, static_cast<long>(2 * n + 1)) /
               Real(factorial(2 * n), precision_bits);
  return abs(value - 1);
}

CdfTable::CdfTable(std::size_t n, long precision_bits)
    : n_(n), bits_(precision_bits), constants_(lslab::constants(n, precision_bits)) {
  if (n < 2) throw DomainError("CdfTable requires n >= 2");
  scale_ = pow(constants_.omega, static_cast<long>(2 * n + 1)) / Real(factorial(2 * n), precision_bits);
  const std::vector<BigInt> row = modified_ls_row(n);
  cumulative_.reserve(row.size());
  BigInt running(0);
  for (const auto& entry : row) {
    running += entry;
    cumulative_.push_back(running);
  }
}

Real CdfTable::partial(const BigInt& bound) const {
  if (bound < 0) return Real(0L, bits_);
  if (bound >= static_cast<long>(n_)) return scale_ * Real(cumulative_.back(), bits_);
  return scale_ * Real(cumulative_[bound.get_ui()], bits_);
}

CdfValue CdfTable::cdf(const Real& y) const {
  Real bound = constants_.a_n + y.with_precision(bits_) * sqrt(constants_.b_n);
  BigInt floor_bound = floor_to_int(bound);
  BigInt nearest = round_to_int(bound);
  CdfValue out{partial(floor_bound), false, Real(0L, bits_)};
  if (abs(bound - Real(nearest, bits_)) < exp2i(-bits_ / 2, bits_)) {
    out.knife_edge = true;
    // Inclusive (j <= nearest) and exclusive (j <= nearest - 1) sums.
    BigInt other = floor_bound == nearest ? BigInt(nearest - 1) : nearest;
    out.alternate = partial(other);
  } else {
    out.alternate = out.value;
  }
  return out;
}

CdfValue row_cdf(std::size_t n, const Real& y, long precision_bits) {
  return CdfTable(n, precision_bits).cdf(y);
}

Real normal_cdf(const Real& y_in, long precision_bits) {
  const long work = precision_bits + 32;
  const Real y = y_in.with_precision(work);
  const Real eps = exp2i(-work, work);
  Real result(0L, work);
  if (abs(y) <= 8) {
    // Phi(y) = 1/2 + phi(y) sum_k y^{2k+1} / (2k+1)!!
    Real term = y;
    Real sum = y;
    const Real y2 = y * y;
    for (long k = 1; !term.is_zero(); ++k) {
      term = term * y2 / (2 * k + 1);
      sum += term;
      if (abs(term) <= eps * abs(sum)) break;
    }
    result = Real(Rational(1, 2), work) + standard_normal_density(y) * sum;
  } else {
    // Upper tail phi(t) / (t + 1/(t + 2/(t + 3/(t + ...)))) evaluated backwards.
    const Real t = abs(y);
    const Real density = standard_normal_density(t);
    auto tail = [&](long terms) {
      Real f = t;
      for (long k = terms; k >= 1; --k) f = t + Real(k, work) / f;
      return density / f;
    };
    long terms = 64;
    Real previous = tail(terms);
    for (;;) {
      terms *= 2;
      Real next = tail(terms);
      bool done = abs(next - previous) <= eps * abs(next) || terms > (1L << 16);
      previous = std::move(next);
      if (done) break;
    }
    result = y > 0 ? 1 - previous : previous;
  }
  return result.with_precision(precision_bits);
}

std::vector<KsRow> cdf_table(std::size_t n, const Rational& lo, const Rational& hi, const Rational& step,
                             long precision_bits) {
  if (step <= 0 || hi < lo) throw DomainError("invalid y grid");
  CdfTable table(n, precision_bits);
  std::vector<KsRow> rows;
  for (Rational y = lo; y <= hi; y += step) {
    Real yy(y, precision_bits);
    Real cdf = table.cdf(yy).value;
    Real normal = normal_cdf(yy, precision_bits);
    Real diff = abs(cdf - normal);
    rows.push_back({std::move(yy), std::move(cdf), std::move(normal), std::move(diff)});
  }
  return rows;
}

Real ks_distance(const std::vector<KsRow>& rows) {
  Real out(0L, rows.empty() ? kDefaultPrecisionBits : rows.front().difference.precision());
  for (const auto& row : rows) out = max(out, row.difference);
  return out;
}

std::vector<MomentIdentityCheck> moment_identity_checks(std::size_t n, unsigned m_max, long precision_bits) {
  if (n < 2) throw DomainError("moment identity checks require n >= 2");
  const Real w = omega(precision_bits);
  const Real sqrt5 = sqrt(Real(5L, precision_bits));
  DerivativesAtOne d = derivatives_at_one(modified_ls_row(n));
  const Real m0(d.value, precision_bits);
  const Real m1(d.first, precision_bits);
  const Real m2(d.second, precision_bits);
  const Real exact[3] = {sqrt5 * m0, 2 * m0 + 5 * m1, sqrt5 * (2 * m0 + 11 * m1 + 5 * m2)};

  std::vector<MomentIdentityCheck> out;
  for (std::size_t shift = 0; shift <= 2; ++shift) {
    Complex sum = laplace_lattice_sum(n + shift, n, w, m_max);
    Real deviation = abs(sum.re - exact[shift]) / exact[shift];
    out.push_back({n, shift, exact[shift], sum.re, std::move(deviation), tail_bound(n + shift, w)});
  }
  return out;
}

}  // namespace lslab
