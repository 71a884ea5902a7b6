#include "lslab/edgeworth.hpp"

#include <functional>
#include <type_traits>

#include "lslab/errors.hpp"
#include "lslab/poly_engine.hpp"

namespace lslab {

BernoulliArray<Real> probs_from_roots(const std::vector<Real>& roots) {
  BernoulliArray<Real> array;
  array.probabilities.reserve(roots.size());
  for (const auto& root : roots) {
    if (root > 0) throw DomainError("positive root " + format_sci(root, 12) + " has no Bernoulli law");
    array.probabilities.push_back(1 / (1 - root));
  }
  return array;
}

BernoulliArray<Real> bernoulli_array_for_M(std::size_t n, long precision_bits, unsigned threads) {
  RootCertificate cert = certify_roots(n);
  std::vector<Real> roots = refine_roots(cert, precision_bits, threads);
  roots.insert(roots.begin(), Real(0L, roots.empty() ? precision_bits + 32 : roots.front().precision()));
  return probs_from_roots(roots);
}

namespace {

template <typename Scalar>
void check_probabilities(const BernoulliArray<Scalar>& array) {
  for (const auto& p : array.probabilities)
    if (p < 0 || p > 1) throw DomainError("Bernoulli probability outside [0, 1]");
}

template <typename Scalar>
std::vector<Scalar> multiply_out(const BernoulliArray<Scalar>& array, const Scalar& one,
                                 const Scalar& zero) {
  check_probabilities(array);
  std::vector<Scalar> dist{one};
  for (const auto& p : array.probabilities) {
    const Scalar q = one - p;
    std::vector<Scalar> next(dist.size() + 1, zero);
    for (std::size_t j = 0; j < dist.size(); ++j) {
      next[j] += dist[j] * q;
      next[j + 1] += dist[j] * p;
    }
    dist = std::move(next);
  }
  return dist;
}

// kappa_m = mu'_m - sum_{i=1}^{m-1} C(m-1, i-1) kappa_i mu'_{m-i}
template <typename Scalar>
std::vector<Scalar> moments_to_cumulants(const std::vector<Scalar>& raw, const Scalar& zero) {
  const auto from_int = [&](const BigInt& v) {
    if constexpr (std::is_same_v<Scalar, Real>)
      return Real(v, zero.precision());
    else
      return Scalar(v);
  };
  std::vector<Scalar> kappa(raw.size(), zero);
  for (std::size_t m = 1; m < raw.size(); ++m) {
    Scalar value = raw[m];
    for (std::size_t i = 1; i < m; ++i) {
      const Scalar c = from_int(binomial(m - 1, i - 1));
      value -= c * kappa[i] * raw[m - i];
    }
    kappa[m] = value;
  }
  return kappa;
}

}  // namespace

std::vector<Rational> distribution(const BernoulliArray<Rational>& array) {
  return multiply_out(array, Rational(1), Rational(0));
}

std::vector<Real> distribution(const BernoulliArray<Real>& array) {
  const long bits = array.probabilities.empty() ? kDefaultPrecisionBits : array.probabilities.front().precision();
  return multiply_out(array, Real(1L, bits), Real(0L, bits));
}

CumulantProfile::CumulantProfile(std::size_t n, std::vector<Real> cumulants)
    : n_(n), kappa_(std::move(cumulants)) {
  if (kappa_.size() < 3) throw DomainError("a cumulant profile needs orders 1 and 2");
  if (!(kappa_[2] > 0)) throw DegenerateVarianceError("variance of S_n is zero");
  sigma_ = sqrt(kappa_[2]);
  const long bits = kappa_[2].precision();
  lambda_.assign(kappa_.size(), Real(0L, bits));
  const Real nn(static_cast<long>(n), bits);
  for (std::size_t v = 2; v < kappa_.size(); ++v) {
    const long order = static_cast<long>(v);
    // n^{(v-2)/2} / sigma^v
    Real scale = pow(sqrt(nn), order - 2) / pow(sigma_, order);
    lambda_[v] = kappa_[v] * scale;
  }
  lambda_[2] = Real(1L, bits);
}

const Real& CumulantProfile::kappa(std::size_t order) const {
  if (order < 1 || order >= kappa_.size())
    throw InsufficientCumulantsError("cumulant of order " + std::to_string(order) + " not available");
  return kappa_[order];
}

const Real& CumulantProfile::lambda(std::size_t order) const {
  if (order < 2 || order >= lambda_.size())
    throw InsufficientCumulantsError("normalized cumulant of order " + std::to_string(order) +
                                     " not available");
  return lambda_[order];
}

std::vector<Rational> exact_cumulants(const BernoulliArray<Rational>& array, std::size_t max_order) {
  if (max_order < 2) throw DomainError("cumulant order must be at least 2");
  check_probabilities(array);
  std::vector<Rational> total(max_order + 1, Rational(0));
  for (const auto& p : array.probabilities) {
    std::vector<Rational> raw(max_order + 1, p);
    raw[0] = 1;
    auto kappa = moments_to_cumulants(raw, Rational(0));
    for (std::size_t m = 1; m <= max_order; ++m) total[m] += kappa[m];
  }
  return total;
}

namespace {

CumulantProfile profile_from_exact(std::size_t n, const std::vector<Rational>& cumulants, long bits) {
  std::vector<Real> k;
  k.reserve(cumulants.size());
  for (const auto& c : cumulants) k.emplace_back(c, bits);
  return CumulantProfile(n, std::move(k));
}

}  // namespace

CumulantProfile cumulants_from_probs(const BernoulliArray<Rational>& array, std::size_t max_order,
                                     long precision_bits) {
  return profile_from_exact(array.n(), exact_cumulants(array, max_order), precision_bits);
}

CumulantProfile cumulants_from_probs(const BernoulliArray<Real>& array, std::size_t max_order) {
  if (max_order < 2) throw DomainError("cumulant order must be at least 2");
  check_probabilities(array);
  const long bits = array.probabilities.empty() ? kDefaultPrecisionBits : array.probabilities.front().precision();
  const Real zero(0L, bits);
  std::vector<Real> total(max_order + 1, zero);
  for (const auto& p : array.probabilities) {
    std::vector<Real> raw(max_order + 1, p);
    raw[0] = Real(1L, bits);
    auto kappa = moments_to_cumulants(raw, zero);
    for (std::size_t m = 1; m <= max_order; ++m) total[m] += kappa[m];
  }
  return CumulantProfile(array.n(), std::move(total));
}

std::vector<Rational> factorial_moment_cumulants(const IntegerPolynomial& poly, std::size_t max_order) {
  if (max_order < 2) throw DomainError("cumulant order must be at least 2");
  const auto& c = poly.coefficients();
  for (const auto& coefficient : c)
    if (coefficient < 0) throw DomainError("probability generating polynomial has a negative coefficient");
  const BigInt total = poly.evaluate(BigInt(1));
  if (total <= 0) throw DomainError("polynomial must be positive at 1");

  // factorial[m] = sum_j c_j j (j-1) ... (j-m+1) / p(1)
  std::vector<Rational> factorial_moment(max_order + 1);
  for (std::size_t m = 0; m <= max_order; ++m) {
    BigInt sum(0);
    for (std::size_t j = m; j < c.size(); ++j) {
      BigInt falling(1);
      for (std::size_t t = 0; t < m; ++t) falling *= static_cast<unsigned long>(j - t);
      sum += c[j] * falling;
    }
    factorial_moment[m] = Rational(sum, total);
    factorial_moment[m].canonicalize();
  }

  // E[S^m] = sum_k S(m, k) E[(S)_k], S(m, k) Stirling numbers of the second kind.
  std::vector<std::vector<BigInt>> stirling(max_order + 1, std::vector<BigInt>(max_order + 1, BigInt(0)));
  stirling[0][0] = 1;
  for (std::size_t m = 1; m <= max_order; ++m)
    for (std::size_t k = 1; k <= m; ++k)
      stirling[m][k] = stirling[m - 1][k - 1] + static_cast<unsigned long>(k) * stirling[m - 1][k];
  std::vector<Rational> raw(max_order + 1, Rational(0));
  for (std::size_t m = 0; m <= max_order; ++m)
    for (std::size_t k = 0; k <= m; ++k) raw[m] += Rational(stirling[m][k]) * factorial_moment[k];

  return moments_to_cumulants(raw, Rational(0));
}

CumulantProfile cumulants_from_factorial_moments(const IntegerPolynomial& poly, std::size_t max_order,
                                                 long precision_bits) {
  const auto cumulants = factorial_moment_cumulants(poly, max_order);
  if (cumulants[2] == 0) throw DegenerateVarianceError("variance of S_n is zero");
  return profile_from_exact(static_cast<std::size_t>(std::max(0L, poly.degree())), cumulants, precision_bits);
}

CumulantProfile cumulants_from_factorial_moments(const std::vector<BigInt>& coefficients,
                                                 std::size_t max_order, long precision_bits) {
  return cumulants_from_factorial_moments(IntegerPolynomial(coefficients), max_order, precision_bits);
}

Real hermite(std::size_t m, const Real& x) {
  Real prev(1L, x.precision());
  if (m == 0) return prev;
  Real current = x;
  for (std::size_t k = 1; k < m; ++k) {
    Real next = x * current - prev * static_cast<long>(k);
    prev = std::move(current);
    current = std::move(next);
  }
  return current;
}

Real standard_normal_density(const Real& x) {
  const long bits = x.precision();
  return exp(-(x * x) / 2) / sqrt(2 * Real::pi(bits));
}

Real q_correction(std::size_t nu, const CumulantProfile& profile, const Real& x) {
  if (nu < 1) throw DomainError("q_correction requires nu >= 1");
  if (profile.max_order() < nu + 2)
    throw InsufficientCumulantsError("q_" + std::to_string(nu) + " needs cumulants up to order " +
                                     std::to_string(nu + 2));
  const long bits = x.precision();
  std::vector<Real> scaled(nu + 1);  // lambda_{m+2} / (m+2)!
  for (std::size_t m = 1; m <= nu; ++m) scaled[m] = profile.lambda(m + 2) / Real(factorial(m + 2), bits);

  Real sum(0L, bits);
  std::vector<std::size_t> mu(nu + 1, 0);
  // Lexicographic descent over (mu_1, ..., mu_nu) with sum m mu_m = nu.
  std::function<void(std::size_t, std::size_t)> descend = [&](std::size_t m, std::size_t remaining) {
    if (m > nu) {
      if (remaining != 0) return;
      std::size_t s = 0;
      Real term(1L, bits);
      for (std::size_t i = 1; i <= nu; ++i) {
        s += mu[i];
        if (mu[i] == 0) continue;
        term *= pow(scaled[i], static_cast<long>(mu[i])) / Real(factorial(mu[i]), bits);
      }
      sum += hermite(nu + 2 * s, x) * term;
      return;
    }
    for (std::size_t count = 0; count * m <= remaining; ++count) {
      mu[m] = count;
      descend(m + 1, remaining - count * m);
    }
    mu[m] = 0;
  };
  descend(1, nu);
  return standard_normal_density(x) * sum;
}

Real lclt_expand(const CumulantProfile& profile, long j, std::size_t k, double variance_floor) {
  if (k < 2 || k > kMaxExpansionOrder)
    throw DomainError("expansion order k must lie in [2, " + std::to_string(kMaxExpansionOrder) + "]");
  const long bits = profile.precision();
  const Real nn(static_cast<long>(profile.n()), bits);
  if (profile.variance() / nn < Real::parse(std::to_string(variance_floor), bits))
    throw ConditionViolation("sigma_n^2 / n is below the configured floor");
  const Real x = (Real(j, bits) - profile.mean()) / profile.sigma();
  Real value = standard_normal_density(x);
  for (std::size_t nu = 1; nu + 2 <= k; ++nu)
    value += q_correction(nu, profile, x) / pow(sqrt(nn), static_cast<long>(nu));
  return value;
}

std::vector<ExpansionRow> expansion_table(const std::vector<Rational>& dist, const CumulantProfile& profile) {
  const long bits = profile.precision();
  std::vector<ExpansionRow> rows;
  rows.reserve(dist.size());
  for (std::size_t j = 0; j < dist.size(); ++j) {
    const long jj = static_cast<long>(j);
    Real x = (Real(jj, bits) - profile.mean()) / profile.sigma();
    Real exact = profile.sigma() * Real(dist[j], bits);
    Real k2 = lclt_expand(profile, jj, 2);
    Real k3 = lclt_expand(profile, jj, 3);
    Real e2 = abs(exact - k2);
    Real e3 = abs(exact - k3);
    rows.push_back({j, std::move(x), std::move(exact), std::move(k2), std::move(k3), std::move(e2), std::move(e3)});
  }
  return rows;
}

ExpansionErrors max_expansion_errors(const std::vector<ExpansionRow>& rows) {
  const long bits = rows.empty() ? kDefaultPrecisionBits : rows.front().error2.precision();
  ExpansionErrors out{Real(0L, bits), Real(0L, bits)};
  for (const auto& row : rows) {
    out.max_error2 = max(out.max_error2, row.error2);
    out.max_error3 = max(out.max_error3, row.error3);
  }
  return out;
}

}  // namespace lslab
