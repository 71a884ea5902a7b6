#pragma once

// Local central limit machinery for row sums S_n of independent Bernoulli
// variables whose generating polynomial has only real non-positive zeros.

#include <cstddef>
#include <vector>

#include "lslab/numeric.hpp"
#include "lslab/polynomial.hpp"
#include "lslab/real.hpp"

namespace lslab {

// P(X_v = 1) = p_v. Scalar is Rational (exact) or Real.
template <typename Scalar>
struct BernoulliArray {
  std::vector<Scalar> probabilities;

  std::size_t n() const { return probabilities.size(); }
};

// p_v = 1 / (1 + x_v) with x_v = -root_v; a positive root is a DomainError.
BernoulliArray<Real> probs_from_roots(const std::vector<Real>& roots);

// All n zeros of M_n (0 plus the refined certified roots) turned into an array.
BernoulliArray<Real> bernoulli_array_for_M(std::size_t n, long precision_bits, unsigned threads = 1);

// P(S_n = j), j = 0..n, by multiplying out prod (p s + 1 - p).
std::vector<Rational> distribution(const BernoulliArray<Rational>& array);
std::vector<Real> distribution(const BernoulliArray<Real>& array);

// Mean, variance and normalized cumulants
// lambda_v = n^{(v-2)/2} kappa_v / sigma^v for v = 2..max_order.
class CumulantProfile {
 public:
  CumulantProfile(std::size_t n, std::vector<Real> cumulants);

  std::size_t n() const { return n_; }
  std::size_t max_order() const { return kappa_.size() - 1; }
  long precision() const { return mean().precision(); }
  const Real& mean() const { return kappa_[1]; }
  const Real& variance() const { return kappa_[2]; }
  const Real& sigma() const { return sigma_; }
  const Real& kappa(std::size_t order) const;
  const Real& lambda(std::size_t order) const;

 private:
  std::size_t n_;
  std::vector<Real> kappa_;   // index = order, [0] unused
  std::vector<Real> lambda_;  // index = order, [0], [1] unused
  Real sigma_;
};

// Exact cumulants kappa_1..kappa_K of S_n from the per-variable
// moment-to-cumulant recursion (every raw moment of a Bernoulli is p).
std::vector<Rational> exact_cumulants(const BernoulliArray<Rational>& array, std::size_t max_order);

CumulantProfile cumulants_from_probs(const BernoulliArray<Rational>& array, std::size_t max_order,
                                     long precision_bits = kDefaultPrecisionBits);
CumulantProfile cumulants_from_probs(const BernoulliArray<Real>& array, std::size_t max_order);

// Independent path: factorial moments p^{(m)}(1)/p(1) -> raw moments ->
// cumulants, all exact, converted at the end.
std::vector<Rational> factorial_moment_cumulants(const IntegerPolynomial& poly, std::size_t max_order);
CumulantProfile cumulants_from_factorial_moments(const IntegerPolynomial& poly, std::size_t max_order,
                                                 long precision_bits = kDefaultPrecisionBits);
// Same, from a plain coefficient row (the modified triangle row of M_n).
CumulantProfile cumulants_from_factorial_moments(const std::vector<BigInt>& coefficients,
                                                 std::size_t max_order,
                                                 long precision_bits = kDefaultPrecisionBits);

// Probabilists' Hermite polynomial He_m(x).
Real hermite(std::size_t m, const Real& x);

Real standard_normal_density(const Real& x);

// q_{nu,n}(x): phi(x) sum over mu_1 + 2 mu_2 + ... + nu mu_nu = nu of
// He_{nu+2s}(x) prod (1/mu_m!) (lambda_{m+2}/(m+2)!)^{mu_m}, s = sum mu_m.
Real q_correction(std::size_t nu, const CumulantProfile& profile, const Real& x);

inline constexpr double kDefaultVarianceFloor = 0.01;
inline constexpr std::size_t kMaxExpansionOrder = 4;

// phi(x) + sum_{nu=1}^{k-2} q_nu(x) / n^{nu/2} at x = (j - mu)/sigma, which
// approximates sigma P(S_n = j). Requires 2 <= k <= 4 and sigma^2/n >= floor.
Real lclt_expand(const CumulantProfile& profile, long j, std::size_t k,
                 double variance_floor = kDefaultVarianceFloor);

struct ExpansionRow {
  std::size_t j = 0;
  Real x;
  Real exact;  // sigma P(S_n = j)
  Real order2;
  Real order3;
  Real error2;
  Real error3;
};

std::vector<ExpansionRow> expansion_table(const std::vector<Rational>& distribution,
                                          const CumulantProfile& profile);

struct ExpansionErrors {
  Real max_error2;
  Real max_error3;
};

ExpansionErrors max_expansion_errors(const std::vector<ExpansionRow>& rows);

}  // namespace lslab
