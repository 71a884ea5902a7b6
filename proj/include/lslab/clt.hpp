#pragma once

// Central limit results for the modified Legendre-Stirling distribution
// p(n, j) = (2j)! {n, j}_1 / M_n(1).

#include <cstddef>
#include <vector>

#include "lslab/numeric.hpp"
#include "lslab/real.hpp"

namespace lslab {

// omega = 2 log((sqrt5 + 1)/2), the positive root of 2 (cosh w - 1) = 1. The
// closed form is checked against a Newton solve before it is returned.
Real omega(long precision_bits = kDefaultPrecisionBits);
Real omega_by_root_solve(long precision_bits);

// f(w) = sinh w / (cosh w - 1), g(w) = 1 / (2 (cosh w - 1)).
Real f_of(const Real& w);
Real g_of(const Real& w);

struct CltConstants {
  std::size_t n = 0;
  Real omega;
  Real a_n;  // (2n+1)/(sqrt5 omega) - 1/2
  Real b_n;  // (1/2 - omega/sqrt5) (2/omega)^2 n/5
};

CltConstants constants(std::size_t n, long precision_bits = kDefaultPrecisionBits);

struct MeanVariance {
  Rational mean;
  Rational variance;
};

// mu = M'(1)/M(1), sigma^2 = M''(1)/M(1) + mu - mu^2 from a coefficient row.
MeanVariance mean_variance_from_row(const std::vector<BigInt>& row);
// Exact mean and variance of p(n, .); n = 1 is degenerate.
MeanVariance mu_sigma_exact(std::size_t n);

struct MomentResidualRow {
  std::size_t n = 0;
  MeanVariance exact;
  Real mean_residual;      // mu_n - a_n
  Real variance_residual;  // sigma_n^2 - b_n
};

struct DoublingRatio {
  std::size_t n = 0;  // ratio |r_{2n}| / |r_n|
  Real ratio;
};

struct MomentResidualReport {
  std::vector<MomentResidualRow> rows;
  std::vector<DoublingRatio> mean_doubling;
};

MomentResidualReport moment_residuals(const std::vector<std::size_t>& n_list,
                                long precision_bits = kDefaultPrecisionBits);

// A(n, j) = (2n)! / (sqrt(2 pi b_n) (2j)! omega^{2n+1}) e^{-x^2/2}, evaluated
// through its logarithm.
Real lclt_density_approx(std::size_t n, std::size_t j, long precision_bits = kDefaultPrecisionBits);

struct RatioReport {
  std::size_t n = 0;
  std::size_t j = 0;
  BigInt exact;        // {n, j}_1
  Real approximation;  // A(n, j)
  Real ratio;
  long precision_bits = 0;
  bool cross_checked = false;  // exact value confirmed by the modified-triangle recurrence
};

// {n, j}_1 by the single-row binomial sum (and optionally the full modified
// row recurrence) against A(n, j).
RatioReport ratio_check(std::size_t n, std::size_t j, long precision_bits = kDefaultPrecisionBits,
                        bool cross_check = true);

// sqrt(b_n) omega^{2n+1} / (2n)! (2j)! {n, j}_1 for j = 0..n.
std::vector<Real> local_limit_scaled(std::size_t n, long precision_bits = kDefaultPrecisionBits);

struct ResidualResult {
  std::size_t n = 0;
  Real max_residual;
  std::size_t argmax = 0;
};

// max_j |scaled(j) - phi((j - a_n)/sqrt(b_n))|.
ResidualResult local_limit_residual(std::size_t n, long precision_bits = kDefaultPrecisionBits,
                                  unsigned threads = 1);

// |M_n(1) omega^{2n+1} / (2n)! - 1|
Real normalization_residual(std::size_t n, long precision_bits = kDefaultPrecisionBits);

struct CdfValue {
  Real value;            // sum over j <= floor(a_n + y sqrt(b_n))
  bool knife_edge = false;
  Real alternate;        // the other side of a near-integer boundary (== value otherwise)
};

// Cumulative sums of one row, reused across many y.
class CdfTable {
 public:
  CdfTable(std::size_t n, long precision_bits = kDefaultPrecisionBits);

  std::size_t n() const { return n_; }
  CdfValue cdf(const Real& y) const;
  const CltConstants& constants() const { return constants_; }

 private:
  Real partial(const BigInt& bound) const;

  std::size_t n_;
  long bits_;
  CltConstants constants_;
  Real scale_;  // omega^{2n+1} / (2n)!
  std::vector<BigInt> cumulative_;
};

CdfValue row_cdf(std::size_t n, const Real& y, long precision_bits = kDefaultPrecisionBits);

// Phi(y): power series for |y| <= 8, continued fraction beyond.
Real normal_cdf(const Real& y, long precision_bits = kDefaultPrecisionBits);

struct KsRow {
  Real y;
  Real cdf;
  Real normal;
  Real difference;
};

// Grid y = lo, lo + step, ..., hi with exact rational grid points.
std::vector<KsRow> cdf_table(std::size_t n, const Rational& lo, const Rational& hi, const Rational& step,
                             long precision_bits = kDefaultPrecisionBits);
Real ks_distance(const std::vector<KsRow>& rows);

struct MomentIdentityCheck {
  std::size_t n = 0;
  std::size_t shift = 0;    // 0, 1, 2: lattice sum of I_{n+shift, n}
  Real exact;               // from M_n(1), M_n'(1), M_n''(1)
  Real lattice;             // truncated sum at w = omega
  Real relative_deviation;
  Real bound;               // tail_bound(n + shift, omega)
};

// Compares sqrt5 M(1), 2M(1) + 5M'(1), sqrt5 (2M(1) + 11M'(1) + 5M''(1)) with
// sum_m I_{n+shift,n}(omega + 2 pi i m), |m| <= m_max.
std::vector<MomentIdentityCheck> moment_identity_checks(std::size_t n, unsigned m_max = 16,
                                                        long precision_bits = kDefaultPrecisionBits);

}  // namespace lslab
