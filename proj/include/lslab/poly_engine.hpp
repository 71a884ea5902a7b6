#pragma once

// Horizontal generating polynomials of the modified Legendre- and
// Chebyshev-Stirling numbers, their zero certification and unimodality.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lslab/numeric.hpp"
#include "lslab/polynomial.hpp"
#include "lslab/real.hpp"

namespace lslab {

// M_n from M_n = s {2 M + (10 s + 2) M' + s (4 s + 1) M''}_{n-1}, M_0 = 1.
IntegerPolynomial build_M_recurrence(std::size_t n);
// M_n with coefficients (2j)! {n, j}_1 read from the exact triangle.
IntegerPolynomial build_M_from_triangle(std::size_t n);
// L_n with coefficients (2j)! {n, j}_{1/2}.
IntegerPolynomial build_L(std::size_t n);

enum class Parity { odd, even };

// sum_mu C(2k+1, 2mu+1) L_{k+mu+1} (odd) or sum_mu C(2k, 2mu) L_{k+mu} (even).
IntegerPolynomial connect_polynomials(std::size_t k, Parity parity);

struct DerivativesAtOne {
  BigInt value;
  BigInt first;
  BigInt second;
};

DerivativesAtOne derivatives_at_one(const IntegerPolynomial& p);
// Same quantities straight from a coefficient row, without a polynomial.
DerivativesAtOne derivatives_at_one(const std::vector<BigInt>& coefficients);

struct Interval {
  Rational lo;
  Rational hi;
};

// Exact evidence that the nonzero roots of M_n are n - 1 simple reals in
// (-1/4, 0). `quotient` is M_n / s; intervals are ascending and each holds
// exactly one root by Sturm count.
struct RootCertificate {
  std::size_t n = 0;
  std::vector<Interval> isolating_intervals;
  int sign_at_quarter = 0;
  IntegerPolynomial quotient;
};

RootCertificate certify_roots(std::size_t n);

// Bisects every certified interval to width < 2^-precision_bits using exact
// sign tests; returns interval midpoints in ascending order.
std::vector<Real> refine_roots(const RootCertificate& cert, long precision_bits,
                               unsigned threads = 1);

struct UnimodalityReport {
  std::size_t n = 0;
  bool plateau = false;
  // Mode location; for a plateau the pair (mode, mode + 1).
  std::size_t mode = 0;
};

// Peak-or-plateau check of (2j)! {n, j}_1, 0 <= j <= n.
UnimodalityReport unimodality_report(std::size_t n);
UnimodalityReport unimodality_of(const std::vector<BigInt>& sequence, std::size_t n);

}  // namespace lslab
