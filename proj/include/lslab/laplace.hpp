#pragma once

// Laplace integrals I_{r,n}(z) = int_0^inf e^{-xi z} xi^r ((xi+1)^n + (xi-1)^n) dxi
// in exact closed form, Eisenstein-type lattice sums built from them, the
// explicit truncation bound, and the leading saddle-point coefficients.

#include <cstddef>
#include <vector>

#include "lslab/numeric.hpp"
#include "lslab/real.hpp"

namespace lslab {

// coefficient / z^inverse_power
struct LaplaceTerm {
  BigInt coefficient;
  unsigned long inverse_power = 0;

  friend bool operator==(const LaplaceTerm&, const LaplaceTerm&) = default;
};

// I_{r,n}(z) = sum_{k even} 2 C(n,k) (r+n-k)! / z^{r+n-k+1}; terms are stored
// with strictly decreasing inverse powers.
struct LaplaceClosedForm {
  std::size_t r = 0;
  std::size_t n = 0;
  std::vector<LaplaceTerm> terms;

  Real evaluate(const Real& z) const;
  Complex evaluate(const Complex& z) const;
};

LaplaceClosedForm laplace_closed_form(std::size_t r, std::size_t n);

// Term-wise d/dz of sum c / z^e.
std::vector<LaplaceTerm> differentiate(const std::vector<LaplaceTerm>& terms);

// Differentiates I_{r,n} `order` times and compares the term list with
// (-1)^order I_{r+order,n}.
bool laplace_derivative_check(std::size_t r, std::size_t n, std::size_t order);

// zeta(s) for real s > 1: 10^4 direct terms plus the Euler-Maclaurin tail.
Real zeta(const Real& s);

// 2 zeta((r+1)/2) (w / 4 pi)^{(r+1)/2}, the explicit bound on the relative
// contribution of all m != 0 lattice terms. Requires r >= 2, w > 0.
Real tail_bound(std::size_t r, const Real& w);

struct EisensteinResult {
  Real value;           // real part of the truncated lattice sum, scaled
  Real imag_residual;   // |imaginary part| left after conjugate pairing
  Real tail_bound;      // relative bound attached to the sum (inf if none applies)
  unsigned m_max = 0;
};

// Lattice terms are accumulated in the order m = 0, 1, -1, 2, -2, ...
Complex laplace_lattice_sum(std::size_t r, std::size_t n, const Real& w, unsigned m_max);

// (2n)! (2 (cosh w - 1) / sinh w) sum_{|m|<=m_max} (w + 2 pi i m)^{-(2n+1)}, which
// approximates L_n(1 / (2 (cosh w - 1))).
EisensteinResult eisenstein_L(std::size_t n, const Real& w, unsigned m_max = 16);

// ((cosh w - 1) / sinh w) sum_{|m|<=m_max} I_{n,n}(w + 2 pi i m), which
// approximates M_n(1 / (2 (cosh w - 1))).
EisensteinResult eisenstein_M(std::size_t n, const Real& w, unsigned m_max = 16);

struct SaddleCoefficients {
  std::size_t nu = 0;
  Real z;
  Real b;     // cosh(z/2)
  Real b_nu;  // -(1/8)((z^2/2) cosh(z/2) + 2 z nu sinh(z/2) + (2nu^2+2nu+1) cosh(z/2))
};

SaddleCoefficients saddle_coefficients(std::size_t nu, const Real& z);

struct SaddleRow {
  std::size_t n = 0;
  Real q;                 // I_{n+nu,n}(z) sqrt(pi n) (z/2)^{2n+nu+1} / (n! (n+nu)!)
  Real q_minus_b;
  Real scaled;            // n (Q - b)
  Real second_order;      // n (Q - b) - b_nu
  Real tail_bound;        // tail_bound(n + nu, z)
};

struct SaddleReport {
  SaddleCoefficients coefficients;
  long precision_bits = 0;
  std::vector<SaddleRow> rows;
  // |n (Q - b) - b_nu| strictly decreases along the n list.
  bool residual_shrinks = false;
};

// Starts at precision_bits and doubles (up to max_precision_bits) while two
// evaluations 64 bits apart disagree beyond 2^(-bits/2); throws PrecisionError
// if the cap is reached.
SaddleReport saddle_convergence_check(std::size_t nu, const Real& z, const std::vector<std::size_t>& n_list,
                                      long precision_bits = kDefaultPrecisionBits,
                                      long max_precision_bits = 1024);

}  // namespace lslab
