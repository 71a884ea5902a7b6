#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "lslab/numeric.hpp"
#include "lslab/real.hpp"

namespace lslab {

// Dense polynomial in s with big-integer coefficients, lowest degree first.
// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class IntegerPolynomial {
 public:
  IntegerPolynomial() = default;
  explicit IntegerPolynomial(std::vector<BigInt> coefficients);
  IntegerPolynomial(std::initializer_list<long> coefficients);

  static IntegerPolynomial monomial(BigInt coefficient, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
  const BigInt& leading() const { return coeffs_.back(); }

  IntegerPolynomial derivative() const;
  IntegerPolynomial shifted(std::size_t k) const;  // times s^k
  // Exact division by s; requires a zero constant term.
  IntegerPolynomial divided_by_s() const;

  // Positive gcd of the coefficients; the primitive part keeps the sign.
  BigInt content() const;
  IntegerPolynomial primitive_part() const;

  BigInt evaluate(const BigInt& s) const;
  Rational evaluate(const Rational& s) const;
  Real evaluate(const Real& s) const;
  // Sign of p(s) computed from the homogenized integer form; no division.
  int sign_at(const Rational& s) const;

  IntegerPolynomial& operator+=(const IntegerPolynomial& rhs);
  IntegerPolynomial& operator-=(const IntegerPolynomial& rhs);
  IntegerPolynomial& operator*=(const BigInt& scalar);

  friend IntegerPolynomial operator+(IntegerPolynomial a, const IntegerPolynomial& b) { return a += b; }
  friend IntegerPolynomial operator-(IntegerPolynomial a, const IntegerPolynomial& b) { return a -= b; }
  friend IntegerPolynomial operator*(IntegerPolynomial a, const BigInt& s) { return a *= s; }
  friend IntegerPolynomial operator*(const BigInt& s, IntegerPolynomial a) { return a *= s; }
  friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b);
  IntegerPolynomial operator-() const;

  friend bool operator==(const IntegerPolynomial& a, const IntegerPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

// Remainder of a modulo b scaled by a positive integer, so signs survive.
IntegerPolynomial positive_pseudo_remainder(const IntegerPolynomial& a, const IntegerPolynomial& b);

// Primitive gcd over the integers, normalized to a positive leading coefficient.
IntegerPolynomial polynomial_gcd(IntegerPolynomial a, IntegerPolynomial b);

// Sturm chain p, p', -rem(...), each reduced to its primitive part.
std::vector<IntegerPolynomial> sturm_chain(const IntegerPolynomial& p);

// Sign changes of the chain at s (zeros skipped).
std::size_t sign_variations(const std::vector<IntegerPolynomial>& chain, const Rational& s);

}  // namespace lslab
