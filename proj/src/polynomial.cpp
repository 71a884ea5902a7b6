#include "lslab/polynomial.hpp"

#include <algorithm>

#include "lslab/errors.hpp"

namespace lslab {

IntegerPolynomial::IntegerPolynomial(std::vector<BigInt> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

IntegerPolynomial::IntegerPolynomial(std::initializer_list<long> coefficients) {
  coeffs_.reserve(coefficients.size());
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

IntegerPolynomial IntegerPolynomial::monomial(BigInt coefficient, std::size_t degree) {
  std::vector<BigInt> c(degree + 1, BigInt(0));
  c[degree] = std::move(coefficient);
  return IntegerPolynomial(std::move(c));
}

void IntegerPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntegerPolynomial IntegerPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntegerPolynomial(std::move(d));
}

IntegerPolynomial IntegerPolynomial::shifted(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<BigInt> c(k, BigInt(0));
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return IntegerPolynomial(std::move(c));
}

IntegerPolynomial IntegerPolynomial::divided_by_s() const {
  if (is_zero()) return {};
  if (coeffs_.front() != 0) throw DomainError("polynomial is not divisible by s");
  return IntegerPolynomial(std::vector<BigInt>(coeffs_.begin() + 1, coeffs_.end()));
}

BigInt IntegerPolynomial::content() const {
  BigInt g(0);
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntegerPolynomial IntegerPolynomial::primitive_part() const {
  if (is_zero()) return {};
  const BigInt g = content();
  std::vector<BigInt> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) mpz_divexact(c[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
  return IntegerPolynomial(std::move(c));
}

BigInt IntegerPolynomial::evaluate(const BigInt& s) const {
  BigInt acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Rational IntegerPolynomial::evaluate(const Rational& s) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + Rational(*it);
  return acc;
}

Real IntegerPolynomial::evaluate(const Real& s) const {
  Real acc(0L, s.precision());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= s;
    acc += Real(*it, s.precision());
  }
  return acc;
}

int IntegerPolynomial::sign_at(const Rational& s) const {
  if (is_zero()) return 0;
  const BigInt& p = s.get_num();
  const BigInt& q = s.get_den();
  // sum c_i p^i q^(d-i) by Horner, carrying the q powers.
  BigInt acc = coeffs_.back();
  BigInt qpow(1);
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
    qpow *= q;
    acc = acc * p + coeffs_[i] * qpow;
  }
  return sgn(acc);
}

IntegerPolynomial& IntegerPolynomial::operator+=(const IntegerPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), BigInt(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator-=(const IntegerPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), BigInt(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator*=(const BigInt& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  trim();
  return *this;
}

IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[i + k] += a.coeffs_[i] * b.coeffs_[k];
  return IntegerPolynomial(std::move(c));
}

IntegerPolynomial IntegerPolynomial::operator-() const {
  IntegerPolynomial out(*this);
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

IntegerPolynomial positive_pseudo_remainder(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (b.is_zero()) throw DomainError("pseudo-division by the zero polynomial");
  const BigInt lead_abs = abs(b.leading());
  const int lead_sign = sgn(b.leading());
  IntegerPolynomial r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    // |lc| r - sgn(lc) lead(r) s^d b cancels the leading term of r.
    BigInt factor = lead_sign * r.leading();
    IntegerPolynomial sub = b.shifted(static_cast<std::size_t>(r.degree() - b.degree())) * factor;
    r *= lead_abs;
    r -= sub;
  }
  return r;
}

IntegerPolynomial polynomial_gcd(IntegerPolynomial a, IntegerPolynomial b) {
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntegerPolynomial r = positive_pseudo_remainder(a, b).primitive_part();
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() || a.leading() > 0 ? a : -a;
}

std::vector<IntegerPolynomial> sturm_chain(const IntegerPolynomial& p) {
  std::vector<IntegerPolynomial> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p.primitive_part());
  IntegerPolynomial d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d.primitive_part());
  for (;;) {
    IntegerPolynomial r = positive_pseudo_remainder(chain[chain.size() - 2], chain.back());
    if (r.is_zero()) break;
    chain.push_back((-r).primitive_part());
  }
  return chain;
}

std::size_t sign_variations(const std::vector<IntegerPolynomial>& chain, const Rational& s) {
  std::size_t changes = 0;
  int previous = 0;
  for (const auto& q : chain) {
    int sign = q.sign_at(s);
    if (sign == 0) continue;
    if (previous != 0 && sign != previous) ++changes;
    previous = sign;
  }
  return changes;
}

}  // namespace lslab
