#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <utility>

#include "lslab/numeric.hpp"

namespace lslab {

inline constexpr long kDefaultPrecisionBits = 256;

// Owning MPFR scalar with an explicit bit precision. Binary operations run at
// the larger precision of their operands; rounding is to nearest.
class Real {
 public:
  Real() : Real(0L, kDefaultPrecisionBits) {}
  Real(long value, long bits);
  Real(const BigInt& value, long bits);
  Real(const Rational& value, long bits);

  static Real parse(const std::string& text, long bits);
  static Real pi(long bits);
  static Real infinity(long bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

  // Re-rounds to a new precision (in place).
  void set_precision(long bits);
  Real with_precision(long bits) const;

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs);
  Real& operator-=(long rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  Real operator-() const;

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  friend Real operator+(Real lhs, long rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, long rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, long rhs) { return lhs /= rhs; }
  friend Real operator+(long lhs, Real rhs) { return rhs += lhs; }
  friend Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
  friend Real operator-(long lhs, const Real& rhs);
  friend Real operator/(long lhs, const Real& rhs);

  friend bool operator==(const Real& a, const Real& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend std::partial_ordering operator<=>(const Real& a, long b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }

 private:
  void grow_to(long bits);

  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real cosh(const Real& x);
Real sinh(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real max(const Real& a, const Real& b);
// ldexp(1, e) at the given precision.
Real exp2i(long exponent, long bits);

BigInt floor_to_int(const Real& x);
BigInt round_to_int(const Real& x);

// Fixed-point decimal with `decimals` digits after the point.
std::string format_fixed(const Real& x, int decimals);
// Scientific notation with `significant` digits.
std::string format_sci(const Real& x, int significant);

// Minimal complex arithmetic over Real, enough for lattice sums.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& rhs) {
    re += rhs.re;
    im += rhs.im;
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
};

Complex reciprocal(const Complex& z);
Complex ipow(const Complex& z, unsigned long exponent);

}  // namespace lslab
