#include "lslab/real.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>

#include "lslab/errors.hpp"

namespace lslab {
namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

long checked_bits(long bits) {
  if (bits < MPFR_PREC_MIN || bits > 1L << 24)
    throw DomainError("precision out of range: " + std::to_string(bits) + " bits");
  return bits;
}

}  // namespace

Real::Real(long value, long bits) {
  mpfr_init2(value_, checked_bits(bits));
  mpfr_set_si(value_, value, kRound);
}

Real::Real(const BigInt& value, long bits) {
  mpfr_init2(value_, checked_bits(bits));
  mpfr_set_z(value_, value.get_mpz_t(), kRound);
}

Real::Real(const Rational& value, long bits) {
  mpfr_init2(value_, checked_bits(bits));
  mpfr_set_q(value_, value.get_mpq_t(), kRound);
}

Real Real::parse(const std::string& text, long bits) {
  Real out(0L, bits);
  if (mpfr_set_str(out.value_, text.c_str(), 10, kRound) != 0)
    throw DomainError("not a real number: '" + text + "'");
  return out;
}

Real Real::pi(long bits) {
  Real out(0L, bits);
  mpfr_const_pi(out.value_, kRound);
  return out;
}

Real Real::infinity(long bits) {
  Real out(0L, bits);
  mpfr_set_inf(out.value_, 1);
  return out;
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRound);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

void Real::set_precision(long bits) { mpfr_prec_round(value_, checked_bits(bits), kRound); }

Real Real::with_precision(long bits) const {
  Real out(*this);
  out.set_precision(bits);
  return out;
}

void Real::grow_to(long bits) {
  if (bits > precision()) mpfr_prec_round(value_, bits, kRound);
}

Real& Real::operator+=(const Real& rhs) {
  grow_to(rhs.precision());
  mpfr_add(value_, value_, rhs.value_, kRound);
  return *this;
}
Real& Real::operator-=(const Real& rhs) {
  grow_to(rhs.precision());
  mpfr_sub(value_, value_, rhs.value_, kRound);
  return *this;
}
Real& Real::operator*=(const Real& rhs) {
  grow_to(rhs.precision());
  mpfr_mul(value_, value_, rhs.value_, kRound);
  return *this;
}
Real& Real::operator/=(const Real& rhs) {
  grow_to(rhs.precision());
  mpfr_div(value_, value_, rhs.value_, kRound);
  return *this;
}
Real& Real::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, kRound);
  return *this;
}
Real& Real::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, kRound);
  return *this;
}
Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRound);
  return *this;
}
Real& Real::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, kRound);
  return *this;
}

Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.value_, out.value_, kRound);
  return out;
}

Real operator-(long lhs, const Real& rhs) {
  Real out(0L, rhs.precision());
  mpfr_si_sub(out.value_, lhs, rhs.value_, kRound);
  return out;
}

Real operator/(long lhs, const Real& rhs) {
  Real out(0L, rhs.precision());
  mpfr_si_div(out.value_, lhs, rhs.value_, kRound);
  return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

namespace {

template <typename Fn>
Real unary(const Real& x, Fn fn) {
  Real out(0L, x.precision());
  fn(out.raw(), x.raw(), kRound);
  return out;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }
Real sinh(const Real& x) { return unary(x, mpfr_sinh); }

Real pow(const Real& base, const Real& exponent) {
  Real out(0L, std::max(base.precision(), exponent.precision()));
  mpfr_pow(out.raw(), base.raw(), exponent.raw(), kRound);
  return out;
}

Real pow(const Real& base, long exponent) {
  Real out(0L, base.precision());
  mpfr_pow_si(out.raw(), base.raw(), exponent, kRound);
  return out;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real exp2i(long exponent, long bits) {
  Real out(1L, bits);
  mpfr_mul_2si(out.raw(), out.raw(), exponent, kRound);
  return out;
}

BigInt floor_to_int(const Real& x) {
  if (!x.is_finite()) throw DomainError("floor of a non-finite value");
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), x.raw(), MPFR_RNDD);
  return out;
}

BigInt round_to_int(const Real& x) {
  if (!x.is_finite()) throw DomainError("rounding a non-finite value");
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), x.raw(), MPFR_RNDN);
  return out;
}

namespace {

std::string formatted(const char* fmt, int digits, const Real& x) {
  char* buffer = nullptr;
  if (mpfr_asprintf(&buffer, fmt, digits, x.raw()) < 0) throw Error("mpfr formatting failed");
  std::unique_ptr<char, decltype(&mpfr_free_str)> guard(buffer, &mpfr_free_str);
  return std::string(buffer);
}

}  // namespace

std::string format_fixed(const Real& x, int decimals) { return formatted("%.*RNf", decimals, x); }

std::string format_sci(const Real& x, int significant) {
  return formatted("%.*RNe", std::max(0, significant - 1), x);
}

Complex reciprocal(const Complex& z) {
  Real norm = z.re * z.re + z.im * z.im;
  return {z.re / norm, -z.im / norm};
}

Complex ipow(const Complex& z, unsigned long exponent) {
  long bits = std::max(z.re.precision(), z.im.precision());
  Complex result{Real(1L, bits), Real(0L, bits)};
  Complex base = z;
  while (exponent > 0) {
    if (exponent & 1UL) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

}  // namespace lslab
