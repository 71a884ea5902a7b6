#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace lslab {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

// b^e for e >= 0; 0^0 = 1.
BigInt ipow(const BigInt& base, unsigned long exponent);
Rational rpow(const Rational& base, unsigned long exponent);

bool is_integer(const Rational& q);

// Decimal for integers, "p/q" otherwise.
std::string to_decimal(const Rational& q);
std::string to_decimal(const BigInt& z);

// Always "p/q", also for integers ("5/1", "0/1").
std::string to_fraction_string(const Rational& q);

// Accepts "p", "p/q" or a terminating decimal like "0.5". Throws DomainError.
Rational parse_rational(std::string_view text);

}  // namespace lslab
