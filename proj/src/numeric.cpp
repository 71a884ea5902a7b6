#include "lslab/numeric.hpp"

#include <cctype>

#include "lslab/errors.hpp"

namespace lslab {

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational rpow(const Rational& base, unsigned long exponent) {
  Rational out{ipow(base.get_num(), exponent), ipow(base.get_den(), exponent)};
  out.canonicalize();
  return out;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::string to_decimal(const BigInt& z) { return z.get_str(10); }

std::string to_decimal(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (is_integer(q)) return q.get_num().get_str(10);
  return q.get_str(10);
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&] { throw DomainError("not a rational number: '" + s + "'"); };
  if (s.empty()) fail();

  auto valid_int = [](std::string_view t, bool allow_sign) {
    if (!t.empty() && allow_sign && (t.front() == '-' || t.front() == '+'))
      t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+'))
      whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (!valid_int(whole, false) || (!frac.empty() && !valid_int(frac, false)))
      fail();
    BigInt num(whole + frac, 10);
    Rational out{num, ipow(10, frac.size())};
    out.canonicalize();
    return negative ? Rational(-out) : out;
  }

  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) fail();
  if (num.front() == '+') num.erase(0, 1);
  BigInt d(den, 10);
  if (d == 0) fail();
  Rational out{BigInt(num, 10), d};
  out.canonicalize();
  return out;
}

}  // namespace lslab
