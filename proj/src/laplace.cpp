#include "lslab/laplace.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "lslab/errors.hpp"

namespace lslab {

Real LaplaceClosedForm::evaluate(const Real& z) const {
  Real sum(0L, z.precision());
  for (const auto& t : terms) sum += Real(t.coefficient, z.precision()) / pow(z, static_cast<long>(t.inverse_power));
  return sum;
}

Complex LaplaceClosedForm::evaluate(const Complex& z) const {
  const long bits = std::max(z.re.precision(), z.im.precision());
  Complex sum{Real(0L, bits), Real(0L, bits)};
  if (terms.empty()) return sum;
  const Complex u = reciprocal(z);
  const Complex u2 = u * u;
  // Walk from the smallest inverse power upwards in steps of u^2.
  Complex power = ipow(u, terms.back().inverse_power);
  unsigned long current = terms.back().inverse_power;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    while (current < it->inverse_power) {
      if (it->inverse_power - current >= 2) {
        power = power * u2;
        current += 2;
      } else {
        power = power * u;
        current += 1;
      }
    }
    sum += power * Real(it->coefficient, bits);
  }
  return sum;
}

LaplaceClosedForm laplace_closed_form(std::size_t r, std::size_t n) {
  LaplaceClosedForm form;
  form.r = r;
  form.n = n;
  for (std::size_t k = 0; k <= n; k += 2) {
    const std::size_t p = r + n - k;
    form.terms.push_back({2 * binomial(n, k) * factorial(p), static_cast<unsigned long>(p + 1)});
  }
  return form;
}

std::vector<LaplaceTerm> differentiate(const std::vector<LaplaceTerm>& terms) {
  std::vector<LaplaceTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.inverse_power == 0 || t.coefficient == 0) continue;
    out.push_back({-t.coefficient * t.inverse_power, t.inverse_power + 1});
  }
  return out;
}

bool laplace_derivative_check(std::size_t r, std::size_t n, std::size_t order) {
  std::vector<LaplaceTerm> d = laplace_closed_form(r, n).terms;
  for (std::size_t i = 0; i < order; ++i) d = differentiate(d);
  std::vector<LaplaceTerm> expected = laplace_closed_form(r + order, n).terms;
  if (order % 2 == 1)
    for (auto& t : expected) t.coefficient = -t.coefficient;
  return d == expected;
}

namespace {

// B_0, B_2, B_4, ... as exact rationals, extended on demand.
Rational bernoulli_even(std::size_t index) {
  static std::mutex mutex;
  static std::vector<Rational> all{Rational(1), Rational(-1, 2)};  // B_0, B_1
  std::lock_guard lock(mutex);
  const std::size_t needed = 2 * index;
  while (all.size() <= needed) {
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    const std::size_t m = all.size();
    Rational sum(0);
    for (std::size_t k = 0; k < m; ++k) sum += Rational(binomial(m + 1, k)) * all[k];
    all.push_back(-sum / Rational(static_cast<unsigned long>(m + 1)));
  }
  return all[needed];
}

constexpr long kZetaDirectTerms = 10000;

}  // namespace

Real zeta(const Real& s) {
  if (!(s > 1)) throw DomainError("zeta(s) requires s > 1");
  const long bits = s.precision();
  Real sum(0L, bits);
  for (long k = 1; k < kZetaDirectTerms; ++k) sum += pow(Real(k, bits), -s);

  const Real big_n(kZetaDirectTerms, bits);
  const Real n_pow = pow(big_n, -s);
  sum += big_n * n_pow / (s - 1);
  sum += n_pow / 2;

  // B_{2i}/(2i)! s (s+1) ... (s+2i-2) N^{-s-2i+1}
  const Real threshold = exp2i(-bits - 8, bits);
  Real rising = s;             // s (s+1) ... (s+2i-2)
  Real n_power = n_pow / big_n;  // N^{-s-1}
  const Real inv_n2 = 1 / (big_n * big_n);
  for (std::size_t i = 1; i < 200; ++i) {
    Real term = Real(bernoulli_even(i), bits) / Real(factorial(2 * i), bits) * rising * n_power;
    sum += term;
    if (abs(term) < threshold) break;
    rising *= (s + static_cast<long>(2 * i - 1)) * (s + static_cast<long>(2 * i));
    n_power *= inv_n2;
  }
  return sum;
}

Real tail_bound(std::size_t r, const Real& w) {
  if (r < 2) throw DomainError("tail bound requires r >= 2");
  if (!(w > 0)) throw DomainError("tail bound requires w > 0");
  const long bits = w.precision();
  // zeta depends only on (r, precision); the lattice checks hit the same values repeatedly.
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, long>, Real> cache;
  Real half_exponent = Real(static_cast<long>(r + 1), bits) / 2;
  Real z;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({r, bits});
    if (it == cache.end()) it = cache.emplace(std::make_pair(r, bits), zeta(half_exponent)).first;
    z = it->second;
  }
  return 2 * z * pow(w / (4 * Real::pi(bits)), half_exponent);
}

Complex laplace_lattice_sum(std::size_t r, std::size_t n, const Real& w, unsigned m_max) {
  const long bits = w.precision();
  const LaplaceClosedForm form = laplace_closed_form(r, n);
  const Real two_pi = 2 * Real::pi(bits);
  Complex sum = form.evaluate(Complex{w, Real(0L, bits)});
  for (long m = 1; m <= static_cast<long>(m_max); ++m) {
    sum += form.evaluate(Complex{w, two_pi * m});
    sum += form.evaluate(Complex{w, two_pi * (-m)});
  }
  return sum;
}

EisensteinResult eisenstein_L(std::size_t n, const Real& w, unsigned m_max) {
  if (n < 1) throw DomainError("eisenstein_L requires n >= 1");
  if (!(w > 0)) throw DomainError("eisenstein_L requires w > 0");
  const long bits = w.precision();
  const Real two_pi = 2 * Real::pi(bits);
  const unsigned long power = 2 * n + 1;
  Complex sum = reciprocal(ipow(Complex{w, Real(0L, bits)}, power));
  for (long m = 1; m <= static_cast<long>(m_max); ++m) {
    sum += reciprocal(ipow(Complex{w, two_pi * m}, power));
    sum += reciprocal(ipow(Complex{w, two_pi * (-m)}, power));
  }
  const Real prefactor = Real(factorial(2 * n), bits) * 2 * (cosh(w) - 1) / sinh(w);
  return {sum.re * prefactor, abs(sum.im * prefactor), tail_bound(2 * n, w), m_max};
}

EisensteinResult eisenstein_M(std::size_t n, const Real& w, unsigned m_max) {
  if (n < 1) throw DomainError("eisenstein_M requires n >= 1");
  if (!(w > 0)) throw DomainError("eisenstein_M requires w > 0");
  const long bits = w.precision();
  Complex sum = laplace_lattice_sum(n, n, w, m_max);
  const Real prefactor = (cosh(w) - 1) / sinh(w);
  Real bound = n >= 2 ? tail_bound(n, w) : Real::infinity(bits);
  return {sum.re * prefactor, abs(sum.im * prefactor), std::move(bound), m_max};
}

SaddleCoefficients saddle_coefficients(std::size_t nu, const Real& z) {
  if (!(z > 0)) throw DomainError("saddle coefficients require z > 0");
  const Real half = z / 2;
  const Real ch = cosh(half);
  const Real sh = sinh(half);
  const long v = static_cast<long>(nu);
  Real inner = z * z / 2 * ch + 2 * z * v * sh + (2 * v * v + 2 * v + 1) * ch;
  return {nu, z, ch, -inner / 8};
}

namespace {

std::vector<SaddleRow> saddle_rows(std::size_t nu, const Real& z_in, const std::vector<std::size_t>& n_list,
                                   long bits) {
  const Real z = z_in.with_precision(bits);
  const SaddleCoefficients c = saddle_coefficients(nu, z);
  const Real pi = Real::pi(bits);
  std::vector<SaddleRow> rows;
  for (std::size_t n : n_list) {
    const long nn = static_cast<long>(n);
    Real integral = laplace_closed_form(n + nu, n).evaluate(z);
    Real q = integral * sqrt(pi * nn) * pow(z / 2, static_cast<long>(2 * n + nu + 1)) /
             Real(BigInt(factorial(n) * factorial(n + nu)), bits);
    Real q_minus_b = q - c.b;
    Real scaled = q_minus_b * nn;
    Real second = scaled - c.b_nu;
    Real bound = n + nu >= 2 ? tail_bound(n + nu, z) : Real::infinity(bits);
    rows.push_back({n, std::move(q), std::move(q_minus_b), std::move(scaled), std::move(second),
                    std::move(bound)});
  }
  return rows;
}

}  // namespace

SaddleReport saddle_convergence_check(std::size_t nu, const Real& z, const std::vector<std::size_t>& n_list,
                                      long precision_bits, long max_precision_bits) {
  if (!(z > 0)) throw DomainError("saddle check requires z > 0");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw DomainError("n_list must be strictly ascending");

  for (long bits = precision_bits;; bits = std::min(2 * bits, max_precision_bits)) {
    std::vector<SaddleRow> rows = saddle_rows(nu, z, n_list, bits);
    std::vector<SaddleRow> check = saddle_rows(nu, z, n_list, bits + 64);
    const Real tolerance = exp2i(-bits / 2, bits);
    bool stable = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Real scale = max(Real(1L, bits), abs(check[i].second_order));
      if (abs(rows[i].second_order - check[i].second_order) > tolerance * scale) stable = false;
    }
    if (stable) {
      SaddleReport report{saddle_coefficients(nu, z.with_precision(bits)), bits, std::move(rows), true};
      for (std::size_t i = 1; i < report.rows.size(); ++i)
        if (!(abs(report.rows[i].second_order) < abs(report.rows[i - 1].second_order)))
          report.residual_shrinks = false;
      return report;
    }
    if (bits >= max_precision_bits)
      throw PrecisionError("saddle check unstable at " + std::to_string(bits) +
                           " bits; raise the precision cap");
  }
}

}  // namespace lslab
