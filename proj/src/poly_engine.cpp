#include "lslab/poly_engine.hpp"

#include <algorithm>

#include "lslab/errors.hpp"
#include "lslab/exact_kernel.hpp"
#include "lslab/parallel.hpp"

namespace lslab {

IntegerPolynomial build_M_recurrence(std::size_t n) {
  IntegerPolynomial m{1};
  const IntegerPolynomial ten_s_plus_two{2, 10};
  const IntegerPolynomial s_four_s_plus_one{0, 1, 4};
  for (std::size_t step = 0; step < n; ++step) {
    IntegerPolynomial d1 = m.derivative();
    IntegerPolynomial d2 = d1.derivative();
    IntegerPolynomial inner = m * BigInt(2) + ten_s_plus_two * d1 + s_four_s_plus_one * d2;
    m = inner.shifted(1);
  }
  return m;
}

IntegerPolynomial build_M_from_triangle(std::size_t n) {
  std::vector<BigInt> c(n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    c[j] = factorial(2 * j) * js_recurrence(n, j, GammaParam::legendre()).get_num();
  return IntegerPolynomial(std::move(c));
}

IntegerPolynomial build_L(std::size_t n) {
  std::vector<BigInt> c(n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    c[j] = factorial(2 * j) * js_recurrence(n, j, GammaParam::chebyshev()).get_num();
  return IntegerPolynomial(std::move(c));
}

IntegerPolynomial connect_polynomials(std::size_t k, Parity parity) {
  IntegerPolynomial sum;
  for (std::size_t mu = 0; mu <= k; ++mu) {
    if (parity == Parity::odd)
      sum += build_L(k + mu + 1) * binomial(2 * k + 1, 2 * mu + 1);
    else
      sum += build_L(k + mu) * binomial(2 * k, 2 * mu);
  }
  return sum;
}

DerivativesAtOne derivatives_at_one(const std::vector<BigInt>& coefficients) {
  DerivativesAtOne d{BigInt(0), BigInt(0), BigInt(0)};
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    const unsigned long jj = j;
    d.value += coefficients[j];
    d.first += coefficients[j] * jj;
    if (j >= 2) d.second += coefficients[j] * (jj * (jj - 1));
  }
  return d;
}

DerivativesAtOne derivatives_at_one(const IntegerPolynomial& p) {
  return derivatives_at_one(p.coefficients());
}

namespace {

std::size_t roots_between(const std::vector<IntegerPolynomial>& chain, const Rational& lo,
                          const Rational& hi) {
  std::size_t v_lo = sign_variations(chain, lo);
  std::size_t v_hi = sign_variations(chain, hi);
  return v_lo >= v_hi ? v_lo - v_hi : 0;
}

// A split point strictly inside (lo, hi) that is not itself a root.
Rational split_point(const IntegerPolynomial& q, const Rational& lo, const Rational& hi) {
  static const Rational kFractions[] = {Rational(1, 2), Rational(1, 3), Rational(2, 3),
                                        Rational(3, 7), Rational(4, 7), Rational(5, 11)};
  for (const auto& t : kFractions) {
    Rational m = lo + (hi - lo) * t;
    if (q.sign_at(m) != 0) return m;
  }
  throw CertificationError("split", "no root-free split point found");
}

}  // namespace

RootCertificate certify_roots(std::size_t n) {
  if (n < 1) throw DomainError("certify_roots requires n >= 1");
  RootCertificate cert;
  cert.n = n;

  IntegerPolynomial m = build_M_recurrence(n);
  if (m.degree() != static_cast<long>(n))
    throw CertificationError("degree", "M_n has degree " + std::to_string(m.degree()));
  if (m.coefficient(0) != 0) throw CertificationError("root-at-zero", "M_n(0) != 0");
  cert.quotient = m.divided_by_s();
  const IntegerPolynomial& q = cert.quotient;

  const Rational left(-1, 4);
  const Rational right(0);
  const int expected_sign = n % 2 == 0 ? 1 : -1;
  cert.sign_at_quarter = m.sign_at(left);
  if (cert.sign_at_quarter != expected_sign)
    throw CertificationError("sign-at-quarter", "sign M_n(-1/4) = " +
                                                    std::to_string(cert.sign_at_quarter));
  if (q.sign_at(right) == 0) throw CertificationError("simple-zero", "s = 0 is a multiple root");

  if (q.degree() > 0) {
    IntegerPolynomial g = polynomial_gcd(q, q.derivative());
    if (g.degree() != 0) throw CertificationError("simplicity", "M_n/s is not squarefree");
  }

  const auto chain = sturm_chain(q);
  const std::size_t count = roots_between(chain, left, right);
  if (count != n - 1)
    throw CertificationError("root-count", std::to_string(count) + " roots in (-1/4, 0), expected " +
                                               std::to_string(n - 1));

  // Bisect until every piece holds at most one root.
  struct Piece {
    Rational lo, hi;
    std::size_t roots;
  };
  std::vector<Piece> stack{{left, right, count}};
  while (!stack.empty()) {
    Piece piece = std::move(stack.back());
    stack.pop_back();
    if (piece.roots == 0) continue;
    if (piece.roots == 1) {
      cert.isolating_intervals.push_back({piece.lo, piece.hi});
      continue;
    }
    Rational mid = split_point(q, piece.lo, piece.hi);
    std::size_t left_roots = roots_between(chain, piece.lo, mid);
    stack.push_back({mid, piece.hi, piece.roots - left_roots});
    stack.push_back({piece.lo, std::move(mid), left_roots});
  }
  std::sort(cert.isolating_intervals.begin(), cert.isolating_intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  for (std::size_t i = 0; i < cert.isolating_intervals.size(); ++i) {
    const auto& iv = cert.isolating_intervals[i];
    if (!(left <= iv.lo && iv.lo < iv.hi && iv.hi <= right))
      throw CertificationError("containment", "interval outside (-1/4, 0)");
    if (i > 0 && cert.isolating_intervals[i - 1].hi > iv.lo)
      throw CertificationError("disjoint", "overlapping isolating intervals");
    if (roots_between(chain, iv.lo, iv.hi) != 1)
      throw CertificationError("isolation", "interval does not hold exactly one root");
  }
  if (cert.isolating_intervals.size() != n - 1)
    throw CertificationError("interval-count", "wrong number of isolating intervals");
  return cert;
}

std::vector<Real> refine_roots(const RootCertificate& cert, long precision_bits, unsigned threads) {
  const long out_bits = std::max(precision_bits, 64L) + 32;
  const IntegerPolynomial& q = cert.quotient;
  return parallel_map(cert.isolating_intervals.size(), threads, [&](std::size_t i) {
    Rational lo = cert.isolating_intervals[i].lo;
    Rational hi = cert.isolating_intervals[i].hi;
    const int sign_lo = q.sign_at(lo);
    const Rational width_target = Rational(1) / Rational(ipow(2, static_cast<unsigned long>(precision_bits)));
    while (hi - lo >= width_target) {
      Rational mid = (lo + hi) / 2;
      int s = q.sign_at(mid);
      if (s == 0) return Real(mid, out_bits);
      if (s == sign_lo)
        lo = std::move(mid);
      else
        hi = std::move(mid);
    }
    return Real(Rational((lo + hi) / 2), out_bits);
  });
}

UnimodalityReport unimodality_of(const std::vector<BigInt>& seq, std::size_t n) {
  if (seq.empty()) throw DomainError("empty sequence");
  std::size_t i = 0;
  while (i + 1 < seq.size() && seq[i] < seq[i + 1]) ++i;
  UnimodalityReport report;
  report.n = n;
  report.mode = i;
  if (i + 1 < seq.size() && seq[i] == seq[i + 1]) {
    report.plateau = true;
    ++i;
  }
  while (i + 1 < seq.size() && seq[i] > seq[i + 1]) ++i;
  if (i + 1 != seq.size())
    throw UnimodalityViolation("sequence for n = " + std::to_string(n) +
                               " is not unimodal (break at index " + std::to_string(i) + ")");
  return report;
}

UnimodalityReport unimodality_report(std::size_t n) {
  if (n < 3) throw DomainError("unimodality report requires n >= 3");
  return unimodality_of(modified_ls_row(n), n);
}

}  // namespace lslab
