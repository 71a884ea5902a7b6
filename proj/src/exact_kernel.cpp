#include "lslab/exact_kernel.hpp"

#include "lslab/errors.hpp"

namespace lslab {

GammaParam::GammaParam(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (value_ < 0) throw DomainError("gamma must be non-negative, got " + to_decimal(value_));
}

Rational GammaParam::weight(std::size_t j) const {
  Rational jj(static_cast<unsigned long>(j));
  return jj * (jj + 2 * value_ - 1);
}

Family parse_family(const std::string& name) {
  if (name == "jacobi") return Family::jacobi;
  if (name == "legendre") return Family::legendre;
  if (name == "chebyshev") return Family::chebyshev;
  throw DomainError("unknown family '" + name + "'");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::jacobi:
      return "jacobi";
    case Family::legendre:
      return "legendre";
    case Family::chebyshev:
      return "chebyshev";
  }
  return "?";
}

StirlingTriangle StirlingTriangle::build(const GammaParam& gamma, std::size_t max_n,
                                         std::size_t row_cap) {
  if (max_n > row_cap)
    throw ResourceLimitError("triangle of " + std::to_string(max_n) + " rows exceeds the cap of " +
                             std::to_string(row_cap));
  std::vector<std::vector<Rational>> rows;
  rows.reserve(max_n + 1);
  rows.push_back({Rational(1)});
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto& prev = rows.back();
    std::vector<Rational> next(n + 1);
    next[0] = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      next[j] = prev[j - 1];
      if (j < prev.size()) next[j] += gamma.weight(j) * prev[j];
    }
    rows.push_back(std::move(next));
  }
  return StirlingTriangle(gamma, std::move(rows));
}

StirlingTriangle StirlingTriangle::from_rows(const GammaParam& gamma,
                                             std::vector<std::vector<Rational>> rows) {
  if (rows.empty() || rows[0].size() != 1 || rows[0][0] != 1)
    throw InvariantViolation("triangle rows must start with the row [1]");
  for (std::size_t n = 1; n < rows.size(); ++n) {
    if (rows[n].size() != n + 1)
      throw InvariantViolation("row " + std::to_string(n) + " has wrong length");
    if (rows[n][0] != 0) throw InvariantViolation("column 0 must vanish for n >= 1");
    for (std::size_t j = 1; j <= n; ++j) {
      Rational expected = rows[n - 1].size() > j - 1 ? rows[n - 1][j - 1] : Rational(0);
      if (j < rows[n - 1].size()) expected += gamma.weight(j) * rows[n - 1][j];
      if (rows[n][j] != expected)
        throw InvariantViolation("entry (" + std::to_string(n) + "," + std::to_string(j) +
                                 ") violates the recurrence");
    }
  }
  return StirlingTriangle(gamma, std::move(rows));
}

Rational StirlingTriangle::at(std::size_t n, std::size_t j) const {
  if (n >= rows_.size())
    throw DomainError("row " + std::to_string(n) + " not in triangle of max_n " +
                      std::to_string(max_n()));
  if (j > n) return Rational(0);
  return rows_[n][j];
}

std::shared_ptr<const StirlingTriangle> TriangleCache::get(const GammaParam& gamma,
                                                           std::size_t min_n) {
  if (min_n > row_cap_)
    throw ResourceLimitError("n = " + std::to_string(min_n) + " exceeds the row cap of " +
                             std::to_string(row_cap_));
  std::lock_guard lock(mutex_);
  auto& slot = triangles_[gamma.value()];
  if (!slot || slot->max_n() < min_n) {
    // Grow geometrically so a sweep over n does not rebuild at every step.
    std::size_t target = slot ? std::max(min_n, std::min(row_cap_, 2 * slot->max_n())) : min_n;
    slot = std::make_shared<const StirlingTriangle>(StirlingTriangle::build(gamma, target, row_cap_));
  }
  return slot;
}

TriangleCache& TriangleCache::global() {
  static TriangleCache cache;
  return cache;
}

Rational js_recurrence(std::size_t n, std::size_t j, const GammaParam& gamma) {
  if (j > n) return Rational(0);
  return TriangleCache::global().get(gamma, n)->at(n, j);
}

Rational js_explicit(std::size_t n, std::size_t j, const GammaParam& gamma) {
  if (gamma.value() <= 0)
    throw DomainError("explicit formula requires gamma > 0; use the recurrence at gamma = 0");
  if (n == 0) return Rational(j == 0 ? 1 : 0);

  const Rational c = 2 * gamma.value() - 1;
  Rational sum(0);
  BigInt r_fact(1);
  for (std::size_t r = 0; r <= j; ++r) {
    if (r > 0) r_fact *= static_cast<unsigned long>(r);
    Rational rr(static_cast<unsigned long>(r));
    Rational base = rr * (rr + c);
    Rational lead = 2 * rr + c;
    if (base == 0 || lead == 0) {
      // (r (r + c))^n vanishes for n >= 1; the companion Gamma pole (c = 0,
      // r = 0) is removed by that zero factor.
      continue;
    }
    Rational product(1);
    for (std::size_t t = 0; t <= j; ++t) {
      Rational factor = rr + c + static_cast<unsigned long>(t);
      if (factor == 0)
        throw ArithmeticError("Gamma-ratio factor vanishes at r = " + std::to_string(r));
      product *= factor;
    }
    Rational term = lead * rpow(base, n) / (Rational(r_fact * factorial(j - r)) * product);
    if ((r + j) % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

BigInt ls_altsum(std::size_t n, std::size_t j) {
  Rational sum(0);
  for (std::size_t r = 0; r <= j; ++r) {
    BigInt rr(static_cast<unsigned long>(r));
    Rational term{(2 * rr + 1) * ipow(rr * (rr + 1), n), factorial(j - r) * factorial(j + r + 1)};
    term.canonicalize();
    if ((r + j) % 2 == 1) term = -term;
    sum += term;
  }
  if (!is_integer(sum) || sum < 0)
    throw InvariantViolation("Legendre alternating sum is not a non-negative integer at (" +
                             std::to_string(n) + "," + std::to_string(j) + ")");
  return sum.get_num();
}

namespace {

BigInt exact_divide(const BigInt& num, const BigInt& den, const char* what, std::size_t n,
                    std::size_t j) {
  BigInt q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (r != 0)
    throw InvariantViolation(std::string(what) + " not divisible by (2j)! at (" +
                             std::to_string(n) + "," + std::to_string(j) + ")");
  return q;
}

}  // namespace

BigInt ls_binsum(std::size_t n, std::size_t j) {
  if (j > n) return 0;
  BigInt sum(0);
  BigInt coeff(1);  // C(2j, v), updated incrementally
  const long jj = static_cast<long>(j);
  for (long v = 0; v <= 2 * jj; ++v) {
    if (v > 0) {
      coeff *= 2 * jj - v + 1;
      coeff /= v;
    }
    BigInt base = BigInt(jj - v) * BigInt(jj + 1 - v);
    BigInt term = coeff * ipow(base, n);
    if (v % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  BigInt value = exact_divide(sum, factorial(2 * j), "Legendre binomial sum", n, j);
  if (value < 0) throw InvariantViolation("negative Legendre-Stirling value");
  return value;
}

BigInt central_difference_sum(std::size_t j, std::size_t power) {
  BigInt sum(0);
  BigInt coeff(1);
  const long jj = static_cast<long>(j);
  for (long v = 0; v <= 2 * jj; ++v) {
    if (v > 0) {
      coeff *= 2 * jj - v + 1;
      coeff /= v;
    }
    BigInt term = coeff * ipow(BigInt(jj - v), power);
    if (v % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

BigInt cs_binsum(std::size_t n, std::size_t j) {
  if (j > n) return 0;
  return exact_divide(central_difference_sum(j, 2 * n), factorial(2 * j), "Chebyshev binomial sum",
                      n, j);
}

namespace {

std::vector<BigInt> next_modified_row(const std::vector<BigInt>& prev) {
  const std::size_t m = prev.size() - 1;
  std::vector<BigInt> next(m + 2);
  next[0] = 0;
  for (std::size_t j = 1; j <= m + 1; ++j) {
    const unsigned long jj = j;
    next[j] = prev[j - 1] * (2 * jj * (2 * jj - 1));
    if (j <= m) next[j] += prev[j] * (jj * (jj + 1));
  }
  return next;
}

}  // namespace

void ModifiedRowCursor::advance() {
  row_ = next_modified_row(row_);
  ++n_;
}

void ModifiedRowCursor::advance_to(std::size_t n) {
  if (n < n_) throw DomainError("cursor cannot move backwards");
  while (n_ < n) advance();
}

std::vector<BigInt> modified_ls_row(std::size_t n) {
  ModifiedRowCursor cursor;
  cursor.advance_to(n);
  return cursor.row();
}

const std::vector<BigInt>& ModifiedTriangle::row(std::size_t n) {
  if (n > row_cap_)
    throw ResourceLimitError("modified triangle row " + std::to_string(n) + " exceeds the cap");
  if (rows_.empty()) rows_.push_back({BigInt(1)});
  while (rows_.size() <= n) rows_.push_back(next_modified_row(rows_.back()));
  return rows_[n];
}

BigInt ModifiedTriangle::at(std::size_t n, std::size_t j) {
  if (j > n) return 0;
  return row(n)[j];
}

BigInt modified_ls(std::size_t n, std::size_t j) {
  if (j > n) return 0;
  BigInt value = modified_ls_row(n)[j];
  if (value != factorial(2 * j) * ls_binsum(n, j))
    throw InvariantViolation("modified triangle disagrees with (2j)! times the binomial sum");
  return value;
}

namespace {

BigInt chebyshev_value(std::size_t n, std::size_t j) {
  Rational v = js_recurrence(n, j, GammaParam::chebyshev());
  return v.get_num();
}

}  // namespace

BigInt connect_odd(std::size_t k, std::size_t j) {
  BigInt sum(0);
  for (std::size_t mu = 0; mu <= k; ++mu)
    sum += binomial(2 * k + 1, 2 * mu + 1) * chebyshev_value(k + mu + 1, j);
  return sum;
}

BigInt connect_even(std::size_t k, std::size_t j) {
  BigInt sum(0);
  for (std::size_t mu = 0; mu <= k; ++mu)
    sum += binomial(2 * k, 2 * mu) * chebyshev_value(k + mu, j);
  return sum;
}

BigInt gamma_zero_shift(std::size_t n, std::size_t j) {
  if (n < 1 || j < 1) throw DomainError("gamma_zero_shift requires n, j >= 1");
  Rational lhs = js_recurrence(n, j, GammaParam::zero());
  Rational rhs = js_recurrence(n - 1, j - 1, GammaParam::legendre());
  if (lhs != rhs)
    throw InvariantViolation("{n,j}_0 != {n-1,j-1}_1 at (" + std::to_string(n) + "," +
                             std::to_string(j) + ")");
  return lhs.get_num();
}

Rational fixed_j_ratio(std::size_t n, std::size_t j, const GammaParam& gamma) {
  if (j < 1) throw DomainError("fixed-j asymptotic requires j >= 1");
  const Rational c = 2 * gamma.value() - 1;
  const Rational jj(static_cast<unsigned long>(j));
  // Gamma(j + c) / Gamma(2j + c) = 1 / prod_{t=j}^{2j-1} (t + c)
  Rational product(1);
  for (std::size_t t = j; t < 2 * j; ++t) {
    Rational factor = Rational(static_cast<unsigned long>(t)) + c;
    if (factor == 0) throw ArithmeticError("Gamma-ratio factor vanishes");
    product *= factor;
  }
  Rational leading = rpow(jj * (jj + c), n) / (Rational(factorial(j)) * product);
  if (leading == 0) throw ArithmeticError("fixed-j leading term vanishes");
  return js_recurrence(n, j, gamma) / leading;
}

}  // namespace lslab
