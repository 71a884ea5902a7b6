#pragma once

// Exact Jacobi-Stirling numbers of the second kind and their Legendre
// (gamma = 1) and Chebyshev (gamma = 1/2) specializations.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lslab/numeric.hpp"

namespace lslab {

inline constexpr std::size_t kDefaultRowCap = 2000;

// Non-negative exact rational parameter of the triangle.
class GammaParam {
 public:
  explicit GammaParam(Rational value);
  static GammaParam legendre() { return GammaParam(Rational(1)); }
  static GammaParam chebyshev() { return GammaParam(Rational(1, 2)); }
  static GammaParam zero() { return GammaParam(Rational(0)); }

  const Rational& value() const { return value_; }
  bool is_legendre() const { return value_ == 1; }
  bool is_chebyshev() const { return value_ == Rational(1, 2); }
  bool is_zero() const { return value_ == 0; }

  // j (j + 2 gamma - 1), the weight on the (n-1, j) parent.
  Rational weight(std::size_t j) const;

  friend bool operator==(const GammaParam& a, const GammaParam& b) { return a.value_ == b.value_; }

 private:
  Rational value_;
};

enum class Family { jacobi, legendre, chebyshev };

Family parse_family(const std::string& name);
std::string family_name(Family family);

// Immutable (n, j) table of exact values for one gamma, rows 0..max_n.
class StirlingTriangle {
 public:
  static StirlingTriangle build(const GammaParam& gamma, std::size_t max_n,
                                std::size_t row_cap = kDefaultRowCap);

  // Reconstructs from stored rows; verifies every entry against the recurrence.
  static StirlingTriangle from_rows(const GammaParam& gamma, std::vector<std::vector<Rational>> rows);

  const GammaParam& gamma() const { return gamma_; }
  std::size_t max_n() const { return rows_.size() - 1; }

  // Zero outside the support 0 <= j <= n.
  Rational at(std::size_t n, std::size_t j) const;
  const std::vector<Rational>& row(std::size_t n) const { return rows_.at(n); }

 private:
  StirlingTriangle(GammaParam gamma, std::vector<std::vector<Rational>> rows)
      : gamma_(std::move(gamma)), rows_(std::move(rows)) {}

  GammaParam gamma_;
  std::vector<std::vector<Rational>> rows_;
};

// Process-wide memo of triangles keyed by gamma. Readers receive shared
// immutable snapshots; growth replaces the snapshot under a lock.
class TriangleCache {
 public:
  explicit TriangleCache(std::size_t row_cap = kDefaultRowCap) : row_cap_(row_cap) {}

  std::shared_ptr<const StirlingTriangle> get(const GammaParam& gamma, std::size_t min_n);
  std::size_t row_cap() const { return row_cap_; }

  static TriangleCache& global();

 private:
  std::size_t row_cap_;
  std::mutex mutex_;
  std::map<Rational, std::shared_ptr<const StirlingTriangle>> triangles_;
};

Rational js_recurrence(std::size_t n, std::size_t j, const GammaParam& gamma);

// Closed alternating sum with the Gamma ratio expanded as a finite product.
// Requires gamma > 0. At gamma = 1/2 the r = 0 summand is taken as 0 for n >= 1.
Rational js_explicit(std::size_t n, std::size_t j, const GammaParam& gamma);

// Legendre-Stirling numbers through the two single-row alternating sums.
BigInt ls_altsum(std::size_t n, std::size_t j);
BigInt ls_binsum(std::size_t n, std::size_t j);

// Chebyshev-Stirling numbers through the central-difference sum.
BigInt cs_binsum(std::size_t n, std::size_t j);

// sum_{v=0}^{2j} (-1)^v C(2j, v) (j - v)^power, the central difference kernel.
BigInt central_difference_sum(std::size_t j, std::size_t power);

// Row n of (2j)! {n, j}_1 built by its own recurrence; O(n^2) big-integer work.
std::vector<BigInt> modified_ls_row(std::size_t n);

// Memoized modified Legendre-Stirling triangle.
class ModifiedTriangle {
 public:
  explicit ModifiedTriangle(std::size_t row_cap = kDefaultRowCap) : row_cap_(row_cap) {}

  const std::vector<BigInt>& row(std::size_t n);
  BigInt at(std::size_t n, std::size_t j);

 private:
  std::size_t row_cap_;
  std::vector<std::vector<BigInt>> rows_;
};

// Steps through successive rows of the modified triangle without retaining
// old ones; for large n where the full table would not fit in memory.
class ModifiedRowCursor {
 public:
  ModifiedRowCursor() : row_{BigInt(1)} {}

  std::size_t n() const { return n_; }
  const std::vector<BigInt>& row() const { return row_; }
  void advance();
  void advance_to(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<BigInt> row_;
};

BigInt modified_ls(std::size_t n, std::size_t j);

BigInt connect_odd(std::size_t k, std::size_t j);
BigInt connect_even(std::size_t k, std::size_t j);

// Checks {n, j}_0 = {n-1, j-1}_1 and returns the common value.
BigInt gamma_zero_shift(std::size_t n, std::size_t j);

// {n, j}_gamma divided by its fixed-j leading term
// Gamma(j+2g-1) / (j! Gamma(2j+2g-1)) (j (j+2g-1))^n, exactly.
Rational fixed_j_ratio(std::size_t n, std::size_t j, const GammaParam& gamma);

}  // namespace lslab
