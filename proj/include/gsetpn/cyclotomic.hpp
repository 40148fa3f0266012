#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gsetpn/group.hpp"

namespace gsetpn {

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<long long> cyclotomic_polynomial(int n);

/// Exact element of Z[zeta_M] written as sum_k c_k zeta_M^k, 0 <= k < M.
///
/// Zero testing reduces modulo the M-th cyclotomic polynomial, so equalities
/// between sums of roots of unity are decided without rounding.
class CyclotomicInt {
 public:
  explicit CyclotomicInt(int modulus);

  int modulus() const noexcept { return static_cast<int>(coeffs_.size()); }
  std::span<const long long> coeffs() const noexcept { return coeffs_; }

  void add_root(long long k, long long count = 1);
  void add_integer(long long c) { coeffs_[0] += c; }

  CyclotomicInt conj() const;
  CyclotomicInt operator*(const CyclotomicInt& other) const;
  CyclotomicInt& operator+=(const CyclotomicInt& other);
  CyclotomicInt& operator*=(long long c);

  bool is_zero() const;
  Complex to_complex() const;

 private:
  std::vector<long long> coeffs_;
};

/// Decides sum_k counts[k] zeta_m^k == 0 for a fixed m, reusing Phi_m.
class RootSumTester {
 public:
  explicit RootSumTester(int m);
  int modulus() const noexcept { return m_; }
  /// counts.size() must equal m. Uses the caller's scratch to stay allocation free.
  bool vanishes(std::span<const long long> counts, std::vector<long long>& scratch) const;
  bool vanishes(std::span<const long long> counts) const;

 private:
  int m_;
  std::vector<long long> phi_;
};

}  // namespace gsetpn
