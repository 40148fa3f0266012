#include "gsetpn/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "gsetpn/error.hpp"

namespace gsetpn {

namespace {

// Exact division of integer polynomials by a monic divisor.
std::vector<long long> divide_monic(std::vector<long long> num, const std::vector<long long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long long c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

// In-place remainder modulo a monic polynomial; returns true when it is zero.
bool reduces_to_zero(std::vector<long long>& p, const std::vector<long long>& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = p.size(); i-- > deg;) {
    const long long c = p[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) p[i - deg + j] -= c * phi[j];
  }
  for (std::size_t i = 0; i < std::min(deg, p.size()); ++i)
    if (p[i] != 0) return false;
  return true;
}

}  // namespace

std::vector<long long> cyclotomic_polynomial(int n) {
  if (n < 1) throw InvalidInput("cyclotomic polynomial index must be positive");
  static std::mutex mutex;
  static std::map<int, std::vector<long long>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // t^n - 1 divided by Phi_d for every proper divisor d of n.
  std::vector<long long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divide_monic(std::move(p), cyclotomic_polynomial(d));
  std::lock_guard lock(mutex);
  cache.emplace(n, p);
  return p;
}

CyclotomicInt::CyclotomicInt(int modulus) {
  if (modulus < 1) throw InvalidInput("cyclotomic modulus must be positive");
  coeffs_.assign(modulus, 0);
}

void CyclotomicInt::add_root(long long k, long long count) {
  const long long m = modulus();
  k %= m;
  if (k < 0) k += m;
  coeffs_[k] += count;
}

CyclotomicInt CyclotomicInt::conj() const {
  CyclotomicInt out(modulus());
  for (int k = 0; k < modulus(); ++k) out.add_root(-k, coeffs_[k]);
  return out;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& other) const {
  if (other.modulus() != modulus()) throw InvalidInput("cyclotomic moduli differ");
  const int m = modulus();
  CyclotomicInt out(m);
  for (int i = 0; i < m; ++i) {
    if (coeffs_[i] == 0) continue;
    for (int j = 0; j < m; ++j)
      if (other.coeffs_[j] != 0) out.coeffs_[(i + j) % m] += coeffs_[i] * other.coeffs_[j];
  }
  return out;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& other) {
  if (other.modulus() != modulus()) throw InvalidInput("cyclotomic moduli differ");
  for (int i = 0; i < modulus(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(long long c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

bool CyclotomicInt::is_zero() const {
  auto p = coeffs_;
  return reduces_to_zero(p, cyclotomic_polynomial(modulus()));
}

Complex CyclotomicInt::to_complex() const {
  Complex s = 0.0;
  for (int k = 0; k < modulus(); ++k)
    if (coeffs_[k] != 0) s += static_cast<double>(coeffs_[k]) * root_of_unity(k, modulus());
  return s;
}

RootSumTester::RootSumTester(int m) : m_(m), phi_(cyclotomic_polynomial(m)) {}

bool RootSumTester::vanishes(std::span<const long long> counts,
                             std::vector<long long>& scratch) const {
  if (static_cast<int>(counts.size()) != m_) throw InvalidInput("root count vector has wrong size");
  scratch.assign(counts.begin(), counts.end());
  return reduces_to_zero(scratch, phi_);
}

bool RootSumTester::vanishes(std::span<const long long> counts) const {
  std::vector<long long> scratch;
  return vanishes(counts, scratch);
}

}  // namespace gsetpn
