#pragma once

// Brute-force reference implementations. They only use the action table and
// the group multiplication, never the verifiers under test.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "gsetpn/functions.hpp"
#include "gsetpn/gset.hpp"

namespace oracle {

using gsetpn::Elem;
using gsetpn::GSet;
using gsetpn::Group;
using gsetpn::Point;

inline bool pn(const GSet& xs, const Group& h, const std::vector<Elem>& f) {
  const std::size_t v = xs.size(), m = h.order();
  if (v % m) return false;
  for (Elem a = 1; a < xs.group().order(); ++a)
    for (Elem s = 0; s < m; ++s) {
      std::size_t n = 0;
      for (Point x = 0; x < v; ++x)
        if (h.mul(f[xs.act(a, x)], h.inv(f[x])) == s) ++n;
      if (n != v / m) return false;
    }
  return true;
}

inline std::size_t cap(const GSet& xs, Elem a, const std::vector<bool>& c, const std::vector<bool>& d) {
  std::size_t n = 0;
  for (Point x = 0; x < xs.size(); ++x)
    if (c[x] && d[xs.act(a, x)]) ++n;
  return n;
}

/// ell when D is a difference set, -1 otherwise.
inline long long difference_set(const GSet& xs, const std::vector<bool>& d) {
  long long ell = -1;
  for (Elem a = 1; a < xs.group().order(); ++a) {
    const auto n = static_cast<long long>(cap(xs, a, d, d));
    if (ell < 0) ell = n;
    else if (n != ell) return -1;
  }
  return ell < 0 ? 0 : ell;
}

inline std::complex<double> unit(long long e, int m) {
  const double t = 2.0 * std::numbers::pi * static_cast<double>(e) / m;
  return {std::cos(t), std::sin(t)};
}

/// Every nonidentity derivative sums to zero, decided in floating point.
inline bool bent(const GSet& xs, const std::vector<long long>& exps, int m) {
  for (Elem a = 1; a < xs.group().order(); ++a) {
    std::complex<double> s = 0;
    for (Point x = 0; x < xs.size(); ++x) s += unit(exps[xs.act(a, x)] - exps[x], m);
    if (std::abs(s) > 1e-9) return false;
  }
  return true;
}

/// Calls visit on every function X -> {0..m-1}, ascending in mixed radix with
/// point 0 most significant.
inline void for_each_function(std::size_t v, std::uint32_t m, const std::function<void(const std::vector<Elem>&)>& visit) {
  std::vector<Elem> f(v, 0);
  while (true) {
    visit(f);
    std::size_t i = v;
    while (i > 0) {
      --i;
      if (++f[i] < m) break;
      f[i] = 0;
      if (i == 0) return;
    }
    if (v == 0) return;
  }
}

inline std::vector<bool> mask(std::size_t v, std::uint64_t bits) {
  std::vector<bool> d(v);
  for (std::size_t x = 0; x < v; ++x) d[x] = (bits >> x) & 1u;
  return d;
}

}  // namespace oracle
