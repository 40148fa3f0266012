#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gsetpn/group.hpp"
#include "gsetpn/gset.hpp"

namespace gsetpn {

/// f : X -> H, values as element indices of the target group.
struct GroupValuedFunction {
  Group target;
  std::vector<Elem> values;

  std::size_t size() const noexcept { return values.size(); }
  /// Level set f^{-1}(h).
  PointSubset level_set(Elem h) const;
  /// Number of distinct values taken.
  std::size_t image_size() const;
};

/// A point of the unit circle, exact when given as a root of unity.
class UnitValue {
 public:
  /// exp(2 pi i exponent / order).
  static UnitValue root(int order, long long exponent);
  /// Throws InvalidInput unless |z| = 1 within 1e-12.
  static UnitValue from_complex(Complex z);
  static UnitValue from_angle(double radians);

  bool exact() const noexcept { return order_ > 0; }
  int order() const noexcept { return order_; }
  long long exponent() const noexcept { return exponent_; }
  Complex value() const noexcept { return value_; }

 private:
  int order_ = 0;
  long long exponent_ = 0;
  Complex value_{1.0, 0.0};
};

/// f : X -> T. Exact functions store one exponent per point over a common
/// order m (values exp(2 pi i e_x / m)); raw functions store complex values.
class CircleValuedFunction {
 public:
  static CircleValuedFunction roots(int order, std::vector<long long> exponents);
  /// Throws InvalidInput when some |value| differs from 1 by more than 1e-12.
  static CircleValuedFunction raw(std::vector<Complex> values);
  /// Exact over the lcm of the orders when every value is exact, raw otherwise.
  static CircleValuedFunction from_units(std::span<const UnitValue> values);

  bool exact() const noexcept { return order_ > 0; }
  int order() const noexcept { return order_; }
  std::span<const long long> exponents() const noexcept { return exponents_; }
  std::span<const Complex> values() const noexcept { return values_; }
  Complex operator[](Point x) const { return values_.at(x); }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  int order_ = 0;
  std::vector<long long> exponents_;
  std::vector<Complex> values_;
};

/// xi o f for a character xi of the target group, kept exact.
CircleValuedFunction compose(const Character& xi, const GroupValuedFunction& f);

}  // namespace gsetpn
