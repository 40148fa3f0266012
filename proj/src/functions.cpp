#include "gsetpn/functions.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "gsetpn/error.hpp"

namespace gsetpn {

PointSubset GroupValuedFunction::level_set(Elem h) const {
  PointSubset s(values.size());
  for (Point x = 0; x < values.size(); ++x)
    if (values[x] == h) s.insert(x);
  return s;
}

std::size_t GroupValuedFunction::image_size() const {
  return std::set<Elem>(values.begin(), values.end()).size();
}

UnitValue UnitValue::root(int order, long long exponent) {
  if (order < 1) throw InvalidInput("root of unity order must be positive");
  UnitValue u;
  u.order_ = order;
  u.exponent_ = ((exponent % order) + order) % order;
  u.value_ = root_of_unity(u.exponent_, order);
  return u;
}

UnitValue UnitValue::from_complex(Complex z) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) throw InvalidInput("value is not on the unit circle");
  UnitValue u;
  u.value_ = z;
  return u;
}

UnitValue UnitValue::from_angle(double radians) {
  return from_complex(std::polar(1.0, radians));
}

CircleValuedFunction CircleValuedFunction::roots(int order, std::vector<long long> exponents) {
  if (order < 1) throw InvalidInput("root of unity order must be positive");
  CircleValuedFunction f;
  f.order_ = order;
  f.values_.reserve(exponents.size());
  for (auto& e : exponents) {
    e = ((e % order) + order) % order;
    f.values_.push_back(root_of_unity(e, order));
  }
  f.exponents_ = std::move(exponents);
  return f;
}

CircleValuedFunction CircleValuedFunction::raw(std::vector<Complex> values) {
  for (auto z : values)
    if (std::abs(std::abs(z) - 1.0) > 1e-12) throw InvalidInput("function value is not on the unit circle");
  CircleValuedFunction f;
  f.values_ = std::move(values);
  return f;
}

CircleValuedFunction CircleValuedFunction::from_units(std::span<const UnitValue> values) {
  int order = 1;
  bool all_exact = true;
  for (const auto& u : values) {
    if (!u.exact()) {
      all_exact = false;
      break;
    }
    order = std::lcm(order, u.order());
  }
  if (!all_exact) {
    std::vector<Complex> raw_values;
    for (const auto& u : values) raw_values.push_back(u.value());
    return raw(std::move(raw_values));
  }
  std::vector<long long> e;
  for (const auto& u : values) e.push_back(u.exponent() * (order / u.order()));
  return roots(order, std::move(e));
}

CircleValuedFunction compose(const Character& xi, const GroupValuedFunction& f) {
  std::vector<long long> e;
  e.reserve(f.values.size());
  for (Elem h : f.values) e.push_back(xi.phase(h));
  return CircleValuedFunction::roots(xi.modulus(), std::move(e));
}

}  // namespace gsetpn
