#include "gsetpn/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "gsetpn/error.hpp"
#include "gsetpn/nonlinearity.hpp"

namespace gsetpn {

namespace {

Group f2() { return make_abelian_group({2}); }

void require_f2(const GroupValuedFunction& f) {
  if (f.target.order() != 2) throw InvalidInput("function must take values in F_2");
}

void require_size(const GSet& xs, const GroupValuedFunction& f) {
  if (f.size() != xs.size()) throw InvalidInput("function length does not match |X|");
}

// Number of points of the pair sent to the non-identity element.
int ones(const GroupValuedFunction& f, const std::array<Point, 2>& pair) {
  return (f.values[pair[0]] != 0) + (f.values[pair[1]] != 0);
}

bool pn_on(const GSet& xs, const GroupValuedFunction& f, const PointSubset& part) {
  if (part.empty()) return false;
  auto [sub, old] = xs.restrict_to(part);
  GroupValuedFunction g{f.target, {}};
  for (Point x : old) g.values.push_back(f.values[x]);
  return is_pn_counting(sub, g).is_pn;
}

UnitValue times(const UnitValue& a, const UnitValue& b) {
  if (a.exact() && b.exact()) {
    const int order = std::lcm(a.order(), b.order());
    return UnitValue::root(order, a.exponent() * (order / a.order()) + b.exponent() * (order / b.order()));
  }
  const Complex z = a.value() * b.value();
  return UnitValue::from_complex(z / std::abs(z));
}

const UnitValue kMinusOne = UnitValue::root(2, 1);

}  // namespace

bool exists_pn_c2(std::size_t r, std::size_t s) {
  if (r == 0 && s == 0) throw InvalidInput("empty G-set");
  return 2 * r >= s && (2 * r + s) % 4 == 0;
}

GroupValuedFunction construct_pn_c2(std::size_t r, std::size_t s, bool evenly_balanced) {
  if (!exists_pn_c2(r, s))
    throw NoConstruction("no PN function on " + std::to_string(r) + " two-orbits and " + std::to_string(s) +
                         " fixed points: needs 2r >= s and 4 | 2r + s");
  const std::size_t v = 2 * r + s;
  const std::size_t split = v / 4;
  GroupValuedFunction f{f2(), std::vector<Elem>(v, 0)};
  for (std::size_t i = 0; i < split; ++i) f.values[2 * i] = 1;
  if (!evenly_balanced) return f;

  const std::size_t need = v / 2 - split;
  const std::size_t unsplit = r - split;
  std::size_t pairs = need > s ? (need - s + 1) / 2 : 0;
  if (2 * pairs > need || pairs > unsplit)
    throw NoConstruction("no evenly balanced PN function of this shape is reachable by the construction");
  for (std::size_t i = 0; i < pairs; ++i) f.values[2 * (split + i)] = f.values[2 * (split + i) + 1] = 1;
  for (std::size_t i = 0; i < need - 2 * pairs; ++i) f.values[2 * r + i] = 1;
  return f;
}

std::size_t split_orbit_count(const GSet& xs, const GroupValuedFunction& f) {
  require_size(xs, f);
  if (xs.group().order() != 2) throw UnsupportedGroup("split orbit count needs a group of order 2");
  std::size_t n = 0;
  for (std::size_t j = 0; j < xs.orbit_count(); ++j) {
    const auto orb = xs.orbit(j);
    if (orb.size() == 2 && ones(f, {orb[0], orb[1]}) == 1) ++n;
  }
  return n;
}

std::vector<std::pair<Point, Elem>> psi_split_assign(const KleinLayout& layout, std::size_t free_orbit, int j,
                                                     bool positive) {
  if (free_orbit >= layout.free.size()) throw InvalidInput("not a free orbit of the layout");
  if (j < 1 || j > 3) throw InvalidInput("split character must be 1, 2 or 3");
  const auto& x = layout.free[free_orbit];
  // lambda_ji is positive on x_{i1} and x_{i,j+1}.
  std::vector<std::pair<Point, Elem>> out;
  for (int k = 0; k < 4; ++k) {
    const bool plus = k == 0 || k == j;
    out.emplace_back(x[k], plus == positive ? 1 : 0);
  }
  return out;
}

MuCounts mu_counts(const GSet& xs, const GroupValuedFunction& f) {
  require_size(xs, f);
  require_f2(f);
  const KleinLayout layout = klein_layout(xs);
  auto count = [&](const std::vector<std::array<Point, 2>>& pairs) {
    return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [&](const auto& pr) {
      return ones(f, pr) == 1;
    }));
  };
  return {count(layout.alpha), count(layout.beta), count(layout.gamma)};
}

bool exists_pn_klein_s0(std::size_t p, std::size_t q, std::size_t r, std::size_t t) {
  const std::size_t v = 2 * (p + q + r) + t;
  if (v == 0) throw InvalidInput("empty G-set");
  return v % 8 == 0 && std::min({p, q, r}) >= v / 8;
}

namespace {

// Splits the first `count` orbits of each two-orbit type.
void split_two_orbits(const KleinLayout& layout, std::size_t pa, std::size_t pb, std::size_t pc,
                      std::vector<Elem>& values) {
  for (std::size_t i = 0; i < pa; ++i) values[layout.alpha[i][0]] = 1;
  for (std::size_t i = 0; i < pb; ++i) values[layout.beta[i][0]] = 1;
  for (std::size_t i = 0; i < pc; ++i) values[layout.gamma[i][0]] = 1;
}

}  // namespace

GroupValuedFunction construct_pn_klein_s0(std::size_t p, std::size_t q, std::size_t r, std::size_t t) {
  if (!exists_pn_klein_s0(p, q, r, t))
    throw NoConstruction("no PN function: needs 8 | |X| and min{p, q, r} >= |X|/8");
  const GSet xs = klein_gset(p, q, r, 0, t);
  const KleinLayout layout = klein_layout(xs);
  const std::size_t e = xs.size() / 8;
  GroupValuedFunction f{f2(), std::vector<Elem>(xs.size(), 0)};
  split_two_orbits(layout, e, e, e, f.values);
  return f;
}

std::optional<KleinPNPlan> exists_pn_klein_general(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                                                   std::size_t t) {
  KleinPNPlan plan{p, q, r, s, t};
  const long long v0 = plan.v0();
  if (v0 == 0 && s == 0) throw InvalidInput("empty G-set");
  const auto ls = static_cast<long long>(s);

  if (v0 % 4 == 0) {
    for (long long k0 = 0; k0 <= ls; ++k0)
      for (long long p1 = 0; p1 <= static_cast<long long>(p); ++p1)
        for (long long q1 = p1 % 2; q1 <= static_cast<long long>(q); q1 += 2)
          for (long long r1 = p1 % 2; r1 <= static_cast<long long>(r); r1 += 2) {
            const long long base = v0 / 4 + k0;
            const long long k1 = base - p1 - (q1 + r1) / 2;
            const long long k2 = base - q1 - (p1 + r1) / 2;
            const long long k3 = base - r1 - (p1 + q1) / 2;
            if (k1 < 0 || k2 < 0 || k3 < 0) continue;
            if (k0 + k1 + k2 + k3 > ls) continue;
            plan.k0 = k0, plan.k1 = k1, plan.k2 = k2, plan.k3 = k3;
            plan.p1 = p1, plan.q1 = q1, plan.r1 = r1;
            return plan;
          }
  }
  if (v0 > 0 && exists_pn_klein_s0(p, q, r, t)) {
    plan.path = KleinPlanPath::non_free_part;
    return plan;
  }
  return std::nullopt;
}

GroupValuedFunction construct_pn_klein_general(const KleinPNPlan& plan) {
  const GSet xs = klein_gset(plan.p, plan.q, plan.r, plan.s, plan.t);
  const KleinLayout layout = klein_layout(xs);
  GroupValuedFunction f{f2(), std::vector<Elem>(xs.size(), 0)};

  if (plan.path == KleinPlanPath::non_free_part) {
    if (!exists_pn_klein_s0(plan.p, plan.q, plan.r, plan.t))
      throw InvalidInput("the non-free part carries no PN function");
    const std::size_t e = static_cast<std::size_t>(plan.v0()) / 8;
    split_two_orbits(layout, e, e, e, f.values);
    for (const auto& orb : layout.free) f.values[orb[0]] = 1;
    return f;
  }

  const long long base = plan.v0() / 4 + plan.k0;
  const bool consistent =
      plan.v0() % 4 == 0 && plan.k0 >= 0 && plan.p1 >= 0 && plan.q1 >= 0 && plan.r1 >= 0 &&
      plan.p1 <= static_cast<long long>(plan.p) && plan.q1 <= static_cast<long long>(plan.q) &&
      plan.r1 <= static_cast<long long>(plan.r) && (plan.p1 - plan.q1) % 2 == 0 && (plan.p1 - plan.r1) % 2 == 0 &&
      plan.k1 == base - plan.p1 - (plan.q1 + plan.r1) / 2 && plan.k2 == base - plan.q1 - (plan.p1 + plan.r1) / 2 &&
      plan.k3 == base - plan.r1 - (plan.p1 + plan.q1) / 2 && plan.k1 >= 0 && plan.k2 >= 0 && plan.k3 >= 0 &&
      plan.s1() <= static_cast<long long>(plan.s);
  if (!consistent) throw InvalidInput("inconsistent Klein PN plan");

  std::size_t next = static_cast<std::size_t>(plan.k0);  // the first k0 free orbits stay constant 0
  const std::array<long long, 3> ks{plan.k1, plan.k2, plan.k3};
  for (int j = 1; j <= 3; ++j)
    for (long long n = 0; n < ks[j - 1]; ++n, ++next)
      for (const auto& [x, val] : psi_split_assign(layout, next, j)) f.values[x] = val;
  for (; next < layout.s(); ++next) f.values[layout.free[next][0]] = 1;
  split_two_orbits(layout, static_cast<std::size_t>(plan.p1), static_cast<std::size_t>(plan.q1),
                   static_cast<std::size_t>(plan.r1), f.values);
  return f;
}

std::vector<FreeOrbitPattern> free_orbit_patterns(const GSet& xs, const GroupValuedFunction& f) {
  require_size(xs, f);
  require_f2(f);
  const KleinLayout layout = klein_layout(xs);
  std::vector<FreeOrbitPattern> out;
  for (const auto& x : layout.free) {
    int n = 0;
    for (Point y : x) n += f.values[y] != 0;
    if (n == 0 || n == 4) {
      out.push_back(FreeOrbitPattern::constant);
    } else if (n % 2 == 1) {
      out.push_back(FreeOrbitPattern::odd);
    } else {
      // The two points sharing x_{i1}'s value determine the split character.
      int partner = 1;
      while (f.values[x[partner]] != f.values[x[0]]) ++partner;
      out.push_back(static_cast<FreeOrbitPattern>(partner));
    }
  }
  return out;
}

std::string to_string(FreeOrbitPattern p) {
  switch (p) {
    case FreeOrbitPattern::constant: return "constant";
    case FreeOrbitPattern::psi1_split: return "psi1-split";
    case FreeOrbitPattern::psi2_split: return "psi2-split";
    case FreeOrbitPattern::psi3_split: return "psi3-split";
    case FreeOrbitPattern::odd: return "odd";
  }
  return "?";
}

std::vector<std::string> klein16_cases(const GSet& xs, const GroupValuedFunction& f) {
  if (xs.size() != 16) throw InvalidInput("classification applies to |X| = 16");
  const KleinLayout layout = klein_layout(xs);
  const auto pats = free_orbit_patterns(xs, f);
  const MuCounts mc = mu_counts(xs, f);
  const std::array<std::size_t, 3> two{layout.p(), layout.q(), layout.r()};
  const std::array<std::size_t, 3> mu{mc.alpha, mc.beta, mc.gamma};
  const std::size_t s = layout.s();

  std::array<int, 5> n{};
  for (auto pt : pats) ++n[static_cast<int>(pt)];
  const int n_const = n[0];
  auto splits = [&](int type) { return n[type + 1]; };  // psi_{type+1}-split count
  auto others = [](int type) { return std::array<int, 2>{(type + 1) % 3, (type + 2) % 3}; };

  auto free_orbit_set = [&](std::size_t i) {
    return PointSubset::from_points(xs.size(), layout.free[i]);
  };
  PointSubset non_free = PointSubset::full(xs.size());
  for (const auto& orb : layout.free)
    for (Point x : orb) non_free.erase(x);

  std::vector<std::string> cases;
  if (s == 4) {
    bool each = true;
    for (std::size_t i = 0; i < 4 && each; ++i) each = pn_on(xs, f, free_orbit_set(i));
    if (each || (n_const == 1 && splits(0) == 1 && splits(1) == 1 && splits(2) == 1)) cases.push_back("i");
  }
  if (s == 3 && splits(0) == 1 && splits(1) == 1 && splits(2) == 1 && mu == std::array<std::size_t, 3>{})
    cases.push_back("ii");
  if (s == 3)
    for (int ty = 0; ty < 3; ++ty) {
      const auto [a, b] = others(ty);
      if (two[ty] == 2 && n_const == 1 && splits(ty) == 0 && splits(a) == 1 && splits(b) == 1 && mu[ty] == 2) {
        cases.push_back("iii");
        break;
      }
    }
  if (s == 2 && pn_on(xs, f, free_orbit_set(0)) && pn_on(xs, f, free_orbit_set(1)) && pn_on(xs, f, non_free))
    cases.push_back("iv");
  if (s == 2)
    for (int ty = 0; ty < 3; ++ty) {
      const auto [a, b] = others(ty);
      if (two[a] == 2 && two[b] == 2 && splits(ty) == 1 && n_const == 1 && mu[a] == 2 && mu[b] == 2) {
        cases.push_back("v");
        break;
      }
    }
  if (s == 2)
    for (int ty = 0; ty < 3; ++ty) {
      const auto [a, b] = others(ty);
      if (two[ty] >= 2 && splits(a) == 1 && splits(b) == 1 && mu[ty] == 2 && mu[a] == 0 && mu[b] == 0) {
        cases.push_back("vi");
        break;
      }
    }
  if (s == 1)
    for (int ty = 0; ty < 3; ++ty) {
      const auto [a, b] = others(ty);
      if (std::min(two[a], two[b]) >= 2 && splits(ty) == 1 && mu[a] == 2 && mu[b] == 2 && mu[ty] == 0) {
        cases.push_back("vii");
        break;
      }
    }
  if (s == 1 && two == std::array<std::size_t, 3>{2, 2, 2} && n_const == 1 && mu == two) cases.push_back("viii");
  if (s == 0 && std::min({two[0], two[1], two[2]}) >= 2 && mu == std::array<std::size_t, 3>{2, 2, 2})
    cases.push_back("ix");
  return cases;
}

CircleValuedFunction construct_bent_klein_6(const std::array<UnitValue, 3>& c, const std::array<bool, 3>& plus) {
  const GSet xs = klein_gset(1, 1, 1, 0, 0);
  const KleinLayout layout = klein_layout(xs);
  const std::array<std::array<Point, 2>, 3> orbits{layout.alpha[0], layout.beta[0], layout.gamma[0]};
  std::vector<UnitValue> values(6, UnitValue::root(1, 0));
  for (int i = 0; i < 3; ++i) {
    // -1/2 +- sqrt(-3)/2 is a primitive cube root of unity.
    const UnitValue factor = UnitValue::root(3, plus[i] ? 1 : 2);
    values[orbits[i][0]] = c[i];
    values[orbits[i][1]] = times(factor, c[i]);
  }
  return CircleValuedFunction::from_units(values);
}

CircleValuedFunction construct_bent_klein_8(const std::array<UnitValue, 4>& c, int pattern) {
  if (pattern < 1 || pattern > 3) throw InvalidInput("bent pattern must be 1, 2 or 3");
  const GSet xs = klein_gset(2, 1, 1, 0, 0);
  const KleinLayout layout = klein_layout(xs);
  const auto [x1, y1] = layout.alpha[0];
  const auto [x2, y2] = layout.alpha[1];
  const auto [x3, y3] = layout.beta[0];
  const auto [x4, y4] = layout.gamma[0];
  std::vector<UnitValue> v(8, UnitValue::root(1, 0));
  switch (pattern) {
    case 1:
      v[x1] = v[x2] = c[0];
      v[y1] = c[1];
      v[y2] = times(kMinusOne, c[1]);
      break;
    case 2:
      v[x1] = v[y1] = c[0];
      v[x2] = c[1];
      v[y2] = times(kMinusOne, c[1]);
      break;
    default:
      v[x1] = c[0];
      v[y1] = times(kMinusOne, c[0]);
      v[x2] = v[y2] = c[1];
  }
  v[x3] = c[2];
  v[y3] = times(kMinusOne, c[2]);
  v[x4] = c[3];
  v[y4] = times(kMinusOne, c[3]);
  return CircleValuedFunction::from_units(v);
}

bool exists_bent_klein(std::size_t p, std::size_t q, std::size_t r) {
  if (p + q + r == 0) throw InvalidInput("empty G-set");
  return p + q + r <= 4 * std::min({p, q, r});
}

std::vector<BentFamily> bent_family_partition(std::size_t p, std::size_t q, std::size_t r) {
  if (!exists_bent_klein(p, q, r))
    throw NoConstruction("no bent function: needs p + q + r <= 4 min{p, q, r}");
  const std::array<std::size_t, 3> n{p, q, r};
  // The smallest type plays gamma; ties keep the later type.
  int c = 2;
  if (n[1] < n[c]) c = 1;
  if (n[0] < n[c]) c = 0;
  const int a = c == 0 ? 1 : 0;
  const int b = c == 2 ? 1 : 2;

  std::vector<BentFamily> families(n[c]);
  for (std::size_t i = 0; i < n[c]; ++i) families[i].orbits = {{a, i}, {b, i}, {c, i}};
  std::size_t next = 0;
  for (int ty : {a, b})
    for (std::size_t i = n[c]; i < n[ty]; ++i) families[next++].orbits.emplace_back(ty, i);
  return families;
}

CircleValuedFunction construct_bent_klein(std::size_t p, std::size_t q, std::size_t r) {
  const auto families = bent_family_partition(p, q, r);
  const GSet xs = klein_gset(p, q, r, 0, 0);
  const KleinLayout layout = klein_layout(xs);
  const std::array<const std::vector<std::array<Point, 2>>*, 3> types{&layout.alpha, &layout.beta, &layout.gamma};
  auto pair_of = [&](const std::pair<int, std::size_t>& o) { return (*types[o.first])[o.second]; };

  // Exponents over 6: 0 is 1, 2 is the cube root used by the six-point block, 3 is -1.
  std::vector<long long> e(xs.size(), 0);
  for (const auto& fam : families) {
    if (fam.orbits.size() == 3) {
      for (const auto& o : fam.orbits) e[pair_of(o)[1]] = 2;
      continue;
    }
    const int doubled = fam.orbits[3].first;
    std::vector<std::array<Point, 2>> twin;
    for (const auto& o : fam.orbits) {
      if (o.first == doubled) twin.push_back(pair_of(o));
      else e[pair_of(o)[1]] = 3;
    }
    // f(x_1) = f(x_2) = f(y_1) = 1, f(y_2) = -1.
    e[twin[1][1]] = 3;
  }
  return CircleValuedFunction::roots(6, std::move(e));
}

}  // namespace gsetpn
