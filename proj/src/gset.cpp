#include "gsetpn/gset.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "gsetpn/error.hpp"

namespace gsetpn {

PointSubset::PointSubset(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

PointSubset PointSubset::from_points(std::size_t universe, std::span<const Point> points) {
  PointSubset s(universe);
  for (Point x : points) s.insert(x);
  return s;
}

PointSubset PointSubset::full(std::size_t universe) {
  PointSubset s(universe);
  for (Point x = 0; x < universe; ++x) s.insert(x);
  return s;
}

void PointSubset::insert(Point x) {
  if (x >= universe_) throw InvalidInput("point " + std::to_string(x) + " out of range");
  words_[x >> 6] |= std::uint64_t{1} << (x & 63);
}

void PointSubset::erase(Point x) {
  if (x >= universe_) throw InvalidInput("point " + std::to_string(x) + " out of range");
  words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
}

std::size_t PointSubset::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<Point> PointSubset::points() const {
  std::vector<Point> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits) {
      out.push_back(static_cast<Point>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

PointSubset PointSubset::complement() const {
  PointSubset c(universe_);
  for (std::size_t w = 0; w < words_.size(); ++w) c.words_[w] = ~words_[w];
  if (universe_ % 64) c.words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  return c;
}

std::size_t PointSubset::intersection_size(const PointSubset& other) const noexcept {
  std::size_t n = 0;
  const std::size_t len = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < len; ++w)
    n += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
  return n;
}

GSet::GSet(Group group, std::size_t v, std::vector<Point> table)
    : group_(std::move(group)), v_(v), table_(std::move(table)) {}

GSet GSet::from_action_table(Group group, std::size_t v, std::vector<Point> table) {
  const std::size_t m = group.order();
  if (v == 0) throw InvalidInput("a G-set needs at least one point");
  if (table.size() != m * v) throw InvalidAction("action table has wrong size");
  for (Elem g = 0; g < m; ++g) {
    std::vector<bool> hit(v);
    for (Point x = 0; x < v; ++x) {
      Point y = table[g * v + x];
      if (y >= v || hit[y])
        throw InvalidAction("element " + group.element_name(g) + " does not act as a permutation");
      hit[y] = true;
    }
  }
  for (Point x = 0; x < v; ++x)
    if (table[x] != x) throw InvalidAction("identity does not fix point " + std::to_string(x));
  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b) {
      const Elem ab = group.mul(a, b);
      for (Point x = 0; x < v; ++x)
        if (table[ab * v + x] != table[a * v + table[b * v + x]])
          throw InvalidAction("(ab)x != a(bx) for a = " + group.element_name(a) +
                              ", b = " + group.element_name(b) + ", x = " + std::to_string(x));
    }

  GSet xs(std::move(group), v, std::move(table));
  xs.orbit_of_.assign(v, static_cast<std::size_t>(-1));
  for (Point x = 0; x < v; ++x) {
    if (xs.orbit_of_[x] != static_cast<std::size_t>(-1)) continue;
    const std::size_t j = xs.orbits_.size();
    PointSubset members(v);
    for (Elem g = 0; g < m; ++g) members.insert(xs.act(g, x));
    xs.orbits_.push_back(members.points());
    for (Point y : xs.orbits_.back()) xs.orbit_of_[y] = j;
  }
  for (const auto& orb : xs.orbits_) {
    std::vector<Elem> n;
    for (Elem g = 0; g < m; ++g)
      if (std::all_of(orb.begin(), orb.end(), [&](Point y) { return xs.act(g, y) == y; }))
        n.push_back(g);
    xs.stabilizers_.push_back(std::move(n));
  }
  return xs;
}

PointSubset GSet::image(Elem g, const PointSubset& c) const {
  PointSubset out(v_);
  const Point* row = table_.data() + g * v_;
  auto words = c.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    auto bits = words[w];
    while (bits) {
      const Point x = static_cast<Point>(w * 64 + std::countr_zero(bits));
      const Point y = row[x];
      out.words()[y >> 6] |= std::uint64_t{1} << (y & 63);
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t GSet::image_intersection(Elem g, const PointSubset& c, const PointSubset& d) const {
  const Point* row = table_.data() + g * v_;
  std::size_t n = 0;
  auto words = c.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    auto bits = words[w];
    while (bits) {
      const Point x = static_cast<Point>(w * 64 + std::countr_zero(bits));
      n += d.contains(row[x]);
      bits &= bits - 1;
    }
  }
  return n;
}

bool GSet::is_stable(const PointSubset& s) const {
  for (Point x : s.points())
    for (Elem g = 0; g < group_.order(); ++g)
      if (!s.contains(act(g, x))) return false;
  return true;
}

std::pair<GSet, std::vector<Point>> GSet::restrict_to(const PointSubset& stable) const {
  if (stable.universe() != v_) throw InvalidInput("subset universe does not match the G-set");
  if (stable.empty() || !is_stable(stable))
    throw InvalidInput("restriction needs a nonempty G-stable subset");
  std::vector<Point> old_of_new = stable.points();
  std::vector<Point> new_of_old(v_, 0);
  for (Point i = 0; i < old_of_new.size(); ++i) new_of_old[old_of_new[i]] = i;
  const std::size_t w = old_of_new.size();
  std::vector<Point> table(group_.order() * w);
  for (Elem g = 0; g < group_.order(); ++g)
    for (Point i = 0; i < w; ++i) table[g * w + i] = new_of_old[act(g, old_of_new[i])];
  return {from_action_table(group_, w, std::move(table)), std::move(old_of_new)};
}

std::vector<std::vector<Point>> GSet::generator_actions() const {
  if (!group_.has_factorization()) throw UnsupportedGroup("group has no cyclic factorization");
  const auto k = group_.factor_orders().size();
  std::vector<std::vector<Point>> gens;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> r(k, 0);
    if (group_.factor_orders()[i] > 1) r[i] = 1;
    const Elem g = group_.element(r);
    gens.emplace_back(table_.begin() + g * v_, table_.begin() + (g + 1) * v_);
  }
  return gens;
}

GSet make_gset(Group group, std::size_t v, const std::vector<std::vector<Point>>& generator_actions) {
  if (!group.has_factorization() || !group.is_abelian())
    throw UnsupportedGroup("make_gset needs an abelian group given by cyclic factors");
  const auto factors = group.factor_orders();
  if (generator_actions.size() != factors.size())
    throw InvalidAction("expected one generator permutation per cyclic factor");
  if (v == 0) throw InvalidInput("a G-set needs at least one point");

  for (std::size_t i = 0; i < generator_actions.size(); ++i) {
    const auto& perm = generator_actions[i];
    if (perm.size() != v) throw InvalidAction("generator " + std::to_string(i) + " has wrong length");
    std::vector<bool> hit(v);
    for (Point y : perm) {
      if (y >= v || hit[y]) throw InvalidAction("generator " + std::to_string(i) + " is not a permutation");
      hit[y] = true;
    }
    // perm^{n_i} must be the identity.
    for (Point x = 0; x < v; ++x) {
      Point y = x;
      for (int k = 0; k < factors[i]; ++k) y = perm[y];
      if (y != x)
        throw InvalidAction("generator " + std::to_string(i) + " raised to its factor order " +
                            std::to_string(factors[i]) + " is not the identity");
    }
  }
  for (std::size_t i = 0; i < generator_actions.size(); ++i)
    for (std::size_t j = i + 1; j < generator_actions.size(); ++j)
      for (Point x = 0; x < v; ++x)
        if (generator_actions[i][generator_actions[j][x]] != generator_actions[j][generator_actions[i][x]])
          throw InvalidAction("generators " + std::to_string(i) + " and " + std::to_string(j) +
                              " do not commute");

  const std::size_t m = group.order();
  std::vector<Point> table(m * v);
  for (Elem g = 0; g < m; ++g) {
    const auto r = group.residues(g);
    for (Point x = 0; x < v; ++x) {
      Point y = x;
      for (std::size_t i = 0; i < r.size(); ++i)
        for (int k = 0; k < r[i]; ++k) y = generator_actions[i][y];
      table[g * v + x] = y;
    }
  }
  return GSet::from_action_table(std::move(group), v, std::move(table));
}

GSet klein_gset(std::size_t p, std::size_t q, std::size_t r, std::size_t s, std::size_t t) {
  const std::size_t v = 4 * s + 2 * (p + q + r) + t;
  if (v == 0) throw InvalidInput("klein_gset needs at least one orbit");
  std::vector<Point> a(v), b(v);  // actions of alpha = (0,1) and beta = (1,0)
  for (Point x = 0; x < v; ++x) a[x] = b[x] = x;
  auto swap = [](std::vector<Point>& perm, Point x, Point y) {
    perm[x] = y;
    perm[y] = x;
  };
  Point base = 0;
  for (std::size_t i = 0; i < s; ++i, base += 4) {
    swap(a, base, base + 1);
    swap(a, base + 2, base + 3);
    swap(b, base, base + 2);
    swap(b, base + 1, base + 3);
  }
  for (std::size_t i = 0; i < p; ++i, base += 2) swap(b, base, base + 1);
  for (std::size_t i = 0; i < q; ++i, base += 2) swap(a, base, base + 1);
  for (std::size_t i = 0; i < r; ++i, base += 2) {
    swap(a, base, base + 1);
    swap(b, base, base + 1);
  }
  // Factor 0 is generated by beta = (1,0), factor 1 by alpha = (0,1).
  return make_gset(make_abelian_group({2, 2}), v, {b, a});
}

GSet c2_gset(std::size_t r, std::size_t s) {
  const std::size_t v = 2 * r + s;
  if (v == 0) throw InvalidInput("c2_gset needs at least one orbit");
  std::vector<Point> pi(v);
  for (Point x = 0; x < v; ++x) pi[x] = x;
  for (Point i = 0; i < r; ++i) {
    pi[2 * i] = 2 * i + 1;
    pi[2 * i + 1] = 2 * i;
  }
  return make_gset(make_abelian_group({2}), v, {pi});
}

bool is_klein_group(const Group& g) {
  auto f = g.factor_orders();
  return f.size() == 2 && f[0] == 2 && f[1] == 2;
}

const std::vector<std::array<Point, 2>>& KleinLayout::two_orbits(Elem fixer) const {
  switch (fixer) {
    case klein::alpha: return alpha;
    case klein::beta: return beta;
    case klein::gamma: return gamma;
    default: throw InvalidInput("two-point orbit type must be alpha, beta or gamma");
  }
}

KleinLayout klein_layout(const GSet& xs) {
  if (!is_klein_group(xs.group())) throw UnsupportedGroup("Klein layout needs the Klein four group");
  KleinLayout layout;
  for (std::size_t j = 0; j < xs.orbit_count(); ++j) {
    auto orb = xs.orbit(j);
    const Point x = orb.front();
    switch (orb.size()) {
      case 4:
        layout.free.push_back({x, xs.act(klein::alpha, x), xs.act(klein::beta, x), xs.act(klein::gamma, x)});
        break;
      case 2: {
        const std::array<Point, 2> pair{orb[0], orb[1]};
        if (xs.act(klein::alpha, x) == x) layout.alpha.push_back(pair);
        else if (xs.act(klein::beta, x) == x) layout.beta.push_back(pair);
        else layout.gamma.push_back(pair);
        break;
      }
      default:
        layout.fixed.push_back(x);
    }
  }
  return layout;
}

GroupAlgebraElement transporter(const GSet& xs, Point x, Point y) {
  if (x >= xs.size() || y >= xs.size()) throw InvalidInput("transporter point out of range");
  GroupAlgebraElement a(xs.group().order());
  for (Elem g = 0; g < xs.group().order(); ++g)
    if (xs.act(g, x) == y) a.add(g, 1);
  return a;
}

long long delta(const GSet& xs, const PointSubset& c, const PointSubset& d) {
  long long total = 0;
  for (Elem g = 0; g < xs.group().order(); ++g)
    total += static_cast<long long>(xs.image_intersection(g, c, d));
  return total;
}

}  // namespace gsetpn
