#include <doctest.h>

#include <random>

#include "gsetpn/error.hpp"
#include "gsetpn/gset.hpp"
#include "oracles.hpp"

using namespace gsetpn;

namespace {

const Group kKlein = make_abelian_group({2, 2});

GSet regular_klein() { return make_gset(kKlein, 4, {{1, 0, 3, 2}, {2, 3, 0, 1}}); }

PointSubset random_subset(std::mt19937& rng, std::size_t v) {
  PointSubset s(v);
  for (Point x = 0; x < v; ++x)
    if (rng() & 1u) s.insert(x);
  return s;
}

}  // namespace

TEST_CASE("regular and trivial Klein actions") {
  const GSet reg = regular_klein();
  CHECK(reg.orbit_count() == 1);
  CHECK(reg.orbit(0).size() == 4);
  CHECK(reg.stabilizer(0).size() == 1);

  const GSet triv = make_gset(kKlein, 3, {{0, 1, 2}, {0, 1, 2}});
  CHECK(triv.orbit_count() == 3);
  for (std::size_t j = 0; j < 3; ++j) CHECK(triv.stabilizer(j).size() == 4);
}

TEST_CASE("invalid actions are rejected") {
  // generator of order 3 under a factor of order 2
  CHECK_THROWS_AS(make_gset(kKlein, 3, {{1, 2, 0}, {0, 1, 2}}), InvalidAction);
  // not a permutation
  CHECK_THROWS_AS(make_gset(kKlein, 2, {{0, 0}, {0, 1}}), InvalidAction);
  // generators that do not commute
  CHECK_THROWS_AS(make_gset(kKlein, 3, {{1, 0, 2}, {0, 2, 1}}), InvalidAction);
}

TEST_CASE("klein_gset shapes and numbering") {
  const GSet a = klein_gset(1, 1, 1, 0, 0);
  CHECK(a.size() == 6);
  CHECK(a.orbit_count() == 3);
  CHECK(std::vector<Elem>(a.stabilizer(0).begin(), a.stabilizer(0).end()) == std::vector<Elem>{0, klein::alpha});
  CHECK(std::vector<Elem>(a.stabilizer(1).begin(), a.stabilizer(1).end()) == std::vector<Elem>{0, klein::beta});
  CHECK(std::vector<Elem>(a.stabilizer(2).begin(), a.stabilizer(2).end()) == std::vector<Elem>{0, klein::gamma});

  const GSet b = klein_gset(0, 0, 0, 1, 0);
  CHECK(b.orbit_count() == 1);
  CHECK(b.orbit(0).size() == 4);

  CHECK(klein_gset(2, 1, 1, 0, 0).size() == 8);

  const GSet c = klein_gset(1, 1, 1, 1, 1);
  const KleinLayout lay = klein_layout(c);
  CHECK(lay.free[0] == std::array<Point, 4>{0, 1, 2, 3});
  CHECK(lay.alpha[0] == std::array<Point, 2>{4, 5});
  CHECK(lay.beta[0] == std::array<Point, 2>{6, 7});
  CHECK(lay.gamma[0] == std::array<Point, 2>{8, 9});
  CHECK(lay.fixed == std::vector<Point>{10});
  CHECK(c.act(klein::alpha, 0) == 1);
  CHECK(c.act(klein::beta, 0) == 2);
  CHECK(c.act(klein::gamma, 0) == 3);
  CHECK(c.act(klein::alpha, 4) == 4);
  CHECK(c.act(klein::beta, 4) == 5);

  CHECK_THROWS_AS(klein_layout(c2_gset(1, 0)), UnsupportedGroup);
}

TEST_CASE("c2_gset shapes") {
  const GSet a = c2_gset(1, 2);
  CHECK(a.size() == 4);
  CHECK(a.orbit_count() == 3);
  CHECK(a.act(1, 0) == 1);
  CHECK(a.act(1, 2) == 2);

  const GSet b = c2_gset(0, 3);
  CHECK(b.orbit_count() == 3);
  for (Point x = 0; x < 3; ++x) CHECK(b.act(1, x) == x);

  const GSet c = c2_gset(4, 0);
  for (Point y = 0; y < 8; ++y) CHECK(c.act(1, c.act(1, y)) == y);
}

TEST_CASE("transporters and delta") {
  const GSet reg = regular_klein();
  for (Point x = 0; x < 4; ++x)
    for (Point y = 0; y < 4; ++y) CHECK(transporter(reg, x, y).augmentation() == 1);

  const GSet k = klein_gset(1, 0, 0, 0, 1);
  const auto fixed = transporter(k, 2, 2);
  for (Elem g = 0; g < 4; ++g) CHECK(fixed.coeff(g) == 1);
  CHECK(transporter(k, 0, 2).is_zero());

  const PointSubset one = PointSubset::from_points(4, std::vector<Point>{0});
  CHECK(delta(reg, one, one) == 1);
  CHECK(delta(reg, PointSubset(4), one) == 0);

  std::mt19937 rng(3);
  for (const GSet& xs : {klein_gset(1, 2, 0, 1, 2), c2_gset(3, 2), reg}) {
    for (int t = 0; t < 20; ++t) {
      const PointSubset c = random_subset(rng, xs.size());
      CHECK(delta(xs, c, PointSubset::full(xs.size())) ==
            static_cast<long long>(c.size() * xs.group().order()));
    }
  }
}

TEST_CASE("counting identities on random subsets") {
  std::mt19937 rng(11);
  const std::vector<GSet> instances{klein_gset(1, 1, 1, 1, 2), c2_gset(2, 3), klein_gset(0, 2, 1, 2, 0),
                                    make_gset(make_abelian_group({2, 3}), 7,
                                              {{1, 0, 2, 3, 4, 6, 5}, {0, 1, 3, 4, 2, 5, 6}})};
  for (const GSet& xs : instances) {
    const std::size_t v = xs.size();
    const Group& g = xs.group();
    for (Point x = 0; x < v; ++x) {
      long long total = 0;
      for (Point y = 0; y < v; ++y) total += transporter(xs, x, y).augmentation();
      CHECK(total == static_cast<long long>(g.order()));
    }
    for (int t = 0; t < 30; ++t) {
      const PointSubset c = random_subset(rng, v), d = random_subset(rng, v);
      const PointSubset dc = d.complement();
      for (Elem a = 0; a < g.order(); ++a) {
        std::size_t pairs = 0;
        for (Point x : c.points())
          if (d.contains(xs.act(a, x))) ++pairs;
        CHECK(xs.image_intersection(a, c, d) == pairs);
        CHECK(xs.image_intersection(a, c, d) == xs.image_intersection(g.inv(a), d, c));
        CHECK(xs.image_intersection(a, d, d) + xs.image_intersection(a, d, dc) == d.size());
        CHECK(xs.image_intersection(a, d, dc) == xs.image_intersection(g.inv(a), dc, d));
      }
    }
    for (std::size_t j = 0; j < xs.orbit_count(); ++j)
      CHECK(xs.orbit(j).size() * xs.stabilizer(j).size() == g.order());
  }
}

TEST_CASE("restriction to a stable part") {
  const GSet xs = klein_gset(1, 1, 0, 1, 1);
  PointSubset part(xs.size());
  for (Point x : {4, 5, 8}) part.insert(x);
  CHECK(xs.is_stable(part));
  const auto [sub, map] = xs.restrict_to(part);
  CHECK(sub.size() == 3);
  CHECK(map == std::vector<Point>{4, 5, 8});
  part.erase(5);
  CHECK_FALSE(xs.is_stable(part));
  CHECK_THROWS_AS(xs.restrict_to(part), InvalidInput);
}

TEST_CASE("point subsets beyond one word") {
  PointSubset s(130);
  s.insert(0);
  s.insert(64);
  s.insert(129);
  CHECK(s.size() == 3);
  CHECK(s.complement().size() == 127);
  CHECK(s.points() == std::vector<Point>{0, 64, 129});
  CHECK(s.intersection_size(PointSubset::full(130)) == 3);
}

TEST_CASE("non-abelian action through a Cayley table") {
  const Group d3 = dihedral_group(3);
  std::vector<Point> table(36);
  for (Elem g = 0; g < 6; ++g)
    for (Point x = 0; x < 6; ++x) table[g * 6 + x] = d3.mul(g, x);
  const GSet xs = GSet::from_action_table(d3, 6, table);
  CHECK(xs.orbit_count() == 1);
  CHECK(xs.stabilizer(0).size() == 1);
  table[1] = 2;
  table[2] = 1;
  CHECK_THROWS_AS(GSet::from_action_table(d3, 6, table), InvalidAction);
}
