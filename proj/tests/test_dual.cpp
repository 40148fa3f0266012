#include <doctest.h>

#include <random>

#include "gsetpn/dual.hpp"
#include "gsetpn/error.hpp"
#include "gsetpn/nonlinearity.hpp"
#include "oracles.hpp"

using namespace gsetpn;

namespace {

std::vector<GSet> sample_instances() {
  return {klein_gset(0, 0, 0, 1, 0), klein_gset(1, 1, 1, 0, 2), klein_gset(1, 1, 0, 2, 1), c2_gset(3, 2),
          make_gset(make_abelian_group({4}), 6, {{1, 2, 3, 0, 5, 4}}),
          make_gset(make_abelian_group({2, 3}), 7, {{1, 0, 2, 3, 4, 6, 5}, {0, 1, 3, 4, 2, 5, 6}}),
          make_gset(make_abelian_group({3}), 6, {{1, 2, 0, 4, 5, 3}})};
}

std::vector<Complex> random_unit_function(std::mt19937& rng, std::size_t v) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> f(v);
  for (auto& z : f) z = std::polar(1.0, angle(rng));
  return f;
}

PointSubset random_subset(std::mt19937& rng, std::size_t v) {
  PointSubset s(v);
  for (Point x = 0; x < v; ++x)
    if (rng() % 2) s.insert(x);
  return s;
}

}  // namespace

TEST_CASE("free Klein orbit matches the standard value table") {
  const GSet xs = klein_gset(0, 0, 0, 1, 0);
  const DualSet dual = build_normalized_dual(xs);
  REQUIRE(dual.size() == 4);
  const int signs[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(dual.member(j).character == j);
    for (Point x = 0; x < 4; ++x) {
      CHECK(dual.member(j)(x).real() == doctest::Approx(signs[j][x]));
      CHECK(dual.member(j)(x).imag() == doctest::Approx(0));
    }
  }
}

TEST_CASE("alpha-fixed two-orbit and fixed points") {
  const GSet xs = klein_gset(1, 0, 0, 0, 2);
  const DualSet dual = build_normalized_dual(xs);
  CHECK(dual.size() == 4);
  const DualFunction* eta = nullptr;
  for (const auto& lam : dual.members())
    if (lam.support_orbit == 0 && lam.character == 1) eta = &lam;
  REQUIRE(eta);
  CHECK((*eta)(0).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK((*eta)(1).real() == doctest::Approx(-std::sqrt(2.0)));
  for (const auto& lam : dual.members())
    if (lam.support_orbit >= 1) {
      CHECK(lam.character == 0);
      CHECK(lam(xs.orbit(lam.support_orbit)[0]).real() == doctest::Approx(2.0));
    }
}

TEST_CASE("dual set axioms on sample instances") {
  for (const GSet& xs : sample_instances()) {
    const DualSet dual = build_normalized_dual(xs);
    CHECK(validate_dual(xs, dual).empty());
    CHECK(dual.size() == xs.size());
    const double v = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < dual.size(); ++i)
      for (std::size_t j = 0; j < dual.size(); ++j) {
        Complex ip = 0;
        for (Point x = 0; x < xs.size(); ++x) ip += dual.member(i)(x) * std::conj(dual.member(j)(x));
        CHECK(std::abs(ip - (i == j ? v : 0.0)) < 1e-6);
      }
  }
}

TEST_CASE("block sizes of Klein instances") {
  for (auto [p, q, r, s] : std::vector<std::array<std::size_t, 4>>{{1, 2, 3, 1}, {0, 1, 0, 2}, {2, 2, 2, 0}}) {
    const DualSet dual = build_normalized_dual(klein_gset(p, q, r, s, 0));
    CHECK(dual.block(1).size() == s + p);
    CHECK(dual.block(2).size() == s + q);
    CHECK(dual.block(3).size() == s + r);
  }
}

TEST_CASE("Fourier transform of constants") {
  const GSet xs = klein_gset(1, 1, 0, 1, 2);
  const DualSet dual = build_normalized_dual(xs);
  const std::vector<Complex> one(xs.size(), 1.0);
  const auto hat = fourier(one, dual);
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const auto& lam = dual.member(i);
    if (lam.character != 0) {
      CHECK(std::abs(hat[i]) < 1e-9);
    } else {
      const double size = static_cast<double>(xs.orbit(lam.support_orbit).size());
      CHECK(std::abs(hat[i] - std::sqrt(static_cast<double>(xs.size()) * size)) < 1e-9);
    }
  }
}

TEST_CASE("six-point Klein function with cube-root ratios has block sums 9") {
  const GSet xs = klein_gset(1, 1, 1, 0, 0);
  const DualSet dual = build_normalized_dual(xs);
  const Complex d{-0.5, std::sqrt(3.0) / 2.0};
  const auto f = CircleValuedFunction::raw({1.0, d, 1.0, d, 1.0, d});
  for (double s : bent_block_sums(dual, f)) CHECK(s == doctest::Approx(9.0).epsilon(1e-9));
}

TEST_CASE("subset sums") {
  const GSet xs = klein_gset(1, 0, 0, 1, 0);
  const DualSet dual = build_normalized_dual(xs);
  for (const auto& lam : dual.members()) {
    CHECK(std::abs(lambda_set_sum(lam, PointSubset(xs.size()))) < 1e-12);
    const auto orbit = xs.orbit(lam.support_orbit);
    const auto whole = PointSubset::from_points(xs.size(), orbit);
    if (lam.character != 0) CHECK(std::abs(lambda_set_sum(lam, whole)) < 1e-9);
    const auto base = PointSubset::from_points(xs.size(), std::vector<Point>{lam.base_point});
    CHECK(std::abs(lambda_set_sum(lam, base) - lam.scale()) < 1e-9);
  }
}

TEST_CASE("second orthogonality examples") {
  const GSet xs = klein_gset(0, 0, 0, 1, 1);
  const DualSet dual = build_normalized_dual(xs);
  for (std::size_t psi = 0; psi < 4; ++psi) {
    const auto [l, r] = second_orthogonality_check(xs, dual, psi, 0, 4);
    CHECK(std::abs(l) < 1e-9);
    CHECK(std::abs(r) < 1e-9);
  }
  const auto [l0, r0] = second_orthogonality_check(xs, dual, 0, 4, 4);
  CHECK(std::abs(l0 - 5.0) < 1e-9);
  CHECK(std::abs(r0 - 5.0) < 1e-9);
  // x = x_{i1}, y = x_{i2} = alpha x, psi_1 -> (|X|/4) psi_1(alpha) = |X|/4
  const auto [l1, r1] = second_orthogonality_check(xs, dual, 1, 0, 1);
  CHECK(std::abs(l1 - 1.25) < 1e-9);
  CHECK(std::abs(r1 - 1.25) < 1e-9);
}

TEST_CASE("orthogonality relations for all points and random subsets") {
  std::mt19937 rng(5);
  for (const GSet& xs : sample_instances()) {
    const DualSet dual = build_normalized_dual(xs);
    for (std::size_t psi = 0; psi < dual.character_count(); ++psi) {
      for (Point x = 0; x < xs.size(); ++x)
        for (Point y = 0; y < xs.size(); ++y) {
          const auto [l, r] = second_orthogonality_check(xs, dual, psi, x, y);
          CHECK(std::abs(l - r) < 1e-6);
        }
      for (int t = 0; t < 10; ++t) {
        const auto [l, r] =
            subset_orthogonality_check(xs, dual, psi, random_subset(rng, xs.size()), random_subset(rng, xs.size()));
        CHECK(std::abs(l - r) < 1e-6);
      }
    }
  }
}

TEST_CASE("Parseval norm") {
  std::mt19937 rng(9);
  for (const GSet& xs : sample_instances()) {
    const DualSet dual = build_normalized_dual(xs);
    const double v = static_cast<double>(xs.size());
    for (int t = 0; t < 25; ++t) {
      const auto hat = fourier(random_unit_function(rng, xs.size()), dual);
      double norm = 0;
      for (Complex z : hat) norm += std::norm(z);
      CHECK(std::abs(norm - v * v) < 1e-6);
    }
  }
}

TEST_CASE("block sums do not depend on the base points") {
  std::mt19937 rng(13);
  for (const GSet& xs : sample_instances()) {
    const DualSet dual = build_normalized_dual(xs);
    const Group& g = xs.group();
    const auto psis = characters(g);
    std::vector<DualFunction> moved;
    for (const auto& lam : dual.members()) {
      DualFunction m = lam;
      const auto orbit = xs.orbit(lam.support_orbit);
      m.base_point = orbit.back();
      for (Point x : orbit)
        for (Elem a = 0; a < g.order(); ++a)
          if (xs.act(a, m.base_point) == x) {
            m.values[x] = lam.scale() * std::conj(psis[lam.character].value(a));
            m.phase[x] = (dual.phase_modulus() - psis[lam.character].phase(a)) % dual.phase_modulus();
            break;
          }
      moved.push_back(std::move(m));
    }
    const DualSet other(xs, moved);
    CHECK(validate_dual(xs, other).empty());
    for (int t = 0; t < 10; ++t) {
      const auto f = CircleValuedFunction::raw(random_unit_function(rng, xs.size()));
      const auto a = bent_block_sums(dual, f), b = bent_block_sums(other, f);
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-9);
    }
  }
}

TEST_CASE("perturbed duals are reported") {
  const GSet xs = klein_gset(1, 1, 0, 1, 0);
  const DualSet dual = build_normalized_dual(xs);
  std::vector<DualFunction> members(dual.members().begin(), dual.members().end());
  for (auto& z : members[1].values) z *= 1.1;
  members[1].numerator += 1;
  CHECK_FALSE(validate_dual(xs, DualSet(xs, members)).empty());

  members.assign(dual.members().begin(), dual.members().end());
  members.pop_back();
  CHECK_FALSE(validate_dual(xs, DualSet(xs, members)).empty());
}

TEST_CASE("dual needs an abelian factorized group") {
  const Group d3 = dihedral_group(3);
  std::vector<Point> table(36);
  for (Elem g = 0; g < 6; ++g)
    for (Point x = 0; x < 6; ++x) table[g * 6 + x] = d3.mul(g, x);
  CHECK_THROWS_AS(build_normalized_dual(GSet::from_action_table(d3, 6, table)), UnsupportedGroup);
}
