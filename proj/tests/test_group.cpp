#include <doctest.h>

#include <random>

#include "gsetpn/cyclotomic.hpp"
#include "gsetpn/error.hpp"
#include "gsetpn/group.hpp"
#include "gsetpn/gset.hpp"

using namespace gsetpn;

TEST_CASE("abelian groups from factor orders") {
  const Group k = make_abelian_group({2, 2});
  CHECK(k.order() == 4);
  CHECK(k.exponent() == 2);
  CHECK(k.is_abelian());

  const Group t = make_abelian_group({1});
  CHECK(t.order() == 1);
  CHECK(characters(t).size() == 1);
  CHECK(characters(t)[0].is_principal());

  CHECK(make_abelian_group({2, 3}).order() == 6);
  CHECK(make_abelian_group({2, 3}).exponent() == 6);
  CHECK_THROWS_AS(make_abelian_group({}), InvalidInput);
  CHECK_THROWS_AS(make_abelian_group({2, 0}), InvalidInput);
}

TEST_CASE("residue tuples are lexicographic with the first factor most significant") {
  const Group g = make_abelian_group({2, 3});
  CHECK(g.residues(0) == std::vector<int>{0, 0});
  CHECK(g.residues(1) == std::vector<int>{0, 1});
  CHECK(g.residues(3) == std::vector<int>{1, 0});
  for (Elem e = 0; e < g.order(); ++e) CHECK(g.element(g.residues(e)) == e);
  // componentwise addition
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b) {
      const auto ra = g.residues(a), rb = g.residues(b), rc = g.residues(g.mul(a, b));
      CHECK(rc[0] == (ra[0] + rb[0]) % 2);
      CHECK(rc[1] == (ra[1] + rb[1]) % 3);
    }
  CHECK_THROWS_AS(g.element(std::vector<int>{2, 0}), InvalidInput);
}

TEST_CASE("Klein character table") {
  const Group k = make_abelian_group({2, 2});
  const auto psi = characters(k);
  REQUIRE(psi.size() == 4);
  // rows psi_0..psi_3 over 1, alpha, beta, gamma
  const int table[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  for (int i = 0; i < 4; ++i)
    for (Elem g = 0; g < 4; ++g) {
      CHECK(psi[i].value(g).real() == doctest::Approx(table[i][g]));
      CHECK(psi[i].value(g).imag() == doctest::Approx(0));
    }
  CHECK(kernel(k, psi[0]) == std::vector<Elem>{0, 1, 2, 3});
  CHECK(kernel(k, psi[1]) == std::vector<Elem>{0, 1});
  CHECK(kernel(k, psi[2]) == std::vector<Elem>{0, 2});
  CHECK(kernel(k, psi[3]) == std::vector<Elem>{0, 3});
}

TEST_CASE("C2 characters") {
  const auto psi = characters(make_abelian_group({2}));
  REQUIRE(psi.size() == 2);
  CHECK(psi[0].is_principal());
  CHECK(psi[1].value(1).real() == doctest::Approx(-1));
}

TEST_CASE("character properties on every abelian group of order at most 16") {
  const std::vector<std::vector<int>> shapes{{1},    {2},    {3},    {4},       {2, 2},    {5},    {6},
                                             {2, 3}, {7},    {8},    {2, 4},    {2, 2, 2}, {9},    {3, 3},
                                             {10},   {11},   {12},   {2, 6},    {13},      {14},   {15},
                                             {16},   {2, 8}, {4, 4}, {2, 2, 4}, {2, 2, 2, 2}};
  for (const auto& shape : shapes) {
    const Group g = make_abelian_group(shape);
    const auto psi = characters(g);
    REQUIRE(psi.size() == g.order());
    for (std::size_t i = 0; i < psi.size(); ++i) {
      for (Elem a = 0; a < g.order(); ++a) {
        CHECK(std::abs(std::abs(psi[i].value(a)) - 1.0) < 1e-12);
        for (Elem b = 0; b < g.order(); ++b)
          CHECK(std::abs(psi[i].value(g.mul(a, b)) - psi[i].value(a) * psi[i].value(b)) < 1e-9);
      }
      const std::size_t c = conjugate_character(g, i);
      for (std::size_t f = 0; f < shape.size(); ++f)
        CHECK((psi[i].exponents()[f] + psi[c].exponents()[f]) % shape[f] == 0);
      for (std::size_t j = 0; j < psi.size(); ++j) {
        Complex s = 0;
        for (Elem a = 0; a < g.order(); ++a) s += psi[i].value(a) * std::conj(psi[j].value(a));
        const double want = i == j ? static_cast<double>(g.order()) : 0.0;
        CHECK(std::abs(s - want) < 1e-9 * static_cast<double>(g.order()));
      }
    }
  }
}

TEST_CASE("characters need a factorization") {
  CHECK_THROWS_AS(characters(dihedral_group(3)), UnsupportedGroup);
  CHECK_FALSE(dihedral_group(3).is_abelian());
  CHECK(dihedral_group(3).order() == 6);
}

TEST_CASE("group algebra") {
  const Group k = make_abelian_group({2, 2});
  const auto empty = GroupAlgebraElement::sum_of(4, {});
  CHECK(empty.is_zero());

  GroupAlgebraElement a(4);
  a.add(0, 5);
  for (Elem g = 1; g < 4; ++g) a.add(g, 2);
  const auto mg = is_mu_plus_gamma_form(a);
  REQUIRE(mg);
  CHECK(mg->mu == 3);
  CHECK(mg->gamma == 2);

  GroupAlgebraElement b(4);
  b.add(klein::alpha, 1);
  CHECK_FALSE(is_mu_plus_gamma_form(b));

  // k 1_G + ell (G \ {1})^+ -> (k - ell, ell)
  GroupAlgebraElement c(4);
  c.add(0, 7);
  for (Elem g = 1; g < 4; ++g) c.add(g, 4);
  CHECK(is_mu_plus_gamma_form(c)->mu == 3);
  CHECK(is_mu_plus_gamma_form(c)->gamma == 4);

  for (const auto& psi : characters(k)) {
    const Complex value = a.evaluate(psi);
    Complex want = 0;
    for (Elem g = 0; g < 4; ++g) want += static_cast<double>(a.coeff(g)) * psi.value(g);
    CHECK(std::abs(value - want) < 1e-12);
  }
  CHECK(a.augmentation() == 11);
}

TEST_CASE("mu + gamma G^+ form matches constant non-principal character values") {
  std::mt19937 rng(7);
  for (const auto& shape : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}, {2, 3}, {8}, {2, 4}, {2, 2, 2}}) {
    const Group g = make_abelian_group(shape);
    const auto psi = characters(g);
    for (int trial = 0; trial < 200; ++trial) {
      GroupAlgebraElement a(g.order());
      const bool structured = trial % 2 == 0;
      const long long base = static_cast<long long>(rng() % 7) - 3;
      for (Elem e = 0; e < g.order(); ++e)
        a.add(e, structured && e > 0 ? base : static_cast<long long>(rng() % 7) - 3);

      // psi(a) constant over the non-principal characters
      std::optional<Complex> common;
      bool constant = true;
      for (std::size_t i = 1; i < psi.size(); ++i) {
        const Complex z = a.evaluate(psi[i]);
        if (!common) common = z;
        else if (std::abs(z - *common) > 1e-9) constant = false;
      }
      const auto form = is_mu_plus_gamma_form(a);
      if (g.order() > 1) {
        CHECK(form.has_value() == constant);
        if (form && common) {
          CHECK(std::abs(common->real() - static_cast<double>(form->mu)) < 1e-9);
          CHECK(std::abs(common->imag()) < 1e-9);
        }
      }
      // psi(a) = mu for every psi iff a = mu 1_G
      bool all_equal = std::abs(a.evaluate(psi[0]) - a.evaluate(psi[1])) < 1e-9 && constant;
      bool scalar = true;
      for (Elem e = 1; e < g.order(); ++e) scalar = scalar && a.coeff(e) == 0;
      CHECK(all_equal == scalar);
    }
  }
}

TEST_CASE("from_table rejects non-groups") {
  CHECK_THROWS_AS(Group::from_table({{0, 1}, {1, 1}}), InvalidInput);
  const Group c2 = Group::from_table({{0, 1}, {1, 0}});
  CHECK(c2.order() == 2);
  CHECK(c2.inv(1) == 1);
}

TEST_CASE("exact root sums") {
  // 1 + w + w^2 = 0 for a primitive cube root w
  RootSumTester t3(3);
  CHECK(t3.vanishes(std::vector<long long>{1, 1, 1}));
  CHECK_FALSE(t3.vanishes(std::vector<long long>{1, 1, 0}));
  // 12th roots: zeta^0 + zeta^4 + zeta^8 = 0, zeta^0 + zeta^6 = 0
  std::vector<long long> c(12, 0);
  c[0] = c[4] = c[8] = 1;
  CHECK(RootSumTester(12).vanishes(c));
  c.assign(12, 0);
  c[0] = c[6] = 1;
  CHECK(RootSumTester(12).vanishes(c));
  c[1] = 1;
  CHECK_FALSE(RootSumTester(12).vanishes(c));

  CyclotomicInt z(6);
  z.add_root(0);
  z.add_root(2);
  z.add_root(4);
  CHECK(z.is_zero());
  CHECK(cyclotomic_polynomial(6) == std::vector<long long>{1, -1, 1});
}
