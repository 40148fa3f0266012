#include "gsetpn/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gsetpn/error.hpp"

namespace gsetpn {

Group Group::from_table(std::vector<std::vector<Elem>> table) {
  const std::size_t n = table.size();
  if (n == 0) throw InvalidInput("group table is empty");
  Group g;
  g.order_ = n;
  g.table_.reserve(n * n);
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidInput("group table is not square");
    for (Elem e : row) {
      if (e >= n) throw InvalidInput("group table entry out of range");
      g.table_.push_back(e);
    }
  }
  for (Elem a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a)
      throw InvalidInput("element 0 is not the identity of the table");
  }
  // Latin square gives cancellation; together with associativity and an
  // identity that makes a group.
  for (Elem a = 0; a < n; ++a) {
    std::vector<bool> row(n), col(n);
    for (Elem b = 0; b < n; ++b) {
      row[g.mul(a, b)] = true;
      col[g.mul(b, a)] = true;
    }
    if (std::find(row.begin(), row.end(), false) != row.end() ||
        std::find(col.begin(), col.end(), false) != col.end())
      throw InvalidInput("group table is not a Latin square");
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw InvalidInput("group table is not associative");
  g.finish();
  return g;
}

void Group::finish() {
  inverse_.assign(order_, 0);
  for (Elem a = 0; a < order_; ++a)
    for (Elem b = 0; b < order_; ++b)
      if (mul(a, b) == 0) inverse_[a] = b;

  abelian_ = true;
  for (Elem a = 0; a < order_ && abelian_; ++a)
    for (Elem b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) {
        abelian_ = false;
        break;
      }

  exponent_ = 1;
  for (Elem a = 0; a < order_; ++a) {
    int k = 1;
    for (Elem p = a; p != 0; p = mul(p, a)) ++k;
    if (a == 0) k = 1;
    exponent_ = std::lcm(exponent_, k);
  }
}

std::vector<int> Group::residues(Elem e) const {
  if (!has_factorization()) throw UnsupportedGroup("group has no cyclic factorization");
  std::vector<int> r(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    r[i] = static_cast<int>(e % factors_[i]);
    e /= factors_[i];
  }
  return r;
}

Elem Group::element(std::span<const int> residues) const {
  if (!has_factorization()) throw UnsupportedGroup("group has no cyclic factorization");
  if (residues.size() != factors_.size()) throw InvalidInput("residue tuple has wrong length");
  Elem e = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (residues[i] < 0 || residues[i] >= factors_[i])
      throw InvalidInput("residue out of range for factor " + std::to_string(i));
    e = e * factors_[i] + residues[i];
  }
  return e;
}

std::string Group::element_name(Elem e) const {
  if (!has_factorization()) return "g" + std::to_string(e);
  std::string s = "(";
  auto r = residues(e);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(r[i]);
  }
  return s + ")";
}

Group make_abelian_group(std::vector<int> factor_orders) {
  if (factor_orders.empty()) throw InvalidInput("abelian group needs at least one factor order");
  std::size_t n = 1;
  for (int f : factor_orders) {
    if (f < 1) throw InvalidInput("factor orders must be positive");
    n *= static_cast<std::size_t>(f);
    if (n > (1u << 16)) throw InvalidInput("group order too large");
  }
  Group g;
  g.order_ = n;
  g.factors_ = std::move(factor_orders);
  g.table_.resize(n * n);
  std::vector<std::vector<int>> res(n);
  for (Elem e = 0; e < n; ++e) res[e] = g.residues(e);
  std::vector<int> sum(g.factors_.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < sum.size(); ++i)
        sum[i] = (res[a][i] + res[b][i]) % g.factors_[i];
      g.table_[a * n + b] = g.element(sum);
    }
  g.finish();
  return g;
}

Group dihedral_group(int n) {
  if (n < 1) throw InvalidInput("dihedral group needs n >= 1");
  const auto m = static_cast<std::size_t>(2 * n);
  std::vector<std::vector<Elem>> t(m, std::vector<Elem>(m));
  // r^i = i, s r^i = n + i; (s^a r^i)(s^b r^j) = s^{a+b} r^{(-1)^b i + j}.
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < 2; ++b)
        for (int j = 0; j < n; ++j) {
          int rot = ((b ? -i : i) + j) % n;
          if (rot < 0) rot += n;
          int s = (a + b) % 2;
          t[a * n + i][b * n + j] = static_cast<Elem>(s * n + rot);
        }
  return Group::from_table(std::move(t));
}

Complex root_of_unity(long long k, long long n) {
  k %= n;
  if (k < 0) k += n;
  if ((4 * k) % n == 0) {
    switch ((4 * k) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

Character::Character(std::vector<int> exponents, std::vector<std::uint32_t> phases, int modulus)
    : exponents_(std::move(exponents)), phases_(std::move(phases)), modulus_(modulus) {}

Complex Character::value(Elem g) const { return root_of_unity(phases_[g], modulus_); }

bool Character::is_principal() const noexcept {
  return std::all_of(phases_.begin(), phases_.end(), [](auto p) { return p == 0; });
}

namespace {

std::vector<int> character_exponents(const Group& g, std::size_t index) {
  auto f = g.factor_orders();
  std::vector<int> e(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    e[i] = static_cast<int>(index % f[i]);
    index /= f[i];
  }
  return e;
}

std::size_t character_index(const Group& g, std::span<const int> exps) {
  auto f = g.factor_orders();
  std::size_t idx = 0;
  for (std::size_t i = f.size(); i-- > 0;) idx = idx * f[i] + exps[i];
  return idx;
}

}  // namespace

std::vector<Character> characters(const Group& g) {
  if (!g.has_factorization() || !g.is_abelian())
    throw UnsupportedGroup("characters need an abelian group given by cyclic factors");
  const int L = g.exponent();
  auto f = g.factor_orders();
  std::vector<std::vector<int>> res(g.order());
  for (Elem e = 0; e < g.order(); ++e) res[e] = g.residues(e);

  std::vector<Character> out;
  out.reserve(g.order());
  for (std::size_t c = 0; c < g.order(); ++c) {
    auto exps = character_exponents(g, c);
    std::vector<std::uint32_t> phases(g.order());
    for (Elem e = 0; e < g.order(); ++e) {
      long long p = 0;
      for (std::size_t i = 0; i < f.size(); ++i)
        p += static_cast<long long>(exps[i]) * res[e][i] * (L / f[i]);
      phases[e] = static_cast<std::uint32_t>(p % L);
    }
    out.emplace_back(std::move(exps), std::move(phases), L);
  }
  return out;
}

std::size_t conjugate_character(const Group& g, std::size_t index) {
  auto f = g.factor_orders();
  auto e = character_exponents(g, index);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = (f[i] - e[i]) % f[i];
  return character_index(g, e);
}

std::vector<Elem> kernel(const Group& g, const Character& psi) {
  std::vector<Elem> k;
  for (Elem e = 0; e < g.order(); ++e)
    if (psi.phase(e) == 0) k.push_back(e);
  return k;
}

GroupAlgebraElement GroupAlgebraElement::sum_of(std::size_t group_order,
                                                std::span<const Elem> elements) {
  GroupAlgebraElement a(group_order);
  for (Elem e : elements) a.add(e, 1);
  return a;
}

bool GroupAlgebraElement::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](long long c) { return c == 0; });
}

long long GroupAlgebraElement::augmentation() const noexcept {
  return std::accumulate(coeffs_.begin(), coeffs_.end(), 0LL);
}

GroupAlgebraElement GroupAlgebraElement::inverted(const Group& g) const {
  GroupAlgebraElement out(coeffs_.size());
  for (Elem e = 0; e < coeffs_.size(); ++e) out.coeffs_[g.inv(e)] = coeffs_[e];
  return out;
}

Complex GroupAlgebraElement::evaluate(const Character& psi) const {
  Complex s = 0.0;
  for (Elem e = 0; e < coeffs_.size(); ++e)
    if (coeffs_[e] != 0) s += static_cast<double>(coeffs_[e]) * psi.value(e);
  return s;
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& other) {
  if (other.coeffs_.size() != coeffs_.size())
    throw InvalidInput("group algebra elements over different groups");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

std::optional<MuGamma> is_mu_plus_gamma_form(const GroupAlgebraElement& a) {
  auto c = a.coeffs();
  if (c.size() == 1) return MuGamma{c[0], 0};
  const long long gamma = c[1];
  for (std::size_t i = 2; i < c.size(); ++i)
    if (c[i] != gamma) return std::nullopt;
  return MuGamma{c[0] - gamma, gamma};
}

}  // namespace gsetpn
