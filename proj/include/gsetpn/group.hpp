#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsetpn {

using Complex = std::complex<double>;

/// Index of a group element. Element 0 is always the identity.
using Elem = std::uint32_t;

/// A finite group stored as a Cayley table.
///
/// Groups built from cyclic factor orders (make_abelian_group) also carry the
/// factorization: elements are residue tuples enumerated lexicographically,
/// with the first factor most significant. Only such groups have characters.
/// Groups built from a raw table may be non-abelian; they support the
/// integer-counting machinery only.
class Group {
 public:
  /// Builds a group from a Cayley table; row/column 0 must be the identity.
  /// Throws InvalidInput when the table is not a group.
  static Group from_table(std::vector<std::vector<Elem>> table);

  std::size_t order() const noexcept { return order_; }
  Elem identity() const noexcept { return 0; }
  Elem mul(Elem a, Elem b) const noexcept { return table_[a * order_ + b]; }
  Elem inv(Elem a) const noexcept { return inverse_[a]; }

  bool is_abelian() const noexcept { return abelian_; }
  bool has_factorization() const noexcept { return !factors_.empty(); }
  std::span<const int> factor_orders() const noexcept { return factors_; }

  /// Least common multiple of the element orders.
  int exponent() const noexcept { return exponent_; }

  /// Residue tuple of an element; needs a factorization.
  std::vector<int> residues(Elem e) const;
  /// Inverse of residues(); throws InvalidInput on out-of-range residues.
  Elem element(std::span<const int> residues) const;

  /// "(r0,r1,...)" for factorized groups, "g<i>" otherwise.
  std::string element_name(Elem e) const;

  bool operator==(const Group& other) const noexcept {
    return order_ == other.order_ && table_ == other.table_ && factors_ == other.factors_;
  }

 private:
  friend Group make_abelian_group(std::vector<int> factor_orders);

  std::size_t order_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<int> factors_;
  bool abelian_ = true;
  int exponent_ = 1;

  void finish();
};

/// Direct product of cyclic groups of the given orders.
/// Throws InvalidInput on an empty list or a non-positive order.
Group make_abelian_group(std::vector<int> factor_orders);

/// Dihedral group of order 2n (rotations 0..n-1, then reflections).
Group dihedral_group(int n);

/// A homomorphism G -> roots of unity.
///
/// The value at g is exp(2 pi i * phase(g) / modulus()), where modulus() is the
/// exponent of G. Exponent tuple e gives value prod_i exp(2 pi i e_i r_i / n_i).
class Character {
 public:
  Character(std::vector<int> exponents, std::vector<std::uint32_t> phases, int modulus);

  std::span<const int> exponents() const noexcept { return exponents_; }
  std::uint32_t phase(Elem g) const noexcept { return phases_[g]; }
  std::span<const std::uint32_t> phases() const noexcept { return phases_; }
  int modulus() const noexcept { return modulus_; }
  Complex value(Elem g) const;
  bool is_principal() const noexcept;

 private:
  std::vector<int> exponents_;
  std::vector<std::uint32_t> phases_;
  int modulus_;
};

/// exp(2 pi i k / n), with exact values at multiples of a quarter turn.
Complex root_of_unity(long long k, long long n);

/// All |G| characters. Entry 0 is principal; exponent tuples are ordered with
/// the first factor varying fastest, which lists the Klein characters as the
/// rows psi_0..psi_3 of its standard table. Throws UnsupportedGroup without a
/// factorization.
std::vector<Character> characters(const Group& g);

/// Index of the complex conjugate character in characters(g).
std::size_t conjugate_character(const Group& g, std::size_t index);

/// {g : psi(g) = 1}, ascending.
std::vector<Elem> kernel(const Group& g, const Character& psi);

/// Integer combination sum_g c_g g in the group algebra.
class GroupAlgebraElement {
 public:
  explicit GroupAlgebraElement(std::size_t group_order) : coeffs_(group_order, 0) {}

  /// K^+ for a subset K (repeated elements accumulate).
  static GroupAlgebraElement sum_of(std::size_t group_order, std::span<const Elem> elements);

  long long coeff(Elem g) const { return coeffs_.at(g); }
  void add(Elem g, long long c) { coeffs_.at(g) += c; }
  std::span<const long long> coeffs() const noexcept { return coeffs_; }
  std::size_t group_order() const noexcept { return coeffs_.size(); }

  bool is_zero() const noexcept;
  /// Sum of all coefficients (equals |K| for K^+).
  long long augmentation() const noexcept;

  /// K^(-): coefficient of g moves to g^{-1}.
  GroupAlgebraElement inverted(const Group& g) const;

  /// Linear extension psi(a) = sum_g c_g psi(g).
  Complex evaluate(const Character& psi) const;

  GroupAlgebraElement& operator+=(const GroupAlgebraElement& other);
  bool operator==(const GroupAlgebraElement& other) const = default;

 private:
  std::vector<long long> coeffs_;
};

struct MuGamma {
  long long mu = 0;
  long long gamma = 0;
};

/// Recognizes a = mu * 1_G + gamma * G^+ by reading coefficients: all
/// non-identity coefficients must coincide. For the trivial group gamma = 0.
std::optional<MuGamma> is_mu_plus_gamma_form(const GroupAlgebraElement& a);

}  // namespace gsetpn
