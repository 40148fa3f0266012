#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsetpn/gset.hpp"
#include "gsetpn/group.hpp"

namespace gsetpn {

/// One member lambda of a normalized G-dual set.
///
/// lambda(a x0) = sqrt(numerator / denominator) * psi(a^{-1}) on the support
/// orbit and 0 elsewhere. The scale is kept as the integer pair
/// (|X|, |X_j|); the phase of lambda(x) is stored exactly modulo the group
/// exponent, with -1 marking points off the support.
struct DualFunction {
  std::size_t support_orbit = 0;
  Point base_point = 0;
  std::size_t character = 0;  // index into characters(G)
  long long numerator = 1;
  long long denominator = 1;
  std::vector<long long> phase;
  std::vector<Complex> values;

  double scale() const;
  Complex operator()(Point x) const { return values.at(x); }
};

/// A full G-dual set together with its partition into blocks X^_psi.
///
/// The constructor does not check the axioms; see validate_dual().
class DualSet {
 public:
  DualSet(const GSet& xs, std::vector<DualFunction> members);

  std::span<const DualFunction> members() const noexcept { return members_; }
  const DualFunction& member(std::size_t i) const { return members_.at(i); }
  std::size_t size() const noexcept { return members_.size(); }

  /// Member indices of X^_psi.
  std::span<const std::size_t> block(std::size_t psi) const { return blocks_.at(psi); }
  std::size_t character_count() const noexcept { return blocks_.size(); }
  const std::vector<Character>& characters() const noexcept { return characters_; }

  std::size_t point_count() const noexcept { return point_count_; }
  /// Exponent of G: every stored phase lives modulo this.
  int phase_modulus() const noexcept { return phase_modulus_; }

 private:
  std::vector<DualFunction> members_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<Character> characters_;
  std::size_t point_count_ = 0;
  int phase_modulus_ = 1;
};

/// The canonical normalized dual: for each orbit X_j (base point = its lowest
/// point) and each psi with N_j inside ker psi, one member lambda_{j psi}.
/// Members are ordered orbit by orbit, characters ascending within an orbit.
/// Throws UnsupportedGroup unless G is abelian and factorized.
DualSet build_normalized_dual(const GSet& xs);

/// Checks a dual set against every axiom of a normalized G-dual set: size
/// |X|, |X|-normal orthogonality, psi-linearity, closure under conjugation,
/// single support orbit with the right magnitude, vanishing sums for
/// non-principal psi, at most one member per (orbit, psi), existence exactly
/// when N_j lies in ker psi, and one principal member per orbit.
/// Returns one message per violation; empty means valid.
std::vector<std::string> validate_dual(const GSet& xs, const DualSet& dual, double tolerance = 1e-6);

/// f^(lambda) = sum_x f(x) lambda(x) for every member, in member order.
std::vector<Complex> fourier(std::span<const Complex> f, const DualSet& dual);

/// lambda(D)^+ = sum of lambda over D.
Complex lambda_set_sum(const DualFunction& lambda, const PointSubset& d);

/// (sum_{lambda in X^_psi} lambda(x) conj(lambda(y)), (|X|/|G|) psi(G_{x,y}^+)).
std::pair<Complex, Complex> second_orthogonality_check(const GSet& xs, const DualSet& dual,
                                                       std::size_t psi, Point x, Point y);

/// (sum_{lambda in X^_psi} lambda(C)^+ conj(lambda(D)^+),
///  (|X|/|G|) psi(sum_{(x,y) in C x D} G_{x,y}^+)).
std::pair<Complex, Complex> subset_orthogonality_check(const GSet& xs, const DualSet& dual,
                                                       std::size_t psi, const PointSubset& c,
                                                       const PointSubset& d);

}  // namespace gsetpn
