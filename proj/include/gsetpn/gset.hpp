#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gsetpn/group.hpp"

namespace gsetpn {

using Point = std::uint32_t;

/// Subset of the points 0..universe-1, stored as 64-bit words.
class PointSubset {
 public:
  PointSubset() = default;
  explicit PointSubset(std::size_t universe);

  static PointSubset from_points(std::size_t universe, std::span<const Point> points);
  static PointSubset full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }
  bool contains(Point x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void insert(Point x);
  void erase(Point x);

  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  std::vector<Point> points() const;
  PointSubset complement() const;
  std::size_t intersection_size(const PointSubset& other) const noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  bool operator==(const PointSubset&) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A finite G-set with the full action table precomputed.
///
/// Orbits are numbered in order of their smallest point; orbit point lists are
/// ascending. stabilizer(j) is N_j, the elements fixing every point of orbit j.
class GSet {
 public:
  /// table[g * v + x] = g x. Validates the identity and compatibility axioms
  /// and that every element acts as a permutation; throws InvalidAction.
  static GSet from_action_table(Group group, std::size_t v, std::vector<Point> table);

  const Group& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return v_; }
  Point act(Elem g, Point x) const noexcept { return table_[g * v_ + x]; }

  std::size_t orbit_count() const noexcept { return orbits_.size(); }
  std::span<const Point> orbit(std::size_t j) const { return orbits_.at(j); }
  std::size_t orbit_of(Point x) const { return orbit_of_.at(x); }
  std::span<const Elem> stabilizer(std::size_t j) const { return stabilizers_.at(j); }

  /// gC = {g x : x in C}.
  PointSubset image(Elem g, const PointSubset& c) const;
  /// |gC cap D|.
  std::size_t image_intersection(Elem g, const PointSubset& c, const PointSubset& d) const;

  /// True when the subset is a union of orbits.
  bool is_stable(const PointSubset& s) const;

  /// Restriction to a G-stable subset. Returns the new G-set and, for each of
  /// its points, the original point number.
  std::pair<GSet, std::vector<Point>> restrict_to(const PointSubset& stable) const;

  /// Generator permutations (one per cyclic factor) when the group is factorized.
  std::vector<std::vector<Point>> generator_actions() const;

 private:
  GSet(Group group, std::size_t v, std::vector<Point> table);

  Group group_;
  std::size_t v_ = 0;
  std::vector<Point> table_;
  std::vector<std::vector<Point>> orbits_;
  std::vector<std::size_t> orbit_of_;
  std::vector<std::vector<Elem>> stabilizers_;
};

/// Builds a G-set for a factorized abelian group from one permutation of
/// 0..v-1 per cyclic factor (the action of that factor's unit generator).
/// Throws InvalidAction when a map is not a permutation, two generators do not
/// commute, or a generator's order does not divide its factor order.
GSet make_gset(Group group, std::size_t v, const std::vector<std::vector<Point>>& generator_actions);

/// Klein four group on s free orbits, p/q/r two-point orbits fixed pointwise by
/// alpha/beta/gamma, and t fixed points, numbered in that order.
GSet klein_gset(std::size_t p, std::size_t q, std::size_t r, std::size_t s, std::size_t t);

/// Group of order 2 with r two-point orbits (points 2i, 2i+1) then s fixed points.
GSet c2_gset(std::size_t r, std::size_t s);

/// The named non-identity elements of the Klein group make_abelian_group({2, 2}).
namespace klein {
inline constexpr Elem alpha = 1;  // (0,1)
inline constexpr Elem beta = 2;   // (1,0)
inline constexpr Elem gamma = 3;  // (1,1)
}  // namespace klein

bool is_klein_group(const Group& g);

/// Orbit shapes of a Klein G-set. Free orbits list x_{i1}, ..., x_{i4} with
/// x_{i2} = alpha x_{i1}, x_{i3} = beta x_{i1}, x_{i4} = gamma x_{i1}.
struct KleinLayout {
  std::vector<std::array<Point, 4>> free;
  std::vector<std::array<Point, 2>> alpha;  // fixed pointwise by alpha
  std::vector<std::array<Point, 2>> beta;
  std::vector<std::array<Point, 2>> gamma;
  std::vector<Point> fixed;

  std::size_t p() const noexcept { return alpha.size(); }
  std::size_t q() const noexcept { return beta.size(); }
  std::size_t r() const noexcept { return gamma.size(); }
  std::size_t s() const noexcept { return free.size(); }
  std::size_t t() const noexcept { return fixed.size(); }
  /// Two-point orbits of the type fixed pointwise by the given element.
  const std::vector<std::array<Point, 2>>& two_orbits(Elem fixer) const;
};

/// Throws UnsupportedGroup unless the group is the Klein four group.
KleinLayout klein_layout(const GSet& xs);

/// G_{x,y}^+ = sum of {g : g x = y}.
GroupAlgebraElement transporter(const GSet& xs, Point x, Point y);

/// sum over (x, y) in C x D of |G_{x,y}|.
long long delta(const GSet& xs, const PointSubset& c, const PointSubset& d);

}  // namespace gsetpn
