#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsetpn/functions.hpp"
#include "gsetpn/gset.hpp"

namespace gsetpn {

// ---------------------------------------------------------------------------
// Order-2 group

bool exists_pn_c2(std::size_t r, std::size_t s);

/// PN function on c2_gset(r, s): the lowest (2r + s)/4 two-orbits send their
/// first point to 1, everything else to 0. With evenly_balanced, further
/// fixed points and whole two-orbits are sent to 1 (lowest first) until
/// |f^{-1}(1)| = |X|/2. Throws NoConstruction when no PN function exists.
GroupValuedFunction construct_pn_c2(std::size_t r, std::size_t s, bool evenly_balanced = false);

/// Number of two-orbits of an order-2 action meeting f^{-1}(1) in one point.
std::size_t split_orbit_count(const GSet& xs, const GroupValuedFunction& f);

// ---------------------------------------------------------------------------
// Klein four group, F_2-valued

/// Point assignments (point, 0 or 1) on the i-th free orbit of the layout
/// making f psi_j-split there; `positive` puts 1 where lambda_ji > 0.
std::vector<std::pair<Point, Elem>> psi_split_assign(const KleinLayout& layout, std::size_t free_orbit, int j,
                                                     bool positive = true);

struct MuCounts {
  std::size_t alpha = 0, beta = 0, gamma = 0;
  bool operator==(const MuCounts&) const = default;
};

/// Two-orbits of each type meeting f^{-1}(1) in exactly one point.
MuCounts mu_counts(const GSet& xs, const GroupValuedFunction& f);

bool exists_pn_klein_s0(std::size_t p, std::size_t q, std::size_t r, std::size_t t);

/// PN function on klein_gset(p, q, r, 0, t): the first |X|/8 orbits of each
/// two-orbit type send their first point to 1, everything else goes to 0.
GroupValuedFunction construct_pn_klein_s0(std::size_t p, std::size_t q, std::size_t r, std::size_t t);

enum class KleinPlanPath {
  counting_plan,   // integers k0, p1, q1, r1 as in the general criterion
  non_free_part,   // a PN function on the non-free part, odd on every free orbit
};

struct KleinPNPlan {
  std::size_t p = 0, q = 0, r = 0, s = 0, t = 0;
  KleinPlanPath path = KleinPlanPath::counting_plan;
  long long k0 = 0, k1 = 0, k2 = 0, k3 = 0;
  long long p1 = 0, q1 = 0, r1 = 0;

  long long v0() const noexcept { return static_cast<long long>(2 * (p + q + r) + t); }
  /// Free orbits that are constant or split: k0 + k1 + k2 + k3.
  long long s1() const noexcept { return k0 + k1 + k2 + k3; }
};

/// Lowest (k0, p1, q1, r1) in lexicographic order satisfying the counting
/// criterion; otherwise the non-free-part plan when that part carries a PN
/// function; otherwise empty.
std::optional<KleinPNPlan> exists_pn_klein_general(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                                                   std::size_t t);

/// Function on klein_gset(plan.p, ..., plan.t) realizing the plan. Throws
/// InvalidInput when the plan's integers are inconsistent.
GroupValuedFunction construct_pn_klein_general(const KleinPNPlan& plan);

enum class FreeOrbitPattern { constant, psi1_split, psi2_split, psi3_split, odd };

/// Behaviour of f on each free orbit of a Klein G-set, in layout order.
std::vector<FreeOrbitPattern> free_orbit_patterns(const GSet& xs, const GroupValuedFunction& f);

std::string to_string(FreeOrbitPattern p);

/// Cases "i" to "ix" of the |X| = 16 classification of Klein PN functions
/// that f satisfies, with the relabeled variants folded into their case.
std::vector<std::string> klein16_cases(const GSet& xs, const GroupValuedFunction& f);

// ---------------------------------------------------------------------------
// Klein four group, bent

/// Bent function on klein_gset(1, 1, 1, 0, 0): f(x_i) = c_i and
/// f(y_i) = (-1/2 + sqrt(-3)/2) c_i, or the conjugate factor when
/// plus[i] is false. Exact when every c_i is a root of unity.
CircleValuedFunction construct_bent_klein_6(const std::array<UnitValue, 3>& c,
                                            const std::array<bool, 3>& plus = {true, true, true});

/// Bent function on klein_gset(2, 1, 1, 0, 0) with f(y_3) = -c_3 and
/// f(y_4) = -c_4, and on the two alpha-orbits
///   pattern 1: f(x_1) = f(x_2) = c_1, f(y_1) = c_2, f(y_2) = -c_2
///   pattern 2: f(x_1) = f(y_1) = c_1, f(x_2) = c_2, f(y_2) = -c_2
///   pattern 3: f(x_1) = c_1, f(y_1) = -c_1, f(x_2) = f(y_2) = c_2.
CircleValuedFunction construct_bent_klein_8(const std::array<UnitValue, 4>& c, int pattern);

bool exists_bent_klein(std::size_t p, std::size_t q, std::size_t r);

/// Orbit groups used by construct_bent_klein, as indices into the layout's
/// two-orbit lists of the original types (0 = alpha, 1 = beta, 2 = gamma).
struct BentFamily {
  std::vector<std::pair<int, std::size_t>> orbits;
};

std::vector<BentFamily> bent_family_partition(std::size_t p, std::size_t q, std::size_t r);

/// Bent function on klein_gset(p, q, r, 0, 0), exact over 6th roots of unity.
CircleValuedFunction construct_bent_klein(std::size_t p, std::size_t q, std::size_t r);

}  // namespace gsetpn
