#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsetpn/cyclotomic.hpp"
#include "gsetpn/dual.hpp"
#include "gsetpn/functions.hpp"
#include "gsetpn/gset.hpp"

namespace gsetpn {

/// Default relative tolerance of the spectral verifiers. PN and bent checks
/// compare against |X|^2/|G| with slack tolerance * |X|; dual-set and
/// difference-set identities use it as an absolute bound.
inline constexpr double kSpectralTolerance = 1e-6;

// ---------------------------------------------------------------------------
// Derivatives

/// f'_a(x) = f(a x) f(x)^{-1}.
GroupValuedFunction derivative(const GSet& xs, const GroupValuedFunction& f, Elem alpha);
CircleValuedFunction derivative(const GSet& xs, const CircleValuedFunction& f, Elem alpha);

/// counts[a][s] = |f'_a^{-1}(s)| for every a in G and s in H.
std::vector<std::vector<std::size_t>> derivative_counts(const GSet& xs, const GroupValuedFunction& f);

// ---------------------------------------------------------------------------
// Perfect nonlinearity

struct PNWitness {
  Elem alpha = 0;
  Elem sigma = 0;
  std::size_t count = 0;
};

struct PNVerdict {
  bool is_pn = false;
  bool divisible = false;  // |H| divides |X|
  std::optional<PNWitness> witness;
  std::map<std::string, bool> per_method;

  /// True when every method that ran agrees with is_pn.
  bool consistent() const;
};

/// Exact counting: |f'_a^{-1}(s)| = |X|/|H| for all a != 1 and all s.
/// Returns false at once when |H| does not divide |X|. Any group H.
PNVerdict is_pn_counting(const GSet& xs, const GroupValuedFunction& f);

/// Allocation-free counting check used by the search engine. `scratch` is
/// resized as needed; f holds one element index of `target` per point.
bool pn_counting_holds(const GSet& xs, const Group& target, std::span<const Elem> f,
                       std::vector<std::uint32_t>& scratch);

/// Level sets indexed by the elements of the target group.
std::vector<PointSubset> level_sets(const GroupValuedFunction& f);

/// sum_h |a S_h cap S_{s h}| = |X|/|H| for all a != 1, s != 1. family[h] is S_h.
/// Throws InvalidInput unless the sets partition X. Any group H.
bool is_related_difference_family(const GSet& xs, const Group& target, std::span<const PointSubset> family);

/// Same sum, including s = 1. Used to cross-check the reduction to s != 1.
bool is_related_difference_family_all_sigma(const GSet& xs, const Group& target,
                                            std::span<const PointSubset> family);

/// For every non-principal xi of H and non-principal psi of G,
/// sum_{lambda in X^_psi} |(xi o f)^(lambda)|^2 = |X|^2/|G|.
/// Throws UnsupportedGroup unless G and H are abelian and factorized.
bool is_pn_spectral(const GSet& xs, const DualSet& dual, const GroupValuedFunction& f,
                    double tolerance = kSpectralTolerance);

/// R_f = {(x, f(x))} meets (a, s) R_f in |X|/|H| points for every (a, s)
/// outside {1} x H, counted directly on X x H. Any group H.
bool is_relative_difference_set_of_graph(const GSet& xs, const GroupValuedFunction& f);

/// Runs every applicable PN characterization. is_pn is the counting verdict;
/// per_method holds "counting", "related_family", "relative_difference_set"
/// and, when a dual set is given and both groups are abelian, "spectral".
PNVerdict check_pn(const GSet& xs, const GroupValuedFunction& f, const DualSet* dual = nullptr,
                   double tolerance = kSpectralTolerance);

/// If the nonempty sets form a partitioned difference family, its constant ell.
std::optional<long long> partitioned_family_constant(const GSet& xs, std::span<const PointSubset> sets);

// ---------------------------------------------------------------------------
// Bent functions

enum class BentMethod { spectral, derivative };

/// sum_{lambda in X^_psi} |f^(lambda)|^2 for each character psi.
std::vector<double> bent_block_sums(const DualSet& dual, const CircleValuedFunction& f);

/// Exact check of sum_{lambda in X^_psi} |f^(lambda)|^2 = |X|^2/|G| for all psi
/// in Z[zeta]; needs an exact f.
bool is_bent_spectral_exact(const GSet& xs, const DualSet& dual, const CircleValuedFunction& f);

/// Exact check that every f'_a (a != 1) is balanced; needs an exact f.
bool is_bent_derivative_exact(const GSet& xs, const CircleValuedFunction& f);

/// Allocation-free exact derivative check for the search engine.
bool bent_derivative_holds(const GSet& xs, const RootSumTester& tester, std::span<const long long> exponents,
                           std::vector<long long>& counts, std::vector<long long>& scratch);

/// Spectral: every block sum equals |X|^2/|G|. Derivative: every f'_a with
/// a != 1 is balanced. Exact functions are decided exactly, raw ones within
/// tolerance * |X|. The spectral method needs a dual set and an abelian G.
bool is_bent(const GSet& xs, const DualSet* dual, const CircleValuedFunction& f, BentMethod method,
             double tolerance = kSpectralTolerance);

// ---------------------------------------------------------------------------
// Difference sets

struct DifferenceSetParams {
  std::size_t v = 0;
  std::size_t k = 0;
  long long lambda = 0;  // the constant |a D cap D| over a != 1

  bool operator==(const DifferenceSetParams&) const = default;
};

enum class DsMethod { counting, algebra, spectral };

/// |a D cap D| = ell for every a != 1 (vacuous for the trivial group).
bool has_difference_counts(const GSet& xs, const PointSubset& d, long long ell);

/// Returns (v, k, ell) when D is a G-difference set. The counting method also
/// accepts the empty set; algebra and spectral throw InvalidInput on it.
/// The spectral method builds the canonical dual when none is given.
/// For the trivial group every set qualifies and ell is reported as 0.
std::optional<DifferenceSetParams> is_difference_set(const GSet& xs, const PointSubset& d, DsMethod method,
                                                     const DualSet* dual = nullptr,
                                                     double tolerance = kSpectralTolerance);

/// sum over (x, y) in D x D of G_{x,y}^+.
GroupAlgebraElement difference_algebra_element(const GSet& xs, const PointSubset& d);

/// Checks that "|a D cap D'| = w for all a != 1", "D is a (v, k, k - w)
/// difference set" and "D' is a (v, v - k, v - k - w) difference set" hold or
/// fail together. Empty optional when D' is empty (the check is skipped).
std::optional<bool> complement_relation_check(const GSet& xs, const PointSubset& d);

// ---------------------------------------------------------------------------
// Two-valued functions and regular actions

enum class TwoValuedCase { not_pn, pn_case_i, pn_case_ii };

struct TwoValuedVerdict {
  TwoValuedCase verdict = TwoValuedCase::not_pn;
  /// False would mean the two-case criterion contradicts exact counting.
  bool agrees_with_counting = true;
};

/// PN classification of a function with exactly two values h1 < h2:
/// case i when |H| = 2, 4 | v and S_h1 is a (v, k1, k1 - v/4) difference set;
/// case ii when |H| = 3, 3 | v and S_h1 is a (v, k1, k1 - v/3) difference set.
/// Throws InvalidInput unless |f(X)| = 2.
TwoValuedVerdict classify_two_valued(const GSet& xs, const GroupValuedFunction& f);

struct RegularPNParameters {
  long long u = 0;
  std::array<long long, 2> k{};    // 2u^2 + u, 2u^2 - u
  std::array<long long, 2> ell{};  // u(u + 1), u(u - 1)
};

/// Parameters of the difference sets f^{-1}(1) of PN f : X -> F_2 under a
/// regular action on v = 4u^2 points; empty when v is not of that form.
std::optional<RegularPNParameters> regular_pn_parameters(long long v);

std::string to_string(TwoValuedCase c);
std::string to_string(DsMethod m);
std::string to_string(BentMethod m);

}  // namespace gsetpn
