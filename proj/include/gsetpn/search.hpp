#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsetpn/dual.hpp"
#include "gsetpn/gset.hpp"

namespace gsetpn {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 34;

/// kDefaultBudget, or the value of GSETPN_BUDGET when it holds a positive integer.
std::uint64_t default_budget();

/// Either a finite group H or the m-th roots of unity.
struct Codomain {
  enum class Kind { group, roots } kind = Kind::group;
  Group group = make_abelian_group({2});
  int order = 2;  // m for roots; |H| for groups

  static Codomain of_group(Group h);
  static Codomain roots_of_unity(int m);
  std::size_t size() const noexcept;
  std::string describe() const;
};

enum class Predicate { pn, bent, difference_set };
enum class SearchMode { count, collect, first };

std::string to_string(Predicate p);
std::string to_string(SearchMode m);

struct SearchSpec {
  GSet instance;
  Codomain codomain;
  Predicate predicate = Predicate::pn;
  SearchMode mode = SearchMode::count;
  std::size_t shard_count = 1;
  std::size_t workers = 0;        // 0 picks the hardware concurrency
  std::uint64_t budget = kDefaultBudget;
  std::size_t witness_limit = 16;  // collect mode; 0 keeps every witness
  /// Re-check survivors of the counting predicates with the spectral test.
  bool confirm_spectral = true;
  std::optional<std::string> checkpoint_path;
};

/// One candidate: the value index of each point (group element, root
/// exponent, or 0/1 membership for difference sets).
using Candidate = std::vector<std::uint32_t>;

struct CensusReport {
  std::uint64_t total_candidates = 0;
  std::uint64_t matches = 0;
  /// Matches grouped by the value at point 0; independent of sharding.
  std::vector<std::uint64_t> matches_by_leading_value;
  std::vector<Candidate> witnesses;
  /// Survivors on which the spectral re-check disagreed; expected to be 0.
  std::uint64_t spectral_disagreements = 0;

  // Run details that depend on scheduling.
  std::uint64_t examined = 0;
  std::size_t fixed_digits = 0;
  std::vector<std::uint64_t> per_shard_matches;
  std::size_t workers = 0;
  std::size_t resumed_shards = 0;
  double elapsed_seconds = 0.0;
};

/// FNV-1a 64 over the group table, the action table and |X|.
std::uint64_t instance_hash(const GSet& xs);

/// |codomain|^|X|, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> candidate_count(const GSet& xs, const Codomain& c);

/// Exhaustive census. Throws BudgetExceeded when the space is larger than
/// spec.budget and InvalidInput when the predicate does not fit the codomain.
CensusReport enumerate(const SearchSpec& spec);

struct Discrepancy {
  Candidate candidate;
  std::string detail;
};

struct CrossValidateOptions {
  std::uint64_t budget = kDefaultBudget;
  /// Dual set used by the spectral verifiers; the canonical one when null.
  const DualSet* dual = nullptr;
  double tolerance = 1e-6;
  /// Stop after this many discrepancies (0 = no limit).
  std::size_t max_discrepancies = 64;
};

/// Runs every applicable pair of verifiers on every function X -> codomain
/// and lists the candidates on which they disagree.
std::vector<Discrepancy> cross_validate(const GSet& xs, const Codomain& codomain,
                                        const CrossValidateOptions& options = {});

}  // namespace gsetpn
