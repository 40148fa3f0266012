#include "gsetpn/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gsetpn/error.hpp"
#include "gsetpn/nonlinearity.hpp"

namespace gsetpn {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("GSETPN_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

Codomain Codomain::of_group(Group h) {
  Codomain c;
  c.kind = Kind::group;
  c.order = static_cast<int>(h.order());
  c.group = std::move(h);
  return c;
}

Codomain Codomain::roots_of_unity(int m) {
  if (m < 1) throw InvalidInput("root of unity order must be positive");
  Codomain c;
  c.kind = Kind::roots;
  c.order = m;
  c.group = make_abelian_group({m});
  return c;
}

std::size_t Codomain::size() const noexcept { return kind == Kind::roots ? order : group.order(); }

std::string Codomain::describe() const {
  if (kind == Kind::roots) return "roots " + std::to_string(order);
  std::string s = "group";
  if (group.has_factorization())
    for (int n : group.factor_orders()) s += " " + std::to_string(n);
  else
    s += " order " + std::to_string(group.order());
  return s;
}

std::string to_string(Predicate p) {
  switch (p) {
    case Predicate::pn: return "pn";
    case Predicate::bent: return "bent";
    case Predicate::difference_set: return "difference-set";
  }
  return "?";
}

std::string to_string(SearchMode m) {
  switch (m) {
    case SearchMode::count: return "count";
    case SearchMode::collect: return "collect";
    case SearchMode::first: return "first";
  }
  return "?";
}

namespace {

void fnv(std::uint64_t& h, std::uint64_t word) {
  for (int i = 0; i < 8; ++i) {
    h ^= (word >> (8 * i)) & 0xffu;
    h *= 0x100000001b3ull;
  }
}

}  // namespace

std::uint64_t instance_hash(const GSet& xs) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const Group& g = xs.group();
  fnv(h, g.order());
  fnv(h, xs.size());
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b) fnv(h, g.mul(a, b));
  for (Elem a = 0; a < g.order(); ++a)
    for (Point x = 0; x < xs.size(); ++x) fnv(h, xs.act(a, x));
  return h;
}

std::optional<std::uint64_t> candidate_count(const GSet& xs, const Codomain& c) {
  std::uint64_t total = 1;
  const std::uint64_t b = c.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (b != 0 && total > std::numeric_limits<std::uint64_t>::max() / b) return std::nullopt;
    total *= b;
  }
  return total;
}

namespace {

bool fourier_ready(const Group& g) { return g.is_abelian() && g.has_factorization(); }

void require_budget(const GSet& xs, const Codomain& c, std::uint64_t budget) {
  const auto total = candidate_count(xs, c);
  if (!total || *total > budget) {
    std::ostringstream msg;
    msg << "search space " << c.size() << "^" << xs.size() << " exceeds the budget of " << budget
        << " candidates";
    throw BudgetExceeded(msg.str(), total ? *total : std::numeric_limits<unsigned long long>::max());
  }
}

// Per-worker predicate state; shares only immutable data.
class Evaluator {
 public:
  Evaluator(const SearchSpec& spec, const DualSet* dual)
      : spec_(spec), xs_(spec.instance), dual_(dual) {
    if (spec.predicate == Predicate::bent) tester_.emplace(spec.codomain.order);
  }

  bool operator()(const Candidate& c, std::uint64_t& disagreements) {
    switch (spec_.predicate) {
      case Predicate::pn: {
        const bool hit = pn_counting_holds(xs_, spec_.codomain.group, c, scratch32_);
        if (hit && spec_.confirm_spectral && dual_ && fourier_ready(spec_.codomain.group)) {
          const GroupValuedFunction f{spec_.codomain.group, Candidate(c)};
          if (!is_pn_spectral(xs_, *dual_, f)) ++disagreements;
        }
        return hit;
      }
      case Predicate::bent: {
        exps_.assign(c.begin(), c.end());
        const bool hit = bent_derivative_holds(xs_, *tester_, exps_, counts_, scratch_);
        if (hit && spec_.confirm_spectral && dual_) {
          const auto f = CircleValuedFunction::roots(spec_.codomain.order, exps_);
          if (!is_bent_spectral_exact(xs_, *dual_, f)) ++disagreements;
        }
        return hit;
      }
      case Predicate::difference_set: {
        PointSubset d(xs_.size());
        for (Point x = 0; x < c.size(); ++x)
          if (c[x]) d.insert(x);
        if (d.empty()) return false;
        const auto ell = xs_.group().order() > 1 ? static_cast<long long>(xs_.image_intersection(1, d, d)) : 0;
        const bool hit = has_difference_counts(xs_, d, ell);
        if (hit && spec_.confirm_spectral) {
          const auto other = dual_ ? is_difference_set(xs_, d, DsMethod::spectral, dual_)
                                   : is_difference_set(xs_, d, DsMethod::algebra);
          if (!other || other->lambda != ell) ++disagreements;
        }
        return hit;
      }
    }
    return false;
  }

 private:
  const SearchSpec& spec_;
  const GSet& xs_;
  const DualSet* dual_;
  std::optional<RootSumTester> tester_;
  std::vector<std::uint32_t> scratch32_;
  std::vector<long long> exps_, counts_, scratch_;
};

struct ShardResult {
  bool done = false;
  std::uint64_t matches = 0;
  std::uint64_t examined = 0;
  std::uint64_t disagreements = 0;
  std::vector<std::uint64_t> by_leading;
  std::vector<Candidate> witnesses;
};

std::string checkpoint_key(const SearchSpec& spec, std::size_t fixed_digits) {
  std::ostringstream key;
  key << std::hex << instance_hash(spec.instance) << std::dec << "|" << spec.codomain.describe() << "|"
      << to_string(spec.predicate) << "|" << to_string(spec.mode) << "|" << fixed_digits << "|"
      << spec.witness_limit << "|" << spec.confirm_spectral;
  return key.str();
}

void load_checkpoint(const std::string& path, const std::string& key, std::vector<ShardResult>& shards) {
  std::ifstream in(path);
  if (!in) return;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("unreadable checkpoint " + path + ": " + e.what());
  }
  if (j.value("key", std::string{}) != key)
    throw InvalidInput("checkpoint " + path + " belongs to a different search");
  for (const auto& s : j.at("shards")) {
    const auto id = s.at("id").get<std::size_t>();
    if (id >= shards.size()) throw InvalidInput("checkpoint shard id out of range");
    ShardResult& r = shards[id];
    r.done = true;
    r.matches = s.at("matches").get<std::uint64_t>();
    r.examined = s.at("examined").get<std::uint64_t>();
    r.disagreements = s.value("disagreements", std::uint64_t{0});
    r.by_leading = s.at("by_leading").get<std::vector<std::uint64_t>>();
    r.witnesses = s.at("witnesses").get<std::vector<Candidate>>();
  }
}

void save_checkpoint(const std::string& path, const std::string& key, const std::vector<ShardResult>& shards) {
  nlohmann::json j;
  j["format"] = "gsetpn-checkpoint-1";
  j["key"] = key;
  j["shards"] = nlohmann::json::array();
  for (std::size_t id = 0; id < shards.size(); ++id) {
    const auto& r = shards[id];
    if (!r.done) continue;
    j["shards"].push_back({{"id", id},
                           {"matches", r.matches},
                           {"examined", r.examined},
                           {"disagreements", r.disagreements},
                           {"by_leading", r.by_leading},
                           {"witnesses", r.witnesses}});
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw InvalidInput("cannot write checkpoint " + tmp);
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

CensusReport enumerate(const SearchSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  const GSet& xs = spec.instance;
  const std::size_t v = xs.size();
  const std::uint32_t base = static_cast<std::uint32_t>(spec.codomain.size());
  if (base == 0) throw InvalidInput("empty codomain");
  if (spec.shard_count == 0) throw InvalidInput("shard count must be positive");
  switch (spec.predicate) {
    case Predicate::pn:
      if (spec.codomain.kind != Codomain::Kind::group) throw InvalidInput("the pn predicate needs a group codomain");
      break;
    case Predicate::bent:
      if (spec.codomain.kind != Codomain::Kind::roots)
        throw InvalidInput("the bent predicate needs a roots-of-unity codomain");
      break;
    case Predicate::difference_set:
      if (base != 2) throw InvalidInput("the difference-set predicate needs a two-element codomain");
      break;
  }
  require_budget(xs, spec.codomain, spec.budget);

  std::optional<DualSet> dual;
  if (spec.confirm_spectral && fourier_ready(xs.group())) dual.emplace(build_normalized_dual(xs));

  std::size_t fixed = 0;
  std::uint64_t shard_total = 1;
  while (shard_total < spec.shard_count && fixed < v) {
    shard_total *= base;
    ++fixed;
  }

  CensusReport report;
  report.total_candidates = *candidate_count(xs, spec.codomain);
  report.fixed_digits = fixed;
  report.matches_by_leading_value.assign(v > 0 ? base : 1, 0);

  std::vector<ShardResult> shards(shard_total);
  const std::string key = checkpoint_key(spec, fixed);
  if (spec.checkpoint_path) load_checkpoint(*spec.checkpoint_path, key, shards);

  const bool first_mode = spec.mode == SearchMode::first;
  const std::size_t keep = spec.mode == SearchMode::count ? 0
                           : first_mode                   ? 1
                           : spec.witness_limit == 0      ? std::numeric_limits<std::size_t>::max()
                                                          : spec.witness_limit;

  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::vector<std::size_t> pending;
  for (std::size_t id = 0; id < shard_total; ++id) {
    if (shards[id].done) {
      ++report.resumed_shards;
      if (first_mode && !shards[id].witnesses.empty()) best = std::min<std::size_t>(best, id);
    } else {
      pending.push_back(id);
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex save_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run_shard = [&](std::size_t id, Evaluator& eval) {
    ShardResult r;
    r.by_leading.assign(report.matches_by_leading_value.size(), 0);
    Candidate c(v, 0);
    std::uint64_t rest = id;
    for (std::size_t i = fixed; i-- > 0;) {
      c[i] = static_cast<std::uint32_t>(rest % base);
      rest /= base;
    }
    bool aborted = false;
    for (;;) {
      if (first_mode && (r.examined & 0xfff) == 0 && best.load() < id) {
        aborted = true;
        break;
      }
      ++r.examined;
      if (eval(c, r.disagreements)) {
        ++r.matches;
        ++r.by_leading[v > 0 ? c[0] : 0];
        if (r.witnesses.size() < keep) r.witnesses.push_back(c);
        if (first_mode) {
          std::size_t cur = best.load();
          while (id < cur && !best.compare_exchange_weak(cur, id)) {
          }
          break;
        }
      }
      std::size_t i = v;
      bool carried = true;
      while (i > fixed && carried) {
        --i;
        carried = ++c[i] == base;
        if (carried) c[i] = 0;
      }
      if (carried) break;
    }
    if (aborted) return;
    r.done = true;
    std::lock_guard lock(save_mutex);
    shards[id] = std::move(r);
    if (spec.checkpoint_path) save_checkpoint(*spec.checkpoint_path, key, shards);
  };

  auto worker = [&]() {
    try {
      Evaluator eval(spec, dual ? &*dual : nullptr);
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= pending.size()) break;
        const std::size_t id = pending[k];
        if (first_mode && best.load() < id) continue;
        run_shard(id, eval);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  std::size_t workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::max<std::size_t>(1, std::min(workers, pending.size()));
  report.workers = workers;
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  report.per_shard_matches.assign(shard_total, 0);
  for (std::size_t id = 0; id < shard_total; ++id) {
    const auto& r = shards[id];
    report.examined += r.examined;
    report.spectral_disagreements += r.disagreements;
    report.per_shard_matches[id] = r.matches;
    if (first_mode) continue;
    report.matches += r.matches;
    for (std::size_t b = 0; b < r.by_leading.size(); ++b) report.matches_by_leading_value[b] += r.by_leading[b];
    for (const auto& w : r.witnesses)
      if (report.witnesses.size() < keep) report.witnesses.push_back(w);
  }
  if (first_mode) {
    const std::size_t b = best.load();
    if (b < shard_total) {
      const Candidate& w = shards[b].witnesses.front();
      report.witnesses.push_back(w);
      report.matches = 1;
      ++report.matches_by_leading_value[v > 0 ? w[0] : 0];
    }
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<Discrepancy> cross_validate(const GSet& xs, const Codomain& codomain,
                                        const CrossValidateOptions& options) {
  require_budget(xs, codomain, options.budget);
  std::optional<DualSet> own;
  const DualSet* dual = options.dual;
  if (!dual && fourier_ready(xs.group())) dual = &own.emplace(build_normalized_dual(xs));

  std::vector<Discrepancy> out;
  auto report = [&](const Candidate& c, std::string detail) {
    out.push_back({c, std::move(detail)});
    return options.max_discrepancies != 0 && out.size() >= options.max_discrepancies;
  };

  const std::size_t v = xs.size();
  const auto base = static_cast<std::uint32_t>(codomain.size());
  const bool group_ok = codomain.kind == Codomain::Kind::group;
  const bool spectral_pn = dual && fourier_ready(codomain.group);
  const long long vv = static_cast<long long>(v);

  Candidate c(v, 0);
  for (;;) {
    if (group_ok) {
      const GroupValuedFunction f{codomain.group, Candidate(c)};
      const PNVerdict verdict = check_pn(xs, f, spectral_pn ? dual : nullptr, options.tolerance);
      for (const auto& [method, ok] : verdict.per_method)
        if (ok != verdict.is_pn &&
            report(c, method + " says " + (ok ? "PN" : "not PN") + ", counting says " +
                          (verdict.is_pn ? "PN" : "not PN")))
          return out;

      if (codomain.group.order() == 2) {
        const PointSubset d = f.level_set(1);
        const bool ds_form = vv % 4 == 0 && has_difference_counts(xs, d, static_cast<long long>(d.size()) - vv / 4);
        if (ds_form != verdict.is_pn &&
            report(c, "f^{-1}(1) being a (v, k, k - v/4) difference set disagrees with PN"))
          return out;
        if (!d.empty()) {
          const auto counting = is_difference_set(xs, d, DsMethod::counting);
          const auto algebra = is_difference_set(xs, d, DsMethod::algebra);
          if (counting != algebra && report(c, "difference set: counting and group algebra disagree")) return out;
          if (dual) {
            const auto spectral = is_difference_set(xs, d, DsMethod::spectral, dual, options.tolerance);
            if (counting != spectral && report(c, "difference set: counting and spectral disagree")) return out;
          }
        }
      }
    } else {
      const auto f = CircleValuedFunction::roots(codomain.order, std::vector<long long>(c.begin(), c.end()));
      const bool deriv = is_bent(xs, nullptr, f, BentMethod::derivative, options.tolerance);
      const auto raw = CircleValuedFunction::raw(std::vector<Complex>(f.values().begin(), f.values().end()));
      const bool deriv_float = is_bent(xs, nullptr, raw, BentMethod::derivative, options.tolerance);
      if (deriv != deriv_float && report(c, "exact and floating derivative bent checks disagree")) return out;
      if (dual) {
        const bool spec_exact = is_bent(xs, dual, f, BentMethod::spectral, options.tolerance);
        const bool spec_float = is_bent(xs, dual, raw, BentMethod::spectral, options.tolerance);
        if (spec_exact != deriv && report(c, "spectral and derivative bent checks disagree")) return out;
        if (spec_float != spec_exact && report(c, "exact and floating spectral bent checks disagree")) return out;
      }
    }

    std::size_t i = v;
    bool carried = true;
    while (i > 0 && carried) {
      --i;
      carried = ++c[i] == base;
      if (carried) c[i] = 0;
    }
    if (carried) break;
  }
  return out;
}

}  // namespace gsetpn
