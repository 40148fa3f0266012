#include "gsetpn/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gsetpn/error.hpp"

namespace gsetpn {

namespace {

void require_same_size(const GSet& xs, std::size_t n) {
  if (n != xs.size()) throw InvalidInput("function length does not match |X|");
}

void require_fourier_groups(const GSet& xs, const Group* target) {
  const Group& g = xs.group();
  if (!g.is_abelian() || !g.has_factorization())
    throw UnsupportedGroup("spectral verifiers need an abelian acting group given by cyclic factors");
  if (target && (!target->is_abelian() || !target->has_factorization()))
    throw UnsupportedGroup("spectral verifiers need an abelian target group given by cyclic factors");
}

}  // namespace

GroupValuedFunction derivative(const GSet& xs, const GroupValuedFunction& f, Elem alpha) {
  require_same_size(xs, f.size());
  GroupValuedFunction d{f.target, std::vector<Elem>(f.size())};
  for (Point x = 0; x < f.size(); ++x)
    d.values[x] = f.target.mul(f.values[xs.act(alpha, x)], f.target.inv(f.values[x]));
  return d;
}

CircleValuedFunction derivative(const GSet& xs, const CircleValuedFunction& f, Elem alpha) {
  require_same_size(xs, f.size());
  if (f.exact()) {
    std::vector<long long> e(f.size());
    for (Point x = 0; x < f.size(); ++x) e[x] = f.exponents()[xs.act(alpha, x)] - f.exponents()[x];
    return CircleValuedFunction::roots(f.order(), std::move(e));
  }
  std::vector<Complex> vals(f.size());
  for (Point x = 0; x < f.size(); ++x) {
    const Complex z = f[xs.act(alpha, x)] * std::conj(f[x]);
    vals[x] = z / std::abs(z);
  }
  return CircleValuedFunction::raw(std::move(vals));
}

std::vector<std::vector<std::size_t>> derivative_counts(const GSet& xs, const GroupValuedFunction& f) {
  require_same_size(xs, f.size());
  const Group& h = f.target;
  std::vector<std::vector<std::size_t>> counts(xs.group().order(), std::vector<std::size_t>(h.order(), 0));
  for (Elem a = 0; a < xs.group().order(); ++a)
    for (Point x = 0; x < f.size(); ++x) ++counts[a][h.mul(f.values[xs.act(a, x)], h.inv(f.values[x]))];
  return counts;
}

bool PNVerdict::consistent() const {
  return std::all_of(per_method.begin(), per_method.end(), [&](const auto& kv) { return kv.second == is_pn; });
}

PNVerdict is_pn_counting(const GSet& xs, const GroupValuedFunction& f) {
  require_same_size(xs, f.size());
  PNVerdict verdict;
  const std::size_t hn = f.target.order();
  verdict.divisible = xs.size() % hn == 0;
  if (!verdict.divisible) {
    verdict.per_method["counting"] = false;
    return verdict;
  }
  const std::size_t want = xs.size() / hn;
  const auto counts = derivative_counts(xs, f);
  for (Elem a = 1; a < counts.size() && !verdict.witness; ++a)
    for (Elem s = 0; s < hn; ++s)
      if (counts[a][s] != want) {
        verdict.witness = PNWitness{a, s, counts[a][s]};
        break;
      }
  verdict.is_pn = !verdict.witness.has_value();
  verdict.per_method["counting"] = verdict.is_pn;
  return verdict;
}

bool pn_counting_holds(const GSet& xs, const Group& target, std::span<const Elem> f,
                       std::vector<std::uint32_t>& scratch) {
  const std::size_t v = xs.size();
  const std::size_t hn = target.order();
  if (v % hn != 0) return false;
  const std::size_t want = v / hn;
  scratch.resize(hn);
  for (Elem a = 1; a < xs.group().order(); ++a) {
    std::fill(scratch.begin(), scratch.end(), 0u);
    for (Point x = 0; x < v; ++x) {
      const Elem s = target.mul(f[xs.act(a, x)], target.inv(f[x]));
      if (++scratch[s] > want) return false;
    }
  }
  return true;
}

std::vector<PointSubset> level_sets(const GroupValuedFunction& f) {
  std::vector<PointSubset> sets(f.target.order(), PointSubset(f.size()));
  for (Point x = 0; x < f.size(); ++x) sets[f.values[x]].insert(x);
  return sets;
}

namespace {

void require_partition(const GSet& xs, const Group& target, std::span<const PointSubset> family) {
  if (family.size() != target.order()) throw InvalidInput("family must have one set per element of H");
  std::vector<int> hits(xs.size(), 0);
  for (const auto& s : family) {
    if (s.universe() != xs.size()) throw InvalidInput("family set over the wrong universe");
    for (Point x : s.points()) ++hits[x];
  }
  if (std::any_of(hits.begin(), hits.end(), [](int c) { return c != 1; }))
    throw InvalidInput("family sets are not a partition of X");
}

bool family_sums_hold(const GSet& xs, const Group& target, std::span<const PointSubset> family,
                      Elem first_sigma) {
  require_partition(xs, target, family);
  const std::size_t hn = target.order();
  if (xs.size() % hn != 0) return false;
  const std::size_t want = xs.size() / hn;
  for (Elem a = 1; a < xs.group().order(); ++a) {
    std::vector<PointSubset> moved;
    moved.reserve(hn);
    for (const auto& s : family) moved.push_back(xs.image(a, s));
    for (Elem s = first_sigma; s < hn; ++s) {
      std::size_t total = 0;
      for (Elem h = 0; h < hn; ++h) total += moved[h].intersection_size(family[target.mul(s, h)]);
      if (total != want) return false;
    }
  }
  return true;
}

}  // namespace

bool is_related_difference_family(const GSet& xs, const Group& target, std::span<const PointSubset> family) {
  return family_sums_hold(xs, target, family, 1);
}

bool is_related_difference_family_all_sigma(const GSet& xs, const Group& target,
                                            std::span<const PointSubset> family) {
  return family_sums_hold(xs, target, family, 0);
}

bool is_pn_spectral(const GSet& xs, const DualSet& dual, const GroupValuedFunction& f, double tolerance) {
  require_same_size(xs, f.size());
  require_fourier_groups(xs, &f.target);
  if (xs.size() % f.target.order() != 0) return false;
  const double v = static_cast<double>(xs.size());
  const double target = v * v / static_cast<double>(xs.group().order());
  const auto xis = characters(f.target);
  std::vector<Complex> g(f.size());
  for (std::size_t xi = 1; xi < xis.size(); ++xi) {
    for (Point x = 0; x < f.size(); ++x) g[x] = xis[xi].value(f.values[x]);
    const auto spectrum = fourier(g, dual);
    for (std::size_t psi = 1; psi < dual.character_count(); ++psi) {
      double sum = 0.0;
      for (auto i : dual.block(psi)) sum += std::norm(spectrum[i]);
      if (std::abs(sum - target) > tolerance * v) return false;
    }
  }
  return true;
}

bool is_relative_difference_set_of_graph(const GSet& xs, const GroupValuedFunction& f) {
  require_same_size(xs, f.size());
  const Group& h = f.target;
  const std::size_t hn = h.order();
  if (xs.size() % hn != 0) return false;
  const std::size_t want = xs.size() / hn;
  // Points of X x H are numbered x * |H| + h.
  std::vector<bool> in_r(xs.size() * hn, false);
  std::vector<std::pair<Point, Elem>> r;
  for (Point x = 0; x < f.size(); ++x) {
    in_r[x * hn + f.values[x]] = true;
    r.emplace_back(x, f.values[x]);
  }
  for (Elem a = 1; a < xs.group().order(); ++a)
    for (Elem s = 0; s < hn; ++s) {
      std::size_t meet = 0;
      for (const auto& [x, hv] : r) meet += in_r[xs.act(a, x) * hn + h.mul(s, hv)];
      if (meet != want) return false;
    }
  return true;
}

PNVerdict check_pn(const GSet& xs, const GroupValuedFunction& f, const DualSet* dual, double tolerance) {
  PNVerdict verdict = is_pn_counting(xs, f);
  const auto sets = level_sets(f);
  verdict.per_method["related_family"] = is_related_difference_family(xs, f.target, sets);
  verdict.per_method["relative_difference_set"] = is_relative_difference_set_of_graph(xs, f);
  const bool fourier_ok = xs.group().is_abelian() && xs.group().has_factorization() &&
                          f.target.is_abelian() && f.target.has_factorization();
  if (dual && fourier_ok) verdict.per_method["spectral"] = is_pn_spectral(xs, *dual, f, tolerance);
  return verdict;
}

std::optional<long long> partitioned_family_constant(const GSet& xs, std::span<const PointSubset> sets) {
  std::optional<long long> ell;
  if (xs.group().order() == 1) return 0;
  for (Elem a = 1; a < xs.group().order(); ++a) {
    long long total = 0;
    for (const auto& s : sets) total += static_cast<long long>(xs.image_intersection(a, s, s));
    if (ell && *ell != total) return std::nullopt;
    ell = total;
  }
  return ell;
}

std::vector<double> bent_block_sums(const DualSet& dual, const CircleValuedFunction& f) {
  const auto spectrum = fourier(f.values(), dual);
  std::vector<double> sums(dual.character_count(), 0.0);
  for (std::size_t psi = 0; psi < sums.size(); ++psi)
    for (auto i : dual.block(psi)) sums[psi] += std::norm(spectrum[i]);
  return sums;
}

bool is_bent_spectral_exact(const GSet& xs, const DualSet& dual, const CircleValuedFunction& f) {
  require_same_size(xs, f.size());
  if (!f.exact()) throw InvalidInput("exact spectral check needs a root-of-unity function");
  const int m = f.order();
  const int l = dual.phase_modulus();
  const int big = std::lcm(m, l);
  const long long g = static_cast<long long>(xs.group().order());
  const long long v = static_cast<long long>(xs.size());
  long long den_lcm = 1;
  for (const auto& lam : dual.members()) den_lcm = std::lcm(den_lcm, lam.denominator);

  // sum_lambda (num/den) |z_lambda|^2 = v^2/g, scaled by g * den_lcm.
  for (std::size_t psi = 0; psi < dual.character_count(); ++psi) {
    CyclotomicInt total(big);
    for (auto i : dual.block(psi)) {
      const auto& lam = dual.member(i);
      CyclotomicInt z(big);
      for (Point x = 0; x < xs.size(); ++x)
        if (lam.phase[x] >= 0) z.add_root(f.exponents()[x] * (big / m) + lam.phase[x] * (big / l));
      CyclotomicInt n2 = z * z.conj();
      n2 *= lam.numerator * g * (den_lcm / lam.denominator);
      total += n2;
    }
    total.add_integer(-v * v * den_lcm);
    if (!total.is_zero()) return false;
  }
  return true;
}

bool bent_derivative_holds(const GSet& xs, const RootSumTester& tester, std::span<const long long> exponents,
                           std::vector<long long>& counts, std::vector<long long>& scratch) {
  const int m = tester.modulus();
  counts.resize(m);
  for (Elem a = 1; a < xs.group().order(); ++a) {
    std::fill(counts.begin(), counts.end(), 0);
    for (Point x = 0; x < xs.size(); ++x) {
      long long d = (exponents[xs.act(a, x)] - exponents[x]) % m;
      if (d < 0) d += m;
      ++counts[d];
    }
    if (!tester.vanishes(counts, scratch)) return false;
  }
  return true;
}

bool is_bent_derivative_exact(const GSet& xs, const CircleValuedFunction& f) {
  require_same_size(xs, f.size());
  if (!f.exact()) throw InvalidInput("exact derivative check needs a root-of-unity function");
  RootSumTester tester(f.order());
  std::vector<long long> counts, scratch;
  return bent_derivative_holds(xs, tester, f.exponents(), counts, scratch);
}

bool is_bent(const GSet& xs, const DualSet* dual, const CircleValuedFunction& f, BentMethod method,
             double tolerance) {
  require_same_size(xs, f.size());
  const double v = static_cast<double>(xs.size());
  if (method == BentMethod::derivative) {
    if (f.exact()) return is_bent_derivative_exact(xs, f);
    for (Elem a = 1; a < xs.group().order(); ++a) {
      Complex s = 0.0;
      for (Point x = 0; x < f.size(); ++x) s += f[xs.act(a, x)] * std::conj(f[x]);
      if (std::abs(s) > tolerance * v) return false;
    }
    return true;
  }
  require_fourier_groups(xs, nullptr);
  if (!dual) throw InvalidInput("spectral bent check needs a dual set");
  if (f.exact()) return is_bent_spectral_exact(xs, *dual, f);
  const double target = v * v / static_cast<double>(xs.group().order());
  const auto sums = bent_block_sums(*dual, f);
  return std::all_of(sums.begin(), sums.end(), [&](double s) { return std::abs(s - target) <= tolerance * v; });
}

bool has_difference_counts(const GSet& xs, const PointSubset& d, long long ell) {
  for (Elem a = 1; a < xs.group().order(); ++a)
    if (static_cast<long long>(xs.image_intersection(a, d, d)) != ell) return false;
  return true;
}

GroupAlgebraElement difference_algebra_element(const GSet& xs, const PointSubset& d) {
  GroupAlgebraElement total(xs.group().order());
  const auto pts = d.points();
  for (Point x : pts)
    for (Point y : pts) total += transporter(xs, x, y);
  return total;
}

std::optional<DifferenceSetParams> is_difference_set(const GSet& xs, const PointSubset& d, DsMethod method,
                                                     const DualSet* dual, double tolerance) {
  if (d.universe() != xs.size()) throw InvalidInput("subset universe does not match the G-set");
  const std::size_t k = d.size();
  DifferenceSetParams params{xs.size(), k, 0};
  if (method != DsMethod::counting && k == 0)
    throw InvalidInput("algebra and spectral difference-set checks need a nonempty set");
  if (xs.group().order() == 1) return params;

  switch (method) {
    case DsMethod::counting: {
      const long long ell = static_cast<long long>(xs.image_intersection(1, d, d));
      if (!has_difference_counts(xs, d, ell)) return std::nullopt;
      params.lambda = ell;
      return params;
    }
    case DsMethod::algebra: {
      const auto form = is_mu_plus_gamma_form(difference_algebra_element(xs, d));
      if (!form || form->mu + form->gamma != static_cast<long long>(k)) return std::nullopt;
      params.lambda = form->gamma;
      return params;
    }
    case DsMethod::spectral: {
      require_fourier_groups(xs, nullptr);
      std::optional<DualSet> own;
      if (!dual) dual = &own.emplace(build_normalized_dual(xs));
      const double ratio = static_cast<double>(xs.group().order()) / static_cast<double>(xs.size());
      std::optional<double> k_minus_ell;
      for (std::size_t psi = 1; psi < dual->character_count(); ++psi) {
        double sum = 0.0;
        for (auto i : dual->block(psi)) sum += std::norm(lambda_set_sum(dual->member(i), d));
        const double kl = sum * ratio;
        if (k_minus_ell && std::abs(kl - *k_minus_ell) > tolerance) return std::nullopt;
        if (!k_minus_ell) k_minus_ell = kl;
      }
      const double rounded = std::round(*k_minus_ell);
      if (std::abs(*k_minus_ell - rounded) > tolerance) return std::nullopt;
      params.lambda = static_cast<long long>(k) - static_cast<long long>(rounded);
      return params;
    }
  }
  return std::nullopt;
}

std::optional<bool> complement_relation_check(const GSet& xs, const PointSubset& d) {
  const PointSubset dc = d.complement();
  if (dc.empty()) return std::nullopt;
  const long long k = static_cast<long long>(d.size());
  const long long kc = static_cast<long long>(dc.size());
  if (xs.group().order() == 1) return true;

  std::optional<long long> w;
  bool uniform = true;
  for (Elem a = 1; a < xs.group().order() && uniform; ++a) {
    const auto cross = static_cast<long long>(xs.image_intersection(a, d, dc));
    if (w && *w != cross) uniform = false;
    w = cross;
  }
  const auto ds = is_difference_set(xs, d, DsMethod::counting);
  const auto dsc = is_difference_set(xs, dc, DsMethod::counting);
  if (!uniform) return !ds && !dsc;
  return ds && dsc && ds->lambda == k - *w && dsc->lambda == kc - *w;
}

TwoValuedVerdict classify_two_valued(const GSet& xs, const GroupValuedFunction& f) {
  require_same_size(xs, f.size());
  const std::set<Elem> image(f.values.begin(), f.values.end());
  if (image.size() != 2) throw InvalidInput("function must take exactly two values");
  const Elem h1 = *image.begin();
  const PointSubset s1 = f.level_set(h1);
  const auto v = static_cast<long long>(xs.size());
  const auto k1 = static_cast<long long>(s1.size());
  const std::size_t hn = f.target.order();

  TwoValuedVerdict out;
  if (hn == 2 && v % 4 == 0 && has_difference_counts(xs, s1, k1 - v / 4))
    out.verdict = TwoValuedCase::pn_case_i;
  else if (hn == 3 && v % 3 == 0 && has_difference_counts(xs, s1, k1 - v / 3))
    out.verdict = TwoValuedCase::pn_case_ii;
  out.agrees_with_counting = (out.verdict != TwoValuedCase::not_pn) == is_pn_counting(xs, f).is_pn;
  return out;
}

std::optional<RegularPNParameters> regular_pn_parameters(long long v) {
  if (v <= 0 || v % 4 != 0) return std::nullopt;
  const long long quarter = v / 4;
  auto u = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(quarter))));
  while (u * u > quarter) --u;
  while ((u + 1) * (u + 1) <= quarter) ++u;
  if (u * u != quarter) return std::nullopt;
  return RegularPNParameters{u, {2 * u * u + u, 2 * u * u - u}, {u * (u + 1), u * (u - 1)}};
}

std::string to_string(TwoValuedCase c) {
  switch (c) {
    case TwoValuedCase::not_pn: return "not_pn";
    case TwoValuedCase::pn_case_i: return "pn_case_i";
    case TwoValuedCase::pn_case_ii: return "pn_case_ii";
  }
  return "?";
}

std::string to_string(DsMethod m) {
  switch (m) {
    case DsMethod::counting: return "counting";
    case DsMethod::algebra: return "algebra";
    case DsMethod::spectral: return "spectral";
  }
  return "?";
}

std::string to_string(BentMethod m) {
  return m == BentMethod::spectral ? "spectral" : "derivative";
}

}  // namespace gsetpn
