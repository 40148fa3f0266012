#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "gsetpn/constructions.hpp"
#include "gsetpn/dual.hpp"
#include "gsetpn/error.hpp"
#include "gsetpn/nonlinearity.hpp"
#include "gsetpn/search.hpp"
#include "io.hpp"

namespace gsetpn::cli {

using nlohmann::json;

namespace {

constexpr double kUnitCircleTolerance = 1e-12;

struct Common {
  std::string json_path;
  double tolerance = kSpectralTolerance;
};

std::string hex64(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::string fmt(double x, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << (std::abs(x) < 1e-12 ? 0.0 : x);
  return s.str();
}

std::string fmt(Complex z) {
  std::ostringstream s;
  const double re = std::abs(z.real()) < 1e-12 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag();
  s << std::setprecision(6) << re << (im < 0 ? "-" : "+") << std::abs(im) << "i";
  return s.str();
}

std::string points_text(std::span<const Point> pts) {
  std::string s = "{";
  for (Point x : pts) s += (s.size() > 1 ? " " : "") + std::to_string(x);
  return s + "}";
}

std::string elements_text(const Group& g, std::span<const Elem> es) {
  std::string s = "{";
  for (Elem e : es) s += (s.size() > 1 ? " " : "") + g.element_name(e);
  return s + "}";
}

json base_report(const std::string& command, const Common& common) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["tolerances"] = {{"spectral", common.tolerance}, {"unit_circle", kUnitCircleTolerance}};
  return j;
}

json instance_json(const Instance& inst) {
  return {{"label", inst.label},
          {"hash", hex64(instance_hash(inst.xs))},
          {"points", inst.xs.size()},
          {"group", group_description(inst.xs.group())},
          {"orbits", inst.xs.orbit_count()}};
}

void print_instance(std::ostream& out, const Instance& inst) {
  out << "instance: " << inst.label << " (|X| = " << inst.xs.size() << ", G = " << group_description(inst.xs.group())
      << ", " << inst.xs.orbit_count() << " orbits)\n";
}

void write_report(const Common& common, const json& j) {
  if (common.json_path.empty()) return;
  std::ofstream f(common.json_path);
  if (!f) throw InvalidInput("cannot write report " + common.json_path);
  f << j.dump(2) << "\n";
}

bool fourier_ready(const Group& g) { return g.is_abelian() && g.has_factorization(); }

std::string character_name(const Character& psi) {
  std::string s = "psi(";
  for (std::size_t i = 0; i < psi.exponents().size(); ++i) s += (i ? "," : "") + std::to_string(psi.exponents()[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path, const Common& common, std::ostream& out) {
  const Instance inst = read_instance(path);
  print_instance(out, inst);
  out << "action axioms: ok\n";
  json j = base_report("validate", common);
  j["instance"] = instance_json(inst);
  j["characterizations"] = json::array({"identity axiom", "compatibility axiom", "permutation check"});
  j["verdict"] = true;
  write_report(common, j);
  return 0;
}

int cmd_orbits(const std::string& path, const Common& common, std::ostream& out) {
  const Instance inst = read_instance(path);
  print_instance(out, inst);
  const Group& g = inst.xs.group();
  json orbits = json::array();
  for (std::size_t j = 0; j < inst.xs.orbit_count(); ++j) {
    const auto orb = inst.xs.orbit(j);
    const auto stab = inst.xs.stabilizer(j);
    out << "orbit " << j << ": " << points_text(orb) << "  size " << orb.size() << "  stabilizer "
        << elements_text(g, stab) << "\n";
    json names = json::array();
    for (Elem e : stab) names.push_back(g.element_name(e));
    orbits.push_back({{"points", std::vector<Point>(orb.begin(), orb.end())}, {"stabilizer", names}});
  }
  json j = base_report("orbits", common);
  j["instance"] = instance_json(inst);
  j["orbits"] = orbits;
  j["verdict"] = true;
  write_report(common, j);
  return 0;
}

int cmd_dual(const std::string& path, const Common& common, std::ostream& out) {
  const Instance inst = read_instance(path);
  print_instance(out, inst);
  const DualSet dual = build_normalized_dual(inst.xs);
  json members = json::array();
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const auto& lam = dual.member(i);
    out << "lambda_" << i << ": orbit " << lam.support_orbit << ", " << character_name(dual.characters()[lam.character])
        << ", scale sqrt(" << lam.numerator << "/" << lam.denominator << ")\n   ";
    json vals = json::array();
    for (Point x = 0; x < inst.xs.size(); ++x) {
      out << " " << fmt(lam.values[x]);
      vals.push_back({lam.values[x].real(), lam.values[x].imag()});
    }
    out << "\n";
    members.push_back({{"orbit", lam.support_orbit},
                       {"character", dual.characters()[lam.character].exponents()},
                       {"values", vals}});
  }
  const auto problems = validate_dual(inst.xs, dual, common.tolerance);
  for (const auto& p : problems) out << "violation: " << p << "\n";
  out << "dual set axioms: " << (problems.empty() ? "ok" : "violated") << "\n";
  json j = base_report("dual", common);
  j["instance"] = instance_json(inst);
  j["characterizations"] = json::array({"orthogonality", "psi-linearity", "conjugation closure", "single support",
                                        "magnitude sqrt(|X|/|X_j|)", "zero sums", "existence iff N_j in ker psi"});
  j["members"] = members;
  j["violations"] = problems;
  j["verdict"] = problems.empty();
  write_report(common, j);
  return problems.empty() ? 0 : 1;
}

int cmd_fourier(const std::string& ipath, const std::string& fpath, std::size_t xi_index, const Common& common,
                std::ostream& out) {
  const Instance inst = read_instance(ipath);
  print_instance(out, inst);
  const FunctionData fd = read_function(fpath, inst.xs.size());
  CircleValuedFunction f = CircleValuedFunction::roots(1, {});
  if (fd.kind == FunctionData::Kind::group) {
    const auto g = fd.as_group();
    const auto xis = characters(g.target);
    if (xi_index >= xis.size()) throw InvalidInput("--xi is not a character index of the codomain");
    f = compose(xis[xi_index], g);
    out << "transforming xi o f with xi = " << character_name(xis[xi_index]) << "\n";
  } else {
    f = fd.as_circle();
  }
  const DualSet dual = build_normalized_dual(inst.xs);
  const auto spectrum = fourier(f.values(), dual);
  json coeffs = json::array();
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    out << "f^(lambda_" << i << ") = " << fmt(spectrum[i]) << "  |.|^2 = " << fmt(std::norm(spectrum[i])) << "\n";
    coeffs.push_back({spectrum[i].real(), spectrum[i].imag()});
  }
  const auto sums = bent_block_sums(dual, f);
  json blocks = json::array();
  for (std::size_t psi = 0; psi < sums.size(); ++psi) {
    out << "block " << character_name(dual.characters()[psi]) << ": " << fmt(sums[psi]) << "\n";
    blocks.push_back(sums[psi]);
  }
  double parseval = 0;
  for (double s : sums) parseval += s;
  out << "sum over all blocks: " << fmt(parseval) << " (|X|^2 = " << inst.xs.size() * inst.xs.size() << ")\n";
  json j = base_report("fourier", common);
  j["instance"] = instance_json(inst);
  j["coefficients"] = coeffs;
  j["block_sums"] = blocks;
  j["verdict"] = true;
  write_report(common, j);
  return 0;
}

int cmd_check_pn(const std::string& ipath, const std::string& fpath, const Common& common, std::ostream& out,
                 std::ostream& err) {
  const Instance inst = read_instance(ipath);
  print_instance(out, inst);
  const GroupValuedFunction f = read_function(fpath, inst.xs.size()).as_group();
  const Group& g = inst.xs.group();
  const Group& h = f.target;
  std::optional<DualSet> dual;
  if (fourier_ready(g)) dual.emplace(build_normalized_dual(inst.xs));
  const PNVerdict verdict = check_pn(inst.xs, f, dual ? &*dual : nullptr, common.tolerance);

  out << "codomain: " << group_description(h) << "\n";
  static const std::map<std::string, std::string> names{
      {"counting", "derivative counting"},
      {"related_family", "related difference family of level sets"},
      {"relative_difference_set", "relative difference set (graph of f)"},
      {"spectral", "spectral (normalized dual set)"}};
  json methods = json::object();
  for (const auto& [m, ok] : verdict.per_method) {
    out << "  " << std::left << std::setw(42) << names.at(m) << (ok ? "PN" : "not PN") << "\n";
    methods[m] = ok;
  }
  const auto counts = derivative_counts(inst.xs, f);
  const bool divisible = verdict.divisible;
  out << "derivative counts |f'_a^{-1}(s)|";
  if (divisible) out << " (PN needs " << inst.xs.size() / h.order() << " everywhere)";
  else out << " (|H| does not divide |X|)";
  out << "\n";
  json table = json::array();
  for (Elem a = 1; a < g.order(); ++a) {
    out << "  a = " << std::left << std::setw(10) << g.element_name(a);
    json row = json::object();
    for (Elem s = 0; s < h.order(); ++s) {
      out << " " << point_value(h, s) << ":" << counts[a][s];
      row[point_value(h, s)] = counts[a][s];
    }
    out << "\n";
    table.push_back({{"alpha", g.element_name(a)}, {"counts", row}});
  }
  if (verdict.witness)
    out << "witness: a = " << g.element_name(verdict.witness->alpha) << ", s = " << point_value(h, verdict.witness->sigma)
        << ", count " << verdict.witness->count << "\n";
  else if (!divisible)
    out << "witness: |H| = " << h.order() << " does not divide |X| = " << inst.xs.size() << "\n";
  if (!verdict.consistent()) err << "warning: PN characterizations disagree\n";
  out << "verdict: " << (verdict.is_pn ? "PN" : "not PN") << "\n";

  json j = base_report("check-pn", common);
  j["instance"] = instance_json(inst);
  j["codomain"] = group_description(h);
  j["characterizations"] = methods;
  j["derivative_counts"] = table;
  j["expected_count"] = divisible ? json(inst.xs.size() / h.order()) : json(nullptr);
  j["consistent"] = verdict.consistent();
  if (verdict.witness)
    j["witness"] = {{"alpha", g.element_name(verdict.witness->alpha)},
                    {"sigma", point_value(h, verdict.witness->sigma)},
                    {"count", verdict.witness->count}};
  j["verdict"] = verdict.is_pn;
  write_report(common, j);
  return verdict.is_pn ? 0 : 1;
}

int cmd_check_bent(const std::string& ipath, const std::string& fpath, const Common& common, std::ostream& out,
                   std::ostream& err) {
  const Instance inst = read_instance(ipath);
  print_instance(out, inst);
  const CircleValuedFunction f = read_function(fpath, inst.xs.size()).as_circle();
  const Group& g = inst.xs.group();
  const double v = static_cast<double>(inst.xs.size());

  out << "values: " << (f.exact() ? "roots of unity of order " + std::to_string(f.order()) + " (exact checks)"
                                  : std::string("raw angles (tolerance checks)"))
      << "\n";
  json methods = json::object();
  std::optional<std::string> witness;

  const bool by_derivative = is_bent(inst.xs, nullptr, f, BentMethod::derivative, common.tolerance);
  methods["derivative"] = by_derivative;
  out << "  derivative balance                        " << (by_derivative ? "bent" : "not bent") << "\n";
  json deriv = json::array();
  for (Elem a = 1; a < g.order(); ++a) {
    Complex s = 0;
    for (Point x = 0; x < inst.xs.size(); ++x) s += f[inst.xs.act(a, x)] * std::conj(f[x]);
    out << "    a = " << std::left << std::setw(10) << g.element_name(a) << " sum f'_a = " << fmt(s) << "\n";
    deriv.push_back({{"alpha", g.element_name(a)}, {"sum", {s.real(), s.imag()}}});
    if (!witness && std::abs(s) > common.tolerance * v) witness = "f'_a is not balanced at a = " + g.element_name(a);
  }

  json blocks = json::array();
  if (fourier_ready(g)) {
    const DualSet dual = build_normalized_dual(inst.xs);
    const bool by_spectrum = is_bent(inst.xs, &dual, f, BentMethod::spectral, common.tolerance);
    methods["spectral"] = by_spectrum;
    const double target = v * v / static_cast<double>(g.order());
    out << "  spectral blocks (target |X|^2/|G| = " << fmt(target) << ")   " << (by_spectrum ? "bent" : "not bent")
        << "\n";
    const auto sums = bent_block_sums(dual, f);
    for (std::size_t psi = 0; psi < sums.size(); ++psi) {
      out << "    " << character_name(dual.characters()[psi]) << ": " << fmt(sums[psi], 10) << "\n";
      blocks.push_back(sums[psi]);
      if (!witness && std::abs(sums[psi] - target) > common.tolerance * v)
        witness = "block " + character_name(dual.characters()[psi]) + " sums to " + fmt(sums[psi]);
    }
    if (by_spectrum != by_derivative) err << "warning: bent characterizations disagree\n";
  }
  if (!by_derivative && witness) out << "witness: " << *witness << "\n";
  out << "verdict: " << (by_derivative ? "bent" : "not bent") << "\n";

  json j = base_report("check-bent", common);
  j["instance"] = instance_json(inst);
  j["exact"] = f.exact();
  j["characterizations"] = methods;
  j["derivative_sums"] = deriv;
  j["block_sums"] = blocks;
  if (!by_derivative && witness) j["witness"] = *witness;
  j["verdict"] = by_derivative;
  write_report(common, j);
  return by_derivative ? 0 : 1;
}

int cmd_check_ds(const std::string& ipath, const std::string& spath, const Common& common, std::ostream& out,
                 std::ostream& err) {
  const Instance inst = read_instance(ipath);
  print_instance(out, inst);
  const PointSubset d = read_subset(spath, inst.xs.size());
  const Group& g = inst.xs.group();
  out << "subset: " << points_text(d.points()) << " (k = " << d.size() << ")\n";

  json methods = json::object();
  std::optional<DifferenceSetParams> result = is_difference_set(inst.xs, d, DsMethod::counting);
  methods["counting"] = result.has_value();
  out << "  counting |aD cap D|                       " << (result ? "difference set" : "no") << "\n";
  if (!d.empty()) {
    const auto alg = is_difference_set(inst.xs, d, DsMethod::algebra);
    methods["algebra"] = alg.has_value();
    out << "  group algebra (mu + gamma G^+ form)       " << (alg ? "difference set" : "no") << "\n";
    if (alg != result) err << "warning: counting and group-algebra verdicts disagree\n";
    if (fourier_ready(g)) {
      const auto spec = is_difference_set(inst.xs, d, DsMethod::spectral, nullptr, common.tolerance);
      methods["spectral"] = spec.has_value();
      out << "  spectral (lambda(D)^+ sums)               " << (spec ? "difference set" : "no") << "\n";
      if (spec != result) err << "warning: counting and spectral verdicts disagree\n";
    }
  }
  json counts = json::object();
  out << "  |aD cap D|:";
  for (Elem a = 1; a < g.order(); ++a) {
    const auto c = inst.xs.image_intersection(a, d, d);
    out << " " << g.element_name(a) << ":" << c;
    counts[g.element_name(a)] = c;
  }
  out << "\n";
  json j = base_report("check-ds", common);
  j["instance"] = instance_json(inst);
  j["subset"] = d.points();
  j["characterizations"] = methods;
  j["intersections"] = counts;
  if (result) {
    out << "parameters: (v, k, lambda) = (" << result->v << ", " << result->k << ", " << result->lambda << ")\n";
    j["parameters"] = {result->v, result->k, result->lambda};
  } else {
    for (Elem a = 2; a < g.order(); ++a)
      if (inst.xs.image_intersection(a, d, d) != inst.xs.image_intersection(1, d, d)) {
        out << "witness: |aD cap D| differs between a = " << g.element_name(1) << " and a = " << g.element_name(a)
            << "\n";
        j["witness"] = {g.element_name(1), g.element_name(a)};
        break;
      }
  }
  out << "verdict: " << (result ? "difference set" : "not a difference set") << "\n";
  j["verdict"] = result.has_value();
  write_report(common, j);
  return result ? 0 : 1;
}

int cmd_check_rdf(const std::string& ipath, const std::string& rpath, const Common& common, std::ostream& out) {
  const Instance inst = read_instance(ipath);
  print_instance(out, inst);
  const FamilyData fam = read_family(rpath, inst.xs.size());
  const Group& g = inst.xs.group();
  const Group& h = fam.target;
  const bool ok = is_related_difference_family(inst.xs, h, fam.sets);

  GroupValuedFunction f{h, std::vector<Elem>(inst.xs.size(), 0)};
  for (Elem e = 0; e < h.order(); ++e)
    for (Point x : fam.sets[e].points()) f.values[x] = e;
  const bool pn = is_pn_counting(inst.xs, f).is_pn;

  out << "codomain: " << group_description(h) << "\n";
  json sums = json::array();
  std::optional<std::string> witness;
  const std::size_t want = inst.xs.size() % h.order() == 0 ? inst.xs.size() / h.order() : 0;
  for (Elem a = 1; a < g.order(); ++a)
    for (Elem s = 1; s < h.order(); ++s) {
      std::size_t total = 0;
      for (Elem e = 0; e < h.order(); ++e)
        total += inst.xs.image_intersection(a, fam.sets[e], fam.sets[h.mul(s, e)]);
      out << "  a = " << g.element_name(a) << ", s = " << point_value(h, s) << ": " << total << "\n";
      sums.push_back({{"alpha", g.element_name(a)}, {"sigma", point_value(h, s)}, {"sum", total}});
      if (!witness && total != want)
        witness = "a = " + g.element_name(a) + ", s = " + point_value(h, s) + " gives " + std::to_string(total);
    }
  out << "  related difference family                 " << (ok ? "yes" : "no") << "\n";
  out << "  induced function PN by counting           " << (pn ? "yes" : "no") << "\n";
  if (!ok && witness) out << "witness: " << *witness << "\n";
  out << "verdict: " << (ok ? "related difference family" : "not a related difference family") << "\n";

  json j = base_report("check-rdf", common);
  j["instance"] = instance_json(inst);
  j["codomain"] = group_description(h);
  j["characterizations"] = {{"related_family", ok}, {"counting", pn}};
  j["sums"] = sums;
  if (!ok && witness) j["witness"] = *witness;
  j["verdict"] = ok;
  write_report(common, j);
  return ok ? 0 : 1;
}

void save_outputs(const Instance& inst, const std::string& fn_out, const std::string& inst_out,
                  const std::function<void(std::ostream&)>& write_fn, std::ostream& out) {
  if (!inst_out.empty()) {
    std::ofstream f(inst_out);
    if (!f) throw InvalidInput("cannot write " + inst_out);
    write_instance(f, inst);
    out << "instance written to " << inst_out << "\n";
  }
  if (!fn_out.empty()) {
    std::ofstream f(fn_out);
    if (!f) throw InvalidInput("cannot write " + fn_out);
    write_fn(f);
    out << "function written to " << fn_out << "\n";
  } else {
    write_fn(out);
  }
}

int cmd_construct_pn(const std::string& c2, const std::string& klein, bool balanced, const std::string& fn_out,
                     const std::string& inst_out, const Common& common, std::ostream& out) {
  if (c2.empty() == klein.empty()) throw InvalidInput("construct-pn needs exactly one of --c2 or --klein");
  json j = base_report("construct-pn", common);
  std::optional<Instance> inst;
  std::optional<GroupValuedFunction> f;
  std::string how;
  if (!c2.empty()) {
    const auto rs = parse_count_list(c2, 2, "--c2");
    inst.emplace(Instance{"c2 " + c2, c2_gset(rs[0], rs[1])});
    j["parameters"] = {{"r", rs[0]}, {"s", rs[1]}};
    if (!exists_pn_c2(rs[0], rs[1])) {
      out << "no PN function exists: needs 2r >= s and 4 | 2r + s\n";
      j["verdict"] = false;
      j["reason"] = "2r >= s and 4 | 2r + s fails";
      write_report(common, j);
      return 1;
    }
    f = construct_pn_c2(rs[0], rs[1], balanced);
    how = "split the lowest " + std::to_string((2 * rs[0] + rs[1]) / 4) + " two-orbits";
  } else {
    const auto c = parse_count_list(klein, 5, "--klein");
    inst.emplace(Instance{"klein " + klein, klein_gset(c[0], c[1], c[2], c[3], c[4])});
    j["parameters"] = {{"p", c[0]}, {"q", c[1]}, {"r", c[2]}, {"s", c[3]}, {"t", c[4]}};
    const auto plan = exists_pn_klein_general(c[0], c[1], c[2], c[3], c[4]);
    if (!plan) {
      out << "no PN function exists for this Klein instance\n";
      j["verdict"] = false;
      j["reason"] = "no counting plan and no PN function on the non-free part";
      write_report(common, j);
      return 1;
    }
    f = construct_pn_klein_general(*plan);
    if (plan->path == KleinPlanPath::counting_plan) {
      std::ostringstream s;
      s << "counting plan k0=" << plan->k0 << " k1=" << plan->k1 << " k2=" << plan->k2 << " k3=" << plan->k3
        << " p1=" << plan->p1 << " q1=" << plan->q1 << " r1=" << plan->r1;
      how = s.str();
      j["plan"] = {{"path", "counting_plan"}, {"k0", plan->k0}, {"k1", plan->k1}, {"k2", plan->k2},
                   {"k3", plan->k3},          {"p1", plan->p1}, {"q1", plan->q1}, {"r1", plan->r1}};
    } else {
      how = "PN function on the non-free part, odd on every free orbit";
      j["plan"] = {{"path", "non_free_part"}};
    }
  }
  print_instance(out, *inst);
  out << "construction: " << how << "\n";
  std::optional<DualSet> dual;
  if (fourier_ready(inst->xs.group())) dual.emplace(build_normalized_dual(inst->xs));
  const PNVerdict verdict = check_pn(inst->xs, *f, dual ? &*dual : nullptr, common.tolerance);
  json methods = json::object();
  for (const auto& [m, ok] : verdict.per_method) {
    out << "  verified by " << m << ": " << (ok ? "PN" : "not PN") << "\n";
    methods[m] = ok;
  }
  save_outputs(*inst, fn_out, inst_out, [&](std::ostream& o) { write_function(o, *f); }, out);
  j["instance"] = instance_json(*inst);
  j["construction"] = how;
  j["characterizations"] = methods;
  std::vector<std::string> values;
  for (Elem e : f->values) values.push_back(point_value(f->target, e));
  j["function"] = values;
  const bool ok = verdict.is_pn && verdict.consistent();
  j["verdict"] = ok;
  write_report(common, j);
  return ok ? 0 : 1;
}

int cmd_construct_bent(const std::string& klein, int block, int pattern, const std::string& fn_out,
                       const std::string& inst_out, const Common& common, std::ostream& out) {
  json j = base_report("construct-bent", common);
  std::optional<Instance> inst;
  std::optional<CircleValuedFunction> f;
  std::string how;
  const UnitValue one = UnitValue::root(1, 0);
  if (block == 6) {
    inst.emplace(Instance{"klein 1,1,1", klein_gset(1, 1, 1, 0, 0)});
    f = construct_bent_klein_6({one, one, one});
    how = "six-point block with c_i = 1 and d_i = (-1 + sqrt(-3))/2";
  } else if (block == 8) {
    inst.emplace(Instance{"klein 2,1,1", klein_gset(2, 1, 1, 0, 0)});
    f = construct_bent_klein_8({one, one, one, one}, pattern);
    how = "eight-point block, pattern " + std::to_string(pattern) + ", c_i = 1";
  } else if (block != 0) {
    throw InvalidInput("--block takes 6 or 8");
  } else {
    if (klein.empty()) throw InvalidInput("construct-bent needs --klein p,q,r or --block 6|8");
    const auto c = parse_count_list(klein, 3, "--klein");
    j["parameters"] = {{"p", c[0]}, {"q", c[1]}, {"r", c[2]}};
    if (!exists_bent_klein(c[0], c[1], c[2])) {
      out << "no bent function exists: needs p + q + r <= 4 min{p, q, r}\n";
      j["verdict"] = false;
      j["reason"] = "p + q + r <= 4 min{p, q, r} fails";
      write_report(common, j);
      return 1;
    }
    inst.emplace(Instance{"klein " + klein, klein_gset(c[0], c[1], c[2], 0, 0)});
    f = construct_bent_klein(c[0], c[1], c[2]);
    const auto fams = bent_family_partition(c[0], c[1], c[2]);
    how = std::to_string(fams.size()) + (fams.size() == 1 ? " family" : " families") + " of six- and eight-point blocks";
  }
  print_instance(out, *inst);
  out << "construction: " << how << "\n";
  const DualSet dual = build_normalized_dual(inst->xs);
  const bool by_derivative = is_bent(inst->xs, nullptr, *f, BentMethod::derivative, common.tolerance);
  const bool by_spectrum = is_bent(inst->xs, &dual, *f, BentMethod::spectral, common.tolerance);
  out << "  verified by derivative: " << (by_derivative ? "bent" : "not bent") << "\n";
  out << "  verified by spectral: " << (by_spectrum ? "bent" : "not bent") << "\n";
  const auto sums = bent_block_sums(dual, *f);
  for (std::size_t psi = 0; psi < sums.size(); ++psi)
    out << "  block " << character_name(dual.characters()[psi]) << ": " << fmt(sums[psi], 10) << "\n";
  save_outputs(*inst, fn_out, inst_out, [&](std::ostream& o) { write_function(o, *f); }, out);
  j["instance"] = instance_json(*inst);
  j["construction"] = how;
  j["characterizations"] = {{"derivative", by_derivative}, {"spectral", by_spectrum}};
  j["block_sums"] = sums;
  j["function"] = {{"roots_order", f->order()},
                   {"exponents", std::vector<long long>(f->exponents().begin(), f->exponents().end())}};
  const bool ok = by_derivative && by_spectrum;
  j["verdict"] = ok;
  write_report(common, j);
  return ok ? 0 : 1;
}

struct SearchArgs {
  std::string instance;
  bool pn = false, bent = false, ds = false;
  std::string predicate;
  std::string codomain;
  std::string mode = "count";
  std::size_t shards = 1;
  std::size_t workers = 0;
  std::uint64_t budget = 0;
  std::size_t witnesses = 16;
  std::string checkpoint;
  bool no_confirm = false;
};

std::string value_text(const Codomain& c, std::uint32_t v) {
  return c.kind == Codomain::Kind::group ? point_value(c.group, v) : std::to_string(v);
}

int cmd_search(const SearchArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  const int flags = a.pn + a.bent + a.ds + !a.predicate.empty();
  if (flags != 1) throw InvalidInput("search needs exactly one predicate: --pn, --bent, --ds or --predicate");
  Predicate pred = Predicate::pn;
  if (a.bent || a.predicate == "bent") pred = Predicate::bent;
  else if (a.ds || a.predicate == "difference-set" || a.predicate == "ds") pred = Predicate::difference_set;
  else if (!a.pn && a.predicate != "pn") throw InvalidInput("unknown predicate '" + a.predicate + "'");

  const Instance inst = read_instance(a.instance);
  SearchMode mode = SearchMode::count;
  if (a.mode == "collect") mode = SearchMode::collect;
  else if (a.mode == "first") mode = SearchMode::first;
  else if (a.mode != "count") throw InvalidInput("--mode takes count, collect or first");

  const std::string cod_text = !a.codomain.empty() ? a.codomain : pred == Predicate::bent ? "roots:12" : "f2";
  SearchSpec spec{.instance = inst.xs,
                  .codomain = parse_codomain(cod_text),
                  .predicate = pred,
                  .mode = mode,
                  .shard_count = a.shards,
                  .workers = a.workers,
                  .budget = a.budget ? a.budget : default_budget(),
                  .witness_limit = a.witnesses,
                  .confirm_spectral = !a.no_confirm,
                  .checkpoint_path = a.checkpoint.empty() ? std::nullopt : std::optional<std::string>(a.checkpoint)};

  print_instance(out, inst);
  out << "search: " << to_string(pred) << " over " << spec.codomain.describe() << ", mode " << to_string(mode) << "\n";
  if (pred == Predicate::bent)
    out << "note: values are restricted to roots of unity of order " << spec.codomain.order
        << "; a zero count does not rule out other points of the circle\n";

  json j = base_report("search", common);
  j["instance"] = instance_json(inst);
  CensusReport rep;
  try {
    rep = enumerate(spec);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (needs a budget of at least " << e.required() << ")\n";
    j["error"] = e.what();
    j["required_budget"] = e.required();
    write_report(common, j);
    return 2;
  }

  out << "candidates: " << rep.total_candidates << "\n";
  out << "matches: " << rep.matches << (mode == SearchMode::first ? " (stopped at the first witness)" : "") << "\n";
  for (const auto& w : rep.witnesses) {
    out << "  witness:";
    for (auto x : w) out << " " << value_text(spec.codomain, x);
    out << "\n";
  }
  if (rep.spectral_disagreements) err << "warning: " << rep.spectral_disagreements << " spectral disagreements\n";
  out << "elapsed: " << fmt(rep.elapsed_seconds, 4) << " s, " << rep.per_shard_matches.size() << " shards, "
      << rep.workers << " workers\n";

  std::vector<std::vector<std::string>> wit;
  for (const auto& w : rep.witnesses) {
    std::vector<std::string> row;
    for (auto x : w) row.push_back(value_text(spec.codomain, x));
    wit.push_back(row);
  }
  json characterizations = json::array();
  if (pred == Predicate::pn) characterizations = {"derivative counting", "spectral re-check of matches"};
  if (pred == Predicate::bent) characterizations = {"exact derivative balance", "exact spectral re-check of matches"};
  if (pred == Predicate::difference_set)
    characterizations = {"intersection counting", "spectral or group-algebra re-check of matches"};
  if (a.no_confirm) characterizations = json::array({characterizations[0]});
  j["characterizations"] = characterizations;
  j["search"] = {{"predicate", to_string(pred)},
                 {"codomain", spec.codomain.describe()},
                 {"mode", to_string(mode)},
                 {"witness_limit", spec.witness_limit},
                 {"total_candidates", rep.total_candidates},
                 {"matches", rep.matches},
                 {"matches_by_leading_value", rep.matches_by_leading_value},
                 {"witnesses", wit},
                 {"spectral_disagreements", rep.spectral_disagreements}};
  if (pred == Predicate::bent) j["search"]["discretization"] = "roots of unity of order " + std::to_string(spec.codomain.order);
  j["run"] = {{"elapsed_seconds", rep.elapsed_seconds},
              {"shard_count_requested", a.shards},
              {"fixed_digits", rep.fixed_digits},
              {"shards", rep.per_shard_matches.size()},
              {"per_shard_matches", rep.per_shard_matches},
              {"workers", rep.workers},
              {"examined", rep.examined},
              {"resumed_shards", rep.resumed_shards}};
  j["verdict"] = rep.matches > 0;
  write_report(common, j);
  return rep.matches > 0 ? 0 : 1;
}

int cmd_cross_validate(const std::string& ipath, const std::string& codomain, std::uint64_t budget,
                       const Common& common, std::ostream& out) {
  const Instance inst = read_instance(ipath);
  print_instance(out, inst);
  const Codomain c = parse_codomain(codomain.empty() ? "f2" : codomain);
  CrossValidateOptions opts;
  opts.budget = budget ? budget : default_budget();
  opts.tolerance = common.tolerance;
  const auto found = cross_validate(inst.xs, c, opts);
  out << "codomain: " << c.describe() << ", candidates: " << *candidate_count(inst.xs, c) << "\n";
  json list = json::array();
  for (const auto& d : found) {
    out << "discrepancy:";
    for (auto x : d.candidate) out << " " << value_text(c, x);
    out << "  " << d.detail << "\n";
    list.push_back({{"candidate", d.candidate}, {"detail", d.detail}});
  }
  out << "verdict: " << (found.empty() ? "all characterizations agree" : "discrepancies found") << "\n";
  json j = base_report("cross-validate", common);
  j["instance"] = instance_json(inst);
  j["codomain"] = c.describe();
  j["characterizations"] = c.kind == Codomain::Kind::group
                               ? json::array({"derivative counting", "related difference family",
                                              "relative difference set", "spectral", "difference set methods"})
                               : json::array({"exact derivative", "floating derivative", "exact spectral",
                                              "floating spectral"});
  j["discrepancies"] = list;
  j["verdict"] = found.empty();
  write_report(common, j);
  return found.empty() ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect nonlinear and bent functions on finite group actions", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--json", common.json_path, "Write a machine-readable JSON report");
    sub->add_option("--tolerance", common.tolerance, "Spectral tolerance")->check(CLI::PositiveNumber);
  };

  std::string inst_path, second_path;
  std::size_t xi_index = 1;

  auto* validate = app.add_subcommand("validate", "Check an instance file against the action axioms");
  validate->add_option("instance", inst_path)->required();
  add_common(validate);

  auto* orbits = app.add_subcommand("orbits", "List orbits and stabilizers");
  orbits->add_option("instance", inst_path)->required();
  add_common(orbits);

  auto* dual = app.add_subcommand("dual", "Print and validate the normalized dual set");
  dual->add_option("instance", inst_path)->required();
  add_common(dual);

  auto* fourier_cmd = app.add_subcommand("fourier", "Fourier transform of a function over the dual set");
  fourier_cmd->add_option("instance", inst_path)->required();
  fourier_cmd->add_option("function", second_path)->required();
  fourier_cmd->add_option("--xi", xi_index, "Character of H applied to group-valued functions");
  add_common(fourier_cmd);

  auto* check_pn_cmd = app.add_subcommand("check-pn", "Decide whether f : X -> H is perfect nonlinear");
  check_pn_cmd->add_option("instance", inst_path)->required();
  check_pn_cmd->add_option("function", second_path)->required();
  add_common(check_pn_cmd);

  auto* check_bent_cmd = app.add_subcommand("check-bent", "Decide whether f : X -> T is bent");
  check_bent_cmd->add_option("instance", inst_path)->required();
  check_bent_cmd->add_option("function", second_path)->required();
  add_common(check_bent_cmd);

  auto* check_ds_cmd = app.add_subcommand("check-ds", "Decide whether a subset is a difference set");
  check_ds_cmd->add_option("instance", inst_path)->required();
  check_ds_cmd->add_option("subset", second_path)->required();
  add_common(check_ds_cmd);

  auto* check_rdf_cmd = app.add_subcommand("check-rdf", "Decide whether a partition is a related difference family");
  check_rdf_cmd->add_option("instance", inst_path)->required();
  check_rdf_cmd->add_option("family", second_path)->required();
  add_common(check_rdf_cmd);

  std::string c2_counts, klein_counts, fn_out, inst_out;
  bool balanced = false;
  auto* cpn = app.add_subcommand("construct-pn", "Construct a PN function into F_2");
  cpn->add_option("--c2", c2_counts, "Order-2 instance r,s");
  cpn->add_option("--klein", klein_counts, "Klein instance p,q,r,s,t");
  cpn->add_flag("--balanced", balanced, "Make f^{-1}(1) half of X (order-2 instances)");
  cpn->add_option("-o,--output", fn_out, "Function file to write");
  cpn->add_option("--instance-out", inst_out, "Instance file to write");
  add_common(cpn);

  int block = 0, pattern = 1;
  auto* cbent = app.add_subcommand("construct-bent", "Construct a bent function on a Klein instance");
  cbent->add_option("--klein", klein_counts, "Two-orbit counts p,q,r");
  cbent->add_option("--block", block, "Single six- or eight-point block");
  cbent->add_option("--pattern", pattern, "Eight-point block pattern 1, 2 or 3");
  cbent->add_option("-o,--output", fn_out, "Function file to write");
  cbent->add_option("--instance-out", inst_out, "Instance file to write");
  add_common(cbent);

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Exhaustive census of PN, bent or difference-set candidates");
  search->add_option("instance", sa.instance)->required();
  search->add_flag("--pn", sa.pn, "Count PN functions");
  search->add_flag("--bent", sa.bent, "Count bent functions");
  search->add_flag("--ds", sa.ds, "Count nonempty difference sets");
  search->add_option("--predicate", sa.predicate, "pn, bent or difference-set");
  search->add_option("--codomain", sa.codomain, "f2, klein, z<n>, group:<n1>,<n2>,... or roots:<m>");
  search->add_option("--mode", sa.mode, "count, collect or first");
  search->add_option("--shards", sa.shards, "Requested shard count")->check(CLI::PositiveNumber);
  search->add_option("--workers", sa.workers, "Worker threads (0 = all cores)");
  search->add_option("--budget", sa.budget, "Candidate budget (default GSETPN_BUDGET or 2^34)");
  search->add_option("--witnesses", sa.witnesses, "Witnesses kept in collect mode (0 = all)");
  search->add_option("--checkpoint", sa.checkpoint, "Checkpoint file for resuming");
  search->add_option("--report", common.json_path, "Write the JSON report");
  search->add_flag("--no-confirm", sa.no_confirm, "Skip the spectral re-check of matches");
  add_common(search);

  std::string cv_codomain;
  std::uint64_t cv_budget = 0;
  auto* cross = app.add_subcommand("cross-validate", "Compare every characterization on every function");
  cross->add_option("instance", inst_path)->required();
  cross->add_option("--codomain", cv_codomain, "f2, klein, z<n>, group:<n1>,<n2>,... or roots:<m>");
  cross->add_option("--budget", cv_budget, "Candidate budget");
  add_common(cross);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(inst_path, common, out);
    if (*orbits) return cmd_orbits(inst_path, common, out);
    if (*dual) return cmd_dual(inst_path, common, out);
    if (*fourier_cmd) return cmd_fourier(inst_path, second_path, xi_index, common, out);
    if (*check_pn_cmd) return cmd_check_pn(inst_path, second_path, common, out, err);
    if (*check_bent_cmd) return cmd_check_bent(inst_path, second_path, common, out, err);
    if (*check_ds_cmd) return cmd_check_ds(inst_path, second_path, common, out, err);
    if (*check_rdf_cmd) return cmd_check_rdf(inst_path, second_path, common, out);
    if (*cpn) return cmd_construct_pn(c2_counts, klein_counts, balanced, fn_out, inst_out, common, out);
    if (*cbent) return cmd_construct_bent(klein_counts, block, pattern, fn_out, inst_out, common, out);
    if (*search) return cmd_search(sa, common, out, err);
    if (*cross) return cmd_cross_validate(inst_path, cv_codomain, cv_budget, common, out);
  } catch (const NoConstruction& e) {
    err << "no construction: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace gsetpn::cli
