#include "gsetpn/dual.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gsetpn/error.hpp"

namespace gsetpn {

double DualFunction::scale() const {
  return std::sqrt(static_cast<double>(numerator) / static_cast<double>(denominator));
}

DualSet::DualSet(const GSet& xs, std::vector<DualFunction> members)
    : members_(std::move(members)),
      characters_(gsetpn::characters(xs.group())),
      point_count_(xs.size()),
      phase_modulus_(xs.group().exponent()) {
  blocks_.resize(characters_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto psi = members_[i].character;
    if (psi >= characters_.size()) throw InvalidInput("dual member refers to an unknown character");
    if (members_[i].values.size() != point_count_)
      throw InvalidInput("dual member has the wrong number of values");
    blocks_[psi].push_back(i);
  }
}

DualSet build_normalized_dual(const GSet& xs) {
  const Group& g = xs.group();
  if (!g.is_abelian() || !g.has_factorization())
    throw UnsupportedGroup("normalized dual sets need an abelian group given by cyclic factors");
  const auto chars = characters(g);
  const long long v = static_cast<long long>(xs.size());
  const int modulus = g.exponent();

  std::vector<DualFunction> members;
  for (std::size_t j = 0; j < xs.orbit_count(); ++j) {
    const auto orb = xs.orbit(j);
    const Point x0 = orb.front();
    // For each point of the orbit, one a with a x0 = x.
    std::vector<Elem> mover(xs.size(), 0);
    std::vector<bool> seen(xs.size(), false);
    for (Elem a = 0; a < g.order(); ++a) {
      const Point x = xs.act(a, x0);
      if (!seen[x]) {
        seen[x] = true;
        mover[x] = a;
      }
    }
    const auto stab = xs.stabilizer(j);
    for (std::size_t c = 0; c < chars.size(); ++c) {
      const auto& psi = chars[c];
      if (!std::all_of(stab.begin(), stab.end(), [&](Elem n) { return psi.phase(n) == 0; })) continue;
      DualFunction lam;
      lam.support_orbit = j;
      lam.base_point = x0;
      lam.character = c;
      lam.numerator = v;
      lam.denominator = static_cast<long long>(orb.size());
      lam.phase.assign(xs.size(), -1);
      lam.values.assign(xs.size(), Complex{0.0, 0.0});
      const double s = lam.scale();
      for (Point x : orb) {
        const long long ph = psi.phase(g.inv(mover[x]));
        lam.phase[x] = ph;
        lam.values[x] = s * root_of_unity(ph, modulus);
      }
      members.push_back(std::move(lam));
    }
  }
  return DualSet(xs, std::move(members));
}

namespace {

Complex inner(const DualFunction& a, const DualFunction& b) {
  Complex s = 0.0;
  for (std::size_t x = 0; x < a.values.size(); ++x) s += a.values[x] * std::conj(b.values[x]);
  return s;
}

}  // namespace

std::vector<std::string> validate_dual(const GSet& xs, const DualSet& dual, double tolerance) {
  std::vector<std::string> problems;
  auto report = [&](const std::string& msg) { problems.push_back(msg); };
  const Group& g = xs.group();
  const auto& chars = dual.characters();
  const double v = static_cast<double>(xs.size());
  const auto members = dual.members();

  if (members.size() != xs.size())
    report("dual set has " + std::to_string(members.size()) + " members, expected |X| = " +
           std::to_string(xs.size()));

  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t k = i; k < members.size(); ++k) {
      const Complex ip = inner(members[i], members[k]);
      const double want = (i == k) ? v : 0.0;
      if (std::abs(ip - want) > tolerance)
        report("<lambda_" + std::to_string(i) + ", lambda_" + std::to_string(k) + "> = " +
               std::to_string(ip.real()) + (ip.imag() >= 0 ? "+" : "") + std::to_string(ip.imag()) +
               "i, expected " + std::to_string(want));
    }

  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& lam = members[i];
    const auto& psi = chars[lam.character];
    const std::string name = "lambda_" + std::to_string(i);

    for (Elem a = 0; a < g.order(); ++a) {
      bool ok = true;
      for (Point x = 0; x < xs.size() && ok; ++x)
        ok = std::abs(lam.values[xs.act(g.inv(a), x)] - psi.value(a) * lam.values[x]) <= tolerance;
      if (!ok) {
        report(name + " is not psi-linear for its character at a = " + g.element_name(a));
        break;
      }
    }

    bool has_conj = false;
    for (const auto& other : members) {
      bool same = true;
      for (std::size_t x = 0; x < xs.size() && same; ++x)
        same = std::abs(other.values[x] - std::conj(lam.values[x])) <= tolerance;
      if (same) {
        has_conj = true;
        break;
      }
    }
    if (!has_conj) report(name + " has no complex conjugate in the dual set");

    std::vector<std::size_t> supports;
    for (std::size_t j = 0; j < xs.orbit_count(); ++j) {
      const auto orb = xs.orbit(j);
      if (std::any_of(orb.begin(), orb.end(), [&](Point x) { return std::abs(lam.values[x]) > tolerance; }))
        supports.push_back(j);
    }
    if (supports.size() != 1) {
      report(name + " is nonzero on " + std::to_string(supports.size()) + " orbits, expected exactly one");
      continue;
    }
    const auto orb = xs.orbit(supports.front());
    const double mag = std::sqrt(v / static_cast<double>(orb.size()));
    for (Point x : orb)
      if (std::abs(std::abs(lam.values[x]) - mag) > tolerance) {
        report(name + " has |lambda(x)| != sqrt(|X|/|X_j|) at x = " + std::to_string(x));
        break;
      }
    if (!psi.is_principal()) {
      Complex total = 0.0;
      for (auto val : lam.values) total += val;
      if (std::abs(total) > tolerance) report(name + " has nonzero lambda(X)^+ for a non-principal character");
    }
  }

  // Per (orbit, psi) counts, using the numerically determined support.
  std::map<std::pair<std::size_t, std::size_t>, int> count;
  for (const auto& lam : members) {
    for (std::size_t j = 0; j < xs.orbit_count(); ++j) {
      const auto orb = xs.orbit(j);
      if (std::any_of(orb.begin(), orb.end(), [&](Point x) { return std::abs(lam.values[x]) > tolerance; }))
        ++count[{j, lam.character}];
    }
  }
  for (std::size_t j = 0; j < xs.orbit_count(); ++j) {
    const auto stab = xs.stabilizer(j);
    for (std::size_t c = 0; c < chars.size(); ++c) {
      const int n = count[{j, c}];
      const bool contained =
          std::all_of(stab.begin(), stab.end(), [&](Elem e) { return chars[c].phase(e) == 0; });
      std::ostringstream where;
      where << "orbit " << j << ", character " << c;
      if (n > 1) report(where.str() + ": more than one supported member");
      if ((n > 0) != contained)
        report(where.str() + ": supported member exists iff N_j is in ker psi fails");
      if (chars[c].is_principal() && n != 1)
        report(where.str() + ": expected exactly one principal member");
    }
  }
  return problems;
}

std::vector<Complex> fourier(std::span<const Complex> f, const DualSet& dual) {
  if (f.size() != dual.point_count()) throw InvalidInput("function length does not match |X|");
  std::vector<Complex> out;
  out.reserve(dual.size());
  for (const auto& lam : dual.members()) {
    Complex s = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) s += f[x] * lam.values[x];
    out.push_back(s);
  }
  return out;
}

Complex lambda_set_sum(const DualFunction& lambda, const PointSubset& d) {
  Complex s = 0.0;
  for (Point x : d.points()) s += lambda.values.at(x);
  return s;
}

std::pair<Complex, Complex> second_orthogonality_check(const GSet& xs, const DualSet& dual,
                                                       std::size_t psi, Point x, Point y) {
  Complex lhs = 0.0;
  for (auto i : dual.block(psi)) {
    const auto& lam = dual.member(i);
    lhs += lam(x) * std::conj(lam(y));
  }
  const double ratio = static_cast<double>(xs.size()) / static_cast<double>(xs.group().order());
  const Complex rhs = ratio * transporter(xs, x, y).evaluate(dual.characters()[psi]);
  return {lhs, rhs};
}

std::pair<Complex, Complex> subset_orthogonality_check(const GSet& xs, const DualSet& dual,
                                                       std::size_t psi, const PointSubset& c,
                                                       const PointSubset& d) {
  Complex lhs = 0.0;
  for (auto i : dual.block(psi)) {
    const auto& lam = dual.member(i);
    lhs += lambda_set_sum(lam, c) * std::conj(lambda_set_sum(lam, d));
  }
  GroupAlgebraElement total(xs.group().order());
  for (Point x : c.points())
    for (Point y : d.points()) total += transporter(xs, x, y);
  const double ratio = static_cast<double>(xs.size()) / static_cast<double>(xs.group().order());
  return {lhs, ratio * total.evaluate(dual.characters()[psi])};
}

}  // namespace gsetpn
