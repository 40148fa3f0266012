#include "io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "gsetpn/error.hpp"

namespace gsetpn::cli {

namespace {

struct Line {
  std::size_t number = 0;
  std::string key;   // empty for continuation lines
  std::string rest;
};

class Reader {
 public:
  Reader(std::istream& in, std::string name) : name_(std::move(name)) {
    static const std::regex keyed(R"(^\s*([A-Za-z][A-Za-z0-9_-]*(?:\s+[^:\s]+)?)\s*:(.*)$)");
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
      ++n;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::smatch m;
      if (std::regex_match(raw, m, keyed)) lines_.push_back({n, m[1].str(), m[2].str()});
      else lines_.push_back({n, "", raw});
    }
  }

  const std::vector<Line>& lines() const { return lines_; }

  [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
    throw InvalidInput(name_ + ":" + std::to_string(line) + ": " + msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw InvalidInput(name_ + ": " + msg); }

  std::vector<std::string> tokens(const std::string& text) const {
    std::istringstream ss(text);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
  }

  long long integer(std::size_t line, const std::string& tok) const {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      fail(line, "expected an integer, found '" + tok + "'");
    }
    if (used != tok.size()) fail(line, "expected an integer, found '" + tok + "'");
    return v;
  }

  std::vector<long long> integers(std::size_t line, const std::string& text) const {
    std::vector<long long> out;
    for (const auto& t : tokens(text)) out.push_back(integer(line, t));
    return out;
  }

 private:
  std::string name_;
  std::vector<Line> lines_;
};

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(path + ": cannot open file");
  return in;
}

std::vector<Point> parse_permutation(const Reader& rd, std::size_t line, const std::string& text, std::size_t v) {
  std::string s = text;
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  std::vector<Point> perm(v);
  for (Point x = 0; x < v; ++x) perm[x] = x;
  auto check_point = [&](long long x) {
    if (x < 0 || static_cast<std::size_t>(x) >= v)
      rd.fail(line, "point " + std::to_string(x) + " is outside 0.." + std::to_string(v - 1));
    return static_cast<Point>(x);
  };

  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') rd.fail(line, "one-line permutation must end with ']'");
    const auto images = rd.integers(line, s.substr(1, s.size() - 2));
    if (images.size() != v)
      rd.fail(line, "one-line permutation lists " + std::to_string(images.size()) + " images, expected " +
                        std::to_string(v));
    for (Point x = 0; x < v; ++x) perm[x] = check_point(images[x]);
    return perm;
  }

  std::vector<bool> used(v, false);
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
      continue;
    }
    if (s[pos] != '(') rd.fail(line, "expected '(' or '[' in permutation");
    const auto close = s.find(')', pos);
    if (close == std::string::npos) rd.fail(line, "unclosed cycle");
    std::vector<Point> cycle;
    for (long long x : rd.integers(line, s.substr(pos + 1, close - pos - 1))) {
      const Point p = check_point(x);
      if (used[p]) rd.fail(line, "point " + std::to_string(p) + " appears twice in the cycles");
      used[p] = true;
      cycle.push_back(p);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) perm[cycle[i]] = cycle[(i + 1) % cycle.size()];
    pos = close + 1;
  }
  return perm;
}

std::string cycles(const std::vector<Point>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::string out;
  for (Point x = 0; x < perm.size(); ++x) {
    if (seen[x] || perm[x] == x) continue;
    out += "(";
    for (Point y = x; !seen[y]; y = perm[y]) {
      seen[y] = true;
      out += (out.back() == '(' ? "" : " ") + std::to_string(y);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Elem parse_group_value(const Reader& rd, std::size_t line, const Group& h, std::string tok) {
  if (!tok.empty() && tok.front() == '(') {
    if (tok.back() != ')') rd.fail(line, "unbalanced parentheses in value '" + tok + "'");
    tok = tok.substr(1, tok.size() - 2);
  }
  std::vector<int> res;
  std::stringstream ss(tok);
  for (std::string part; std::getline(ss, part, ',');) res.push_back(static_cast<int>(rd.integer(line, part)));
  const auto factors = h.factor_orders();
  if (res.size() != factors.size())
    rd.fail(line, "value '" + tok + "' has " + std::to_string(res.size()) + " residues, expected " +
                      std::to_string(factors.size()));
  for (std::size_t i = 0; i < res.size(); ++i)
    if (res[i] < 0 || res[i] >= factors[i])
      rd.fail(line, "residue " + std::to_string(res[i]) + " is outside 0.." + std::to_string(factors[i] - 1));
  return h.element(res);
}

std::vector<int> factor_list(const Reader& rd, std::size_t line, const std::string& text) {
  std::vector<int> f;
  for (long long n : rd.integers(line, text)) {
    if (n < 1) rd.fail(line, "cyclic factor orders must be positive");
    f.push_back(static_cast<int>(n));
  }
  if (f.empty()) rd.fail(line, "group needs at least one cyclic factor order");
  return f;
}

// Tokens of a key plus its continuation lines, each with its line number.
std::vector<std::pair<std::size_t, std::string>> gather(const Reader& rd, std::size_t& i) {
  std::vector<std::pair<std::size_t, std::string>> toks;
  const auto& lines = rd.lines();
  for (const auto& t : rd.tokens(lines[i].rest)) toks.emplace_back(lines[i].number, t);
  while (i + 1 < lines.size() && lines[i + 1].key.empty()) {
    ++i;
    for (const auto& t : rd.tokens(lines[i].rest)) toks.emplace_back(lines[i].number, t);
  }
  return toks;
}

}  // namespace

GroupValuedFunction FunctionData::as_group() const {
  if (kind != Kind::group) throw InvalidInput("function file does not have a group codomain");
  return {make_abelian_group(factors), elements};
}

CircleValuedFunction FunctionData::as_circle() const {
  switch (kind) {
    case Kind::roots: return CircleValuedFunction::roots(order, exponents);
    case Kind::angle: {
      std::vector<Complex> vals;
      for (double a : angles) vals.push_back(std::polar(1.0, a));
      return CircleValuedFunction::raw(std::move(vals));
    }
    default: throw InvalidInput("function file does not have a circle codomain");
  }
}

Instance parse_instance(std::istream& in, const std::string& name) {
  Reader rd(in, name);
  std::string label;
  std::optional<GSet> xs;
  std::optional<std::vector<int>> factors;
  std::optional<std::size_t> points;
  std::vector<std::pair<std::size_t, std::string>> gens;
  std::optional<std::pair<std::size_t, std::vector<long long>>> shorthand_klein, shorthand_c2;

  for (const auto& ln : rd.lines()) {
    if (ln.key.empty()) rd.fail(ln.number, "expected 'key: value'");
    if (ln.key == "label") {
      label = ln.rest;
      label.erase(0, label.find_first_not_of(" \t"));
      label.erase(label.find_last_not_of(" \t\r") + 1);
    } else if (ln.key == "group") {
      if (factors) rd.fail(ln.number, "duplicate 'group'");
      factors = factor_list(rd, ln.number, ln.rest);
    } else if (ln.key == "points") {
      const auto v = rd.integers(ln.number, ln.rest);
      if (v.size() != 1 || v[0] < 1) rd.fail(ln.number, "'points' takes one positive integer");
      points = static_cast<std::size_t>(v[0]);
    } else if (ln.key == "gen") {
      gens.emplace_back(ln.number, ln.rest);
    } else if (ln.key == "klein") {
      auto v = rd.integers(ln.number, ln.rest);
      if (v.size() != 5) rd.fail(ln.number, "'klein' takes five counts p q r s t");
      shorthand_klein.emplace(ln.number, v);
    } else if (ln.key == "c2") {
      auto v = rd.integers(ln.number, ln.rest);
      if (v.size() != 2) rd.fail(ln.number, "'c2' takes two counts r s");
      shorthand_c2.emplace(ln.number, v);
    } else {
      rd.fail(ln.number, "unknown key '" + ln.key + "'");
    }
  }

  const auto* shorthand = shorthand_klein ? &*shorthand_klein : shorthand_c2 ? &*shorthand_c2 : nullptr;
  if (shorthand_klein && shorthand_c2) rd.fail(shorthand_c2->first, "'klein' and 'c2' are exclusive");
  try {
    if (shorthand) {
      if (factors || points || !gens.empty())
        rd.fail(shorthand->first, "shorthand instances take no 'group', 'points' or 'gen' lines");
      for (long long n : shorthand->second)
        if (n < 0) rd.fail(shorthand->first, "orbit counts must be nonnegative");
      const auto& c = shorthand->second;
      auto u = [&](int i) { return static_cast<std::size_t>(c[i]); };
      xs = shorthand_klein ? klein_gset(u(0), u(1), u(2), u(3), u(4)) : c2_gset(u(0), u(1));
    } else {
      if (!factors) rd.fail("missing 'group'");
      if (!points) rd.fail("missing 'points'");
      if (gens.size() != factors->size())
        rd.fail("expected " + std::to_string(factors->size()) + " 'gen' lines (one per cyclic factor), found " +
                std::to_string(gens.size()));
      std::vector<std::vector<Point>> perms;
      for (const auto& [line, text] : gens) perms.push_back(parse_permutation(rd, line, text, *points));
      xs = make_gset(make_abelian_group(*factors), *points, perms);
    }
  } catch (const InvalidInput& e) {
    const std::string what = e.what();
    if (what.rfind(name + ":", 0) == 0) throw;
    throw InvalidInput(name + ": " + what);
  } catch (const InvalidAction& e) {
    throw InvalidAction(name + ": " + e.what());
  } catch (const Error& e) {
    throw InvalidInput(name + ": " + e.what());
  }
  if (label.empty()) label = name;
  return Instance{label, std::move(*xs)};
}

Instance read_instance(const std::string& path) {
  auto in = open(path);
  return parse_instance(in, path);
}

FunctionData parse_function(std::istream& in, const std::string& name, std::size_t points) {
  Reader rd(in, name);
  FunctionData fd;
  bool have_codomain = false, have_values = false;
  const auto& lines = rd.lines();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    if (ln.key.empty()) rd.fail(ln.number, "expected 'key: value'");
    if (ln.key == "codomain") {
      const auto t = rd.tokens(ln.rest);
      if (t.empty()) rd.fail(ln.number, "empty codomain");
      if (t[0] == "group") {
        fd.kind = FunctionData::Kind::group;
        std::string rest;
        for (std::size_t k = 1; k < t.size(); ++k) rest += t[k] + " ";
        fd.factors = factor_list(rd, ln.number, rest);
      } else if (t[0] == "roots") {
        if (t.size() != 2) rd.fail(ln.number, "'roots' takes the order m");
        fd.kind = FunctionData::Kind::roots;
        fd.order = static_cast<int>(rd.integer(ln.number, t[1]));
        if (fd.order < 1) rd.fail(ln.number, "root order must be positive");
      } else if (t[0] == "angle") {
        if (t.size() != 1) rd.fail(ln.number, "'angle' takes no arguments");
        fd.kind = FunctionData::Kind::angle;
      } else {
        rd.fail(ln.number, "codomain must be 'group <orders>', 'roots <m>' or 'angle'");
      }
      have_codomain = true;
    } else if (ln.key == "values") {
      if (!have_codomain) rd.fail(ln.number, "'codomain' must come before 'values'");
      const Group h = fd.kind == FunctionData::Kind::group ? make_abelian_group(fd.factors) : make_abelian_group({1});
      for (const auto& [line, tok] : gather(rd, i)) {
        switch (fd.kind) {
          case FunctionData::Kind::group: fd.elements.push_back(parse_group_value(rd, line, h, tok)); break;
          case FunctionData::Kind::roots: fd.exponents.push_back(rd.integer(line, tok)); break;
          case FunctionData::Kind::angle: {
            std::size_t used = 0;
            double a = 0;
            try {
              a = std::stod(tok, &used);
            } catch (const std::exception&) {
              rd.fail(line, "expected an angle, found '" + tok + "'");
            }
            if (used != tok.size() || !std::isfinite(a)) rd.fail(line, "expected an angle, found '" + tok + "'");
            fd.angles.push_back(a);
          }
        }
      }
      have_values = true;
    } else {
      rd.fail(ln.number, "unknown key '" + ln.key + "'");
    }
  }
  if (!have_codomain) rd.fail("missing 'codomain'");
  if (!have_values) rd.fail("missing 'values'");
  const std::size_t n = std::max({fd.elements.size(), fd.exponents.size(), fd.angles.size()});
  if (n != points)
    rd.fail("function lists " + std::to_string(n) + " values but the instance has " + std::to_string(points) +
            " points");
  return fd;
}

FunctionData read_function(const std::string& path, std::size_t points) {
  auto in = open(path);
  return parse_function(in, path, points);
}

PointSubset parse_subset(std::istream& in, const std::string& name, std::size_t points) {
  Reader rd(in, name);
  PointSubset d(points);
  bool seen = false;
  const auto& lines = rd.lines();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].key != "subset") rd.fail(lines[i].number, "expected 'subset: <points>'");
    if (seen) rd.fail(lines[i].number, "duplicate 'subset'");
    seen = true;
    for (const auto& [line, tok] : gather(rd, i)) {
      const long long x = rd.integer(line, tok);
      if (x < 0 || static_cast<std::size_t>(x) >= points)
        rd.fail(line, "point " + tok + " is outside 0.." + std::to_string(points - 1));
      if (d.contains(static_cast<Point>(x))) rd.fail(line, "point " + tok + " listed twice");
      d.insert(static_cast<Point>(x));
    }
  }
  if (!seen) rd.fail("missing 'subset'");
  return d;
}

PointSubset read_subset(const std::string& path, std::size_t points) {
  auto in = open(path);
  return parse_subset(in, path, points);
}

FamilyData parse_family(std::istream& in, const std::string& name, std::size_t points) {
  Reader rd(in, name);
  FamilyData fam;
  bool have_codomain = false;
  std::vector<bool> assigned;
  const auto& lines = rd.lines();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    if (ln.key == "codomain") {
      const auto t = rd.tokens(ln.rest);
      if (t.empty() || t[0] != "group") rd.fail(ln.number, "family codomain must be 'group <orders>'");
      std::string rest;
      for (std::size_t k = 1; k < t.size(); ++k) rest += t[k] + " ";
      fam.target = make_abelian_group(factor_list(rd, ln.number, rest));
      fam.sets.assign(fam.target.order(), PointSubset(points));
      assigned.assign(fam.target.order(), false);
      have_codomain = true;
    } else if (ln.key.rfind("set ", 0) == 0 || ln.key.rfind("set\t", 0) == 0) {
      if (!have_codomain) rd.fail(ln.number, "'codomain' must come before the sets");
      const std::string label = rd.tokens(ln.key.substr(3)).at(0);
      const Elem h = parse_group_value(rd, ln.number, fam.target, label);
      if (assigned[h]) rd.fail(ln.number, "set " + label + " given twice");
      assigned[h] = true;
      for (const auto& [line, tok] : gather(rd, i)) {
        const long long x = rd.integer(line, tok);
        if (x < 0 || static_cast<std::size_t>(x) >= points)
          rd.fail(line, "point " + tok + " is outside 0.." + std::to_string(points - 1));
        fam.sets[h].insert(static_cast<Point>(x));
      }
    } else {
      rd.fail(ln.number, "expected 'codomain:' or 'set <value>:'");
    }
  }
  if (!have_codomain) rd.fail("missing 'codomain'");
  return fam;
}

FamilyData read_family(const std::string& path, std::size_t points) {
  auto in = open(path);
  return parse_family(in, path, points);
}

std::string point_value(const Group& h, Elem e) {
  std::string s;
  for (int r : h.residues(e)) s += (s.empty() ? "" : ",") + std::to_string(r);
  return s;
}

std::string group_description(const Group& g) {
  if (!g.has_factorization()) return "group of order " + std::to_string(g.order());
  std::string s;
  for (int n : g.factor_orders()) s += (s.empty() ? "Z" : " x Z") + std::to_string(n);
  return s;
}

void write_instance(std::ostream& out, const Instance& inst) {
  const Group& g = inst.xs.group();
  out << "label: " << inst.label << "\n";
  out << "group:";
  for (int n : g.factor_orders()) out << " " << n;
  out << "\npoints: " << inst.xs.size() << "\n";
  for (const auto& perm : inst.xs.generator_actions()) out << "gen: " << cycles(perm) << "\n";
}

void write_function(std::ostream& out, const GroupValuedFunction& f) {
  out << "codomain: group";
  for (int n : f.target.factor_orders()) out << " " << n;
  out << "\nvalues:";
  for (Elem e : f.values) out << " " << point_value(f.target, e);
  out << "\n";
}

void write_function(std::ostream& out, const CircleValuedFunction& f) {
  if (f.exact()) {
    out << "codomain: roots " << f.order() << "\nvalues:";
    for (long long e : f.exponents()) out << " " << e;
  } else {
    out << "codomain: angle\nvalues:";
    const auto old = out.precision(17);
    for (auto z : f.values()) out << " " << std::arg(z);
    out.precision(old);
  }
  out << "\n";
}

Codomain parse_codomain(const std::string& text) {
  static const std::regex zn(R"(^z(\d+)$)"), grp(R"(^group:(\d+(?:,\d+)*)$)"), roots(R"(^roots:(\d+)$)");
  std::smatch m;
  if (text == "f2") return Codomain::of_group(make_abelian_group({2}));
  if (text == "klein") return Codomain::of_group(make_abelian_group({2, 2}));
  if (std::regex_match(text, m, zn)) return Codomain::of_group(make_abelian_group({std::stoi(m[1])}));
  if (std::regex_match(text, m, grp)) {
    std::vector<int> f;
    std::stringstream ss(m[1].str());
    for (std::string part; std::getline(ss, part, ',');) f.push_back(std::stoi(part));
    return Codomain::of_group(make_abelian_group(f));
  }
  if (std::regex_match(text, m, roots)) return Codomain::roots_of_unity(std::stoi(m[1]));
  throw InvalidInput("unknown codomain '" + text + "' (use f2, klein, z<n>, group:<n1>,<n2>,... or roots:<m>)");
}

std::vector<std::size_t> parse_count_list(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || v < 0) throw InvalidInput(what + ": '" + part + "' is not a nonnegative integer");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.size() != expected)
    throw InvalidInput(what + " takes " + std::to_string(expected) + " comma-separated counts");
  return out;
}

}  // namespace gsetpn::cli
