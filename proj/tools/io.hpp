#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "gsetpn/functions.hpp"
#include "gsetpn/gset.hpp"
#include "gsetpn/search.hpp"

namespace gsetpn::cli {

struct Instance {
  std::string label;
  GSet xs;
};

/// Function file contents: group-valued, exact roots, or raw angles.
struct FunctionData {
  enum class Kind { group, roots, angle } kind = Kind::group;
  std::vector<int> factors;  // group codomain
  int order = 0;             // roots codomain
  std::vector<Elem> elements;
  std::vector<long long> exponents;
  std::vector<double> angles;

  GroupValuedFunction as_group() const;
  CircleValuedFunction as_circle() const;
};

Instance parse_instance(std::istream& in, const std::string& name);
Instance read_instance(const std::string& path);

FunctionData parse_function(std::istream& in, const std::string& name, std::size_t points);
FunctionData read_function(const std::string& path, std::size_t points);

PointSubset parse_subset(std::istream& in, const std::string& name, std::size_t points);
PointSubset read_subset(const std::string& path, std::size_t points);

struct FamilyData {
  Group target = make_abelian_group({1});
  std::vector<PointSubset> sets;
};

FamilyData parse_family(std::istream& in, const std::string& name, std::size_t points);
FamilyData read_family(const std::string& path, std::size_t points);

void write_instance(std::ostream& out, const Instance& inst);
void write_function(std::ostream& out, const GroupValuedFunction& f);
void write_function(std::ostream& out, const CircleValuedFunction& f);

/// f2, klein, z<n>, group:<n1>,<n2>,... or roots:<m>.
Codomain parse_codomain(const std::string& text);

/// "1,2,3" -> {1, 2, 3}.
std::vector<std::size_t> parse_count_list(const std::string& text, std::size_t expected, const std::string& what);

std::string group_description(const Group& g);
std::string point_value(const Group& h, Elem e);

}  // namespace gsetpn::cli
