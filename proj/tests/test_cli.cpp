#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "gsetpn/error.hpp"
#include "io.hpp"

using namespace gsetpn;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "gsetpn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Workdir {
 public:
  Workdir() : dir_(fs::temp_directory_path() / ("gsetpn_cli_" + std::to_string(::getpid()) + "_" + std::to_string(n_++))) {
    fs::create_directories(dir_);
  }
  ~Workdir() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  static inline int n_ = 0;
  fs::path dir_;
};

json load(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

}  // namespace

TEST_CASE("instance files") {
  std::istringstream a("label: demo\nklein: 1 1 1 0 2  # comment\n");
  const auto ia = cli::parse_instance(a, "a.gx");
  CHECK(ia.label == "demo");
  CHECK(ia.xs.size() == 8);

  std::istringstream b("group: 2 2\npoints: 4\ngen: (0 1)(2 3)\ngen: [2 3 0 1]\n");
  const auto ib = cli::parse_instance(b, "b.gx");
  CHECK(ib.xs.orbit_count() == 1);

  std::istringstream c("group: 2 2\npoints: 3\ngen: (0 1 2)\ngen: [0 1 2]\n");
  CHECK_THROWS_AS(cli::parse_instance(c, "c.gx"), InvalidAction);

  std::istringstream d("group: 2\npoints: 2\ngen: (0 5)\n");
  try {
    cli::parse_instance(d, "d.gx");
    FAIL("expected an error");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("d.gx:3") != std::string::npos);
  }

  // round trip through the writer
  std::ostringstream w;
  cli::write_instance(w, ia);
  std::istringstream back(w.str());
  const auto again = cli::parse_instance(back, "w.gx");
  for (Elem g = 0; g < 4; ++g)
    for (Point x = 0; x < 8; ++x) CHECK(again.xs.act(g, x) == ia.xs.act(g, x));
}

TEST_CASE("function files") {
  std::istringstream a("codomain: group 2 2\nvalues: (0,1) 1,1\n  0,0 (1,0)\n");
  const auto fa = cli::parse_function(a, "a.fx", 4);
  const auto ga = fa.as_group();
  CHECK(ga.values == std::vector<Elem>{1, 3, 0, 2});

  std::istringstream b("codomain: roots 6\nvalues: 0 2 0 2 0 2\n");
  const auto fb = cli::parse_function(b, "b.fx", 6).as_circle();
  CHECK(fb.exact());
  CHECK(fb.order() == 6);

  std::istringstream c("codomain: angle\nvalues: 0 3.14159265358979\n");
  CHECK_FALSE(cli::parse_function(c, "c.fx", 2).as_circle().exact());

  std::istringstream d("codomain: group 2\nvalues: 0 1 2\n");
  CHECK_THROWS_AS(cli::parse_function(d, "d.fx", 3), InvalidInput);
  std::istringstream e("codomain: group 2\nvalues: 0 1\n");
  CHECK_THROWS_AS(cli::parse_function(e, "e.fx", 3), InvalidInput);
}

TEST_CASE("codomain names") {
  CHECK(cli::parse_codomain("f2").size() == 2);
  CHECK(cli::parse_codomain("klein").size() == 4);
  CHECK(cli::parse_codomain("z5").size() == 5);
  CHECK(cli::parse_codomain("group:2,3").size() == 6);
  CHECK(cli::parse_codomain("roots:12").kind == Codomain::Kind::roots);
  CHECK_THROWS_AS(cli::parse_codomain("q7"), InvalidInput);
}

TEST_CASE("check-pn on a PN function") {
  Workdir w;
  const auto inst = w.write("k.gx", "klein: 1 1 1 0 2\n");
  const auto fn = w.write("f.fx", "codomain: group 2\nvalues: 1 0 1 0 1 0 0 0\n");
  const auto report = w.path("r.json");
  const auto r = call({"check-pn", inst, fn, "--json", report});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: PN") != std::string::npos);
  const json j = load(report);
  CHECK(j["verdict"] == true);
  CHECK(j["tool"] == "gsetpn");
  CHECK(j["version"] == cli::kToolVersion);
  CHECK(j["instance"]["hash"].get<std::string>().size() == 16);
  CHECK(j["tolerances"]["spectral"] == 1e-6);
  for (const auto& row : j["derivative_counts"])
    for (const auto& [k, n] : row["counts"].items()) CHECK(n == 4);
  for (const auto& [k, ok] : j["characterizations"].items()) CHECK(ok == true);
}

TEST_CASE("check-pn on a non-PN function prints a witness") {
  Workdir w;
  const auto inst = w.write("k.gx", "klein: 1 1 1 0 2\n");
  const auto fn = w.write("f.fx", "codomain: group 2\nvalues: 0 0 0 0 0 0 0 0\n");
  const auto r = call({"check-pn", inst, fn, "--json", w.path("r.json")});
  CHECK(r.code == 1);
  CHECK(r.out.find("witness:") != std::string::npos);
  CHECK(load(w.path("r.json")).contains("witness"));
}

TEST_CASE("construct and re-check round trips") {
  Workdir w;
  {
    const auto r = call({"construct-bent", "--klein", "1,1,1", "-o", w.path("b.fx"), "--instance-out", w.path("b.gx")});
    CHECK(r.code == 0);
    CHECK(call({"check-bent", w.path("b.gx"), w.path("b.fx")}).code == 0);
  }
  {
    const auto r = call({"construct-bent", "--klein", "3,2,2", "-o", w.path("c.fx"), "--instance-out", w.path("c.gx")});
    CHECK(r.code == 0);
    CHECK(call({"check-bent", w.path("c.gx"), w.path("c.fx")}).code == 0);
  }
  for (int pattern : {1, 2, 3}) {
    const auto r = call({"construct-bent", "--block", "8", "--pattern", std::to_string(pattern), "-o", w.path("e.fx"),
                         "--instance-out", w.path("e.gx")});
    CHECK(r.code == 0);
    CHECK(call({"check-bent", w.path("e.gx"), w.path("e.fx")}).code == 0);
  }
  for (const std::string counts : {"0,0,0,3,4", "1,1,1,0,2", "2,2,2,0,4", "0,2,2,2,0"}) {
    const auto r = call({"construct-pn", "--klein", counts, "-o", w.path("p.fx"), "--instance-out", w.path("p.gx")});
    CHECK(r.code == 0);
    CHECK(call({"check-pn", w.path("p.gx"), w.path("p.fx")}).code == 0);
  }
  {
    const auto r = call({"construct-pn", "--c2", "3,6", "--balanced", "-o", w.path("q.fx"), "--instance-out",
                         w.path("q.gx")});
    CHECK(r.code == 0);
    CHECK(call({"check-pn", w.path("q.gx"), w.path("q.fx")}).code == 0);
  }
  CHECK(call({"construct-pn", "--c2", "1,1"}).code == 1);
  CHECK(call({"construct-pn", "--klein", "2,2,1,0,6"}).code == 1);
  CHECK(call({"construct-bent", "--klein", "2,1,0"}).code == 1);
}

TEST_CASE("check-ds and check-rdf") {
  Workdir w;
  const auto reg = w.write("r.gx", "klein: 0 0 0 1 0\n");
  CHECK(call({"check-ds", reg, w.write("d.sx", "subset: 0 1 2\n")}).code == 0);
  CHECK(call({"check-ds", reg, w.write("e.sx", "subset: 0 1\n")}).code == 1);
  const auto fam = w.write("f.rx", "codomain: group 2\nset 0: 1 2 3\nset 1: 0\n");
  CHECK(call({"check-rdf", reg, fam}).code == 0);
  const auto bad = w.write("g.rx", "codomain: group 2\nset 0: 2 3\nset 1: 0 1\n");
  const auto r = call({"check-rdf", reg, bad});
  CHECK(r.code == 1);
  CHECK(r.out.find("witness:") != std::string::npos);
  const auto overlap = w.write("h.rx", "codomain: group 2\nset 0: 0 2 3\nset 1: 0 1\n");
  CHECK(call({"check-rdf", reg, overlap}).code == 2);
}

TEST_CASE("validate, orbits, dual and fourier") {
  Workdir w;
  const auto inst = w.write("k.gx", "label: six\nklein: 1 1 1 0 0\n");
  CHECK(call({"validate", inst}).code == 0);
  const auto o = call({"orbits", inst});
  CHECK(o.code == 0);
  CHECK(o.out.find("orbit 2") != std::string::npos);
  CHECK(call({"dual", inst, "--json", w.path("d.json")}).code == 0);
  CHECK(load(w.path("d.json"))["members"].size() == 6);
  const auto fn = w.write("f.fx", "codomain: roots 6\nvalues: 0 2 0 2 0 2\n");
  const auto f = call({"fourier", inst, fn});
  CHECK(f.code == 0);
  CHECK(f.out.find("sum over all blocks: 36") != std::string::npos);
  const auto g = w.write("g.fx", "codomain: group 2\nvalues: 1 0 1 0 0 0\n");
  CHECK(call({"fourier", inst, g, "--xi", "1"}).code == 0);
  CHECK(call({"fourier", inst, g, "--xi", "7"}).code == 2);
}

TEST_CASE("usage and input errors exit with 2") {
  Workdir w;
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"validate"}).code == 2);
  CHECK(call({"validate", w.path("missing.gx")}).code == 2);
  CHECK(call({"validate", w.write("bad.gx", "group: 2 2\npoints: 3\ngen: (0 1 2)\ngen: [0 1 2]\n")}).code == 2);
  const auto inst = w.write("k.gx", "klein: 1 1 1 0 0\n");
  CHECK(call({"check-pn", inst, w.write("short.fx", "codomain: group 2\nvalues: 0 1\n")}).code == 2);
  CHECK(call({"check-pn", inst, w.write("f.fx", "codomain: group 2\nvalues: 0 1 0 1 0 1\n"), "--tolerance", "-1"}).code ==
        2);
  CHECK(call({"search", inst}).code == 2);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"--version"}).code == 0);
}

TEST_CASE("search reports") {
  Workdir w;
  const auto inst = w.write("k.gx", "klein: 0 0 0 1 0\n");
  const auto r = call({"search", "--pn", "--codomain", "f2", inst, "--report", w.path("s.json")});
  CHECK(r.code == 0);
  const json j = load(w.path("s.json"));
  CHECK(j["search"]["matches"] == 8);
  CHECK(j["search"]["total_candidates"] == 16);
  CHECK(j.contains("run"));

  const auto none = w.write("n.gx", "klein: 2 2 1 0 6\n");
  const auto n = call({"search", "--pn", "--codomain", "f2", none, "--report", w.path("n.json")});
  CHECK(n.code == 1);
  CHECK(load(w.path("n.json"))["search"]["matches"] == 0);

  const auto big = call({"search", "--pn", inst, "--budget", "3"});
  CHECK(big.code == 2);
  CHECK(big.err.find("16") != std::string::npos);

  const auto six = w.write("six.gx", "klein: 1 1 1 0 0\n");
  const auto b = call({"search", "--bent", "--codomain", "roots:6", six, "--report", w.path("b.json")});
  CHECK(b.code == 0);
  CHECK(load(w.path("b.json"))["search"].contains("discretization"));

  CHECK(call({"cross-validate", six}).code == 0);
  CHECK(call({"cross-validate", six, "--codomain", "roots:6"}).code == 0);
}

TEST_CASE("search reports agree across shard counts") {
  Workdir w;
  const auto inst = w.write("k.gx", "klein: 1 1 1 0 2\n");
  std::vector<json> reports;
  for (const std::string shards : {"1", "4", "16"}) {
    const auto path = w.path("s" + shards + ".json");
    CHECK(call({"search", "--pn", inst, "--mode", "collect", "--shards", shards, "--report", path}).code == 0);
    json j = load(path);
    j.erase("run");
    reports.push_back(j);
  }
  CHECK(reports[0].dump() == reports[1].dump());
  CHECK(reports[0].dump() == reports[2].dump());
}
