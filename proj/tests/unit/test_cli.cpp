#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "lozenge/cli.hpp"
#include "lozenge/io.hpp"

using namespace lozenge;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "lozenge_cli_test") {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string pair_json(const TempDir& d, std::int64_t wx) {
  HoleSystem hs;
  hs.multiholes = {single_hole(HoleKind::E, 0, 0), single_hole(HoleKind::W, wx, 0)};
  const std::string p = d.file("pair.json");
  write_file_atomic(p, holes_to_json(hs).dump());
  return p;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("coupling command") {
  const Run r = run({"coupling", "--x", "0", "--y", "0"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).front() == "1/3 + 0\xC2\xB7(\xE2\x88\x9A" "3/\xCF\x80)");
  CHECK(lines(r.out).back() == "0.33333333333333331");
  const Run f = run({"coupling", "--x", "-1", "--y", "-1", "--float"});
  CHECK(f.out == "-0.27566444771089604\n");
  const Run t = run({"coupling-table", "--range", "1"});
  CHECK(lines(t.out).size() == 10);
  CHECK(lines(t.out).front() == "x,y,p_num,p_den,r_num,r_den,float");
}

TEST_CASE("errors map to exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"coupling", "--x", "zero", "--y", "0"}).code == 2);
  const Run missing = run({"field", "--holes", "/nonexistent.json", "--probes", "grid:0,0,1,1"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("error: IOFailure") != std::string::npos);
}

TEST_CASE("verify commands") {
  CHECK(run({"verify", "identity31", "--trials", "5", "--seed", "7"}).code == 0);
  CHECK(run({"verify", "lemma33", "--trials", "5"}).code == 0);
  CHECK(run({"verify", "lemma34", "--trials", "5"}).code == 0);
  CHECK(run({"verify", "symmetries", "--range", "6"}).code == 0);
  TempDir d;
  const std::string holes = pair_json(d, 6);
  CHECK(run({"verify", "circulation", "--holes", holes, "--trials", "3"}).code == 0);
  CHECK(run({"verify", "nonsense"}).code == 2);
}

TEST_CASE("field, surface and oracle commands") {
  TempDir d;
  const std::string holes = pair_json(d, 6);
  const Run f = run({"field", "--holes", holes, "--probes", "list:2,2;3,1", "--exact"});
  REQUIRE(f.code == 0);
  const auto rows = lines(f.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "x,y,fx,fy,p1,p2,p3,exactness,sum_exact");
  CHECK(rows[1].substr(rows[1].size() - 8) == ",exact,1");

  const std::string obj = d.file("s.obj");
  const Run s = run({"surface", "--holes", holes, "--margin", "3", "--sheets", "2", "--out", obj, "--compare", "--R", "3"});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("\"max_abs\"") != std::string::npos);
  CHECK(std::filesystem::file_size(obj) > 0);

  const Run c = run({"oracle", "count", "--region", "hex:2,2,2"});
  CHECK(c.out.find("count=20") != std::string::npos);
  const Run cmp = run({"oracle", "compare", "--region", "hex:12,12,12", "--holes", holes, "--lozenge", "2,2,0"});
  CHECK(cmp.code == 0);
  CHECK(cmp.out.find("gap=") != std::string::npos);
  const Run torus = run({"oracle", "torus", "--N", "3", "--exact"});
  CHECK(torus.out.find("count=42") != std::string::npos);
}

TEST_CASE("coulomb and converge commands") {
  TempDir d;
  LimitConfig c;
  c.positives = {{0.0, 0.0, 1}};
  c.probe = {1.0, 0.0};
  write_file_atomic(d.file("cfg.json"), limit_config_to_json(c).dump());
  const Run g = run({"coulomb", "--config", d.file("cfg.json"), "--grid", "1,0,2,1,2,2", "--R", "1"});
  REQUIRE(g.code == 0);
  CHECK(lines(g.out).size() == 5);

  HoleSystem hs;
  hs.multiholes = {single_hole(HoleKind::E, 0, 0), single_hole(HoleKind::W, 2, 0)};
  write_file_atomic(d.file("unit.json"), holes_to_json(hs).dump());
  const Run v = run({"converge", "--holes", d.file("unit.json"), "--probe", "0.5,0.5", "--R-list", "4,8"});
  REQUIRE(v.code == 0);
  const auto rows = lines(v.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "R,RFx,RFy,RFx_limit,RFy_limit,rel_error,exactness");
}

TEST_CASE("run-config file overrides flags") {
  TempDir d;
  write_file_atomic(d.file("run.json"), R"({"command":"coupling","x":-1,"y":0})");
  const Run r = run({"--run-config", d.file("run.json")});
  CHECK(r.code == 0);
  CHECK(lines(r.out).front().rfind("1/3", 0) == 0);
  const Run o = run({"--run-config", d.file("run.json"), "coupling", "--x", "5", "--y", "5"});
  CHECK(lines(o.out).front().rfind("1/3", 0) == 0);
}

TEST_CASE("outputs are deterministic") {
  TempDir d;
  const std::string holes = pair_json(d, 6);
  const std::vector<std::string> cmd{"field", "--holes", holes, "--probes", "grid:-2,-2,4,3"};
  CHECK(run(cmd).out == run(cmd).out);
}
