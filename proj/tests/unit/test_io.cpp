#include <doctest.h>

#include <filesystem>

#include "lozenge/io.hpp"

using namespace lozenge;

TEST_CASE("hole systems round-trip through JSON") {
  HoleSystem hs;
  hs.multiholes = {single_hole(HoleKind::E, 0, 0), MultiHole{HoleKind::W, mpq_class(-1, 2), {0, 2, 4}, {9, -3}}};
  const nlohmann::json j = holes_to_json(hs);
  CHECK(j["multiholes"][1]["q"] == "-1/2");
  const HoleSystem back = holes_from_json(j);
  REQUIRE(back.multiholes.size() == 2);
  CHECK(back.multiholes[1].q == mpq_class(-1, 2));
  CHECK(back.multiholes[1].indices == std::vector<std::int64_t>{0, 2, 4});
  CHECK(back.holes() == hs.holes());
  CHECK(holes_to_json(back) == j);
}

TEST_CASE("hole JSON defaults and errors") {
  const auto j = nlohmann::json::parse(R"({"multiholes":[{"kind":"W","q":1,"anchor":[3,4]}]})");
  const HoleSystem hs = holes_from_json(j);
  REQUIRE(hs.multiholes.size() == 1);
  CHECK(hs.multiholes[0].indices == std::vector<std::int64_t>{0});
  CHECK(hs.multiholes[0].anchor == ObliqueCoord{3, 4});

  for (const char* bad : {R"({"holes":[]})", R"({"multiholes":[{"kind":"N","anchor":[0,0]}]})",
                          R"({"multiholes":[{"kind":"E","q":"x/y","anchor":[0,0]}]})",
                          R"({"multiholes":[{"kind":"E","anchor":[0]}]})"}) {
    CHECK_THROWS_WITH_AS(holes_from_json(nlohmann::json::parse(bad)), doctest::Contains("ConfigParse"), Error);
  }
}

TEST_CASE("limit configurations round-trip through JSON") {
  LimitConfig c;
  c.positives = {{0.5, -1.25, 2, 1, 0}};
  c.negatives = {{2.0, 1.0, 1, 0, 2}};
  c.q = mpq_class(-2);
  c.probe = {1.0, 1.5, 2, 1};
  const LimitConfig back = limit_config_from_json(limit_config_to_json(c));
  CHECK(back.q == c.q);
  CHECK(back.positives[0].s == 2);
  CHECK(back.positives[0].alpha == 1);
  CHECK(back.negatives[0].delta == 2);
  CHECK(back.probe.x == 1.0);
  CHECK(back.probe.alpha == 2);
  CHECK(limit_config_to_json(back) == limit_config_to_json(c));
}

TEST_CASE("atomic writes and reads") {
  const auto dir = std::filesystem::temp_directory_path() / "lozenge_io_test";
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "a.txt", "hello\n");
  CHECK(read_file(dir / "a.txt") == "hello\n");
  write_file_atomic(dir / "a.txt", "bye\n");
  CHECK(read_file(dir / "a.txt") == "bye\n");
  CHECK_FALSE(std::filesystem::exists(dir / "a.txt.tmp"));
  CHECK_THROWS_WITH_AS(read_file(dir / "missing.txt"), doctest::Contains("IOFailure"), Error);
  CHECK_THROWS_WITH_AS(write_file_atomic(dir / "no" / "b.txt", "x"), doctest::Contains("IOFailure"), Error);

  write_file_atomic(dir / "h.json", holes_to_json(HoleSystem{{single_hole(HoleKind::E, 1, 2)}}).dump());
  CHECK(load_holes(dir / "h.json").holes().front().pos == ObliqueCoord{1, 2});
  write_file_atomic(dir / "bad.json", "{not json");
  CHECK_THROWS_WITH_AS(load_holes(dir / "bad.json"), doctest::Contains("ConfigParse"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("CSV formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  CsvWriter csv({"a", "b"});
  csv.row({"1", "2"});
  CHECK(csv.str() == "a,b\n1,2\n");
  CHECK_THROWS_AS(csv.row({"1"}), Error);
}
