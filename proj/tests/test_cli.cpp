#include <doctest.h>

#include <sstream>

#include "kshift/cli.hpp"
#include "kshift/graded_group.hpp"

using namespace kshift;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(RunConfig config, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  int code = run(config, in, out, err);
  return {code, out.str(), err.str()};
}

std::string group(const char* name) { return std::string(KSHIFT_DATA_DIR) + "/groups/" + name; }

}  // namespace

TEST_CASE("decompose from standard input") {
  RunConfig c;
  c.subcommand = "decompose";
  c.group_path = group("lamp.json");
  auto r = invoke(c, R"([{"coeff": 1, "entries": {"1": "v"}}])");
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["verified"] == true);
  CHECK(j["witness"] == Json::parse(R"([{"coeff": -1, "entries": {"0": "v"}}])"));
  CHECK(j["h_tail"] == Json::parse(R"([{"coeff": 1, "entries": {"0": "v"}}])"));
}

TEST_CASE("lamplighter subcommand") {
  RunConfig c;
  c.subcommand = "lamplighter";
  c.window = 3;
  auto r = invoke(c);
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["k0"]["rank"] == 9);
  CHECK(j["k1"]["rank"] == 1);
}

TEST_CASE("verify subcommand is deterministic across job counts") {
  RunConfig c;
  c.subcommand = "verify";
  c.group_path = group("lamp.json");
  c.max_window = 2;
  auto serial = invoke(c);
  c.jobs = 3;
  auto parallel = invoke(c);
  CHECK(serial.code == 0);
  CHECK(serial.out == parallel.out);
  CHECK(Json::parse(serial.out)["passed"] == true);
}

TEST_CASE("order-check subcommand") {
  RunConfig c;
  c.subcommand = "order-check";
  c.group_path = group("lamp.json");
  auto r = invoke(c);
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["verdict"] == "Counterexample");
}

TEST_CASE("input errors exit with 2") {
  RunConfig c;
  c.subcommand = "ktheory";
  CHECK(invoke(c).code == 2);
  c.group_path = "/nonexistent.json";
  CHECK(invoke(c).code == 2);
  c.group_path = group("lamp.json");
  c.window = 1000;
  CHECK(invoke(c).code == 2);
  c.window = 1;
  c.format = "xml";
  CHECK(invoke(c).code == 2);

  RunConfig d;
  d.subcommand = "decompose";
  d.group_path = group("lamp.json");
  CHECK(invoke(d, "[{\"coeff\": 1, \"entries\": {\"0\": \"q\"}}]").code == 2);
  CHECK(invoke(d, "garbage").code == 2);

  RunConfig o;
  o.subcommand = "order-check";
  o.group_path = group("three_symbol.json");
  auto r = invoke(o);
  CHECK(r.code == 2);
  CHECK(r.err.find("NoCone") != std::string::npos);
}

TEST_CASE("text format") {
  RunConfig c;
  c.subcommand = "ktheory";
  c.group_path = group("three_symbol.json");
  c.window = 1;
  c.format = "text";
  auto r = invoke(c);
  CHECK(r.code == 0);
  CHECK(r.out.find("K1 rank") != std::string::npos);
}
