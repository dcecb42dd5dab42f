#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "syntomo/config.hpp"

using namespace syntomo;
using nlohmann::json;

namespace {

const char* kDeskA = R"(# profile A desk configuration
[profile]
kind = "A"
p = 3
e = 1

[truncation]
M = 8
n_work = 4
slack = 4
margin = 6

[run]
r = 1
suite = "homology"
seed = 7
format = "json"
)";

// minimal JSON-schema validator covering the subset used by
// schema/report.schema.json: type, enum, minimum, required, properties,
// additionalProperties (boolean), items
bool schema_valid(const json& schema, const json& doc, std::string& why) {
  if (schema.contains("type")) {
    std::string t = schema["type"];
    bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
              (t == "string" && doc.is_string()) || (t == "boolean" && doc.is_boolean()) ||
              (t == "integer" && doc.is_number_integer());
    if (!ok) {
      why = "expected type " + t + " at " + doc.dump().substr(0, 40);
      return false;
    }
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (const json& v : schema["enum"]) hit = hit || v == doc;
    if (!hit) {
      why = "value " + doc.dump() + " not in enum";
      return false;
    }
  }
  if (schema.contains("minimum") && doc.is_number_integer() &&
      doc.get<long long>() < schema["minimum"].get<long long>()) {
    why = "value " + doc.dump() + " below minimum";
    return false;
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const json& k : schema["required"])
        if (!doc.contains(k.get<std::string>())) {
          why = "missing required key " + k.get<std::string>();
          return false;
        }
    const json props = schema.value("properties", json::object());
    for (auto& [k, v] : doc.items()) {
      if (props.contains(k)) {
        if (!schema_valid(props[k], v, why)) return false;
      } else if (schema.value("additionalProperties", json(true)) == json(false)) {
        why = "unexpected key " + k;
        return false;
      }
    }
  }
  if (doc.is_array() && schema.contains("items"))
    for (const json& v : doc)
      if (!schema_valid(schema["items"], v, why)) return false;
  return true;
}

json load_schema() {
  std::ifstream in(std::string(SYNTOMO_SOURCE_DIR) + "/schema/report.schema.json");
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("toml parsing: happy path") {
  RunConfig rc = parse_run_config(kDeskA);
  CHECK(rc.pipeline.base.profile == 'A');
  CHECK(rc.pipeline.base.p == 3);
  CHECK(rc.pipeline.base.e == 1);
  CHECK(rc.pipeline.M == 8);
  CHECK(rc.pipeline.n == 4);
  CHECK(rc.pipeline.slack == 4);
  CHECK(rc.pipeline.margin == 6);
  CHECK(rc.pipeline.r == 1);
  CHECK(rc.pipeline.seed == 7);
  CHECK(rc.suite == "homology");
  CHECK(rc.format == "json");
}

TEST_CASE("toml parsing: profile B and defaults") {
  RunConfig rc = parse_run_config("[profile]\nkind = \"B\"\n[truncation]\nM = 24\n");
  CHECK(rc.pipeline.base.profile == 'B');
  CHECK(rc.pipeline.base.i_cyclo == 3);
  CHECK(rc.pipeline.base.e == 18);
  CHECK(rc.suite == "all");
  CHECK(rc.pipeline.n == 4);
}

TEST_CASE("toml parsing: diagnostics name the offending field") {
  CHECK_THROWS_WITH_AS(parse_run_config("[profile]\nbogus = 1\n"),
                       "unknown key 'bogus' in [profile]", config_error);
  CHECK_THROWS_WITH_AS(parse_run_config("[mystery]\nx = 1\n"), "unknown table [mystery]",
                       config_error);
  CHECK_THROWS_AS(parse_run_config("[profile]\nkind = \"A\"\ni = 3\n"), config_error);
  CHECK_THROWS_AS(parse_run_config("[profile]\nkind = \"B\"\ne = 18\n"), config_error);
  CHECK_THROWS_AS(parse_run_config("[profile]\np = \"three\"\n"), config_error);
  CHECK_THROWS_AS(parse_run_config("[truncation]\nM = 8\nM = 9\n"), config_error);
  CHECK_THROWS_AS(parse_run_config("[run]\nsuite = \"sorcery\"\n"), config_error);
  CHECK_THROWS_AS(parse_run_config("[run]\nformat = \"xml\"\n"), config_error);
  CHECK_THROWS_AS(parse_run_config("garbage line\n"), config_error);
  // validation failures: even p, band radius below the certified floor
  CHECK_THROWS_AS(parse_run_config("[profile]\np = 2\n"), config_error);
  CHECK_THROWS_AS(parse_run_config("[truncation]\nM = 1\n"), config_error);
}

TEST_CASE("suite reports are deterministic and schema-valid") {
  RunConfig rc = parse_run_config(kDeskA);
  rc.suite = "all";
  SuiteReport r1 = run_suite(rc);
  SuiteReport r2 = run_suite(rc);
  CHECK(r1.passed);
  std::string t1 = render_report(r1.doc, "json");
  std::string t2 = render_report(r2.doc, "json");
  CHECK(t1 == t2);  // byte-identical serialization

  json schema = load_schema();
  std::string why;
  bool ok = schema_valid(schema, r1.doc, why);
  INFO(why);
  CHECK(ok);
  CHECK(r1.doc["edges"].size() == 4);
  CHECK(r1.doc["complexes"].size() >= 7);
  CHECK(r1.doc["stability"]["matched"].get<bool>());
}

TEST_CASE("table rendering lists degrees in ascending order") {
  RunConfig rc = parse_run_config(kDeskA);
  SuiteReport rep = run_suite(rc);
  std::string t = render_report(rep.doc, "table");
  size_t h0 = t.find("H^0"), h1 = t.find("H^1"), h2 = t.find("H^2");
  CHECK(h0 != std::string::npos);
  CHECK(h0 < h1);
  CHECK(h1 < h2);
  CHECK(render_report(rep.doc, "table") == t);
}

TEST_CASE("solver report matches exhaustive search") {
  SuiteReport rep = solve_implicit_report(7, 8, 4);
  CHECK(rep.passed);
  CHECK(rep.doc["solution_residue"] == rep.doc["exhaustive_residue"]);
  // 3 is not a square modulo 7
  SuiteReport none = solve_implicit_report(7, 3, 4);
  CHECK(none.passed);
  CHECK_FALSE(none.doc["solvable"].get<bool>());
}

TEST_CASE("atomic report writing leaves no temporary behind") {
  std::string path = "cli_config_report_test.json";
  write_report_atomic(path, "{\"x\": 1}\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "{\"x\": 1}\n");
  CHECK(!std::ifstream(path + ".tmp").good());
  std::remove(path.c_str());
}
