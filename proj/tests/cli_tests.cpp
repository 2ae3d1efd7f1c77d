// End-to-end tests of the command-line binary: every envelope must validate
// against the published schema, exit codes must track the status field, and
// the recorded documentation examples must reproduce byte for byte.
//
// argv[1]: path to the CLI binary; argv[2]: path to the data/ directory.

#define DOCTEST_CONFIG_IMPLEMENT
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "schema_check.hpp"

namespace {

using nlohmann::json;

std::string g_cli_path;
std::string g_data_dir;

struct RunResult {
  std::string out;
  int exit_code = -1;
};

std::string shell_quote(const std::string& arg) {
  return "'" + arg + "'";  // no test argument contains a single quote
}

RunResult run_cli(const std::vector<std::string>& args) {
  std::string command = shell_quote(g_cli_path);
  for (const auto& a : args) command += " " + shell_quote(a);
  command += " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.out.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), ("cannot open " + path));
  json doc;
  in >> doc;
  return doc;
}

const json& result_schema() {
  static const json schema =
      load_json_file(g_data_dir + "/schema/command_result.schema.json");
  return schema;
}

// Runs the CLI, parses the envelope, validates it against the schema, and
// checks the exit code matches the reported status.
json checked_run(const std::vector<std::string>& args, int expect_exit) {
  CAPTURE(args.front());
  const RunResult run = run_cli(args);
  CHECK(run.exit_code == expect_exit);
  json doc;
  REQUIRE_NOTHROW(doc = json::parse(run.out));
  const auto errors = schemacheck::validate(doc, result_schema());
  for (const auto& e : errors) {
    FAIL_CHECK(e);
  }
  const std::string status = doc["status"].get<std::string>();
  if (expect_exit == 0) CHECK(status == "ok");
  if (expect_exit == 2) CHECK(status == "partial");
  if (expect_exit == 1) CHECK(status == "error");
  return doc;
}

}  // namespace

TEST_CASE("schema checker flags synthetic violations") {
  const json schema = json::parse(R"({
    "type": "object",
    "properties": {
      "kind": { "enum": ["a", "b"] },
      "size": { "type": "integer" },
      "extra": { "oneOf": [ { "type": "null" }, { "$ref": "#/$defs/pair" } ] }
    },
    "required": ["kind", "size", "extra"],
    "additionalProperties": false,
    "$defs": {
      "pair": {
        "type": "object",
        "properties": { "x": { "type": "integer" }, "y": { "type": "integer" } },
        "required": ["x", "y"],
        "additionalProperties": false
      }
    }
  })");
  CHECK(schemacheck::validate(json::parse(R"({"kind":"a","size":3,"extra":null})"), schema)
            .empty());
  CHECK(schemacheck::validate(
            json::parse(R"({"kind":"b","size":3,"extra":{"x":1,"y":2}})"), schema)
            .empty());
  // Wrong type.
  CHECK(!schemacheck::validate(json::parse(R"({"kind":"a","size":"3","extra":null})"),
                               schema)
             .empty());
  // Enum violation.
  CHECK(!schemacheck::validate(json::parse(R"({"kind":"c","size":3,"extra":null})"), schema)
             .empty());
  // Missing required.
  CHECK(!schemacheck::validate(json::parse(R"({"kind":"a","extra":null})"), schema).empty());
  // Additional property.
  CHECK(!schemacheck::validate(
             json::parse(R"({"kind":"a","size":3,"extra":null,"junk":1})"), schema)
             .empty());
  // oneOf: no branch.
  CHECK(!schemacheck::validate(json::parse(R"({"kind":"a","size":3,"extra":7})"), schema)
             .empty());
  // Nested $ref violation.
  CHECK(!schemacheck::validate(
             json::parse(R"({"kind":"a","size":3,"extra":{"x":1}})"), schema)
             .empty());
}

TEST_CASE("every subcommand emits a schema-valid envelope") {
  // (args..., expected exit code)
  const std::vector<std::pair<std::vector<std::string>, int>> cases = {
      {{"ring", "Z/4"}, 0},
      {{"ring", "Z/2[x]/(x^2+x+1)"}, 0},
      {{"ring", "Z/2 x Z/3"}, 0},
      {{"ring", "Z/0"}, 1},
      {{"ring", "Z/4[x]/(x^2+1)"}, 1},
      {{"bounds", "Z/9"}, 0},
      {{"bounds", "Z/3[x]/(x^2+1)"}, 0},
      {{"check", "Z/4", "[2,1,2,1]"}, 0},
      {{"check", "Z/4", "[1,2,3]"}, 0},
      {{"check", "Z/4", "[0,0]"}, 0},
      {{"check", "Z/4", "[0,2,0,2]", "--subset", "[0,2]"}, 0},
      {{"check", "Z/4", "[0,oops]"}, 1},
      {{"enumerate", "Z/4", "-n", "4"}, 0},
      {{"enumerate", "Z/4", "-n", "4", "--mode", "quiddities"}, 0},
      {{"enumerate", "Z/5", "-n", "6", "--mode", "quiddities", "--limit", "3"}, 0},
      {{"enumerate", "Z/7", "-n", "8", "--budget", "100"}, 2},
      {{"enumerate", "Z/4", "-n", "5", "--subset", "[0,2]"}, 0},
      {{"ell", "Z/4", "--max-n", "8"}, 0},
      {{"ell", "Z/7", "--max-n", "9", "--budget", "1000"}, 2},
      {{"ell", "Z/4", "--max-n", "6", "--subset", "[0,2]"}, 0},
      {{"decompose", "Z/5", "[2,2,2,2,2]"}, 0},
      {{"decompose", "Z/5", "[0,2,2,2,4,2,2,4,2,2,4,2,2,4,2,2,2]"}, 0},
      {{"decompose", "Z/5", "[1,1,1]", "--system", "prime-subring"}, 1},
      {{"sum", "Z/9", "[1,2,3]", "[1,0,-2,4]"}, 0},
      {{"sum", "Z/9", "[1]", "[1,1]"}, 1},
      {{"normalize", "Z/4", "[1,2,0,1]"}, 0},
      {{"monotonicity", "Z/2", "Z/2[x]/(x^2+x+1)", "--max-n", "12"}, 0},
      {{"monotonicity", "Z/2", "Z/2 x Z/2", "--max-n", "6"}, 1},
  };
  for (const auto& [args, expect_exit] : cases) {
    CAPTURE(args[0] + " " + args[1]);
    checked_run(args, expect_exit);
  }
}

TEST_CASE("check reports the split of a known sum") {
  const json doc = checked_run({"check", "Z/4", "[2,1,2,1]"}, 0);
  const json& payload = doc["payload"];
  CHECK(payload["quiddity"] == true);
  CHECK(payload["irreducible"] == false);
  CHECK(payload["sign"] == json::array({"-"}));
  CHECK(payload["witness"]["left"] == json::array({"1", "1", "1"}));
  CHECK(payload["witness"]["right"] == json::array({"1", "1", "1"}));
}

TEST_CASE("enumerate truncates listings but never counts") {
  const json doc =
      checked_run({"enumerate", "Z/5", "-n", "6", "--mode", "quiddities", "--limit", "3"}, 0);
  const json& payload = doc["payload"];
  CHECK(payload["count"] == 273);
  CHECK(payload["tuples"].size() == 3);
  CHECK(payload["truncated"] == true);
  CHECK(payload["complete"] == true);
}

TEST_CASE("budget exhaustion reports partial results honestly") {
  const json doc = checked_run({"enumerate", "Z/7", "-n", "8", "--budget", "100"}, 2);
  const json& payload = doc["payload"];
  CHECK(payload["count"].is_null());
  CHECK(payload["tuples"].empty());
  CHECK(payload["complete"] == false);
  CHECK(!doc["diagnostics"].empty());
}

TEST_CASE("ell over the 4-element field is certified at its coset bound") {
  const json doc =
      checked_run({"ell", "Z/2[x]/(x^2+x+1)", "--max-n", "12", "--workers", "4"}, 0);
  const json& payload = doc["payload"];
  CHECK(payload["bound_used"] == 12);
  CHECK(payload["certified_complete"] == true);
  CHECK(payload["max_irreducible_found"] == 9);
  CHECK(payload["ell_certified"] == 9);
  CHECK(payload["sizes"].size() == 10);
}

TEST_CASE("classify passes on the stored references") {
  for (const std::string ring : {"Z/4", "Z/2 x Z/2", "Z/2[x]/(x^2+x+1)"}) {
    CAPTURE(ring);
    const json doc = checked_run(
        {"classify", ring, "--fixtures", g_data_dir + "/fixtures/v1", "--workers", "4"}, 0);
    CHECK(doc["payload"]["overall_pass"] == true);
    CHECK(doc["payload"]["certified"] == true);
  }
}

TEST_CASE("classify names available references when a ring is missing") {
  const RunResult run = run_cli({"classify", "Z/11"});
  CHECK(run.exit_code == 1);
  const json doc = json::parse(run.out);
  CHECK(doc["status"] == "error");
  REQUIRE(!doc["diagnostics"].empty());
  const std::string message = doc["diagnostics"][0].get<std::string>();
  CHECK(message.find("available") != std::string::npos);
  CHECK(message.find("Z/4") != std::string::npos);
}

TEST_CASE("worker count never changes CLI output") {
  const RunResult one = run_cli({"ell", "Z/4", "--max-n", "8", "--workers", "1"});
  const RunResult eight = run_cli({"ell", "Z/4", "--max-n", "8", "--workers", "8"});
  CHECK(one.exit_code == 0);
  CHECK(one.out == eight.out);
}

TEST_CASE("table mode renders plainly") {
  const RunResult run = run_cli({"--table", "ring", "Z/4"});
  CHECK(run.exit_code == 0);
  CHECK(run.out.rfind("status: ok", 0) == 0);
  CHECK(run.out.find("theta") != std::string::npos);
  CHECK(run.out.find("{") == std::string::npos);
}

TEST_CASE("argument errors come from the option parser, not the envelope") {
  const RunResult run = run_cli({"no-such-command"});
  CHECK(run.exit_code != 0);
  CHECK(run.out.empty());  // CLI11 reports on stderr
}

TEST_CASE("documentation examples reproduce byte for byte") {
  const json examples = load_json_file(g_data_dir + "/doc_examples.json");
  REQUIRE(examples.is_array());
  REQUIRE(!examples.empty());
  for (const auto& example : examples) {
    std::vector<std::string> args;
    for (const auto& a : example["args"]) args.push_back(a.get<std::string>());
    CAPTURE(args[0]);
    const RunResult run = run_cli(args);
    CHECK(run.exit_code == example["exit"].get<int>());
    CHECK(run.out == example["stdout"].get<std::string>());
  }
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: cli_tests <cli-binary> <data-dir> [doctest args]\n");
    return 1;
  }
  g_cli_path = argv[1];
  g_data_dir = argv[2];
  doctest::Context context;
  context.applyCommandLine(argc - 2, argv + 2);  // keep argv[0] slot for doctest
  return context.run();
}
