#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "setfam/cli.hpp"
#include "setfam/family_io.hpp"

using namespace setfam;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "setfam");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json structured(std::vector<std::string> args, int expect_code = kExitOk) {
  args.insert(args.begin(), {"--format", "structured"});
  const Run r = run(args);
  CHECK(r.code == expect_code);
  return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / ("setfam_test_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("family file round trip") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const SetFamily f = oracle::random_family(rng, n, 30);
    const FamilyFile file = FamilyFile::from_family(f, "t" + std::to_string(trial), "random");
    const std::string text = emit_family_file(file);
    const FamilyFile back = parse_family_file(text);
    CHECK(back.to_family() == f);
    CHECK(back.name == file.name);
    CHECK(back.provenance == "random");
    CHECK(emit_family_file(back) == text);
  }
}

TEST_CASE("family file parsing") {
  const auto f = parse_family_file(
      "# comment\nformat setfam-family 1\nground_size 5\n\nsets 2\n-\n0 1 2 3 4\n");
  CHECK(f.ground_size == 5);
  REQUIRE(f.sets.size() == 2);
  CHECK(f.sets[0].empty());
  CHECK(f.to_family().size() == 2);

  const auto parse_error = [](const std::string& text, const std::string& fragment) {
    try {
      parse_family_file(text);
      FAIL("expected parse error for: " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  parse_error("format other 1\n", "line 1");
  parse_error("format setfam-family 1\nground_size 3\nsets 1\n0 5\n", "line 4");
  parse_error("format setfam-family 1\nground_size 3\nsets 1\n1 0\n", "line 4");
  parse_error("format setfam-family 1\nground_size 3\nsets 2\n0\n0\n", "line 5");
  parse_error("format setfam-family 1\nground_size 3\nsets 2\n0\n", "sets");
  parse_error("format setfam-family 1\nground_size 3\nsets 1\n0 x\n", "column");
  parse_error("format setfam-family 1\nground_size 0\nsets 0\n", "line 2");
}

TEST_CASE("fnv1a64 digest") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("analyze") {
  const auto p = temp_file("analyze.txt",
                           "format setfam-family 1\nground_size 3\nsets 4\n-\n0 1\n0 2\n1 2\n");
  const json j = structured({"analyze", p.string()});
  CHECK(j["tool"] == "setfam");
  CHECK(j["results"]["vc_dimension"] == 2);
  CHECK(j["results"]["index"] == 2);
  CHECK(j["results"]["size"] == 4);
  CHECK(j["input_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);

  const Run text = run({"analyze", p.string()});
  CHECK(text.code == kExitOk);
  CHECK(text.out.find("vc_dimension") != std::string::npos);

  const auto bad = temp_file("bad.txt", "format setfam-family 1\nground_size 3\nsets 1\n7\n");
  const Run r = run({"analyze", bad.string()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("line 4") != std::string::npos);
  CHECK(run({"analyze", "/nonexistent/file"}).code != kExitOk);
}

TEST_CASE("construct") {
  const json j = structured({"construct", "prop2", "--l", "3"});
  CHECK(j["results"]["size"] == 6);
  CHECK(j["results"]["ground_size"] == 10);
  CHECK(j["results"]["verified"] == true);
  CHECK(j["results"]["bound_holds"] == true);

  const json c = structured({"construct", "corollary", "--n", "11"});
  CHECK(c["results"]["verified"] == true);

  const json p = structured({"construct", "prop4", "--n", "8", "--d", "3"});
  CHECK(p["results"]["verified"] == true);
  CHECK(p["results"].contains("asymptotic_bound_informational"));

  const auto out = std::filesystem::temp_directory_path() / "setfam_test_construct.txt";
  CHECK(run({"construct", "sep", "--n", "10", "--out", out.string()}).code == kExitOk);
  CHECK(read_family_file(out.string()).ground_size == 10);

  CHECK(run({"construct", "prop2", "--l", "40"}).code == kExitCapacity);
  CHECK(run({"construct", "bogus"}).code == kExitUsage);
}

TEST_CASE("search") {
  const json a = structured({"search", "--d", "2", "--n", "5", "--k", "5"});
  CHECK(a["results"]["status"] == "infeasible");
  const json b = structured({"search", "--d", "2", "--n", "10"});
  CHECK(b["results"]["value"] == 6);
  CHECK(b["results"]["witness_index_exact"] == true);

  json c = structured({"search", "--d", "2", "--n", "10"});
  c.erase("wall_seconds");
  c["results"].erase("steps");
  json b2 = b;
  b2.erase("wall_seconds");
  b2["results"].erase("steps");
  CHECK(b2 == c);

  CHECK(run({"search", "--d", "2", "--n", "11", "--k", "6", "--budget", "3"}).code == kExitBudget);
  CHECK(run({"search", "--d", "2", "--n", "70"}).code == kExitCapacity);
  CHECK(run({"search", "--n", "5"}).code == kExitUsage);
  CHECK(run({"search", "--d", "0", "--n", "5"}).code == kExitUsage);
}

TEST_CASE("verify subcommands") {
  const json q3 = structured({"verify", "q3", "--nmax", "8"});
  CHECK(q3["results"]["all_agree"] == true);

  const json q1 = structured({"verify", "q1", "--d", "1", "--n", "3"});
  CHECK(q1["results"]["complete"] == true);
  CHECK(q1["results"]["inconsistencies"] == 0);

  const json r1 = structured({"verify", "q1", "--d", "2", "--n", "5", "--mode", "random",
                              "--budget", "5000", "--seed", "9"});
  const json r2 = structured({"verify", "q1", "--d", "2", "--n", "5", "--mode", "random",
                              "--budget", "5000", "--seed", "9"});
  CHECK(r1["results"] == r2["results"]);
  CHECK(r1["seed"] == 9);

  const json q5 = structured({"verify", "q5", "--k", "3"});
  CHECK(q5["results"]["certified_maximum"] == true);
  CHECK(q5["results"]["condition_rechecked"] == true);
  const json h = structured({"verify", "q5", "--k", "4", "--mode", "heuristic", "--budget", "2000"});
  CHECK(h["seed"].is_number());

  CHECK(run({"verify"}).code == kExitUsage);
  CHECK(run({"verify", "q3", "--nmax", "20"}).code == kExitCapacity);
}
