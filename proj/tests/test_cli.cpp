#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "ban/cli.hpp"

using namespace ban;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fig1_path() { return std::string(BAN_SOURCE_DIR) + "/tests/data/fig1.json"; }

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "ban_cli_test";
  fs::create_directories(dir);
  return dir;
}

bool contains(const std::string& text, const std::string& part) {
  return text.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("analyze") {
  const Result c = cli({"analyze", "C-:3", "--mode", "parallel"});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "attractors: 2"));
  CHECK(contains(c.out, "period 2"));
  CHECK(contains(c.out, "period 6"));
  CHECK(contains(c.out, "recurring: 8 of 8"));

  const Result f = cli({"analyze", fig1_path(), "--mode", "asynchronous"});
  CHECK(f.code == 0);
  CHECK(contains(f.out, "length 1: 011"));
  CHECK(contains(f.out, "length 4: 100 101 110 111"));

  const Result one = cli({"analyze", "C+:1"});
  CHECK(contains(one.out, "2 fixed points"));

  CHECK(cli({"analyze", fig1_path(), "--mode", "blockseq", "0,1|2"}).code == 0);
}

TEST_CASE("analyze artifacts embed the manifest and are reproducible") {
  const fs::path dir = scratch();
  const std::string json = (dir / "a.json").string();
  const std::string dot = (dir / "a.dot").string();
  const std::string csv = (dir / "a.csv").string();
  const std::vector<std::string> args = {"analyze", "D--:2,2", "--mode", "async",
                                         "--json", json, "--dot", dot, "--csv", csv};
  REQUIRE(cli(args).code == 0);
  const std::string first = read_file(json);
  const std::string first_dot = read_file(dot);
  REQUIRE(cli(args).code == 0);
  CHECK(read_file(json) == first);
  CHECK(read_file(dot) == first_dot);

  const Json j = Json::parse(first);
  CHECK(j["manifest"]["command"] == "analyze");
  CHECK(j["manifest"]["mode"] == "asynchronous");
  CHECK(j["manifest"]["version"] == kToolVersion);
  CHECK(j["network"] == "D--:2,2:and");
  CHECK(contains(first_dot, "// manifest: "));
  CHECK(contains(read_file(csv), "# manifest: "));
}

TEST_CASE("predict") {
  const Result c = cli({"predict", "C+:3"});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "T=4"));

  const Result d = cli({"predict", "D--:2,2"});
  CHECK(contains(d.out, "omega=4"));
  CHECK(contains(d.out, "T=1"));

  const Result x = cli({"predict", "D--:5,1", "--check-bounds"});
  CHECK(x.code == 0);
  CHECK(contains(x.out, "ExcludedDescriptor"));

  const Result m = cli({"predict", "D-+:1,2"});
  CHECK(m.code == 4);
  CHECK(contains(m.out, "paper-discrepancy"));

  const fs::path dir = scratch();
  const std::string csv = (dir / "p.csv").string();
  CHECK(cli({"predict", "C-:4", "--csv", csv}).code == 0);
  CHECK(contains(read_file(csv), "p,X,X_min,A"));
}

TEST_CASE("verify exit codes") {
  CHECK(cli({"verify", "cycles", "1..4"}).code == 4);
  CHECK(cli({"verify", "double-cycles", "positive", "1..5"}).code == 0);
  CHECK(cli({"verify", "double-cycles", "mixed", "1..4"}).code == 4);
  CHECK(cli({"verify", "duality", "1..4"}).code == 0);
  CHECK(cli({"verify", "robert", "--samples", "20", "--seed", "3"}).code == 0);
  CHECK(cli({"verify", "thomas", "--samples", "20", "--seed", "3"}).code == 0);
  CHECK(cli({"verify", "sequences", "2..2"}).code == 1);
  CHECK(cli({"verify", "planets"}).code == 2);
  CHECK(cli({"verify", "cycles", "4..1"}).code == 2);
  CHECK(cli({"verify", "cycles", "1..25"}).code == 3);
}

TEST_CASE("sequence and replay") {
  const Result s = cli({"sequence", "D--:2,2", "simp", "110"});
  CHECK(s.code == 0);
  CHECK(contains(s.out, "final: 000"));

  const Result f = cli({"sequence", "D++:2,2", "fix1", "011"});
  CHECK(f.code == 0);
  CHECK(contains(f.out, "final: 111"));

  const fs::path dir = scratch();
  const std::string trace = (dir / "t.jsonl").string();
  const Result c = cli({"sequence", "D--:2,2", "copy_p", "--start", "alternating",
                        "--target", "110", "--trace", trace});
  CHECK(contains(c.out, "final: 110"));
  // The stated bound 3(l+r-4)-1 is negative here.
  CHECK(c.code == 1);
  CHECK(cli({"replay", "D--:2,2", trace}).code == 0);
  CHECK(cli({"replay", "D--:2,4", trace}).code == 1);

  CHECK(cli({"sequence", "D--:2,2", "fix0", "110"}).code == 2);
  CHECK(cli({"sequence", "D--:2,2", "simp", "11"}).code == 2);
  CHECK(cli({"sequence", "C-:3", "simp", "110"}).code == 2);
}

TEST_CASE("usage, parse and cap errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"analyze"}).code == 2);
  const Result p = cli({"analyze", "C-:x"});
  CHECK(p.code == 2);
  CHECK(contains(p.err, "column 4"));
  CHECK(cli({"analyze", "C-:25"}).code == 3);
  CHECK(cli({"analyze", "C-:8", "--cap", "6"}).code == 3);
  CHECK(cli({"analyze", "C-:3", "--mode", "sideways"}).code == 2);
  CHECK(cli({"analyze", "/nonexistent/spec.json"}).code == 2);
  CHECK(cli({"--version"}).code == 0);
}
