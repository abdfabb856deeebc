// Command-line behaviour: exit codes, output formats and determinism.
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "bsurf/cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace testing;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = bsurf::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string triple_file(const std::string& cls) { return fixture(cls + "_triple.json"); }

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"induct", "sideways"}).code == 2);
  CHECK(run({"keane", "--pi", "A B C D / D C B A", "--lambda", "1,2,x,4"}).code == 2);
  CHECK(run({"density-check", "--pi", "A B C D / D C B A", "--samples", "5"}).code == 2);  // seed is required
  CHECK(run({"k0", "--in", "/nonexistent/window.json", "--from", "0", "--to", "1"}).code == 2);
  CHECK(run({"theta", "--I", "1", "--J", "1", "--star", "1-2"}).code == 2);
}

TEST_CASE("help exits cleanly") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("induct") != std::string::npos);
}

TEST_CASE("keane certifies the fixture triples and finds collisions") {
  for (const std::string cls : {"h2_hyperelliptic", "h2_second_class"}) {
    auto r = run({"keane", "--triple", triple_file(cls), "--depth", "200"});
    CHECK(r.code == 0);
  }
  auto bad = run({"keane", "--pi", "A B C D / D C B A", "--lambda", "1,1,1,1", "--depth", "20"});
  CHECK(bad.code == 1);
}

TEST_CASE("induct reports a hypothesis failure with exit 1") {
  auto r = run({"induct", "rv", "--pi", "A B C D / D C B A", "--lambda", "1,1,1,1", "--tau", "1,1,-1,-2",
                "--steps", "3"});
  CHECK(r.code == 1);
  CHECK(r.out.find("Keane hypothesis violated") != std::string::npos);
  auto ok = run({"induct", "rh", "--triple", triple_file("h2_hyperelliptic"), "--steps", "20", "--renorm"});
  CHECK(ok.code == 0);
}

TEST_CASE("JSON output parses and is deterministic") {
  std::vector<std::vector<std::string>> cmds = {
      {"chamanara", "--demo", "--depth", "2"},
      {"density-check", "--pi", "A B C D / B C D A", "--samples", "20", "--seed", "5", "--jacobian", "5"},
      {"rauzy-graph", "--pi", "A B C D / D C B A"},
      {"k0", "classify", "--in", fixture("chamanara_window.json")},
      {"theta", "--I", "2", "--J", "2", "--star", "1:3,1:4,2:3,2:4"},
      {"paths", "sigma", "--in", fixture("h2_hyperelliptic_window.json"), "--depth", "1"},
      {"diagram", "check", "--in", fixture("h2_second_class_window.json"), "--state",
       fixture("h2_second_class_state.json"), "--depth", "1"},
  };
  for (auto args : cmds) {
    CAPTURE(args.front());
    args.push_back("--emit");
    args.push_back("json");
    auto a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::accept(a.out));
  }
  auto demo = nlohmann::json::parse(run({"--emit", "json", "chamanara", "--demo", "--depth", "2"}).out);
  CHECK(demo["k0"] == "Z[1/2]");
  CHECK(demo["state_valid"] == true);
  CHECK(demo["invariant"] == "1");
  auto rg = nlohmann::json::parse(run({"rauzy-graph", "--pi", "A B C D / D C B A", "--emit", "json"}).out);
  CHECK(rg["nodes"].size() == 7);
  CHECK(rg["edges"].size() == 14);
}

TEST_CASE("density-check summary") {
  auto r = run({"density-check", "--pi", "A B C D / D C B A", "--samples", "100", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("identity holds at 100/100 samples") != std::string::npos);
}

TEST_CASE("diagram build writes files that check out") {
  auto dir = std::filesystem::temp_directory_path() / "bsurf_cli_test";
  std::filesystem::create_directories(dir);
  std::string win = (dir / "w.json").string(), st = (dir / "s.json").string(), dot = (dir / "w.dot").string();
  auto b = run({"diagram", "build", "--triple", triple_file("h2_hyperelliptic"), "--window", "-3", "3", "--out", win,
                "--state-out", st});
  REQUIRE(b.code == 0);
  CHECK(bsurf::read_file(win) == bsurf::read_file(fixture("h2_hyperelliptic_window.json")));
  CHECK(run({"diagram", "check", "--in", win, "--state", st, "--depth", "2"}).code == 0);
  CHECK(run({"diagram", "dot", "--in", win, "--out", dot}).code == 0);
  CHECK(bsurf::read_file(dot).find("digraph") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("default depth from the environment") {
  setenv("BSURF_DEPTH_DEFAULT", "9", 1);
  CHECK(bsurf::default_depth() == 9);
  setenv("BSURF_DEPTH_DEFAULT", "junk", 1);
  CHECK(bsurf::default_depth(4) == 4);
  unsetenv("BSURF_DEPTH_DEFAULT");
  CHECK(bsurf::default_depth() == 6);
}
