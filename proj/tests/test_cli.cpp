#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "cli.hpp"

using namespace phidelta;
using phidelta::cli::json;

namespace {

std::string const root = PHIDELTA_SOURCE_DIR;

std::string fixture(std::string const& name) {
  return root + "/scenarios/" + name;
}

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(std::move(args), out, err);
  return {status, out.str(), err.str()};
}

// A scenario written to a temporary file.
struct TempScenario {
  std::filesystem::path path;
  explicit TempScenario(std::string const& text)
      : path(std::filesystem::temp_directory_path() /
             ("phidelta_" + std::to_string(std::hash<std::string>{}(text)) + ".scn")) {
    std::ofstream(path) << text;
  }
  ~TempScenario() {
    std::filesystem::remove(path);
  }
};

std::string const z18_text = R"(# comment
[ring]
kind = integers

[module]
orders = 18

[submodule]
gens = 3

[mcs]
gens = one

[delta]
fn = rad

[phi]
fn = mul(2)
)";

template <class Fn>
std::string error_of(Fn fn) {
  try {
    fn();
  } catch (std::exception const& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("the Z_18 scenario parses to its fields", "[cli][scenario]") {
  auto sc = parse_scenario(z18_text);
  CHECK(sc.ring == "integers");
  CHECK(sc.orders == std::vector<int_t>{18});
  CHECK(sc.generators == std::vector<std::vector<int_t>>{{3}});
  CHECK(sc.mcs.empty());
  CHECK(sc.delta.to_string() == "rad");
  CHECK(sc.phi.to_string() == "mul(2)");
  auto in = build(sc);
  CHECK(in.n.elements() == std::vector<Elem>{0, 3, 6, 9, 12, 15});
  CHECK(in.s.is_one());
}

TEST_CASE("scenarios round-trip through the serializer", "[cli][scenario]") {
  for (auto const& name : {"z18.scn", "example_delta.scn", "product_p1.scn"}) {
    INFO(name);
    auto sc = parse_scenario(cli::read_file(fixture(name)));
    auto text = serialize_scenario(sc);
    CHECK(parse_scenario(text) == sc);
    CHECK(serialize_scenario(parse_scenario(text)) == text);
  }
  auto sc = parse_scenario(
      "[ring]\nkind = finite\nmoduli = 4, 9\n[module]\norders = 4, 9\ncomponents = 0, 1\n"
      "[submodule]\ngens = (2, 3), (0, 1)\n[mcs]\ngens = (1, 2), 3\n"
      "[delta]\nfn = plus((2, 3))\n[phi]\nfn = power(3)\n");
  CHECK(parse_scenario(serialize_scenario(sc)) == sc);
}

TEST_CASE("scenario syntax errors carry line and column", "[cli][scenario]") {
  try {
    parse_scenario("[ring]\nkind = integers\n[module]\norders = 12 x\n");
    FAIL("no error");
  } catch (ScenarioError const& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 13);
  }
  try {
    parse_scenario("[ring]\nkind = integers\n[module]\n  colour = 3\n");
    FAIL("no error");
  } catch (ScenarioError const& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 3);
    CHECK(std::string(e.what()).find("unknown key 'colour'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_scenario("[rings]\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("kind = integers\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("[ring]\nkind = integers\nkind = finite\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("[ring]\nkind = integers\n[delta]\nfn = plus(2\n"),
                  ScenarioError);
}

TEST_CASE("scenario semantic errors name the field", "[cli][scenario]") {
  auto with = [](std::string const& module, std::string const& phi) {
    return "[ring]\nkind = integers\n[module]\norders = " + module +
           "\n[submodule]\ngens = 0\n[phi]\nfn = " + phi + "\n";
  };
  CHECK(error_of([&] { build(parse_scenario(with("", "empty"))); })
            .find("module.orders") != std::string::npos);
  CHECK(error_of([&] { build(parse_scenario(with("12", "mul((2, 3))"))); })
            .find("phi.fn") != std::string::npos);
  CHECK(error_of([&] { build(parse_scenario(with("12", "frobenius"))); })
            .find("phi.fn") != std::string::npos);
  CHECK_THROWS_AS(parse_scenario(with("1000000000", "empty")), BoundExceeded);
  CHECK_THROWS_AS(parse_scenario(with("50, 50, 50", "empty")), BoundExceeded);
}

TEST_CASE("classify reports the fixture values", "[cli]") {
  auto z18 = run({"--format", "machine", "classify", fixture("z18.scn")});
  REQUIRE(z18.status == 0);
  auto r = json::parse(z18.out)["result"];
  CHECK(r["verdict"]["holds"] == true);
  CHECK(r["phi_n"] == json({"0", "6", "12"}));
  CHECK(r["delta_colon"] == "3Z");

  auto delta = run({"--format", "machine", "classify", fixture("example_delta.scn")});
  REQUIRE(delta.status == 0);
  r = json::parse(delta.out)["result"];
  CHECK(r["verdict"]["holds"] == true);
  CHECK(r["phi_n"] == json({"0", "4", "8"}));
  CHECK(r["delta_s_verdict"]["holds"] == false);
  CHECK(r["delta_s_verdict"]["counterexample"]["a"] == "2");
  CHECK(r["delta_s_verdict"]["counterexample"]["m"] == "2");
}

TEST_CASE("machine reports match the golden files byte for byte", "[cli][golden]") {
  struct Case {
    std::string golden;
    std::vector<std::string> args;
  };
  std::vector<Case> cases{
      {"classify_z18", {"classify", fixture("z18.scn")}},
      {"classify_example_delta", {"classify", fixture("example_delta.scn")}},
      {"lattice_z18", {"lattice", fixture("z18.scn")}},
      {"lattice_example_delta", {"lattice", fixture("example_delta.scn")}},
      {"search_example_delta",
       {"search", fixture("example_delta.scn"), "--a", "phi-delta-S-primary", "--b",
        "delta-S-primary"}},
      {"search_product_p1",
       {"search", fixture("product_p1.scn"), "--a", "product-factor-primary", "--b",
        "phi-delta-S-primary"}},
      {"verify_z18", {"verify", fixture("z18.scn")}},
      {"verify_product_p1", {"verify", fixture("product_p1.scn")}},
  };
  for (auto& c : cases) {
    INFO(c.golden);
    auto args = c.args;
    args.insert(args.begin(), {"--format", "machine"});
    auto got = run(args);
    CHECK(got.status == 0);
    CHECK(got.out == cli::read_file(fixture("golden/" + c.golden + ".json")));
    // Relative file names are echoed through the parsed scenario, never the path.
    args.insert(args.begin(), {"--seed", "11"});
    CHECK(run(args).out == got.out);
  }
}

TEST_CASE("exit codes follow the contract", "[cli][exit]") {
  CHECK(run({"classify", fixture("z18.scn")}).status == 0);
  CHECK(run({"lattice", fixture("z18.scn")}).status == 0);
  CHECK(run({"verify", fixture("z18.scn"), "--suite", "P05"}).status == 0);
  CHECK(run({"search", fixture("z18.scn"), "--a", "prime", "--b", "prime"}).status == 0);

  CHECK(run({}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"classify"}).status == 2);
  CHECK(run({"classify", fixture("missing.scn")}).status == 2);
  CHECK(run({"--format", "xml", "classify", fixture("z18.scn")}).status == 2);
  CHECK(run({"verify", fixture("z18.scn"), "--suite", "P99"}).status == 2);
  CHECK(run({"search", fixture("z18.scn"), "--a", "prime", "--b", "shiny"}).status == 2);
  TempScenario bad("[ring]\nkind = integers\n[module]\norders = 12 x\n");
  auto r = run({"classify", bad.path.string()});
  CHECK(r.status == 2);
  CHECK(r.err.find("line 4") != std::string::npos);
  TempScenario whole(
      "[ring]\nkind = integers\n[module]\norders = 12\n[submodule]\ngens = 1\n");
  CHECK(run({"classify", whole.path.string()}).status == 2);

  // Violations: the corrupted checker on φ = 0, N = <4> in Z_12.
  TempScenario zero(
      "[ring]\nkind = integers\n[module]\norders = 12\n[submodule]\ngens = 4\n"
      "[phi]\nfn = zero\n");
  CHECK(run({"verify", zero.path.string(), "--suite", "P05"}).status == 0);
  testing::corrupt_delta_branch = true;
  auto broken = run({"--format", "machine", "verify", zero.path.string(), "--suite", "P05"});
  testing::corrupt_delta_branch = false;
  CHECK(broken.status == 1);
  auto doc = json::parse(broken.out);
  CHECK(doc["exit"] == 1);
  CHECK(doc["result"]["passed"] == false);
  CHECK(doc["result"]["reports"][0]["violation_count"].get<int>() >= 1);
}
