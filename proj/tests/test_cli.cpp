#include <doctest.h>

#include <fstream>

#include "invk/cli.hpp"
#include "invk/coeff.hpp"

using namespace invk;
using cli::Json;

namespace {

Json load(const std::string& name) {
  std::ifstream f(std::string(INVK_JOBS_DIR) + "/" + name);
  REQUIRE(f);
  return Json::parse(f);
}

std::vector<std::string> gens(const Json& r) { return r.at("generators").get<std::vector<std::string>>(); }

bool all_passed(const Json& certs) {
  for (const auto& c : certs)
    if (!c.at("passed").get<bool>()) return false;
  return true;
}

}  // namespace

TEST_CASE("cli runs the reflection job") {
  Json r = cli::run("finite-invariants", load("c2_reflection.json"));
  CHECK(gens(r) == std::vector<std::string>{"x^2 - x"});
  CHECK(r.at("command") == "finite-invariants");
  CHECK(all_passed(r.at("certificates")));
  CHECK_FALSE(r.contains("elapsed_ms"));
  Json v = cli::verify(r, "full");
  CHECK(v.at("ok").get<bool>());
}

TEST_CASE("cli results are deterministic and round trip") {
  Json job = load("c2xc2_laurent.json");
  Json a = cli::run("finite-invariants", job), b = cli::run("finite-invariants", job);
  CHECK(a.dump(2) == b.dump(2));
  CHECK(Json::parse(a.dump()) == a);
  CHECK(gens(a) == std::vector<std::string>{"x^2 + xinv^2"});
  cli::RunOptions o;
  o.seed = 5;
  CHECK(cli::run("finite-invariants", job, o).at("inputs_digest") != a.at("inputs_digest"));
  o.seed = 1;
  o.timing = true;
  Json t = cli::run("finite-invariants", job, o);
  CHECK(t.contains("elapsed_ms"));
  CHECK(t.at("inputs_digest") == a.at("inputs_digest"));
}

TEST_CASE("cli verification catches a tampered generator") {
  Json r = cli::run("finite-invariants", load("c2_reflection.json"));
  r["generators"] = Json::array({"x"});
  Json v = cli::verify(r, "fast");
  CHECK_FALSE(v.at("ok").get<bool>());
  bool found = false;
  for (const auto& c : v.at("checks"))
    if (c.at("check") == "generator_invariant[0]") found = !c.at("passed").get<bool>();
  CHECK(found);
  r = cli::run("finite-invariants", load("c2_reflection.json"));
  r["job"]["action"]["generators"] = Json::array({Json::array({"x"})});
  CHECK_FALSE(cli::verify(r).at("ok").get<bool>());
}

TEST_CASE("cli additive and algebraic jobs") {
  Json df = cli::run("ga", load("daigle_freudenburg.json"));
  CHECK(df.at("localizer") == "x1");
  CHECK(gens(df).size() == 3);
  CHECK(df.at("values") == Json::array({"0", "(2*x1^3*x3 - x2^2)/(2*x1^3)"}));

  Json tame = cli::run("localize", load("gm_tame.json"));
  CHECK(tame.at("field_generators") == Json::array({"x2/x1"}));
  Json wild = cli::run("localize", load("gm_nontame.json"));
  CHECK(wild.at("tame") == false);
  CHECK(wild.at("localizer") == "1");
  CHECK(gens(wild).empty());

  Json phi = cli::run("invariantize", load("gm_weights_1_-1.json"));
  CHECK(gens(phi) == std::vector<std::string>{"0", "0", "x1*x2"});
  Json s2 = cli::run("invariantize", load("s2_swap.json"));
  CHECK(gens(s2) == std::vector<std::string>{"x1 + x2", "0"});
  cli::RunOptions o;
  o.order = "lex(y2,y1)";
  CHECK(gens(cli::run("invariantize", load("s2_swap.json"), o)) == std::vector<std::string>{"0", "x1 + x2"});
}

TEST_CASE("cli errors map to exit codes") {
  try {
    cli::run("master", load("gm_weights_1_1.json"));
    FAIL("expected an unsupported branch");
  } catch (const std::exception& e) {
    CHECK(cli::exit_code(e) == 2);
    CHECK(std::string(e.what()).find("multiplicative-character branch unsupported") != std::string::npos);
  }
  Json bad = load("c2_reflection.json");
  bad["ring"]["coeff"] = "RR";
  try {
    cli::run("finite-invariants", bad);
    FAIL("expected an input error");
  } catch (const std::exception& e) {
    CHECK(cli::exit_code(e) == 4);
  }
  CHECK_THROWS_AS(cli::run("no-such-command", load("c2_reflection.json")), InputError);
  Json loc = load("gm_weights_1_1.json");
  loc["options"] = {{"cap_degree", 2}};
  try {
    cli::run("localize", loc);
    FAIL("expected an exhausted budget");
  } catch (const std::exception& e) {
    CHECK(cli::exit_code(e) == 3);
  }
}

TEST_CASE("cli graded and master jobs") {
  Json u = cli::run("unlocalize", load("s2_swap.json"));
  CHECK(gens(u) == std::vector<std::string>{"x1 + x2", "x1*x2"});
  CHECK(cli::verify(u, "full").at("ok").get<bool>());
  Json g = cli::run("graded-unlocalize", load("s2_swap.json"));
  CHECK(gens(g).size() == 2);
  CHECK(cli::verify(g, "full").at("ok").get<bool>());
  Json m = cli::run("master", load("sl2_quadratic_forms.json"));
  CHECK(gens(m) == std::vector<std::string>{"b^2 - 4*a*c"});
  Json n = cli::run("noether-invariants", load("nondomain.json"));
  CHECK(gens(n).size() == 3);
  CHECK(cli::verify(n, "fast").at("ok").get<bool>());
}
