#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "qhpair/cli/commands.hpp"
#include "qhpair/cli/expression.hpp"
#include "qhpair/cli/manifest.hpp"

using namespace qhpair;
using namespace qhpair::cli;

namespace {

std::vector<std::filesystem::path> shipped_manifests() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(QHPAIR_DATA_DIR))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

void check_same_problem(const PairingProblem& a, const PairingProblem& b) {
  CHECK(a.name == b.name);
  CHECK(a.group.name == b.group.name);
  CHECK(a.group.gram == b.group.gram);
  CHECK(a.box == b.box);
  CHECK(a.constants.n1 == b.constants.n1);
  CHECK(a.constants.k == b.constants.k);
  REQUIRE(a.subgroups.size() == b.subgroups.size());
  for (std::size_t i = 0; i < a.subgroups.size(); ++i) {
    CHECK(a.subgroups[i].id == b.subgroups[i].id);
    CHECK(a.subgroups[i].basis == b.subgroups[i].basis);
    CHECK(a.subgroups[i].arrangement == b.subgroups[i].arrangement);
  }
  REQUIRE(a.fixed_points.size() == b.fixed_points.size());
  for (std::size_t i = 0; i < a.fixed_points.size(); ++i) {
    CHECK(a.fixed_points[i].mu == b.fixed_points[i].mu);
    CHECK(a.fixed_points[i].normal_weights == b.fixed_points[i].normal_weights);
    CHECK(a.fixed_points[i].h == b.fixed_points[i].h);
  }
}

int run(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("shipped manifests round-trip") {
    const auto files = shipped_manifests();
    REQUIRE(files.size() >= 6);
    for (const auto& f : files) {
      CAPTURE(f.string());
      const Manifest m = load_manifest(f.string());
      const Json printed = manifest_to_json(m);
      const Manifest again = manifest_from_json(printed);
      CHECK(dump_json(manifest_to_json(again)) == dump_json(printed));
      CHECK(m.functions == again.functions);
      CHECK(m.order == again.order);
      if (m.problem) check_same_problem(*m.problem, *again.problem);
    }
  }

  TEST_CASE("built-in problems round-trip through JSON") {
    for (const auto& name : builtin_problem_names()) {
      CAPTURE(name);
      const PairingProblem p = load_problem("builtin:" + name);
      const PairingProblem q = problem_from_json(problem_to_json(p));
      check_same_problem(p, q);
      CHECK(residue_pairing(p) == residue_pairing(q));
    }
  }

  TEST_CASE("raw group data round-trips") {
    PairingProblem p = su2_single_block_problem();
    p.group.name = "custom";
    const Json j = problem_to_json(p);
    CHECK(j["group"].is_object());
    const PairingProblem q = problem_from_json(j);
    check_same_problem(p, q);
    CHECK(residue_pairing(q) == Rational(-1, 96));
  }

  TEST_CASE("unknown keys are rejected at every level") {
    const Json base = manifest_to_json(load_manifest(std::string(QHPAIR_DATA_DIR) + "/problems/su3_circles.json"));
    const std::vector<Json::json_pointer> places{
        Json::json_pointer(""), Json::json_pointer("/problem"), Json::json_pointer("/problem/subgroups/0"),
        Json::json_pointer("/problem/fixed_points/1")};
    for (const auto& ptr : places) {
      CAPTURE(ptr.to_string());
      Json j = base;
      j[ptr]["surprise"] = 1;
      CHECK_THROWS_AS(manifest_from_json(j), ParseError);
    }
    CHECK_THROWS_AS(manifest_from_json(Json{{"version", 1}, {"run", {{"boxx", 3}}}}), ParseError);
    CHECK_THROWS_AS(manifest_from_json(Json{{"version", 2}}), ParseError);
    CHECK_THROWS_AS(manifest_from_json(Json{{"version", 1}, {"run", {{"t", {0.5}}}}}), ParseError);
    CHECK_THROWS_AS(
        manifest_from_json(Json{{"version", 1}, {"arrangement", {{"rank", 1}, {"forms", {"Y1"}}, {"x", 0}}}}),
        ParseError);
  }

  TEST_CASE("floats carry 17 significant digits") {
    Json j = Json::object();
    j["x"] = 0.1;
    j["y"] = -1.0 / 3.0;
    j["n"] = 7;
    j["q"] = to_json(Rational(-2, 6));
    CHECK(dump_json(j) ==
          "{\n  \"x\": 0.10000000000000001,\n  \"y\": -0.33333333333333331,\n  \"n\": 7,\n  \"q\": \"-1/3\"\n}\n");
  }

  TEST_CASE("report values re-parse exactly") {
    std::string out;
    CHECK(run({"--report", "-", "pairing", "compare", "--problem", "builtin:su3-circles-decaying"}, &out) == 0);
    const Json r = Json::parse(out);
    CHECK(r["pass"].get<bool>());
    CHECK(Rational::parse(r["results"]["residue_pairing"].get<std::string>()) == Rational(1, 648));
    for (const auto& b : r["results"]["blocks"]) {
      const std::string s = b["amw_block"].get<std::string>();
      CHECK(Rational::parse(s).str() == s);
    }
  }

  TEST_CASE("reports are deterministic across job counts") {
    std::string a, b;
    const std::vector<std::string> cmd{"szenes", "verify", "--group", "su3", "--expr", "1/(Y1^2*Y2^2*(Y1+Y2)^2)",
                                       "--t", "1/3,0", "--box", "120"};
    auto with_jobs = [&](const std::string& j) {
      std::vector<std::string> v{"--jobs", j, "--report", "-"};
      v.insert(v.end(), cmd.begin(), cmd.end());
      return v;
    };
    CHECK(run(with_jobs("1"), &a) == 0);
    CHECK(run(with_jobs("5"), &b) == 0);
    CHECK(a == b);
    CHECK(a.find("timing") == std::string::npos);
  }

  TEST_CASE("exit codes") {
    CHECK(run({"rootsys", "dims", "--group", "su3", "--lambda", "1,1"}) == 0);
    CHECK(run({"rootsys", "dims", "--group", "sp3", "--lambda", "1,1"}) == 2);
    CHECK(run({"rootsys", "dims", "--group", "su3", "--lambda", "-2,1"}) == 3);
    CHECK(run({"arr", "bases"}) == 3);
    CHECK(run({"nonsense"}) == 2);
    CHECK(run({"--help"}) == 0);
  }
}
