#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>

#include "mub/json_io.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string outfile = "cli_out_" + std::to_string(counter++) + ".txt";
  std::string cmd = std::string(MUB_CLI_BIN) + " " + args + " > " + outfile + " 2> /dev/null";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream is(outfile);
  std::stringstream ss;
  ss << is.rdbuf();
  return {code, ss.str()};
}

json load_fixture(const std::string& name) {
  std::ifstream is(std::string(MUB_FIXTURE_DIR) + "/" + name);
  REQUIRE(is.good());
  return json::parse(is);
}

using VecSet = std::set<std::vector<long>>;

VecSet as_set(const json& arrays) {
  VecSet out;
  for (const auto& a : arrays) out.insert(a.get<std::vector<long>>());
  return out;
}

const json& class_by_label(const json& dump, const std::string& label) {
  for (const auto& c : dump.at("classes"))
    if (c.at("label").get<std::string>() == label) return c;
  REQUIRE(false);
  static json dummy;
  return dummy;
}

}  // namespace

TEST_CASE("fixture manifest: every worked example behind one command") {
  json manifest = load_fixture("manifest.json");
  for (const auto& entry : manifest) {
    std::string args = entry.at("args").get<std::string>();
    INFO("command: ", args);
    json expect = load_fixture(entry.at("expect").get<std::string>());
    RunResult res = run_cli(args);
    CHECK(res.code == 0);

    if (expect.contains("csv")) {
      CHECK(res.out == expect.at("csv").get<std::string>() + "\n");
      continue;
    }
    json dump = json::parse(res.out);
    if (expect.contains("members")) {
      for (const auto& [label, members] : expect.at("members").items())
        CHECK(as_set(class_by_label(dump, label).at("members")) == as_set(members));
    }
    if (expect.contains("generators")) {
      for (const auto& [label, gens] : expect.at("generators").items())
        CHECK(as_set(class_by_label(dump, label).at("generators")) == as_set(gens));
    }
    if (expect.contains("separability")) {
      for (const auto& [label, want] : expect.at("separability").items()) {
        const json& row = class_by_label(dump, label);
        CHECK(row.at("partition") == want.at("partition"));
        CHECK(row.at("tag") == want.at("tag"));
        CHECK(row.at("validated").get<bool>());
      }
    }
  }
}

TEST_CASE("identical configurations produce byte-identical output") {
  RunResult a = run_cli("generate --p 2 --n 3 --seed 1");
  RunResult b = run_cli("generate --p 2 --n 3 --seed 1");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  RunResult t1 = run_cli("tomo --p 2 --n 2 --seed 9 --shots 2000");
  RunResult t2 = run_cli("tomo --p 2 --n 2 --seed 9 --shots 2000");
  CHECK(t1.code == 0);
  CHECK(t1.out == t2.out);
}

TEST_CASE("exit code contract") {
  CHECK(run_cli("generate --p 4 --n 1").code == 2);
  CHECK(run_cli("generate --p 3 --n 0").code == 2);
  CHECK(run_cli("generate --p 2 --n 3 --poly 1,0,0,1").code == 2);  // x^3+1 is reducible
  CHECK(run_cli("verify --p 2 --n 1").code == 0);
  CHECK(run_cli("nonsense").code == 2);
  CHECK(run_cli("separability --p 3 --n 2").code == 0);
}

TEST_CASE("verify catches a corrupted dump") {
  RunResult gen = run_cli("generate --p 2 --n 2 --no-matrices --out dump_good.json");
  REQUIRE(gen.code == 0);
  CHECK(run_cli("verify --in dump_good.json").code == 0);

  std::ifstream is("dump_good.json");
  json dump = json::parse(is);
  dump["classes"][0]["members"][1] = dump["classes"][1]["members"][1];
  std::ofstream os("dump_bad.json");
  os << dump.dump();
  os.close();
  CHECK(run_cli("verify --in dump_bad.json").code == 1);
}

TEST_CASE("verify reports worst deviations") {
  RunResult res = run_cli("verify --p 2 --n 1");
  REQUIRE(res.code == 0);
  json rep = json::parse(res.out);
  CHECK(rep.at("pass").get<bool>());
  CHECK(rep.at("partition").at("pass").get<bool>());
  CHECK(rep.at("commutation").at("worst").get<double>() < 1e-12);
  CHECK(rep.at("mub").at("worst_cross").get<double>() < 1e-12);
  CHECK(rep.at("mub").at("worst_vec_cross").get<double>() < 1e-12);

  RunResult res9 = run_cli("verify --p 3 --n 2");
  REQUIRE(res9.code == 0);
  json rep9 = json::parse(res9.out);
  CHECK(rep9.at("pass").get<bool>());
}

TEST_CASE("tomography command") {
  RunResult res = run_cli("tomo --p 5 --n 1 --seed 7");
  REQUIRE(res.code == 0);
  json rep = json::parse(res.out);
  CHECK(rep.at("exact_frobenius_error").get<double>() < 1e-9);
  CHECK(rep.at("route").get<std::string>() == "prime");

  RunResult sampled = run_cli("tomo --p 2 --n 2 --shots 100000 --seed 1");
  REQUIRE(sampled.code == 0);
  json srep = json::parse(sampled.out);
  CHECK(srep.at("exact_frobenius_error").get<double>() < 1e-9);
  CHECK(srep.at("sampled_frobenius_error").get<double>() > 0);
  CHECK(srep.at("route").get<std::string>() == "general");
  CHECK(srep.at("sampled_record").at("rng").get<std::string>() == "mt19937_64");

  RunResult mixed = run_cli("tomo --p 2 --n 1 --mixed");
  REQUIRE(mixed.code == 0);
  json mrep = json::parse(mixed.out);
  for (const auto& [label, pr] : mrep.at("record").at("probs").items())
    for (const auto& v : pr) CHECK(v.get<double>() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("phased spin op serialization") {
  mub::PhasedSpinOp op = mub::spin_mul(mub::phased({3, 0, 1}), mub::phased({3, 1, 0}));
  json j = mub::to_json(op);
  CHECK(j == json({{"d", 3}, {"j", 1}, {"k", 1}, {"phase_exp", 2}}));
}

TEST_CASE("polynomial override changes the defining field") {
  RunResult def = run_cli("generate --p 2 --n 3 --no-matrices");
  RunResult same = run_cli("generate --p 2 --n 3 --poly 1,1,0,1 --no-matrices");
  REQUIRE(def.code == 0);
  REQUIRE(same.code == 0);
  CHECK(json::parse(def.out) == json::parse(same.out));

  RunResult other = run_cli("generate --p 2 --n 3 --poly 1,0,1,1 --no-matrices");  // x^3+x^2+1
  REQUIRE(other.code == 0);
  CHECK(json::parse(other.out).at("poly") == json::parse("[1,0,1,1]"));
  CHECK(run_cli("verify --p 2 --n 3 --poly 1,0,1,1").code == 0);
}
