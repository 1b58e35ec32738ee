// End-to-end tests of the command-line binary: exit-code contract, JSON
// schema, generation sidecars, and the engine-agreement invariant of
// --mode auto. The binary path comes in through ONTONET_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"
#include "ontonet/textio.hpp"

using nlohmann::json;
using namespace ontonet;

namespace {

struct RunResult {
  int exitCode = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(ONTONET_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t k; (k = fread(buf, 1, sizeof buf, p)) > 0;)
    out.append(buf, k);
  int status = pclose(p);
  RunResult r;
  r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = std::move(out);
  return r;
}

// One scratch directory per test run; files accumulate and are small.
const std::string& work_dir() {
  static std::string dir = [] {
    std::string t =
        (std::filesystem::temp_directory_path() / "ontonet-cli-XXXXXX")
            .string();
    std::vector<char> buf(t.begin(), t.end());
    buf.push_back('\0');
    REQUIRE(mkdtemp(buf.data()) != nullptr);
    return std::string(buf.data());
  }();
  return dir;
}

std::string write_fixture(const std::string& name, const std::string& text) {
  std::string path = work_dir() + "/" + name;
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), {}};
}

const char* kExample1 =
    "ontology O1 { axiom B <= C }\n"
    "ontology O2 { axiom A <= (some r B) axiom (some r C) <= D }\n"
    "import O1 from O2 sig { A, B, C, D }\n";

// Two-ontology cycle: O defines A <= B over primed copies, OP wraps the
// primed names one (some r _) level deeper per round trip.
const char* kExample2 =
    "ontology O {\n"
    "  axiom A <= B\n"
    "  axiom A == A2\n"
    "  axiom B == B2\n"
    "}\n"
    "ontology OP {\n"
    "  axiom A == (some r A2)\n"
    "  axiom B == (some r B2)\n"
    "}\n"
    "import O from OP sig { A2, B2, r }\n"
    "import OP from O sig { A, B, r }\n";

const char* kRoleFreeChain =
    "ontology P1 { axiom A <= B }\n"
    "ontology P2 { axiom B <= C }\n"
    "import P1 from P2 sig { B, C }\n";

}  // namespace

TEST_CASE("worked example: A <= D entailed, D <= A not") {
  std::string f = write_fixture("ex1.onet", kExample1);
  RunResult yes = run_cli("check " + f + " --query \"A <= D\"");
  CHECK(yes.exitCode == 0);
  CHECK(yes.out.find("verdict: entailed") != std::string::npos);
  CHECK(yes.out.find("mode: closure") != std::string::npos);

  RunResult no = run_cli("check " + f + " --query \"D <= A\"");
  CHECK(no.exitCode == 1);
  CHECK(no.out.find("verdict: notEntailed") != std::string::npos);
}

TEST_CASE("cyclic example: semi-decision entailment and budget exhaustion") {
  std::string f = write_fixture("ex2.onet", kExample2);
  RunResult nested = run_cli(
      "check " + f +
      " --query \"(some r (some r A)) <= (some r (some r B))\""
      " --mode semi --depth 3");
  CHECK(nested.exitCode == 0);

  // auto resolves to semi on a cyclic non-role-free network
  RunResult open = run_cli("check " + f + " --query \"B <= A\" --depth 3");
  CHECK(open.exitCode == 2);
  CHECK(open.out.find("verdict: unknown") != std::string::npos);
  CHECK(open.out.find("mode: semi") != std::string::npos);

  // the nontrivial direction through the cycle: found at depth 1
  RunResult primed = run_cli(
      "check " + f +
      " --ontology OP --query \"(some r A2) <= (some r B2)\""
      " --mode semi --depth 2 --json");
  CHECK(primed.exitCode == 0);
  json j = json::parse(primed.out);
  CHECK(j["schema"] == 1);
  CHECK(j["verdict"] == "entailed");
  CHECK(j["mode"] == "semi");
  CHECK(j["depthReached"] == 1);
  CHECK(j["closure"]["axioms"].get<std::size_t>() > 0);
  CHECK(j["timings"].contains("solveMs"));
}

TEST_CASE("mode auto agrees with gfp, acyclic, closure and reference") {
  std::string f = write_fixture("chain.onet", kRoleFreeChain);
  for (const char* q : {"\"(A and B) <= C\"", "\"C <= A\"", "\"A <= C\""}) {
    int autoCode =
        run_cli("check " + f + " --query " + q).exitCode;
    for (const char* m : {"gfp", "acyclic", "closure", "reference"}) {
      RunResult r = run_cli("check " + f + " --query " + q + " --mode " + m);
      CAPTURE(q);
      CAPTURE(m);
      CHECK(r.exitCode == autoCode);
    }
    int explicitCode =
        run_cli("check " + f + " --query " + q + " --mode gfp --backend explicit")
            .exitCode;
    CHECK(explicitCode == autoCode);
  }
}

TEST_CASE("gen el-exists writes the network and a coherent manifest") {
  std::string out = work_dir() + "/elx.onet";
  RunResult g = run_cli("gen el-exists --n 1 --mode equiv --out " + out);
  REQUIRE(g.exitCode == 0);

  json m = json::parse(slurp(work_dir() + "/elx.manifest.json"));
  CHECK(m["schema"] == 1);
  CHECK(m["builder"] == "el-exists");
  CHECK(m["ontologies"] == 4);
  CHECK(m["relations"] == 4);
  CHECK(m["acyclic"] == true);
  CHECK(m["expected"] == "entailed");

  // file re-parses and the suggested query checks out as promised
  ParseResult pr = parse_network(slurp(out));
  REQUIRE(pr.ok());
  CHECK(pr.network->ontologies.size() == 4);
  std::string focus = m["focus"].get<std::string>();
  std::string query = m["suggestedQuery"].get<std::string>();
  RunResult c = run_cli("check " + out + " --ontology " + focus +
                        " --query \"" + query + "\"");
  CHECK(c.exitCode == 0);
}

TEST_CASE("gen role-chain emits the base chain axiom; checks refuse it") {
  std::string out = work_dir() + "/chain0.onet";
  RunResult g = run_cli("gen role-chain --n 0 --mode exact --out " + out);
  REQUIRE(g.exitCode == 0);
  CHECK(slurp(out).find("role r o r <= s") != std::string::npos);

  json m = json::parse(slurp(work_dir() + "/chain0.manifest.json"));
  std::string query = m["suggestedQuery"].get<std::string>();
  CHECK(query == "role r o r <= s");
  // role inclusion queries sit outside every bundled decision engine
  RunResult c = run_cli("check " + out + " --query \"" + query + "\"");
  CHECK(c.exitCode == 4);
}

TEST_CASE("gen tm runs the simulator oracle into the manifest") {
  std::string machine = write_fixture("accept1.tm",
                                      "states q0 qa\n"
                                      "start q0\n"
                                      "accept qa\n"
                                      "alphabet bl\n"
                                      "blank bl\n"
                                      "delta q0 bl -> qa bl R\n"
                                      "delta qa bl -> qa bl R\n");
  std::string out = work_dir() + "/tm1.onet";
  RunResult g =
      run_cli("gen tm --machine " + machine + " --exp 1 --out " + out);
  REQUIRE(g.exitCode == 0);

  json m = json::parse(slurp(work_dir() + "/tm1.manifest.json"));
  CHECK(m["ontologies"] == 232);
  CHECK(m["relations"] == 258);
  CHECK(m["acyclic"] == true);
  CHECK(m["expected"] == "bySimulator");
  CHECK(m["oracleVerdict"] == "entailed");

  RunResult c = run_cli("check " + out + " --ontology " +
                        m["focus"].get<std::string>() + " --query \"" +
                        m["suggestedQuery"].get<std::string>() + "\"");
  CHECK(c.exitCode == 0);

  // alternating directives are rejected by the deterministic builder
  std::string alt = write_fixture("alt.atm",
                                  "exists q0\nstart q0\nreject qr\n"
                                  "alphabet bl\nblank bl\n"
                                  "branch 1 q0 bl -> qr bl R\n"
                                  "branch 2 q0 bl -> qr bl L\n");
  CHECK(run_cli("gen tm --machine " + alt + " --exp 1").exitCode == 3);
}

TEST_CASE("gen atm: gfp on the cyclic instance matches the oracle") {
  std::string machine = write_fixture("rej.atm",
                                      "exists q0\n"
                                      "start q0\n"
                                      "reject qr\n"
                                      "alphabet bl\n"
                                      "blank bl\n"
                                      "tape 4\n"
                                      "branch 1 q0 bl -> qr bl R\n"
                                      "branch 2 q0 bl -> qr bl L\n");
  std::string out = work_dir() + "/rej.onet";
  RunResult g = run_cli("gen atm --machine " + machine + " --out " + out);
  REQUIRE(g.exitCode == 0);

  json m = json::parse(slurp(work_dir() + "/rej.manifest.json"));
  CHECK(m["ontologies"] == 3);
  CHECK(m["relations"] == 4);
  CHECK(m["acyclic"] == false);
  CHECK(m["oracleVerdict"] == "entailed");

  RunResult c = run_cli("check " + out + " --ontology " +
                        m["focus"].get<std::string>() + " --query \"" +
                        m["suggestedQuery"].get<std::string>() +
                        "\" --mode gfp --json");
  CHECK(c.exitCode == 0);
  json j = json::parse(c.out);
  CHECK(j["verdict"] == "entailed");
  CHECK(j["dd"]["nodes"].get<std::size_t>() > 0);

  // unfolded variant stays consistent with the bounded simulator
  std::string uout = work_dir() + "/rej-unfold.onet";
  RunResult u =
      run_cli("gen atm --machine " + machine + " --unfold 2 --out " + uout);
  REQUIRE(u.exitCode == 0);
  json um = json::parse(slurp(work_dir() + "/rej-unfold.manifest.json"));
  CHECK(um["ontologies"] == 6);
  CHECK(um["relations"] == 6);
  CHECK(um["acyclic"] == true);
  CHECK(um["oracleVerdict"] == "entailed");
}

TEST_CASE("validate reports dialects and acyclicity") {
  std::string f = write_fixture("ex1v.onet", kExample1);
  RunResult r = run_cli("validate " + f);
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("acyclic: yes") != std::string::npos);
  CHECK(r.out.find("relations: 1") != std::string::npos);

  RunResult j = run_cli("validate " + f + " --json");
  CHECK(j.exitCode == 0);
  json v = json::parse(j.out);
  CHECK(v["schema"] == 1);
  CHECK(v["acyclic"] == true);
  CHECK(v["dialect"] == "EL");
  CHECK(v["ontologies"].size() == 2);

  std::string c = write_fixture("ex2v.onet", kExample2);
  json cv = json::parse(run_cli("validate " + c + " --json").out);
  CHECK(cv["acyclic"] == false);
}

TEST_CASE("closure dump round-trips through the machine-symbol parser") {
  std::string f = write_fixture("ex1c.onet", kExample1);
  RunResult r = run_cli("closure " + f + " --ontology O1");
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("# path:") != std::string::npos);
  ParseResult back = parse_network(r.out, true);
  REQUIRE(back.ok());
  CHECK(back.network->ontologies.count("O1") == 1);

  // cyclic networks need an explicit bound
  std::string c = write_fixture("ex2c.onet", kExample2);
  CHECK(run_cli("closure " + c + " --ontology O").exitCode == 4);
  CHECK(run_cli("closure " + c + " --ontology O --depth 2").exitCode == 0);
}

TEST_CASE("bench emits one CSV row per parameter") {
  RunResult r = run_cli("bench --max-n 2");
  CHECK(r.exitCode == 0);
  std::size_t rows = 0;
  for (std::size_t at = 0; (at = r.out.find("el-exists,", at)) !=
                           std::string::npos;
       ++at)
    ++rows;
  CHECK(rows == 3);
  CHECK(r.out.find("family,param,ontologies") == 0);
  CHECK(r.out.find("notEntailed") == std::string::npos);
}

TEST_CASE("error paths map to the documented exit codes") {
  CHECK(run_cli("check /nonexistent.onet --query \"A <= B\"").exitCode == 3);

  std::string broken = write_fixture("broken.onet", "ontology Bad {\n");
  CHECK(run_cli("check " + broken + " --query \"A <= B\"").exitCode == 3);

  std::string f = write_fixture("ex1e.onet", kExample1);
  CHECK(run_cli("check " + f + " --query \"A <= \"").exitCode == 3);
  CHECK(run_cli("check " + f + " --query \"A <= D\" --mode gfp").exitCode ==
        4);
  CHECK(run_cli("check " + f + " --query \"A <= D\" --mode bogus").exitCode ==
        3);
  CHECK(run_cli("check " + f + " --ontology NOPE --query \"A <= D\"")
            .exitCode == 3);

  std::string c = write_fixture("ex2e.onet", kExample2);
  CHECK(run_cli("check " + c + " --query \"A <= B\" --mode closure")
            .exitCode == 4);

  // node budget exhaustion surfaces as the internal-limit code
  std::string machine = write_fixture("rej2.atm",
                                      "exists q0\nstart q0\nreject qr\n"
                                      "alphabet bl\nblank bl\ntape 4\n"
                                      "branch 1 q0 bl -> qr bl R\n"
                                      "branch 2 q0 bl -> qr bl L\n");
  std::string out = work_dir() + "/rej2.onet";
  REQUIRE(run_cli("gen atm --machine " + machine + " --out " + out).exitCode ==
          0);
  json m = json::parse(slurp(work_dir() + "/rej2.manifest.json"));
  std::string cmd = "ONTONET_DD_NODE_LIMIT=100 " +
                    std::string(ONTONET_CLI_PATH) + " check " + out +
                    " --ontology " + m["focus"].get<std::string>() +
                    " --query \"" + m["suggestedQuery"].get<std::string>() +
                    "\" --mode gfp 2>/dev/null";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 5);
}
