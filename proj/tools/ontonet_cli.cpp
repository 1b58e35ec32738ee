// Command-line front end: entailment checks over ontology networks, instance
// generation with manifest sidecars, network validation, closure dumps and a
// generator scaling bench.
//
// Exit codes: 0 entailed, 1 not entailed, 2 unknown, 3 parse error or bad
// parameters, 4 unsupported dialect/mode combination, 5 internal limit.

#include <chrono>
#include <cstddef>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ontonet/classical.hpp"
#include "ontonet/closure.hpp"
#include "ontonet/core.hpp"
#include "ontonet/netgen.hpp"
#include "ontonet/propnet.hpp"
#include "ontonet/textio.hpp"

namespace {

using nlohmann::json;
using namespace ontonet;

constexpr int kExitEntailed = 0;
constexpr int kExitNotEntailed = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitUnsupported = 4;
constexpr int kExitLimit = 5;

struct CliError {
  int code;
  std::string message;
};

double ms_between(std::chrono::steady_clock::time_point a,
                  std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitBadInput, "cannot open file: " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitBadInput, "cannot write file: " + path};
  out << text;
}

[[noreturn]] void fail_diagnostics(const std::vector<ParseDiagnostic>& ds,
                                   const std::string& what) {
  std::string msg = "cannot parse " + what;
  for (const auto& d : ds)
    if (d.severity == ParseDiagnostic::Severity::Error)
      msg += "\n  " + to_string(d);
  throw CliError{kExitBadInput, msg};
}

Network load_network(const std::string& path, bool machineSymbols) {
  ParseResult pr = parse_network(read_file(path), machineSymbols);
  if (!pr.ok()) fail_diagnostics(pr.diagnostics, path);
  return *pr.network;
}

// The default focus when --ontology is omitted: the first id in canonical
// (sorted) order.
std::string pick_ontology(const Network& n, const std::string& requested) {
  if (n.ontologies.empty())
    throw CliError{kExitBadInput, "network has no ontologies"};
  if (requested.empty()) return n.ontologies.begin()->first;
  if (!n.has_ontology(requested))
    throw CliError{kExitBadInput, "no such ontology: " + requested};
  return requested;
}

// ── check ────────────────────────────────────────────────────────────────

struct CheckOptions {
  std::string file, ontology, query;
  std::string mode = "auto";
  std::string backend = "dd";
  unsigned depth = 4;
  bool asJson = false;
  bool machineSymbols = false;
};

struct CheckReport {
  std::string verdict;  // entailed | notEntailed | unknown
  std::string mode;     // the engine actually used
  std::string backend;  // gfp only
  std::string ontology, query;
  std::optional<unsigned> depthReached;  // semi only
  double parseMs = 0, solveMs = 0;
  std::optional<std::size_t> closureAxioms, closurePaths;
  std::optional<bool> closureComplete;
  std::optional<std::size_t> ddNodes;
};

// Dispatch by dialect: role-free goes to the diagram-backed propositional
// checker, everything else to the completion engine (which refuses inputs
// outside its fragment).
bool classical_entails(const Ontology& o, const Axiom& q) {
  if (dialect_leq(dialect_of(o), Dialect::P) &&
      dialect_leq(dialect_of(q), Dialect::P))
    return entails_prop_dd(o, q);
  return entails_el(o, q);
}

bool role_free(const Network& n, const std::vector<Axiom>& qs) {
  if (!dialect_leq(dialect_of(n), Dialect::P)) return false;
  for (const Axiom& q : qs)
    if (!dialect_leq(dialect_of(q), Dialect::P)) return false;
  return true;
}

std::string resolve_auto(const Network& n, const std::vector<Axiom>& qs) {
  if (role_free(n, qs)) return "gfp";
  return is_acyclic(n) ? "closure" : "semi";
}

std::string solve_one(const Network& n, const std::string& o, const Axiom& q,
                      const std::string& mode, Backend backend, unsigned depth,
                      CheckReport& r) {
  if (mode == "gfp") {
    AgreementTable t = gfp_table(n, q, backend);
    bool yes = t.sets.at(o).intersect(t.factory.violators(q)).empty();
    if (backend == Backend::Dd) r.ddNodes = t.factory.dd_nodes();
    return yes ? "entailed" : "notEntailed";
  }
  if (mode == "acyclic")
    return acyclic_entails(n, o, q) ? "entailed" : "notEntailed";
  if (mode == "reference")
    return reference_entails(n, o, q) ? "entailed" : "notEntailed";
  if (mode == "closure") {
    if (!is_acyclic(n)) throw CyclicNetwork();
    RenamedClosure rc = renamed_closure(n, o, std::nullopt, signature_of(q));
    r.closureAxioms = rc.axioms.axioms.size();
    r.closurePaths = rc.perPath.size();
    r.closureComplete = rc.complete;
    return classical_entails(rc.axioms, q) ? "entailed" : "notEntailed";
  }
  if (mode == "semi") {
    unsigned reached = 0;
    SemiDecision s = semi_decide(n, o, q, depth, classical_entails, &reached);
    r.depthReached = std::max(r.depthReached.value_or(0), reached);
    RenamedClosure rc = renamed_closure(n, o, reached, signature_of(q));
    r.closureAxioms = rc.axioms.axioms.size();
    r.closurePaths = rc.perPath.size();
    r.closureComplete = rc.complete;
    return s == SemiDecision::Entailed ? "entailed" : "unknown";
  }
  throw CliError{kExitBadInput, "unknown mode: " + mode};
}

// An "==" query yields two inclusions; the equivalence holds only if both
// directions do.
std::string combine_verdicts(const std::vector<std::string>& vs) {
  bool anyUnknown = false;
  for (const auto& v : vs) {
    if (v == "notEntailed") return "notEntailed";
    anyUnknown = anyUnknown || v == "unknown";
  }
  return anyUnknown ? "unknown" : "entailed";
}

void print_check(const CheckReport& r, bool asJson) {
  if (asJson) {
    json j;
    j["schema"] = 1;
    j["verdict"] = r.verdict;
    j["mode"] = r.mode;
    if (!r.backend.empty()) j["backend"] = r.backend;
    j["ontology"] = r.ontology;
    j["query"] = r.query;
    if (r.depthReached) j["depthReached"] = *r.depthReached;
    j["timings"] = {{"parseMs", r.parseMs}, {"solveMs", r.solveMs}};
    if (r.closureAxioms)
      j["closure"] = {{"axioms", *r.closureAxioms},
                      {"paths", *r.closurePaths},
                      {"complete", *r.closureComplete}};
    if (r.ddNodes)
      j["dd"] = {{"nodes", *r.ddNodes}, {"limit", dd_node_limit()}};
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "verdict: " << r.verdict << "\n";
  std::cout << "mode: " << r.mode;
  if (!r.backend.empty()) std::cout << " (" << r.backend << ")";
  if (r.depthReached) std::cout << " (depth reached " << *r.depthReached << ")";
  std::cout << "\n";
  std::cout << "ontology: " << r.ontology << "\n";
  std::cout << "query: " << r.query << "\n";
  if (r.closureAxioms)
    std::cout << "closure: " << *r.closureAxioms << " axioms over "
              << *r.closurePaths << " paths"
              << (*r.closureComplete ? " (complete)" : " (bounded)") << "\n";
  if (r.ddNodes)
    std::cout << "dd: " << *r.ddNodes << " live nodes (limit "
              << dd_node_limit() << ")\n";
  std::cout << "time: parse " << r.parseMs << " ms, solve " << r.solveMs
            << " ms\n";
}

int run_check(const CheckOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Network n = load_network(opt.file, opt.machineSymbols);
  std::string o = pick_ontology(n, opt.ontology);
  AxiomParseResult q = parse_axiom(opt.query, opt.machineSymbols);
  if (!q.ok()) fail_diagnostics(q.diagnostics, "query");
  auto t1 = std::chrono::steady_clock::now();

  CheckReport r;
  r.ontology = o;
  r.query = opt.query;
  r.mode = opt.mode == "auto" ? resolve_auto(n, q.axioms) : opt.mode;
  Backend backend =
      opt.backend == "explicit" ? Backend::Explicit : Backend::Dd;
  if (r.mode == "gfp") r.backend = opt.backend;

  std::vector<std::string> verdicts;
  for (const Axiom& a : q.axioms)
    verdicts.push_back(solve_one(n, o, a, r.mode, backend, opt.depth, r));
  r.verdict = combine_verdicts(verdicts);
  auto t2 = std::chrono::steady_clock::now();
  r.parseMs = ms_between(t0, t1);
  r.solveMs = ms_between(t1, t2);

  print_check(r, opt.asJson);
  if (r.verdict == "entailed") return kExitEntailed;
  if (r.verdict == "notEntailed") return kExitNotEntailed;
  return kExitUnknown;
}

// ── machine files ────────────────────────────────────────────────────────

// Line-based description shared by both machine kinds. Directives:
//   states q0 qa          (deterministic state list)
//   forall q0 ...         (alternating universal states; may be empty)
//   exists q1 ...         (alternating existential states; may be empty)
//   start q0
//   accept qa             (deterministic)
//   reject qr             (alternating)
//   alphabet bl x
//   blank bl
//   tape 4                (alternating; cells, default 4)
//   delta q a -> p b R    (deterministic move; R or L)
//   branch 1 q a -> p b R (alternating move of branch 1 or 2)
// '#' starts a comment. A file is alternating iff it uses forall/exists or
// reject. Tables need not be total; gaps become in-place right-moving loops.
struct MachineFile {
  bool alternating = false;
  TMSpec tm;
  ATMSpec atm;
};

int parse_dir(const std::string& t, std::size_t lineNo) {
  if (t == "R" || t == "r" || t == "+1") return +1;
  if (t == "L" || t == "l" || t == "-1") return -1;
  throw CliError{kExitBadInput, "machine file line " + std::to_string(lineNo) +
                                    ": bad direction '" + t + "'"};
}

MachineFile parse_machine(const std::string& text) {
  MachineFile f;
  bool sawStates = false, sawAlt = false, sawAccept = false, sawReject = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    const std::string& k = tok[0];
    auto need = [&](std::size_t nmin) {
      if (tok.size() < nmin)
        throw CliError{kExitBadInput,
                       "machine file line " + std::to_string(lineNo) +
                           ": too few tokens for '" + k + "'"};
    };
    if (k == "states") {
      need(2);
      sawStates = true;
      f.tm.states.insert(f.tm.states.end(), tok.begin() + 1, tok.end());
    } else if (k == "forall") {
      sawAlt = true;
      f.atm.forallStates.insert(f.atm.forallStates.end(), tok.begin() + 1,
                                tok.end());
    } else if (k == "exists") {
      sawAlt = true;
      f.atm.existsStates.insert(f.atm.existsStates.end(), tok.begin() + 1,
                                tok.end());
    } else if (k == "start") {
      need(2);
      f.tm.q0 = f.atm.q0 = tok[1];
    } else if (k == "accept") {
      need(2);
      sawAccept = true;
      f.tm.qacc = tok[1];
    } else if (k == "reject") {
      need(2);
      sawAlt = sawReject = true;
      f.atm.qrej = tok[1];
    } else if (k == "alphabet") {
      need(2);
      f.tm.alphabet.insert(f.tm.alphabet.end(), tok.begin() + 1, tok.end());
      f.atm.alphabet.insert(f.atm.alphabet.end(), tok.begin() + 1, tok.end());
    } else if (k == "blank") {
      need(2);
      f.tm.blank = f.atm.blank = tok[1];
    } else if (k == "tape") {
      need(2);
      f.atm.tapeLength = static_cast<unsigned>(std::stoul(tok[1]));
    } else if (k == "delta") {
      need(7);
      if (tok[3] != "->")
        throw CliError{kExitBadInput,
                       "machine file line " + std::to_string(lineNo) +
                           ": expected '->' in delta"};
      f.tm.delta[{tok[1], tok[2]}] =
          TMMove{tok[4], tok[5], parse_dir(tok[6], lineNo)};
    } else if (k == "branch") {
      need(8);
      if (tok[4] != "->")
        throw CliError{kExitBadInput,
                       "machine file line " + std::to_string(lineNo) +
                           ": expected '->' in branch"};
      TMMove mv{tok[5], tok[6], parse_dir(tok[7], lineNo)};
      if (tok[1] == "1")
        f.atm.delta1[{tok[2], tok[3]}] = mv;
      else if (tok[1] == "2")
        f.atm.delta2[{tok[2], tok[3]}] = mv;
      else
        throw CliError{kExitBadInput,
                       "machine file line " + std::to_string(lineNo) +
                           ": branch index must be 1 or 2"};
    } else {
      throw CliError{kExitBadInput, "machine file line " +
                                        std::to_string(lineNo) +
                                        ": unknown directive '" + k + "'"};
    }
  }
  f.alternating = sawAlt;
  if (f.alternating && sawStates)
    throw CliError{kExitBadInput,
                   "machine file: 'states' belongs to deterministic machines; "
                   "alternating ones use 'forall'/'exists'"};
  if (f.alternating && !sawReject)
    throw CliError{kExitBadInput,
                   "machine file: alternating machine needs 'reject'"};
  if (!f.alternating && !sawAccept)
    throw CliError{kExitBadInput,
                   "machine file: deterministic machine needs 'accept'"};

  // The builders need total tables. Unspecified transitions loop in place
  // moving right, which preserves the verdict: such a loop never reaches the
  // accepting state and never rejects on its own.
  if (f.alternating) {
    for (const auto& states : {f.atm.forallStates, f.atm.existsStates})
      for (const auto& q : states)
        for (const auto& a : f.atm.alphabet) {
          f.atm.delta1.emplace(std::make_pair(q, a), TMMove{q, a, +1});
          f.atm.delta2.emplace(std::make_pair(q, a), TMMove{q, a, +1});
        }
  } else {
    for (const auto& q : f.tm.states)
      for (const auto& a : f.tm.alphabet)
        f.tm.delta.emplace(std::make_pair(q, a), TMMove{q, a, +1});
  }
  return f;
}

// ── gen ──────────────────────────────────────────────────────────────────

std::string sidecar_path(const std::string& out) {
  auto slash = out.find_last_of('/');
  auto dot = out.find_last_of('.');
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash))
    return out + ".manifest.json";
  return out.substr(0, dot) + ".manifest.json";
}

int emit_generated(const std::string& builder, const GenOutput& g,
                   const std::string& outPath, const json& params,
                   const std::optional<std::string>& oracleVerdict) {
  write_file(outPath, serialize_network(g.network));
  json m;
  m["schema"] = 1;
  m["builder"] = builder;
  m["params"] = params;
  m["ontologies"] = g.manifest.ontologyCount;
  m["relations"] = g.manifest.relationCount;
  m["acyclic"] = g.manifest.acyclic;
  m["focus"] = g.focus;
  m["suggestedQuery"] = g.suggestedQuery.key;
  m["expected"] = expected_name(g.expected);
  if (oracleVerdict) m["oracleVerdict"] = *oracleVerdict;
  std::string mp = sidecar_path(outPath);
  write_file(mp, m.dump(2) + "\n");
  std::cout << "wrote " << outPath << " (" << g.manifest.ontologyCount
            << " ontologies, " << g.manifest.relationCount
            << " relations) and " << mp << "\n";
  return 0;
}

// ── validate ─────────────────────────────────────────────────────────────

int run_validate(const std::string& file, bool machineSymbols, bool asJson) {
  Network n = load_network(file, machineSymbols);
  bool ac = is_acyclic(n);
  Signature sig = signature_of(n);
  if (asJson) {
    json j;
    j["schema"] = 1;
    j["acyclic"] = ac;
    j["dialect"] = dialect_name(dialect_of(n));
    j["relations"] = n.relations.size();
    j["signature"] = {{"concepts", sig.concepts.size()},
                      {"roles", sig.roles.size()}};
    json onts = json::array();
    for (const auto& [id, o] : n.ontologies)
      onts.push_back({{"id", id},
                      {"axioms", o.axioms.size()},
                      {"dialect", dialect_name(dialect_of(o))}});
    j["ontologies"] = onts;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "ontologies: " << n.ontologies.size() << "\n";
  for (const auto& [id, o] : n.ontologies)
    std::cout << "  " << id << ": " << o.axioms.size() << " axioms, dialect "
              << dialect_name(dialect_of(o)) << "\n";
  std::cout << "relations: " << n.relations.size() << "\n";
  std::cout << "network dialect: " << dialect_name(dialect_of(n)) << "\n";
  std::cout << "acyclic: " << (ac ? "yes" : "no") << "\n";
  std::cout << "signature: " << sig.concepts.size() << " concepts, "
            << sig.roles.size() << " roles\n";
  return 0;
}

// ── closure ──────────────────────────────────────────────────────────────

int run_closure(const std::string& file, const std::string& ontology,
                std::optional<unsigned> depth, bool machineSymbols,
                const std::string& out) {
  Network n = load_network(file, machineSymbols);
  std::string o = pick_ontology(n, ontology);
  RenamedClosure rc = renamed_closure(n, o, depth);
  std::string text = dump_closure(rc);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
    std::cout << "wrote " << out << " (" << rc.axioms.axioms.size()
              << " axioms over " << rc.perPath.size() << " paths)\n";
  }
  return 0;
}

// ── bench ────────────────────────────────────────────────────────────────

int run_bench(const std::string& family, unsigned maxN, bool check,
              const std::string& out) {
  using clock = std::chrono::steady_clock;
  std::ostringstream csv;
  csv << "family,param,ontologies,relations,networkSize,genMicros,"
         "checkMicros,verdict\n";
  auto micros = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::microseconds>(b - a)
        .count();
  };
  unsigned cap = family == "role-chain" ? 4u : maxN;
  for (unsigned i = 0; i <= std::min(maxN, cap); ++i) {
    auto g0 = clock::now();
    GenOutput g;
    if (family == "el-exists")
      g = gen_el_exists("Z", "A", "B", "r", i, ExpMode::Equiv);
    else if (family == "forall-exp")
      g = gen_forall_exp("Z", "A", "r", i);
    else if (family == "role-chain")
      g = gen_role_chain("r", "s", i, ChainMode::Exact);
    else
      throw CliError{kExitBadInput, "unknown bench family: " + family};
    auto g1 = clock::now();
    std::string verdict = "-";
    long long checkMicros = 0;
    if (check && family == "el-exists") {
      auto c0 = clock::now();
      bool yes = entails_via_closure(g.network, g.focus, g.suggestedQuery,
                                     classical_entails);
      auto c1 = clock::now();
      checkMicros = micros(c0, c1);
      verdict = yes ? "entailed" : "notEntailed";
    }
    csv << family << "," << i << "," << g.manifest.ontologyCount << ","
        << g.manifest.relationCount << "," << network_size(g.network) << ","
        << micros(g0, g1) << "," << checkMicros << "," << verdict << "\n";
  }
  if (out.empty())
    std::cout << csv.str();
  else {
    write_file(out, csv.str());
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int guarded(const std::function<int()>& f) {
  try {
    return f();
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const CyclicNetwork& e) {
    std::cerr << "error: " << e.what()
              << " (use --mode semi with --depth, or --mode gfp on role-free "
                 "networks)\n";
    return kExitUnsupported;
  } catch (const UnsupportedDialect& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const BoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ontology-network reasoner and instance generator"};
  app.require_subcommand(1);

  // check
  CheckOptions chk;
  CLI::App* check = app.add_subcommand(
      "check", "decide whether an ontology entails a query in its network");
  check->add_option("file", chk.file, "network file")->required();
  check->add_option("--ontology", chk.ontology,
                    "focus ontology id (default: first in canonical order)");
  check->add_option("--query", chk.query, "axiom to check")->required();
  check
      ->add_option("--mode", chk.mode,
                   "engine: auto|gfp|acyclic|closure|semi|reference")
      ->check(CLI::IsMember(
          {"auto", "gfp", "acyclic", "closure", "semi", "reference"}));
  check->add_option("--backend", chk.backend, "gfp model-set backend")
      ->check(CLI::IsMember({"dd", "explicit"}));
  check->add_option("--depth", chk.depth,
                    "semi-decision renamed-closure depth budget");
  check->add_flag("--json", chk.asJson, "emit the report as JSON");
  check->add_flag("--machine-symbols", chk.machineSymbols,
                  "allow quoted generated names in inputs");

  // gen
  CLI::App* gen =
      app.add_subcommand("gen", "generate a network with a known answer");
  gen->require_subcommand(1);
  struct {
    unsigned n = 1;
    std::string mode = "equiv", z = "Z", a = "A", b = "B", r = "r";
    std::string out;
  } ge;
  CLI::App* gEl = gen->add_subcommand(
      "el-exists", "doubling family expressing Z == (some r (A and ...))^2^n");
  gEl->add_option("--n", ge.n, "doubling exponent (0..12)");
  gEl->add_option("--mode", ge.mode, "equiv|sub")
      ->check(CLI::IsMember({"equiv", "sub"}));
  gEl->add_option("--z", ge.z, "defined name");
  gEl->add_option("--a", ge.a, "step name");
  gEl->add_option("--b", ge.b, "tail name");
  gEl->add_option("--r", ge.r, "role name");
  gEl->add_option("--out", ge.out, "output path");

  struct {
    unsigned n = 1;
    std::string z = "Z", a = "A", r = "r", out;
  } gf;
  CLI::App* gFa = gen->add_subcommand(
      "forall-exp", "doubling family expressing Z == (all r ...)^2^n A");
  gFa->add_option("--n", gf.n, "doubling exponent (0..12)");
  gFa->add_option("--z", gf.z, "defined name");
  gFa->add_option("--a", gf.a, "tail name");
  gFa->add_option("--r", gf.r, "role name");
  gFa->add_option("--out", gf.out, "output path");

  struct {
    unsigned n = 0;
    std::string mode = "exact", r = "r", s = "s", out;
  } gc;
  CLI::App* gCh = gen->add_subcommand(
      "role-chain", "squaring family expressing r^(2^(2^n)) <= s");
  gCh->add_option("--n", gc.n, "squaring exponent (0..4)");
  gCh->add_option("--mode", gc.mode, "exact|less")
      ->check(CLI::IsMember({"exact", "less"}));
  gCh->add_option("--r", gc.r, "chained role");
  gCh->add_option("--s", gc.s, "super role");
  gCh->add_option("--out", gc.out, "output path");

  struct {
    std::string machine, out;
    unsigned exp = 1;
  } gt;
  CLI::App* gTm = gen->add_subcommand(
      "tm", "acyclic hardness instance: A <= H iff the machine accepts the "
            "empty word within 2^exp steps");
  gTm->add_option("--machine", gt.machine, "machine description file")
      ->required();
  gTm->add_option("--exp", gt.exp, "step budget exponent (1..2)");
  gTm->add_option("--out", gt.out, "output path");

  struct {
    std::string machine, out;
    unsigned unfold = 0;
    bool acyclic = false;
  } ga;
  CLI::App* gAtm = gen->add_subcommand(
      "atm", "cyclic hardness instance: A <= Hbar iff the alternating "
             "machine rejects");
  gAtm->add_option("--machine", ga.machine, "machine description file")
      ->required();
  gAtm->add_option("--unfold", ga.unfold,
                   "unfold k levels into an acyclic network")
      ->check(CLI::PositiveNumber);
  gAtm->add_option("--out", ga.out, "output path");

  // validate
  struct {
    std::string file;
    bool machineSymbols = false, asJson = false;
  } va;
  CLI::App* validate = app.add_subcommand(
      "validate", "report dialects, counts and acyclicity of a network file");
  validate->add_option("file", va.file, "network file")->required();
  validate->add_flag("--machine-symbols", va.machineSymbols,
                     "allow quoted generated names");
  validate->add_flag("--json", va.asJson, "emit the report as JSON");

  // closure
  struct {
    std::string file, ontology, out;
    int depth = -1;
    bool machineSymbols = false;
  } cl;
  CLI::App* closure = app.add_subcommand(
      "closure", "dump the renamed import closure with per-path headers");
  closure->add_option("file", cl.file, "network file")->required();
  closure->add_option("--ontology", cl.ontology, "focus ontology id");
  closure->add_option("--depth", cl.depth,
                      "path-length bound (required on cyclic networks)");
  closure->add_flag("--machine-symbols", cl.machineSymbols,
                    "allow quoted generated names");
  closure->add_option("--out", cl.out, "write to a file instead of stdout");

  // bench
  struct {
    std::string family = "el-exists", out;
    unsigned maxN = 6;
    bool noCheck = false;
  } be;
  CLI::App* bench = app.add_subcommand(
      "bench", "sweep a generator family and emit CSV runtimes");
  bench->add_option("--family", be.family, "el-exists|forall-exp|role-chain")
      ->check(CLI::IsMember({"el-exists", "forall-exp", "role-chain"}));
  bench->add_option("--max-n", be.maxN, "largest parameter value");
  bench->add_flag("--no-check", be.noCheck, "skip entailment checks");
  bench->add_option("--out", be.out, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  if (check->parsed()) return guarded([&] { return run_check(chk); });

  if (gen->parsed()) {
    if (gEl->parsed())
      return guarded([&] {
        GenOutput g = gen_el_exists(
            ge.z, ge.a, ge.b, ge.r, ge.n,
            ge.mode == "equiv" ? ExpMode::Equiv : ExpMode::Sub);
        std::string out = ge.out.empty()
                              ? "el-exists-n" + std::to_string(ge.n) + "-" +
                                    ge.mode + ".onet"
                              : ge.out;
        return emit_generated(
            "el-exists", g, out,
            {{"n", ge.n}, {"mode", ge.mode}}, std::nullopt);
      });
    if (gFa->parsed())
      return guarded([&] {
        GenOutput g = gen_forall_exp(gf.z, gf.a, gf.r, gf.n);
        std::string out = gf.out.empty()
                              ? "forall-exp-n" + std::to_string(gf.n) + ".onet"
                              : gf.out;
        return emit_generated("forall-exp", g, out, {{"n", gf.n}},
                              std::nullopt);
      });
    if (gCh->parsed())
      return guarded([&] {
        GenOutput g = gen_role_chain(
            gc.r, gc.s, gc.n,
            gc.mode == "exact" ? ChainMode::Exact : ChainMode::Less);
        std::string out = gc.out.empty()
                              ? "role-chain-n" + std::to_string(gc.n) + "-" +
                                    gc.mode + ".onet"
                              : gc.out;
        return emit_generated("role-chain", g, out,
                              {{"n", gc.n}, {"mode", gc.mode}}, std::nullopt);
      });
    if (gTm->parsed())
      return guarded([&] {
        MachineFile mf = parse_machine(read_file(gt.machine));
        if (mf.alternating)
          throw CliError{kExitBadInput,
                         "gen tm needs a deterministic machine file"};
        GenOutput g = gen_tm_el(mf.tm, gt.exp);
        std::string verdict =
            simulate_tm(mf.tm, 1u << gt.exp) == TMVerdict::AcceptsWithin
                ? "entailed"
                : "notEntailed";
        std::string out = gt.out.empty()
                              ? "tm-exp" + std::to_string(gt.exp) + ".onet"
                              : gt.out;
        return emit_generated("tm", g, out,
                              {{"machine", gt.machine}, {"exp", gt.exp}},
                              verdict);
      });
    if (gAtm->parsed())
      return guarded([&] {
        MachineFile mf = parse_machine(read_file(ga.machine));
        if (!mf.alternating)
          throw CliError{kExitBadInput,
                         "gen atm needs an alternating machine file"};
        bool unfolded = ga.unfold > 0;
        GenOutput g = unfolded ? gen_atm_h_acyclic(mf.atm, ga.unfold)
                               : gen_atm_h(mf.atm);
        bool rejects = unfolded
                           ? atm_rejects_within(mf.atm, ga.unfold)
                           : simulate_atm(mf.atm) == ATMVerdict::Rejects;
        std::string out =
            ga.out.empty()
                ? (unfolded ? "atm-unfold" + std::to_string(ga.unfold) +
                                  ".onet"
                            : "atm.onet")
                : ga.out;
        json params{{"machine", ga.machine}};
        if (unfolded) params["unfold"] = ga.unfold;
        return emit_generated("atm", g, out, params,
                              rejects ? "entailed" : "notEntailed");
      });
  }

  if (validate->parsed())
    return guarded(
        [&] { return run_validate(va.file, va.machineSymbols, va.asJson); });

  if (closure->parsed())
    return guarded([&] {
      std::optional<unsigned> depth;
      if (cl.depth >= 0) depth = static_cast<unsigned>(cl.depth);
      return run_closure(cl.file, cl.ontology, depth, cl.machineSymbols,
                         cl.out);
    });

  if (bench->parsed())
    return guarded(
        [&] { return run_bench(be.family, be.maxN, !be.noCheck, be.out); });

  return kExitBadInput;
}
