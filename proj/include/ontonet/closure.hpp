#pragma once

// Import-path enumeration, per-path renamings, import closures and renamed
// import closures (full on acyclic networks, depth-bounded otherwise), the
// reduction of network entailment to classical entailment over the renamed
// closure, and the iterative-deepening semi-decision procedure.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ontonet/core.hpp"

namespace ontonet {

// Unbounded closure requested on a cyclic network.
struct CyclicNetwork : std::runtime_error {
  CyclicNetwork() : std::runtime_error("cyclic network requires depth bound") {}
};

struct ImportPath {
  std::string start;
  std::vector<ImportRelation> steps;  // chained: importer of step k is the
                                      // imported of step k-1

  std::size_t length() const { return steps.size(); }
  const std::string& first() const { return start; }
  const std::string& last() const {
    return steps.empty() ? start : steps.back().imported;
  }
};

// Maps are sparse: symbols absent from them stay fixed. Fresh targets have
// the shape name#fingerprint (plus '~' bumps when a query symbol collides).
struct Renaming {
  std::map<std::string, std::string> conceptMap, roleMap;
  std::string fingerprint;

  std::string concept_target(const std::string& name) const {
    auto it = conceptMap.find(name);
    return it == conceptMap.end() ? name : it->second;
  }
  std::string role_target(const std::string& name) const {
    auto it = roleMap.find(name);
    return it == roleMap.end() ? name : it->second;
  }
};

struct RenamedClosure {
  Ontology axioms;  // id matches the focus ontology
  std::map<std::string, std::vector<Axiom>> perPath;  // fingerprint -> block
  bool complete = false;
  std::optional<unsigned> depth;  // nullopt: unbounded
  Dialect dialect = Dialect::H;
};

bool is_acyclic(const Network& n);

// Exactly one path from root to every reachable ontology.
bool is_tree_shaped(const Network& n, const std::string& root);

// All paths from start of length <= maxLen, empty path first, extensions in
// canonical relation order (depth-first preorder).
std::vector<ImportPath> enumerate_paths(const Network& n,
                                        const std::string& start,
                                        std::size_t maxLen);

std::string path_fingerprint(const ImportPath& p);

// The inductive renaming of the path; fresh names avoid sig(n) by carrying
// '#' and additionally dodge `avoid` (a query signature).
Renaming renaming_of_path(const Network& n, const ImportPath& p,
                          const Signature& avoid = {});

Axiom apply_renaming(const Renaming& r, const Axiom& a);

// Union of the axioms of every ontology reachable from o, including o.
Ontology import_closure(const Network& n, const std::string& o);

// Union of renamed last-ontology axioms over paths from o (all of them when
// depth is absent, which requires acyclicity; throws CyclicNetwork).
RenamedClosure renamed_closure(const Network& n, const std::string& o,
                               std::optional<unsigned> depth = std::nullopt,
                               const Signature& avoid = {});

// Classical decision procedure fed with the closure; throws on inputs it
// cannot decide.
using ClassicalEngine = std::function<bool(const Ontology&, const Axiom&)>;

// Exact for acyclic networks: network entailment reduces to a classical
// check on the unbounded renamed closure.
bool entails_via_closure(const Network& n, const std::string& o,
                         const Axiom& q, const ClassicalEngine& engine);

enum class SemiDecision { Entailed, Unknown };

// Sound for every network: tries depths 0..maxDepth and reports the first
// bounded closure that classically entails q; never answers "not entailed".
// depthOut receives the entailing depth, or maxDepth when unknown.
SemiDecision semi_decide(const Network& n, const std::string& o,
                         const Axiom& q, unsigned maxDepth,
                         const ClassicalEngine& engine,
                         unsigned* depthOut = nullptr);

// Textio grammar with machine symbols quoted and per-path comment headers;
// readable back via parse_network(text, true).
std::string dump_closure(const RenamedClosure& c);

}  // namespace ontonet
