#pragma once

// Immutable data model for ontology networks: concepts, axioms, ontologies,
// signatures, import relations, networks, singleton interpretations, dialect
// classification and singleton-semantics evaluation.

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontonet {

// Thrown when an input falls outside the fragment an engine can decide.
struct UnsupportedDialect : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an input exceeds a hard resource bound.
struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ── Symbols ──────────────────────────────────────────────────────────────

// Concept names and role names live in disjoint alphabets. Names containing
// '#' are machine-generated (renamed copies, normalization helpers) and are
// never produced by the user-facing parser.
enum class SymbolKind { Concept, Role };

struct Symbol {
  SymbolKind kind;
  std::string name;
  auto operator<=>(const Symbol&) const = default;
};

bool is_machine_symbol(const std::string& name);

// Canonical rendering of a symbol inside axiom text: plain identifier, or
// quoted when the name contains '#'.
std::string symbol_text(const std::string& name);

// ── Concepts ─────────────────────────────────────────────────────────────

enum class ConceptKind { Top, Bottom, Atom, And, Or, Not, Exists };

struct ConceptNode;
using Concept = std::shared_ptr<const ConceptNode>;

// Nodes are immutable; `key` is the canonical text, fixed at construction.
// And/Or children are sorted by key, so key equality is structural equality
// modulo child order.
struct ConceptNode {
  ConceptKind kind;
  std::string name;               // Atom: concept name; Exists: role name
  std::vector<Concept> children;  // And/Or: >=2; Not/Exists: 1
  std::string key;
};

Concept top();
Concept bot();
Concept atom(std::string name);
Concept c_and(std::vector<Concept> children);   // flattens nothing, sorts
Concept c_or(std::vector<Concept> children);
Concept c_not(Concept c);
Concept exists(std::string role, Concept c);

inline const std::string& concept_key(const Concept& c) { return c->key; }
inline bool concept_equal(const Concept& a, const Concept& b) {
  return a->key == b->key;
}

// Shortcuts: exists_n(r,n,c) = ∃r.…∃r.c (n nested), exists_with(r,d,n,c) =
// ∃r.(d ⊓ ∃r.(d ⊓ … ∃r.(d ⊓ c))), forall_n(r,n,c) = ¬∃r.∃r^{n-1}.¬c.
// n = 0 returns c unchanged.
Concept exists_n(const std::string& role, unsigned n, Concept c);
Concept exists_with(const std::string& role, const Concept& step, unsigned n,
                    Concept c);
Concept forall_n(const std::string& role, unsigned n, Concept c);

// ── Axioms ───────────────────────────────────────────────────────────────

struct Axiom {
  enum class Kind { ConceptInclusion, RoleInclusion };
  Kind kind;
  Concept lhs, rhs;                // ConceptInclusion
  std::vector<std::string> chain;  // RoleInclusion: role names, >=1
  std::string super;
  std::string key;                 // canonical text

  bool operator==(const Axiom& o) const { return key == o.key; }
  bool operator<(const Axiom& o) const { return key < o.key; }
};

Axiom ci(Concept lhs, Concept rhs);
Axiom ri(std::vector<std::string> chain, std::string super);
// C == D expands to the two inclusions immediately.
std::vector<Axiom> equivalence(const Concept& a, const Concept& b);

// ── Ontologies, signatures, networks ─────────────────────────────────────

// Axioms are kept sorted by key and deduplicated.
struct Ontology {
  std::string id;
  std::vector<Axiom> axioms;

  void add(Axiom a);
  bool contains(const Axiom& a) const;
  bool operator==(const Ontology&) const = default;
};

Ontology make_ontology(std::string id, std::vector<Axiom> axioms);

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;

  bool contains_concept(const std::string& n) const;
  bool contains_role(const std::string& n) const;
  bool contains(const Symbol& s) const;
  bool empty() const { return concepts.empty() && roles.empty(); }
  std::size_t size() const { return concepts.size() + roles.size(); }
  std::set<Symbol> symbols() const;

  Signature united(const Signature& o) const;
  Signature intersected(const Signature& o) const;
  Signature minus(const Signature& o) const;
  bool subset_of(const Signature& o) const;

  auto operator<=>(const Signature&) const = default;
};

struct ImportRelation {
  std::string importer;
  Signature sigma;
  std::string imported;

  auto operator<=>(const ImportRelation&) const = default;
};

// Relations have set semantics (duplicates collapse); every endpoint must
// resolve in `ontologies`. Ontologies may have zero relations.
struct Network {
  std::map<std::string, Ontology> ontologies;
  std::vector<ImportRelation> relations;  // sorted, unique

  void add_ontology(Ontology o);
  void add_relation(ImportRelation r);  // throws on dangling endpoint
  bool has_ontology(const std::string& id) const;
  const Ontology& ontology(const std::string& id) const;  // throws if absent
  bool operator==(const Network&) const = default;
};

// ── Singleton interpretations ────────────────────────────────────────────

// One-element domain; role extensions empty; an atom holds iff listed.
struct SingletonInterpretation {
  std::set<std::string> trueAtoms;
};

bool eval_singleton(const SingletonInterpretation& i, const Concept& c);
bool satisfies_singleton(const SingletonInterpretation& i, const Axiom& a);

// s1 and s2 agree on sigma iff they pick the same atoms of sigma's concepts.
bool agree_on(const std::set<std::string>& s1, const std::set<std::string>& s2,
              const Signature& sigma);

// ── Dialects ─────────────────────────────────────────────────────────────

// H: role-free Horn (top/bot/atoms/and). P: role-free propositional.
// EL: exists/and/top. ELbot: EL plus bot. ELH: ELbot plus role hierarchies.
// Lattice: H < EL < ELbot < ELH < Other, H < P < Other; EL-family and P
// incomparable.
enum class Dialect { H, P, EL, ELbot, ELH, Other };

const char* dialect_name(Dialect d);
bool dialect_leq(Dialect a, Dialect b);

Dialect dialect_of(const Ontology& o);
Dialect dialect_of(const Network& n);
Dialect dialect_of(const Axiom& a);

// ── Signatures of entities / sizes ───────────────────────────────────────

Signature signature_of(const Concept& c);
Signature signature_of(const Axiom& a);
Signature signature_of(const Ontology& o);
// sig(N): all ontology signatures plus all edge signatures.
Signature signature_of(const Network& n);

// Total length of all axioms' canonical texts across the network.
std::size_t network_size(const Network& n);

// ── Substitution and renaming ────────────────────────────────────────────

// Replaces atoms by concepts (netgen builders). Role names are untouched.
Concept substitute(const Concept& c, const std::map<std::string, Concept>& m);
Axiom substitute(const Axiom& a, const std::map<std::string, Concept>& m);

// Renames symbols by name maps (closure renamings). Missing entries = identity.
Concept rename(const Concept& c, const std::map<std::string, std::string>& cm,
               const std::map<std::string, std::string>& rm);
Axiom rename(const Axiom& a, const std::map<std::string, std::string>& cm,
             const std::map<std::string, std::string>& rm);

}  // namespace ontonet
