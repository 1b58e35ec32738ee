#include "ontonet/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace ontonet {

bool is_machine_symbol(const std::string& name) {
  return name.find('#') != std::string::npos;
}

std::string symbol_text(const std::string& name) {
  if (is_machine_symbol(name)) return "\"" + name + "\"";
  return name;
}

// ── Concepts ─────────────────────────────────────────────────────────────

namespace {

std::string render_concept(ConceptKind kind, const std::string& name,
                           const std::vector<Concept>& children) {
  switch (kind) {
    case ConceptKind::Top:
      return "top";
    case ConceptKind::Bottom:
      return "bot";
    case ConceptKind::Atom:
      return symbol_text(name);
    case ConceptKind::And:
    case ConceptKind::Or: {
      std::string out = "(";
      const char* sep = kind == ConceptKind::And ? " and " : " or ";
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out += sep;
        out += children[i]->key;
      }
      return out + ")";
    }
    case ConceptKind::Not:
      return "(not " + children[0]->key + ")";
    case ConceptKind::Exists:
      return "(some " + symbol_text(name) + " " + children[0]->key + ")";
  }
  return {};
}

Concept make(ConceptKind kind, std::string name, std::vector<Concept> children) {
  auto node = std::make_shared<ConceptNode>();
  node->kind = kind;
  node->name = std::move(name);
  node->children = std::move(children);
  node->key = render_concept(node->kind, node->name, node->children);
  return node;
}

}  // namespace

Concept top() {
  static const Concept t = make(ConceptKind::Top, "", {});
  return t;
}

Concept bot() {
  static const Concept b = make(ConceptKind::Bottom, "", {});
  return b;
}

Concept atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty concept name");
  return make(ConceptKind::Atom, std::move(name), {});
}

Concept c_and(std::vector<Concept> children) {
  if (children.size() < 2) throw std::invalid_argument("and needs >=2 children");
  std::sort(children.begin(), children.end(),
            [](const Concept& a, const Concept& b) { return a->key < b->key; });
  return make(ConceptKind::And, "", std::move(children));
}

Concept c_or(std::vector<Concept> children) {
  if (children.size() < 2) throw std::invalid_argument("or needs >=2 children");
  std::sort(children.begin(), children.end(),
            [](const Concept& a, const Concept& b) { return a->key < b->key; });
  return make(ConceptKind::Or, "", std::move(children));
}

Concept c_not(Concept c) { return make(ConceptKind::Not, "", {std::move(c)}); }

Concept exists(std::string role, Concept c) {
  if (role.empty()) throw std::invalid_argument("empty role name");
  return make(ConceptKind::Exists, std::move(role), {std::move(c)});
}

Concept exists_n(const std::string& role, unsigned n, Concept c) {
  for (unsigned i = 0; i < n; ++i) c = exists(role, std::move(c));
  return c;
}

Concept exists_with(const std::string& role, const Concept& step, unsigned n,
                    Concept c) {
  for (unsigned i = 0; i < n; ++i) c = exists(role, c_and({step, std::move(c)}));
  return c;
}

Concept forall_n(const std::string& role, unsigned n, Concept c) {
  if (n == 0) return c;
  return c_not(exists_n(role, n, c_not(std::move(c))));
}

// ── Axioms ───────────────────────────────────────────────────────────────

Axiom ci(Concept lhs, Concept rhs) {
  Axiom a;
  a.kind = Axiom::Kind::ConceptInclusion;
  a.lhs = std::move(lhs);
  a.rhs = std::move(rhs);
  a.key = a.lhs->key + " <= " + a.rhs->key;
  return a;
}

Axiom ri(std::vector<std::string> chain, std::string super) {
  if (chain.empty()) throw std::invalid_argument("empty role chain");
  Axiom a;
  a.kind = Axiom::Kind::RoleInclusion;
  a.chain = std::move(chain);
  a.super = std::move(super);
  a.key = "role ";
  for (std::size_t i = 0; i < a.chain.size(); ++i) {
    if (i) a.key += " o ";
    a.key += symbol_text(a.chain[i]);
  }
  a.key += " <= " + symbol_text(a.super);
  return a;
}

std::vector<Axiom> equivalence(const Concept& a, const Concept& b) {
  return {ci(a, b), ci(b, a)};
}

// ── Ontologies, networks ─────────────────────────────────────────────────

void Ontology::add(Axiom a) {
  auto it = std::lower_bound(axioms.begin(), axioms.end(), a);
  if (it != axioms.end() && *it == a) return;
  axioms.insert(it, std::move(a));
}

bool Ontology::contains(const Axiom& a) const {
  return std::binary_search(axioms.begin(), axioms.end(), a);
}

Ontology make_ontology(std::string id, std::vector<Axiom> axioms) {
  Ontology o;
  o.id = std::move(id);
  for (auto& a : axioms) o.add(std::move(a));
  return o;
}

bool Signature::contains_concept(const std::string& n) const {
  return concepts.count(n) != 0;
}

bool Signature::contains_role(const std::string& n) const {
  return roles.count(n) != 0;
}

bool Signature::contains(const Symbol& s) const {
  return s.kind == SymbolKind::Concept ? contains_concept(s.name)
                                       : contains_role(s.name);
}

std::set<Symbol> Signature::symbols() const {
  std::set<Symbol> out;
  for (const auto& c : concepts) out.insert({SymbolKind::Concept, c});
  for (const auto& r : roles) out.insert({SymbolKind::Role, r});
  return out;
}

Signature Signature::united(const Signature& o) const {
  Signature out = *this;
  out.concepts.insert(o.concepts.begin(), o.concepts.end());
  out.roles.insert(o.roles.begin(), o.roles.end());
  return out;
}

Signature Signature::intersected(const Signature& o) const {
  Signature out;
  for (const auto& c : concepts)
    if (o.contains_concept(c)) out.concepts.insert(c);
  for (const auto& r : roles)
    if (o.contains_role(r)) out.roles.insert(r);
  return out;
}

Signature Signature::minus(const Signature& o) const {
  Signature out;
  for (const auto& c : concepts)
    if (!o.contains_concept(c)) out.concepts.insert(c);
  for (const auto& r : roles)
    if (!o.contains_role(r)) out.roles.insert(r);
  return out;
}

bool Signature::subset_of(const Signature& o) const {
  for (const auto& c : concepts)
    if (!o.contains_concept(c)) return false;
  for (const auto& r : roles)
    if (!o.contains_role(r)) return false;
  return true;
}

void Network::add_ontology(Ontology o) {
  ontologies[o.id] = std::move(o);
}

void Network::add_relation(ImportRelation r) {
  if (!has_ontology(r.importer) || !has_ontology(r.imported))
    throw std::invalid_argument("import relation endpoint not in network: " +
                                r.importer + " -> " + r.imported);
  auto it = std::lower_bound(relations.begin(), relations.end(), r);
  if (it != relations.end() && *it == r) return;
  relations.insert(it, std::move(r));
}

bool Network::has_ontology(const std::string& id) const {
  return ontologies.count(id) != 0;
}

const Ontology& Network::ontology(const std::string& id) const {
  auto it = ontologies.find(id);
  if (it == ontologies.end())
    throw std::out_of_range("no ontology with id " + id);
  return it->second;
}

// ── Singleton semantics ──────────────────────────────────────────────────

// Over a one-element domain with empty roles, ∃r.C is false and the
// connectives collapse to propositional evaluation.
bool eval_singleton(const SingletonInterpretation& i, const Concept& c) {
  switch (c->kind) {
    case ConceptKind::Top:
      return true;
    case ConceptKind::Bottom:
      return false;
    case ConceptKind::Atom:
      return i.trueAtoms.count(c->name) != 0;
    case ConceptKind::And:
      for (const auto& ch : c->children)
        if (!eval_singleton(i, ch)) return false;
      return true;
    case ConceptKind::Or:
      for (const auto& ch : c->children)
        if (eval_singleton(i, ch)) return true;
      return false;
    case ConceptKind::Not:
      return !eval_singleton(i, c->children[0]);
    case ConceptKind::Exists:
      return false;
  }
  return false;
}

bool satisfies_singleton(const SingletonInterpretation& i, const Axiom& a) {
  if (a.kind == Axiom::Kind::RoleInclusion) return true;  // roles are empty
  return !eval_singleton(i, a.lhs) || eval_singleton(i, a.rhs);
}

bool agree_on(const std::set<std::string>& s1, const std::set<std::string>& s2,
              const Signature& sigma) {
  for (const auto& c : sigma.concepts)
    if ((s1.count(c) != 0) != (s2.count(c) != 0)) return false;
  return true;
}

// ── Dialects ─────────────────────────────────────────────────────────────

namespace {

struct Features {
  bool exists = false, orOp = false, notOp = false, bottom = false;
  bool roleAxiom = false, chain = false;

  void merge(const Features& o) {
    exists |= o.exists;
    orOp |= o.orOp;
    notOp |= o.notOp;
    bottom |= o.bottom;
    roleAxiom |= o.roleAxiom;
    chain |= o.chain;
  }
};

void scan(const Concept& c, Features& f) {
  switch (c->kind) {
    case ConceptKind::Bottom:
      f.bottom = true;
      break;
    case ConceptKind::Or:
      f.orOp = true;
      break;
    case ConceptKind::Not:
      f.notOp = true;
      break;
    case ConceptKind::Exists:
      f.exists = true;
      break;
    default:
      break;
  }
  for (const auto& ch : c->children) scan(ch, f);
}

Features features_of(const Axiom& a) {
  Features f;
  if (a.kind == Axiom::Kind::RoleInclusion) {
    f.roleAxiom = true;
    f.chain = a.chain.size() > 1;
  } else {
    scan(a.lhs, f);
    scan(a.rhs, f);
  }
  return f;
}

// Role-free ontologies with neither or/not sit in both H and P; H wins as
// the smaller dialect (Horn inclusions may carry bot).
Dialect classify(const Features& f) {
  if (f.chain) return Dialect::Other;
  bool prop = f.orOp || f.notOp;
  bool roles = f.exists || f.roleAxiom;
  if (prop && roles) return Dialect::Other;
  if (prop) return Dialect::P;
  if (f.roleAxiom) return Dialect::ELH;
  if (f.exists) return f.bottom ? Dialect::ELbot : Dialect::EL;
  return Dialect::H;
}

}  // namespace

const char* dialect_name(Dialect d) {
  switch (d) {
    case Dialect::H:
      return "H";
    case Dialect::P:
      return "P";
    case Dialect::EL:
      return "EL";
    case Dialect::ELbot:
      return "ELbot";
    case Dialect::ELH:
      return "ELH";
    case Dialect::Other:
      return "Other";
  }
  return "?";
}

bool dialect_leq(Dialect a, Dialect b) {
  if (a == b || b == Dialect::Other) return true;
  if (a == Dialect::Other) return false;
  if (a == Dialect::H) return true;   // H below everything
  if (a == Dialect::P) return false;  // only P <= P and P <= Other
  if (a == Dialect::EL) return b == Dialect::ELbot || b == Dialect::ELH;
  if (a == Dialect::ELbot) return b == Dialect::ELH;
  return false;  // ELH only below Other
}

Dialect dialect_of(const Axiom& a) { return classify(features_of(a)); }

Dialect dialect_of(const Ontology& o) {
  Features f;
  for (const auto& a : o.axioms) f.merge(features_of(a));
  return classify(f);
}

Dialect dialect_of(const Network& n) {
  Features f;
  for (const auto& [id, o] : n.ontologies)
    for (const auto& a : o.axioms) f.merge(features_of(a));
  return classify(f);
}

// ── Signatures, size ─────────────────────────────────────────────────────

namespace {

void collect(const Concept& c, Signature& s) {
  if (c->kind == ConceptKind::Atom) s.concepts.insert(c->name);
  if (c->kind == ConceptKind::Exists) s.roles.insert(c->name);
  for (const auto& ch : c->children) collect(ch, s);
}

}  // namespace

Signature signature_of(const Concept& c) {
  Signature s;
  collect(c, s);
  return s;
}

Signature signature_of(const Axiom& a) {
  Signature s;
  if (a.kind == Axiom::Kind::RoleInclusion) {
    s.roles.insert(a.chain.begin(), a.chain.end());
    s.roles.insert(a.super);
  } else {
    collect(a.lhs, s);
    collect(a.rhs, s);
  }
  return s;
}

Signature signature_of(const Ontology& o) {
  Signature s;
  for (const auto& a : o.axioms) {
    Signature t = signature_of(a);
    s.concepts.insert(t.concepts.begin(), t.concepts.end());
    s.roles.insert(t.roles.begin(), t.roles.end());
  }
  return s;
}

Signature signature_of(const Network& n) {
  Signature s;
  for (const auto& [id, o] : n.ontologies) s = s.united(signature_of(o));
  for (const auto& r : n.relations) s = s.united(r.sigma);
  return s;
}

std::size_t network_size(const Network& n) {
  std::size_t total = 0;
  for (const auto& [id, o] : n.ontologies)
    for (const auto& a : o.axioms) total += a.key.size();
  return total;
}

// ── Substitution, renaming ───────────────────────────────────────────────

Concept substitute(const Concept& c, const std::map<std::string, Concept>& m) {
  switch (c->kind) {
    case ConceptKind::Atom: {
      auto it = m.find(c->name);
      return it == m.end() ? c : it->second;
    }
    case ConceptKind::Top:
    case ConceptKind::Bottom:
      return c;
    case ConceptKind::And:
    case ConceptKind::Or: {
      std::vector<Concept> ch;
      ch.reserve(c->children.size());
      for (const auto& x : c->children) ch.push_back(substitute(x, m));
      return c->kind == ConceptKind::And ? c_and(std::move(ch))
                                         : c_or(std::move(ch));
    }
    case ConceptKind::Not:
      return c_not(substitute(c->children[0], m));
    case ConceptKind::Exists:
      return exists(c->name, substitute(c->children[0], m));
  }
  return c;
}

Axiom substitute(const Axiom& a, const std::map<std::string, Concept>& m) {
  if (a.kind == Axiom::Kind::RoleInclusion) return a;
  return ci(substitute(a.lhs, m), substitute(a.rhs, m));
}

Concept rename(const Concept& c, const std::map<std::string, std::string>& cm,
               const std::map<std::string, std::string>& rm) {
  switch (c->kind) {
    case ConceptKind::Atom: {
      auto it = cm.find(c->name);
      return it == cm.end() ? c : atom(it->second);
    }
    case ConceptKind::Top:
    case ConceptKind::Bottom:
      return c;
    case ConceptKind::And:
    case ConceptKind::Or: {
      std::vector<Concept> ch;
      ch.reserve(c->children.size());
      for (const auto& x : c->children) ch.push_back(rename(x, cm, rm));
      return c->kind == ConceptKind::And ? c_and(std::move(ch))
                                         : c_or(std::move(ch));
    }
    case ConceptKind::Not:
      return c_not(rename(c->children[0], cm, rm));
    case ConceptKind::Exists: {
      auto it = rm.find(c->name);
      return exists(it == rm.end() ? c->name : it->second,
                    rename(c->children[0], cm, rm));
    }
  }
  return c;
}

Axiom rename(const Axiom& a, const std::map<std::string, std::string>& cm,
             const std::map<std::string, std::string>& rm) {
  if (a.kind == Axiom::Kind::ConceptInclusion)
    return ci(rename(a.lhs, cm, rm), rename(a.rhs, cm, rm));
  std::vector<std::string> chain;
  chain.reserve(a.chain.size());
  for (const auto& r : a.chain) {
    auto it = rm.find(r);
    chain.push_back(it == rm.end() ? r : it->second);
  }
  auto it = rm.find(a.super);
  return ri(std::move(chain), it == rm.end() ? a.super : it->second);
}

}  // namespace ontonet
