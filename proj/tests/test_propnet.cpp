// Tests for the role-free network engines: singleton model families, the
// greatest-fixpoint pruning procedure on both backends, the recursive
// acyclic procedure, the naive reference oracle and agreement checking.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "ontonet/classical.hpp"
#include "ontonet/closure.hpp"
#include "ontonet/core.hpp"
#include "ontonet/propnet.hpp"
#include "testutil.hpp"

using namespace ontonet;

namespace {

// all subsets of `names` a family contains, as sorted strings for comparison
std::set<std::string> member_keys(const ModelSet& m,
                                  const std::vector<std::string>& names) {
  std::set<std::string> out;
  std::size_t total = std::size_t{1} << names.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::set<std::string> s;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (mask & (std::size_t{1} << i)) s.insert(names[i]);
    if (m.contains(s)) {
      std::string key;
      for (const auto& a : s) key += a + ",";
      out.insert(key);
    }
  }
  return out;
}

Network chain_network() {
  Network n;
  n.add_ontology(make_ontology("O1", {ci(atom("A"), atom("B"))}));
  n.add_ontology(make_ontology("O2", {ci(atom("B"), atom("C"))}));
  Signature s;
  s.concepts = {"B", "C"};
  n.add_relation({"O1", s, "O2"});
  return n;
}

Network clash_network() {
  Network n;
  n.add_ontology(make_ontology("O1", {ci(top(), atom("A"))}));
  n.add_ontology(make_ontology("O2", {ci(top(), c_not(atom("A")))}));
  Signature s;
  s.concepts = {"A"};
  n.add_relation({"O1", s, "O2"});
  return n;
}

std::vector<std::string> concept_pool(const Network& n) {
  std::vector<std::string> out;
  for (const auto& c : signature_of(n).concepts) out.push_back(c);
  return out;
}

}  // namespace

TEST_CASE("singleton model families enumerate the satisfying subsets") {
  Signature sigma;
  sigma.concepts = {"A", "B"};
  Ontology impl = make_ontology("O", {ci(atom("A"), atom("B"))});
  for (Backend b : {Backend::Explicit, Backend::Dd}) {
    ModelSet m = singleton_models(impl, sigma, b);
    CHECK(!m.empty());
    CHECK(m.contains({}));
    CHECK(m.contains({"B"}));
    CHECK(m.contains({"A", "B"}));
    CHECK(!m.contains({"A"}));
  }
  ModelSet ex = singleton_models(impl, sigma, Backend::Explicit);
  CHECK(ex.count() == 3);
  CHECK(ex.elements().size() == 3);

  Signature justA;
  justA.concepts = {"A"};
  CHECK(singleton_models(make_ontology("E", {}), justA, Backend::Explicit)
            .count() == 2);

  Ontology unsat =
      make_ontology("U", {ci(top(), atom("A")), ci(atom("A"), bot())});
  CHECK(singleton_models(unsat, justA, Backend::Explicit).empty());
  CHECK(singleton_models(unsat, justA, Backend::Dd).empty());
}

TEST_CASE("model set algebra matches hand-computed families") {
  std::vector<std::string> names = {"A", "B", "C"};
  for (Backend b : {Backend::Explicit, Backend::Dd}) {
    ModelSetFactory f(names, b);
    CHECK(f.none().empty());
    CHECK(!f.full().empty());
    CHECK(f.none().subset_of(f.full()));

    ModelSet hasA = f.satisfying(atom("A"));
    ModelSet hasB = f.satisfying(atom("B"));
    ModelSet both = hasA.intersect(hasB);
    CHECK(both.subset_of(hasA));
    CHECK(both.contains({"A", "B"}));
    CHECK(!both.contains({"A"}));
    CHECK(both.equals(f.satisfying(c_and({atom("A"), atom("B")}))));

    // smoothing {A,B} away from {A} keeps only the A-profile
    ModelSet smoothed = both.smooth_outside({"A"});
    CHECK(smoothed.contains({"A"}));
    CHECK(smoothed.contains({"A", "C"}));
    CHECK(!smoothed.contains({"B"}));
    CHECK(hasA.equals(smoothed));

    // violators of A <= B are exactly the A-not-B profiles
    ModelSet viol = f.violators(ci(atom("A"), atom("B")));
    CHECK(viol.contains({"A"}));
    CHECK(viol.contains({"A", "C"}));
    CHECK(!viol.contains({"A", "B"}));
    CHECK(!viol.contains({}));
  }
}

TEST_CASE("explicit and dd backends carry the same families") {
  testutil::Rng rng(12);
  auto atoms = testutil::atom_pool(4);
  std::vector<std::string> names(atoms.begin(), atoms.end());
  ModelSetFactory fx(names, Backend::Explicit);
  ModelSetFactory fd(names, Backend::Dd);
  for (int iter = 0; iter < 100; ++iter) {
    Concept c = testutil::random_prop_concept(rng, atoms, 3, false);
    CHECK(member_keys(fx.satisfying(c), names) ==
          member_keys(fd.satisfying(c), names));
  }
}

TEST_CASE("fixpoint pruning entails across a chain import") {
  Network n = chain_network();
  Axiom q = ci(atom("A"), atom("C"));
  CHECK(gfp_entails(n, "O1", q, Backend::Explicit));
  CHECK(gfp_entails(n, "O1", q, Backend::Dd));
  CHECK(acyclic_entails(n, "O1", q));
  CHECK(acyclic_entails(n, "O1", q, false));
  CHECK(reference_entails(n, "O1", q));

  CHECK(gfp_entails(n, "O1", ci(atom("A"), atom("B"))));
  CHECK(!gfp_entails(n, "O1", ci(atom("C"), atom("A")), Backend::Explicit));
  CHECK(!gfp_entails(n, "O1", ci(atom("C"), atom("A")), Backend::Dd));
  CHECK(!acyclic_entails(n, "O1", ci(atom("C"), atom("A"))));
  CHECK(!reference_entails(n, "O1", ci(atom("C"), atom("A"))));
  // the imported ontology is not constrained by its importer
  CHECK(!gfp_entails(n, "O2", ci(atom("A"), atom("B"))));
}

TEST_CASE("contradictory import empties the importer and entails everything") {
  Network n = clash_network();
  AgreementTable t = gfp_table(n, ci(top(), bot()), Backend::Explicit);
  CHECK(t.sets.at("O1").empty());
  CHECK(!t.sets.at("O2").empty());
  CHECK(verify_agreement(n, t));

  CHECK(gfp_entails(n, "O1", ci(top(), bot()), Backend::Explicit));
  CHECK(gfp_entails(n, "O1", ci(top(), bot()), Backend::Dd));
  CHECK(reference_entails(n, "O1", ci(top(), bot())));
  // vacuous truth extends to arbitrary queries once the family is empty
  CHECK(gfp_entails(n, "O1", ci(atom("B"), atom("A"))));
  CHECK(acyclic_entails(n, "O1", ci(atom("B"), atom("A"))));
  // the imported side keeps its own classical behaviour
  CHECK(!gfp_entails(n, "O2", ci(top(), bot())));
}

TEST_CASE("without relations the fixpoint degenerates to classical "
          "entailment") {
  testutil::Rng rng(21);
  auto atoms = testutil::atom_pool(5);
  for (int iter = 0; iter < 60; ++iter) {
    std::vector<Axiom> axs;
    int k = 1 + rng.upto(3);
    for (int i = 0; i < k; ++i)
      axs.push_back(testutil::random_prop_axiom(rng, atoms, false));
    Network n;
    n.add_ontology(make_ontology("O", std::move(axs)));
    Axiom q = testutil::random_prop_axiom(rng, atoms, false);
    bool classical = entails_prop(n.ontology("O"), q);
    CHECK(gfp_entails(n, "O", q, Backend::Explicit) == classical);
    CHECK(gfp_entails(n, "O", q, Backend::Dd) == classical);
    CHECK(acyclic_entails(n, "O", q) == classical);
    CHECK(reference_entails(n, "O", q) == classical);
  }
}

TEST_CASE("acyclic procedure spots classical countermodels") {
  Network lone;
  lone.add_ontology(make_ontology("O", {ci(atom("A"), atom("B"))}));
  CHECK(!acyclic_entails(lone, "O", ci(atom("B"), atom("A"))));

  // role-free shadow of the chain example with private role dropped
  Network n;
  n.add_ontology(make_ontology("O1", {ci(atom("B"), atom("C"))}));
  n.add_ontology(make_ontology(
      "O2", {ci(atom("A"), atom("B")), ci(atom("C"), atom("D"))}));
  Signature s;
  s.concepts = {"A", "B", "C", "D"};
  n.add_relation({"O1", s, "O2"});
  CHECK(acyclic_entails(n, "O1", ci(atom("B"), atom("C"))));
  CHECK(acyclic_entails(n, "O1", ci(atom("A"), atom("D"))));
  CHECK(!acyclic_entails(n, "O1", ci(atom("D"), atom("A"))));
  CHECK(gfp_entails(n, "O1", ci(atom("A"), atom("D"))));
  CHECK(reference_entails(n, "O1", ci(atom("A"), atom("D"))));
}

TEST_CASE("reference oracle handles degenerate inputs and its bound") {
  Network n;
  n.add_ontology(make_ontology("O", {}));
  CHECK(reference_entails(n, "O", ci(top(), top())));
  CHECK(!reference_entails(n, "O", ci(top(), atom("A"))));

  Network big;
  std::vector<Axiom> axs;
  for (int i = 0; i < 17; ++i)
    axs.push_back(ci(atom("X" + std::to_string(i)), top()));
  big.add_ontology(make_ontology("O", std::move(axs)));
  CHECK_THROWS_WITH_AS(reference_entails(big, "O", ci(top(), top())),
                       "reference oracle bound exceeded", BoundExceeded);
}

TEST_CASE("agreement verification accepts fixpoints and rejects mismatches") {
  Network n = chain_network();
  AgreementTable t = gfp_table(n, ci(atom("A"), atom("C")), Backend::Explicit);
  CHECK(verify_agreement(n, t));

  // hand-built table: importer insists on A, imported side only offers not-A
  Network m;
  m.add_ontology(make_ontology("O1", {}));
  m.add_ontology(make_ontology("O2", {}));
  Signature s;
  s.concepts = {"A"};
  m.add_relation({"O1", s, "O2"});
  ModelSetFactory f({"A"}, Backend::Explicit);
  AgreementTable bad{f, {}};
  bad.sets.emplace("O1", f.satisfying(atom("A")));
  bad.sets.emplace("O2", f.from_masks({0}));  // only the empty profile
  CHECK(!verify_agreement(m, bad));

  AgreementTable good{f, {}};
  good.sets.emplace("O1", f.from_masks({0}));
  good.sets.emplace("O2", f.from_masks({0}));
  CHECK(verify_agreement(m, good));

  // a table violating an ontology's own axioms fails clause (a)
  Network withAx;
  withAx.add_ontology(make_ontology("O1", {ci(top(), atom("A"))}));
  AgreementTable selfBad{f, {}};
  selfBad.sets.emplace("O1", f.from_masks({0}));
  CHECK(!verify_agreement(withAx, selfBad));

  AgreementTable missing{f, {}};
  missing.sets.emplace("O1", f.full());
  CHECK_THROWS_WITH_AS(verify_agreement(m, missing),
                       "agreement table misses ontology O2",
                       std::invalid_argument);
}

TEST_CASE("removed profiles would defect if re-added") {
  testutil::Rng rng(404);
  for (int iter = 0; iter < 50; ++iter) {
    testutil::NetworkOptions opt;
    opt.maxSymbols = 5;
    opt.horn = false;
    Network n = random_prop_network(rng, opt);
    Axiom q = ci(top(), top());
    AgreementTable t = gfp_table(n, q, Backend::Explicit);
    CHECK(verify_agreement(n, t));
    Signature sigma;
    for (const auto& a : ambient_signature(n, q)) sigma.concepts.insert(a);
    for (const auto& [id, o] : n.ontologies) {
      ModelSet start = singleton_models(o, sigma, Backend::Explicit);
      for (const auto& s : start.elements()) {
        if (t.sets.at(id).contains(s)) continue;
        // re-adding s must break some outgoing relation
        bool defect = false;
        for (const auto& rel : n.relations) {
          if (rel.importer != id) continue;
          ModelSet partners =
              t.sets.at(rel.imported).smooth_outside(rel.sigma.concepts);
          if (!partners.contains(s)) {
            defect = true;
            break;
          }
        }
        CHECK(defect);
      }
    }
  }
}

TEST_CASE("engine triangle: fixpoint backends, oracle and acyclic recursion") {
  testutil::Rng rng(7777);
  int entailed = 0, notEntailed = 0, acyclicSeen = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    testutil::NetworkOptions opt;
    opt.maxOntologies = 4;
    opt.maxSymbols = 8;
    opt.maxRelations = 6;
    opt.horn = iter % 2 == 0;
    opt.acyclic = rng.flip(0.4);
    Network n = random_prop_network(rng, opt);
    auto atoms = concept_pool(n);
    if (atoms.empty()) continue;
    // occasionally query symbols outside the network signature
    if (iter % 7 == 0) atoms.push_back("Q0");
    std::string focus = n.ontologies.begin()->first;
    Axiom q = testutil::random_prop_axiom(rng, atoms, opt.horn);

    bool ex = gfp_entails(n, focus, q, Backend::Explicit);
    bool dd = gfp_entails(n, focus, q, Backend::Dd);
    bool ref = reference_entails(n, focus, q);
    CHECK(ex == dd);
    CHECK(ex == ref);
    if (is_acyclic(n)) {
      ++acyclicSeen;
      CHECK(acyclic_entails(n, focus, q) == ex);
      if (iter % 20 == 0) CHECK(acyclic_entails(n, focus, q, false) == ex);
    }
    (ex ? entailed : notEntailed)++;
  }
  CHECK(entailed > 100);
  CHECK(notEntailed > 100);
  CHECK(acyclicSeen > 200);
}

TEST_CASE("all-inclusive hop signatures reduce to the import closure") {
  testutil::Rng rng(2468);
  int agreed = 0;
  for (int iter = 0; iter < 200; ++iter) {
    testutil::NetworkOptions opt;
    opt.horn = false;
    opt.maxSymbols = 6;
    Network raw = random_prop_network(rng, opt);
    Signature whole = signature_of(raw);
    Network n;
    for (const auto& [id, o] : raw.ontologies) n.add_ontology(o);
    for (auto rel : raw.relations) {
      rel.sigma = whole;
      n.add_relation(rel);
    }
    auto atoms = concept_pool(n);
    if (atoms.empty()) continue;
    std::string focus = n.ontologies.begin()->first;
    Axiom q = testutil::random_prop_axiom(rng, atoms, false);
    bool viaGfp = gfp_entails(n, focus, q, Backend::Explicit);
    bool viaUnion = entails_prop(import_closure(n, focus), q);
    CHECK(viaGfp == viaUnion);
    agreed += viaGfp == viaUnion;
  }
  CHECK(agreed >= 190);
}

TEST_CASE("bounded closure entailments are confirmed by the fixpoint") {
  testutil::Rng rng(1212);
  int hits = 0;
  for (int iter = 0; iter < 200; ++iter) {
    testutil::NetworkOptions opt;
    opt.horn = false;
    opt.maxSymbols = 6;
    opt.acyclic = false;
    Network n = random_prop_network(rng, opt);
    auto atoms = concept_pool(n);
    if (atoms.empty()) continue;
    std::string focus = n.ontologies.begin()->first;
    Axiom q = testutil::random_prop_axiom(rng, atoms, false);
    if (semi_decide(n, focus, q, 2, entails_prop) == SemiDecision::Entailed) {
      ++hits;
      CHECK(gfp_entails(n, focus, q, Backend::Explicit));
    }
  }
  CHECK(hits > 30);
}

TEST_CASE("singleton evaluation matches direct recursive evaluation") {
  testutil::Rng rng(35);
  auto atoms = testutil::atom_pool(4);

  // independent evaluator: roles are empty, so exists never holds
  auto direct = [](const auto& self, const Concept& c,
                   const std::set<std::string>& s) -> bool {
    switch (c->kind) {
      case ConceptKind::Top:
        return true;
      case ConceptKind::Bottom:
        return false;
      case ConceptKind::Atom:
        return s.count(c->name) > 0;
      case ConceptKind::And:
        for (const auto& x : c->children)
          if (!self(self, x, s)) return false;
        return true;
      case ConceptKind::Or:
        for (const auto& x : c->children)
          if (self(self, x, s)) return true;
        return false;
      case ConceptKind::Not:
        return !self(self, c->children[0], s);
      case ConceptKind::Exists:
        return false;
    }
    return false;
  };

  for (int iter = 0; iter < 200; ++iter) {
    Concept c = testutil::random_prop_concept(rng, atoms, 3, false);
    for (int mask = 0; mask < 16; ++mask) {
      std::set<std::string> s;
      for (int i = 0; i < 4; ++i)
        if (mask & (1 << i)) s.insert(atoms[i]);
      SingletonInterpretation i = singleton_projection(s);
      CHECK(eval_singleton(i, c) == direct(direct, c, s));
    }
  }

  SingletonInterpretation empty = singleton_projection({});
  CHECK(eval_singleton(empty, top()));
  CHECK(!eval_singleton(empty, bot()));
  CHECK(!eval_singleton(empty, exists("r", top())));
  SingletonInterpretation ab = singleton_projection({"A", "B"});
  CHECK(eval_singleton(ab, atom("A")));
  CHECK(satisfies_singleton(ab, ci(atom("A"), atom("B"))));
}

TEST_CASE("dd decider extends propositional entailment past the "
          "enumeration bound") {
  testutil::Rng rng(90);
  auto atoms = testutil::atom_pool(6);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Axiom> axs;
    int k = 1 + rng.upto(3);
    for (int i = 0; i < k; ++i)
      axs.push_back(testutil::random_prop_axiom(rng, atoms, false));
    Ontology o = make_ontology("O", std::move(axs));
    Axiom q = testutil::random_prop_axiom(rng, atoms, false);
    CHECK(entails_prop_dd(o, q) == entails_prop(o, q));
  }

  // 30-variable chain: enumeration refuses, the dd backend decides
  std::vector<Axiom> chain;
  for (int i = 0; i < 29; ++i)
    chain.push_back(ci(atom("V" + std::to_string(i)),
                       atom("V" + std::to_string(i + 1))));
  Ontology longChain = make_ontology("L", std::move(chain));
  Axiom end = ci(atom("V0"), atom("V29"));
  CHECK_THROWS_WITH_AS(entails_prop(longChain, end),
                       "propositional enumeration bound exceeded",
                       BoundExceeded);
  CHECK(entails_prop_dd(longChain, end));
  CHECK(!entails_prop_dd(longChain, ci(atom("V29"), atom("V0"))));

  CHECK(dd_node_limit() >= 1000000);
}

TEST_CASE("explicit backend refuses oversized ambient signatures") {
  std::vector<std::string> names;
  for (int i = 0; i < 25; ++i) names.push_back("N" + std::to_string(i));
  CHECK_THROWS_WITH_AS(ModelSetFactory(names, Backend::Explicit),
                       "explicit model table bound exceeded", BoundExceeded);
  ModelSetFactory ok(std::vector<std::string>(names.begin(), names.end() - 1),
                     Backend::Dd);
  CHECK(!ok.full().empty());
}
