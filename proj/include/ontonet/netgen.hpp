#pragma once

// Generators for networks with known expected answers: union and substitution
// builders, the iterated-exponent families, the cyclic iteration builder, and
// the machine-hardness instances together with their simulator oracles.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ontonet/core.hpp"

namespace ontonet {

enum class Expected { Entailed, NotEntailed, BySimulator };
const char* expected_name(Expected e);

struct Manifest {
  std::size_t ontologyCount = 0;
  std::size_t relationCount = 0;
  bool acyclic = true;
  bool operator==(const Manifest&) const = default;
};

// Every builder returns the network, the ontology queries are asked of
// (focus), one query the construction settles with its predicted verdict,
// structural counts, and the classical ontology the network expresses: for
// queries over sig(expressed), network entailment at the focus coincides with
// classical entailment of `expressed`. Hardness builders leave `expressed`
// empty or definition-chained (their oracle is a simulator); the cyclic
// iteration builder stores only the m = 0 member of its infinite family.
struct GenOutput {
  Network network;
  std::string focus;
  Axiom suggestedQuery;
  Expected expected = Expected::Entailed;
  Manifest manifest;
  Ontology expressed;
};

// Single-ontology network with no relations. A nonempty id is kept.
GenOutput gen_trivial(Ontology o);

// Fresh empty focus importing each side whole; expresses the union of the two
// expressed ontologies. Suggested query and verdict follow g1.
GenOutput gen_union(const GenOutput& g1, const GenOutput& g2);

// Expresses g.expressed with each mapped name replaced by its image. Built
// from fresh primed names: attach {A == A'}, re-import through a signature
// hiding A, then attach {A' == C}. Throws std::invalid_argument when a mapped
// name is a role or absent from the expressed signature.
GenOutput gen_substitute(const GenOutput& g,
                         const std::map<std::string, Concept>& subs);

enum class ExpMode { Equiv, Sub };

// Doubling family: 3n+1 ontologies expressing Z == (or <=) the 2^n-fold
// nested (some r (A and ...)) chain ending in B. Level i holds copies
// {B == U_i}, {U_i == Z} and an empty focus whose two imports compose the
// halves. n is capped at 12.
GenOutput gen_el_exists(const std::string& z, const std::string& a,
                        const std::string& b, const std::string& r, unsigned n,
                        ExpMode mode);

// Same doubling with value restrictions: expresses Z == the 2^n-fold
// (all r ...) chain ending in A, where (all r C) is encoded as
// (not (some r (not C))). Structural output only; no bundled engine decides
// this dialect.
GenOutput gen_forall_exp(const std::string& z, const std::string& a,
                         const std::string& r, unsigned n);

enum class ChainMode { Exact, Less };

// Squaring family for role chains: exact mode expresses r^(2^(2^n)) <= s,
// less mode the family { r^k <= s : 1 <= k < 2^(2^n) }. Structural output
// only. Exact mode keeps the single chain axiom in `expressed`; less mode
// leaves it empty (the family is not materialized) and the suggested query
// names the largest member. n is capped at 4.
GenOutput gen_role_chain(const std::string& r, const std::string& s,
                         unsigned n, ChainMode mode);

// Cyclic iteration: every image must have the self-referential shape
// (some r (D and ... (some r (D and A)))) for its own key A. Adds primed
// copies of the image signature, a definition ontology, and three relations
// closing a cycle; the new focus is the copy ontology. The network expresses
// the union of all iterates base[A -> C]^m; consequences of the m-th iterate
// appear in the renamed closure at depth 2m+1.
GenOutput gen_cyclic_iterate(const GenOutput& base,
                             const std::map<std::string, Concept>& subs);

struct TMMove {
  std::string state;
  std::string write;
  int dir = +1;  // +1 toward higher tape positions, -1 back
  bool operator==(const TMMove&) const = default;
};

// Deterministic machine with a total transition table. States and tape
// symbols share one concept-name space in the encodings, so they must not
// overlap.
struct TMSpec {
  std::vector<std::string> states;
  std::string q0, qacc;
  std::vector<std::string> alphabet;  // includes the blank
  std::string blank;
  std::map<std::pair<std::string, std::string>, TMMove> delta;
};

void validate_tm(const TMSpec& m);  // throws std::invalid_argument

// Alternating machine: every non-rejecting state is universal or existential
// and carries both branch transitions on every symbol; qrej has none.
struct ATMSpec {
  std::vector<std::string> forallStates, existsStates;
  std::string q0, qrej;
  std::vector<std::string> alphabet;
  std::string blank;
  std::map<std::pair<std::string, std::string>, TMMove> delta1, delta2;
  unsigned tapeLength = 4;
};

void validate_atm(const ATMSpec& m);

// Window functions: the next symbol at a window's target cell, given four
// consecutive cells of an insertion-string configuration (state symbols sit
// inside the tape string, reading the cell immediately below themselves).
// Both conventions target the third slot. nullopt marks windows that never
// produce a successor cell: two state symbols, or (alternating only) the
// rejecting state, whose table is empty.
std::optional<std::string> tm_window_next(const TMSpec& m,
                                          const std::array<std::string, 4>& w);
std::optional<std::string> atm_window_next(const ATMSpec& m, int alpha,
                                           const std::array<std::string, 4>& w);

// Acyclic EL instance over a role r: the focus entails A <= H iff m reaches
// qacc from the all-blank tape within 2^expParam steps. The unfolded tape's
// derivable band narrows from the left by one cell per step, so the claim is
// exact for machines that never move left; the bundled corpora respect that.
// expParam 0 is refused (the arithmetic assumes 2^expParam >= 2), as is
// expParam > 2.
GenOutput gen_tm_el(const TMSpec& m, unsigned expParam);

// Cyclic hardness instance: three ontologies, four relations, and the query
// A <= Hbar, entailed iff the machine rejects. The acyclic variant unfolds k
// levels (3k ontologies, 4k-2 relations): entailed iff the machine rejects
// within k steps. Both need tapeLength >= 4 for the boundary window schemas.
GenOutput gen_atm_h(const ATMSpec& m);
GenOutput gen_atm_h_acyclic(const ATMSpec& m, unsigned k);

enum class TMVerdict { AcceptsWithin, NoAcceptWithin };
const char* tm_verdict_name(TMVerdict v);

// Direct simulation on a blank tape window of 4*maxSteps+3 cells with the
// head centered, wide enough that the head cannot reach the window edge.
TMVerdict simulate_tm(const TMSpec& m, unsigned maxSteps);

enum class ATMVerdict { Accepts, Rejects };
const char* atm_verdict_name(ATMVerdict v);

// Rejection status of the initial configuration (blank tape of tapeLength
// cells, q0 inserted at position 2) as the least fixpoint of the rejecting
// predicate over the reachable configuration graph. A configuration whose
// state symbol fell off the tape has no successors and never rejects.
ATMVerdict simulate_atm(const ATMSpec& m);

// Bounded variant: rejecting within k steps.
bool atm_rejects_within(const ATMSpec& m, unsigned k);

}  // namespace ontonet
