#pragma once

// Classical (single-ontology) entailment backends: a completion-rule
// subsumption engine for EL with bottom and simple role hierarchies, and a
// propositional checker by truth-table enumeration.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontonet/core.hpp"

namespace ontonet {

// Pseudo-names standing for top and bottom inside normal forms and
// subsumer sets. The leading '#' keeps them apart from user symbols.
inline const std::string kTopName = "#top";
inline const std::string kBotName = "#bot";

// Normal forms: A <= B, A1 and A2 <= B, A <= some r.B, some r.A <= B,
// with every side a concept name or a pseudo-name. Fresh definition names
// carry '#' and map back to their originals in `defs`.
struct NormalizedTBox {
  struct NameSub {
    std::string sub, sup;
  };
  struct ConjSub {
    std::string a, b, sup;
  };
  struct ExistsRight {
    std::string sub, role, filler;
  };
  struct ExistsLeft {
    std::string role, filler, sup;
  };

  std::vector<NameSub> atomic;
  std::vector<ConjSub> conj;
  std::vector<ExistsRight> existsRight;
  std::vector<ExistsLeft> existsLeft;
  std::vector<std::pair<std::string, std::string>> rh;  // r <= s
  std::map<std::string, Concept> defs;

  std::size_t axiom_count() const {
    return atomic.size() + conj.size() + existsRight.size() +
           existsLeft.size() + rh.size();
  }
};

// Throws UnsupportedDialect on or/not or role chains of length >= 2.
NormalizedTBox normalize(const Ontology& o);

// Saturated subsumer sets and role successor pairs.
struct SubsumptionIndex {
  std::map<std::string, std::set<std::string>> S;
  std::map<std::string, std::set<std::pair<std::string, std::string>>> R;
  bool inconsistent = false;  // bottom reached from top
};

// extraNames seeds subsumer sets for names that may not occur in t.
SubsumptionIndex saturate(const NormalizedTBox& t,
                          const std::vector<std::string>& extraNames = {});

bool subsumes(const NormalizedTBox& t, const std::string& sub,
              const std::string& sup);

// Query sides get fresh definition names; true iff every model of o maps
// lhs inside rhs. Inconsistent ontologies entail everything; the optional
// flag reports that the result came from inconsistency.
bool entails_el(const Ontology& o, const Axiom& q,
                bool* inconsistentOut = nullptr);

// Role-free propositional entailment over at most 24 variables; throws
// BoundExceeded("propositional enumeration bound exceeded") above that and
// UnsupportedDialect when roles occur.
bool entails_prop(const Ontology& o, const Axiom& q);

}  // namespace ontonet
