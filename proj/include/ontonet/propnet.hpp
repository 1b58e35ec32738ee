#pragma once

// Exact network-entailment engines for role-free networks: singleton
// semantics, the greatest-fixpoint pruning procedure (explicit table and
// decision-diagram backends), the recursive procedure for acyclic networks,
// a naive reference oracle, and agreement-certificate verification.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ontonet/core.hpp"

namespace ontonet {

enum class Backend { Explicit, Dd };

class DdManager;

// Family of subsets of an ambient list of concept names. Instances are
// immutable; operations combine sets created by the same factory.
class ModelSet {
 public:
  bool empty() const;
  bool equals(const ModelSet& o) const;
  bool subset_of(const ModelSet& o) const;
  ModelSet intersect(const ModelSet& o) const;
  // existential projection onto `keep`, cylindrified back to the ambient:
  // s is in the result iff some member agrees with s on `keep`
  ModelSet smooth_outside(const std::set<std::string>& keep) const;
  bool contains(const std::set<std::string>& atoms) const;

  std::size_t count() const;                            // explicit only
  std::vector<std::set<std::string>> elements() const;  // explicit only

  Backend backend() const { return backend_; }
  const std::vector<std::string>& ambient() const { return *ambient_; }

 private:
  friend class ModelSetFactory;
  ModelSet() = default;

  Backend backend_ = Backend::Explicit;
  std::shared_ptr<const std::vector<std::string>> ambient_;
  std::shared_ptr<DdManager> mgr_;                 // dd backend
  int root_ = 0;                                   // dd backend
  std::shared_ptr<void> rootGuard_;                // keeps root_ uncollected
  std::shared_ptr<const std::vector<bool>> table_; // explicit backend
};

// Fixes the ambient signature (sorted concept names), the backend, and the
// shared decision-diagram store for one query's lifetime.
class ModelSetFactory {
 public:
  // Throws BoundExceeded for the explicit backend above 24 names.
  ModelSetFactory(std::vector<std::string> ambient, Backend backend);

  ModelSet full() const;
  ModelSet none() const;
  // { s | I(s) satisfies every axiom of o }; o must be role-free with its
  // concept names inside the ambient.
  ModelSet singleton_models(const Ontology& o) const;
  // { s | I(s) is in c }
  ModelSet satisfying(const Concept& c) const;
  // { s | I(s) satisfies q's left side but not its right side }
  ModelSet violators(const Axiom& q) const;
  // explicit backend only
  ModelSet from_masks(const std::vector<std::uint32_t>& masks) const;

  Backend backend() const { return backend_; }
  const std::vector<std::string>& ambient() const { return *ambient_; }
  // Live nodes in the shared diagram store; 0 for the explicit backend.
  std::size_t dd_nodes() const;

 private:
  Backend backend_;
  std::shared_ptr<const std::vector<std::string>> ambient_;
  std::shared_ptr<DdManager> mgr_;
};

struct AgreementTable {
  ModelSetFactory factory;
  std::map<std::string, ModelSet> sets;  // ontology id -> surviving family
};

// Sorted concept names of sig(n) plus sig(q); role names never enter.
std::vector<std::string> ambient_signature(const Network& n, const Axiom& q);

// Models of one ontology over an explicit ambient signature.
ModelSet singleton_models(const Ontology& o, const Signature& sigma,
                          Backend backend);

// Greatest fixpoint: initialize every ontology's singleton models, prune
// along relations (round-robin, canonical order) until a quiet pass.
AgreementTable gfp_table(const Network& n, const Axiom& q,
                         Backend backend = Backend::Dd);
bool gfp_entails(const Network& n, const std::string& o, const Axiom& q,
                 Backend backend = Backend::Dd);

// Recursive procedure for acyclic networks; memoized on (ontology, set)
// unless memo=false restores the literal recursion.
bool acyclic_entails(const Network& n, const std::string& o, const Axiom& q,
                     bool memo = true);

// Naive oracle: explicit subset tables and quadratic defect scanning, then a
// certificate check on its own fixpoint. At most 16 ambient names.
bool reference_entails(const Network& n, const std::string& o, const Axiom& q);

// (a) every member satisfies its ontology, (b) along every relation every
// member of the importer's family has an agreeing partner in the imported
// family.
bool verify_agreement(const Network& n, const AgreementTable& t);

SingletonInterpretation singleton_projection(
    const std::set<std::string>& trueAtoms);

// Propositional entailment decided on the dd backend; no variable cap
// beyond the node limit. Complements the 24-variable enumeration checker.
bool entails_prop_dd(const Ontology& o, const Axiom& q);

// Node budget for dd stores, configurable via ONTONET_DD_NODE_LIMIT.
std::size_t dd_node_limit();

}  // namespace ontonet
