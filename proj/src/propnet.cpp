#include "ontonet/propnet.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cstdlib>
#include <functional>
#include <unordered_map>

#include "ontonet/closure.hpp"

namespace ontonet {

std::size_t dd_node_limit() {
  if (const char* env = std::getenv("ONTONET_DD_NODE_LIMIT")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

// ── Reduced ordered decision diagrams ────────────────────────────────────

// Standard ROBDD with a unique table, an ite cache, and mark-and-sweep
// collection over registered roots. Node indices 0 and 1 are the terminals;
// variable order is the ambient index order. The limit counts live nodes,
// so long pruning runs fail only when one diagram genuinely outgrows the
// store, not from accumulated garbage.
class DdManager {
 public:
  explicit DdManager(std::size_t limit) : limit_(limit) {
    nodes_.push_back({INT_MAX, 0, 0});
    nodes_.push_back({INT_MAX, 1, 1});
  }

  // Scoped protection for handles held across public calls, which are the
  // only collection points. Strictly LIFO; the slot is updatable so a
  // running accumulator needs just one.
  class TempRoot {
   public:
    TempRoot(DdManager& m, int r) : m_(m), idx_(m.temp_.size()) {
      m_.temp_.push_back(r);
    }
    ~TempRoot() { m_.temp_.resize(idx_); }
    TempRoot(const TempRoot&) = delete;
    TempRoot& operator=(const TempRoot&) = delete;
    void set(int r) { m_.temp_[idx_] = r; }
    int get() const { return m_.temp_[idx_]; }

   private:
    DdManager& m_;
    std::size_t idx_;
  };

  // Keeps `root` alive across collections for as long as the token lives.
  std::shared_ptr<void> retain(int root) {
    if (root > 1) ++extRefs_[root];
    return std::shared_ptr<void>(nullptr, [this, root](void*) {
      if (root <= 1) return;
      auto it = extRefs_.find(root);
      if (it != extRefs_.end() && --it->second == 0) extRefs_.erase(it);
    });
  }

  int var(int v) { return mk(v, 0, 1); }

  int and_(int f, int g) {
    TempRoot a(*this, f), b(*this, g);
    maybe_collect();
    return ite_rec(f, g, 0);
  }
  int or_(int f, int g) {
    TempRoot a(*this, f), b(*this, g);
    maybe_collect();
    return ite_rec(f, 1, g);
  }
  int not_(int f) {
    TempRoot a(*this, f);
    maybe_collect();
    return ite_rec(f, 0, 1);
  }
  int ite(int f, int g, int h) {
    TempRoot a(*this, f), b(*this, g), c(*this, h);
    maybe_collect();
    return ite_rec(f, g, h);
  }

  // existentially quantifies every variable with quant[v] != 0
  int smooth(int f, const std::vector<char>& quant) {
    TempRoot a(*this, f);
    maybe_collect();
    std::unordered_map<int, int> cache;
    return smooth_rec(f, quant, cache);
  }

  bool eval(int f, const std::vector<char>& assignment) const {
    while (f > 1) {
      const Node& n = nodes_[f];
      f = assignment[n.var] ? n.hi : n.lo;
    }
    return f == 1;
  }

  std::size_t node_count() const { return nodes_.size() - free_.size(); }

 private:
  struct Node {
    int var, lo, hi;
  };

  struct ArrayHash {
    std::size_t operator()(const std::array<int, 3>& a) const {
      std::size_t h = 1469598103934665603ull;
      for (int x : a) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  int top_var(int f) const { return nodes_[f].var; }

  int cofactor(int f, int v, bool high) const {
    const Node& n = nodes_[f];
    if (n.var != v) return f;
    return high ? n.hi : n.lo;
  }

  int mk(int v, int lo, int hi) {
    if (lo == hi) return lo;
    std::array<int, 3> key{v, lo, hi};
    auto it = unique_.find(key);
    if (it != unique_.end()) return it->second;
    if (node_count() >= limit_)
      throw BoundExceeded("decision diagram node limit exceeded");
    int idx;
    if (!free_.empty()) {
      idx = free_.back();
      free_.pop_back();
      nodes_[idx] = {v, lo, hi};
    } else {
      idx = static_cast<int>(nodes_.size());
      nodes_.push_back({v, lo, hi});
    }
    unique_.emplace(key, idx);
    return idx;
  }

  int ite_rec(int f, int g, int h) {
    if (f == 1) return g;
    if (f == 0) return h;
    if (g == h) return g;
    if (g == 1 && h == 0) return f;
    std::array<int, 3> key{f, g, h};
    auto it = iteCache_.find(key);
    if (it != iteCache_.end()) return it->second;
    int v = std::min({top_var(f), top_var(g), top_var(h)});
    int lo = ite_rec(cofactor(f, v, false), cofactor(g, v, false),
                     cofactor(h, v, false));
    int hi = ite_rec(cofactor(f, v, true), cofactor(g, v, true),
                     cofactor(h, v, true));
    int res = mk(v, lo, hi);
    iteCache_.emplace(key, res);
    return res;
  }

  int smooth_rec(int f, const std::vector<char>& quant,
                 std::unordered_map<int, int>& cache) {
    if (f <= 1) return f;
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    // copy fields: nodes_ may grow (and move) during recursive calls
    Node n = nodes_[f];
    int lo = smooth_rec(n.lo, quant, cache);
    int hi = smooth_rec(n.hi, quant, cache);
    int res = quant[n.var] ? ite_rec(lo, 1, hi) : mk(n.var, lo, hi);
    cache.emplace(f, res);
    return res;
  }

  void maybe_collect() {
    if (node_count() < gcTrigger_) return;
    collect();
    gcTrigger_ = std::max(kGcFloor, 2 * node_count());
  }

  void collect() {
    std::vector<char> mark(nodes_.size(), 0);
    mark[0] = mark[1] = 1;
    std::vector<int> stack;
    auto push = [&](int r) {
      if (r > 1 && !mark[r]) {
        mark[r] = 1;
        stack.push_back(r);
      }
    };
    for (const auto& [root, refs] : extRefs_) push(root);
    for (int r : temp_) push(r);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      push(nodes_[x].lo);
      push(nodes_[x].hi);
    }
    for (std::size_t i = 2; i < nodes_.size(); ++i) {
      Node& n = nodes_[i];
      if (n.var < 0 || mark[i]) continue;  // already free, or live
      unique_.erase({n.var, n.lo, n.hi});
      n.var = -1;
      free_.push_back(static_cast<int>(i));
    }
    iteCache_.clear();  // entries may mention swept nodes
  }

  static constexpr std::size_t kGcFloor = 1u << 20;

  std::size_t limit_;
  std::size_t gcTrigger_ = kGcFloor;
  std::vector<Node> nodes_;
  std::vector<int> free_;
  std::vector<int> temp_;
  std::unordered_map<int, int> extRefs_;
  std::unordered_map<std::array<int, 3>, int, ArrayHash> unique_, iteCache_;
};

// ── ModelSet ─────────────────────────────────────────────────────────────

namespace {

int ambient_index(const std::vector<std::string>& ambient,
                  const std::string& name) {
  auto it = std::lower_bound(ambient.begin(), ambient.end(), name);
  if (it == ambient.end() || *it != name) return -1;
  return static_cast<int>(it - ambient.begin());
}

void require_same_family(const ModelSet& a, const ModelSet& b) {
  if (a.backend() != b.backend() || a.ambient() != b.ambient())
    throw std::logic_error("model sets come from different factories");
}

// Role-free concept evaluation against a bitmask of ambient indices.
bool eval_mask(const Concept& c, std::uint32_t mask,
               const std::vector<std::string>& ambient) {
  switch (c->kind) {
    case ConceptKind::Top:
      return true;
    case ConceptKind::Bottom:
      return false;
    case ConceptKind::Atom: {
      int idx = ambient_index(ambient, c->name);
      if (idx < 0)
        throw std::invalid_argument("concept name outside the ambient "
                                    "signature: " +
                                    c->name);
      return (mask >> idx) & 1u;
    }
    case ConceptKind::And:
      for (const auto& ch : c->children)
        if (!eval_mask(ch, mask, ambient)) return false;
      return true;
    case ConceptKind::Or:
      for (const auto& ch : c->children)
        if (eval_mask(ch, mask, ambient)) return true;
      return false;
    case ConceptKind::Not:
      return !eval_mask(c->children[0], mask, ambient);
    case ConceptKind::Exists:
      return false;  // singleton semantics: role extensions are empty
  }
  return false;
}

void require_role_free(const Ontology& o) {
  Dialect d = dialect_of(o);
  if (d != Dialect::H && d != Dialect::P)
    throw UnsupportedDialect(
        "network entailment engines require role-free ontologies; " + o.id +
        " is " + dialect_name(d));
}

void require_role_free_network(const Network& n, const Axiom& q) {
  Dialect d = dialect_of(n);
  if (d != Dialect::H && d != Dialect::P)
    throw UnsupportedDialect(
        std::string("network entailment engines require a role-free "
                    "network, got ") +
        dialect_name(d));
  if (q.kind == Axiom::Kind::RoleInclusion || !signature_of(q).roles.empty())
    throw UnsupportedDialect("network entailment queries must be role-free: " +
                             q.key);
}

}  // namespace

// ── ModelSet methods ─────────────────────────────────────────────────────

bool ModelSet::empty() const {
  if (backend_ == Backend::Dd) return root_ == 0;
  return std::find(table_->begin(), table_->end(), true) == table_->end();
}

bool ModelSet::equals(const ModelSet& o) const {
  require_same_family(*this, o);
  if (backend_ == Backend::Dd) return root_ == o.root_;
  return *table_ == *o.table_;
}

bool ModelSet::subset_of(const ModelSet& o) const {
  require_same_family(*this, o);
  if (backend_ == Backend::Dd)
    return mgr_->and_(root_, mgr_->not_(o.root_)) == 0;
  for (std::size_t i = 0; i < table_->size(); ++i)
    if ((*table_)[i] && !(*o.table_)[i]) return false;
  return true;
}

ModelSet ModelSet::intersect(const ModelSet& o) const {
  require_same_family(*this, o);
  ModelSet out = *this;
  if (backend_ == Backend::Dd) {
    out.root_ = mgr_->and_(root_, o.root_);
    out.rootGuard_ = mgr_->retain(out.root_);
    return out;
  }
  auto table = std::make_shared<std::vector<bool>>(*table_);
  for (std::size_t i = 0; i < table->size(); ++i)
    (*table)[i] = (*table)[i] && (*o.table_)[i];
  out.table_ = std::move(table);
  return out;
}

ModelSet ModelSet::smooth_outside(const std::set<std::string>& keep) const {
  ModelSet out = *this;
  std::size_t n = ambient_->size();
  if (backend_ == Backend::Dd) {
    std::vector<char> quant(n, 1);
    for (const auto& name : keep) {
      int idx = ambient_index(*ambient_, name);
      if (idx >= 0) quant[idx] = 0;
    }
    out.root_ = mgr_->smooth(root_, quant);
    out.rootGuard_ = mgr_->retain(out.root_);
    return out;
  }
  auto table = std::make_shared<std::vector<bool>>(*table_);
  for (std::size_t v = 0; v < n; ++v) {
    if (keep.count((*ambient_)[v])) continue;
    std::uint32_t bit = 1u << v;
    for (std::uint32_t mask = 0; mask < table->size(); ++mask)
      if (!(mask & bit)) {
        bool merged = (*table)[mask] || (*table)[mask | bit];
        (*table)[mask] = merged;
        (*table)[mask | bit] = merged;
      }
  }
  out.table_ = std::move(table);
  return out;
}

bool ModelSet::contains(const std::set<std::string>& atoms) const {
  std::vector<char> assignment(ambient_->size(), 0);
  std::uint32_t mask = 0;
  for (const auto& a : atoms) {
    int idx = ambient_index(*ambient_, a);
    if (idx < 0)
      throw std::invalid_argument("set member outside the ambient signature: " +
                                  a);
    assignment[idx] = 1;
    mask |= 1u << idx;
  }
  if (backend_ == Backend::Dd) return mgr_->eval(root_, assignment);
  return (*table_)[mask];
}

std::size_t ModelSet::count() const {
  if (backend_ != Backend::Explicit)
    throw std::logic_error("cardinality needs the explicit backend");
  return static_cast<std::size_t>(
      std::count(table_->begin(), table_->end(), true));
}

std::vector<std::set<std::string>> ModelSet::elements() const {
  if (backend_ != Backend::Explicit)
    throw std::logic_error("iteration needs the explicit backend");
  std::vector<std::set<std::string>> out;
  for (std::uint32_t mask = 0; mask < table_->size(); ++mask) {
    if (!(*table_)[mask]) continue;
    std::set<std::string> s;
    for (std::size_t v = 0; v < ambient_->size(); ++v)
      if ((mask >> v) & 1u) s.insert((*ambient_)[v]);
    out.push_back(std::move(s));
  }
  return out;
}

// ── ModelSetFactory ──────────────────────────────────────────────────────

ModelSetFactory::ModelSetFactory(std::vector<std::string> ambient,
                                 Backend backend)
    : backend_(backend) {
  std::sort(ambient.begin(), ambient.end());
  ambient.erase(std::unique(ambient.begin(), ambient.end()), ambient.end());
  if (backend_ == Backend::Explicit && ambient.size() > 24)
    throw BoundExceeded("explicit model table bound exceeded");
  ambient_ = std::make_shared<const std::vector<std::string>>(std::move(ambient));
  if (backend_ == Backend::Dd) mgr_ = std::make_shared<DdManager>(dd_node_limit());
}

ModelSet ModelSetFactory::full() const {
  ModelSet out;
  out.backend_ = backend_;
  out.ambient_ = ambient_;
  out.mgr_ = mgr_;
  if (backend_ == Backend::Dd) {
    out.root_ = 1;
    out.rootGuard_ = mgr_->retain(out.root_);
  } else {
    out.table_ = std::make_shared<const std::vector<bool>>(
        std::size_t(1) << ambient_->size(), true);
  }
  return out;
}

ModelSet ModelSetFactory::none() const {
  ModelSet out;
  out.backend_ = backend_;
  out.ambient_ = ambient_;
  out.mgr_ = mgr_;
  if (backend_ == Backend::Dd) {
    out.root_ = 0;
    out.rootGuard_ = mgr_->retain(out.root_);
  } else {
    out.table_ = std::make_shared<const std::vector<bool>>(
        std::size_t(1) << ambient_->size(), false);
  }
  return out;
}

namespace {

int concept_dd(DdManager& mgr, const Concept& c,
               const std::vector<std::string>& ambient) {
  switch (c->kind) {
    case ConceptKind::Top:
      return 1;
    case ConceptKind::Bottom:
      return 0;
    case ConceptKind::Atom: {
      int idx = ambient_index(ambient, c->name);
      if (idx < 0)
        throw std::invalid_argument("concept name outside the ambient "
                                    "signature: " +
                                    c->name);
      return mgr.var(idx);
    }
    case ConceptKind::And: {
      DdManager::TempRoot acc(mgr, 1);
      for (const auto& ch : c->children)
        acc.set(mgr.and_(acc.get(), concept_dd(mgr, ch, ambient)));
      return acc.get();
    }
    case ConceptKind::Or: {
      DdManager::TempRoot acc(mgr, 0);
      for (const auto& ch : c->children)
        acc.set(mgr.or_(acc.get(), concept_dd(mgr, ch, ambient)));
      return acc.get();
    }
    case ConceptKind::Not:
      return mgr.not_(concept_dd(mgr, c->children[0], ambient));
    case ConceptKind::Exists:
      return 0;  // singleton semantics
  }
  return 0;
}

}  // namespace

ModelSet ModelSetFactory::satisfying(const Concept& c) const {
  if (backend_ == Backend::Dd) {
    ModelSet out = full();
    out.root_ = concept_dd(*mgr_, c, *ambient_);
    out.rootGuard_ = mgr_->retain(out.root_);
    return out;
  }
  std::size_t size = std::size_t(1) << ambient_->size();
  auto table = std::make_shared<std::vector<bool>>(size, false);
  for (std::uint32_t mask = 0; mask < size; ++mask)
    (*table)[mask] = eval_mask(c, mask, *ambient_);
  ModelSet out = none();
  out.table_ = std::move(table);
  return out;
}

ModelSet ModelSetFactory::violators(const Axiom& q) const {
  if (q.kind == Axiom::Kind::RoleInclusion)
    throw UnsupportedDialect("role inclusions have no singleton violators: " +
                             q.key);
  if (backend_ == Backend::Dd) {
    ModelSet out = full();
    DdManager::TempRoot l(*mgr_, concept_dd(*mgr_, q.lhs, *ambient_));
    DdManager::TempRoot r(*mgr_, concept_dd(*mgr_, q.rhs, *ambient_));
    DdManager::TempRoot nr(*mgr_, mgr_->not_(r.get()));
    out.root_ = mgr_->and_(l.get(), nr.get());
    out.rootGuard_ = mgr_->retain(out.root_);
    return out;
  }
  std::size_t size = std::size_t(1) << ambient_->size();
  auto table = std::make_shared<std::vector<bool>>(size, false);
  for (std::uint32_t mask = 0; mask < size; ++mask)
    (*table)[mask] = eval_mask(q.lhs, mask, *ambient_) &&
                     !eval_mask(q.rhs, mask, *ambient_);
  ModelSet out = none();
  out.table_ = std::move(table);
  return out;
}

ModelSet ModelSetFactory::singleton_models(const Ontology& o) const {
  require_role_free(o);
  if (backend_ == Backend::Dd) {
    ModelSet out = full();
    DdManager::TempRoot acc(*mgr_, 1);
    for (const auto& a : o.axioms) {
      DdManager::TempRoot l(*mgr_, concept_dd(*mgr_, a.lhs, *ambient_));
      DdManager::TempRoot r(*mgr_, concept_dd(*mgr_, a.rhs, *ambient_));
      DdManager::TempRoot nl(*mgr_, mgr_->not_(l.get()));
      DdManager::TempRoot imp(*mgr_, mgr_->or_(nl.get(), r.get()));
      acc.set(mgr_->and_(acc.get(), imp.get()));
    }
    out.root_ = acc.get();
    out.rootGuard_ = mgr_->retain(out.root_);
    return out;
  }
  std::size_t size = std::size_t(1) << ambient_->size();
  auto table = std::make_shared<std::vector<bool>>(size, true);
  for (std::uint32_t mask = 0; mask < size; ++mask)
    for (const auto& a : o.axioms)
      if (eval_mask(a.lhs, mask, *ambient_) &&
          !eval_mask(a.rhs, mask, *ambient_)) {
        (*table)[mask] = false;
        break;
      }
  ModelSet out = none();
  out.table_ = std::move(table);
  return out;
}

std::size_t ModelSetFactory::dd_nodes() const {
  return mgr_ ? mgr_->node_count() : 0;
}

ModelSet ModelSetFactory::from_masks(
    const std::vector<std::uint32_t>& masks) const {
  if (backend_ != Backend::Explicit)
    throw std::logic_error("from_masks needs the explicit backend");
  auto table = std::make_shared<std::vector<bool>>(
      std::size_t(1) << ambient_->size(), false);
  for (auto m : masks) (*table)[m] = true;
  ModelSet out = none();
  out.table_ = std::move(table);
  return out;
}

// ── Engines ──────────────────────────────────────────────────────────────

std::vector<std::string> ambient_signature(const Network& n, const Axiom& q) {
  Signature s = signature_of(n).united(signature_of(q));
  return {s.concepts.begin(), s.concepts.end()};
}

ModelSet singleton_models(const Ontology& o, const Signature& sigma,
                          Backend backend) {
  if (!signature_of(o).concepts.empty() &&
      !Signature{signature_of(o).concepts, {}}.subset_of(
          Signature{sigma.concepts, {}}))
    throw std::invalid_argument(
        "ontology signature escapes the ambient signature");
  ModelSetFactory f({sigma.concepts.begin(), sigma.concepts.end()}, backend);
  return f.singleton_models(o);
}

AgreementTable gfp_table(const Network& n, const Axiom& q, Backend backend) {
  require_role_free_network(n, q);
  ModelSetFactory factory(ambient_signature(n, q), backend);
  AgreementTable t{factory, {}};
  for (const auto& [id, o] : n.ontologies)
    t.sets.emplace(id, factory.singleton_models(o));

  // explicit backend sanity bound: pruning only removes, and can remove at
  // most every set once per ontology
  std::size_t removed = 0;
  std::size_t removable =
      backend == Backend::Explicit
          ? n.ontologies.size() * (std::size_t(1) << factory.ambient().size())
          : 0;

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rel : n.relations) {
      ModelSet& importer = t.sets.at(rel.importer);
      ModelSet allowed =
          t.sets.at(rel.imported).smooth_outside(rel.sigma.concepts);
      ModelSet refined = importer.intersect(allowed);
      if (!refined.equals(importer)) {
        if (backend == Backend::Explicit) {
          removed += importer.count() - refined.count();
          if (removed > removable)
            throw std::logic_error("pruning exceeded its removal budget");
        }
        importer = refined;
        changed = true;
      }
    }
  }
  return t;
}

bool gfp_entails(const Network& n, const std::string& o, const Axiom& q,
                 Backend backend) {
  (void)n.ontology(o);
  AgreementTable t = gfp_table(n, q, backend);
  ModelSet bad = t.factory.violators(q);
  return t.sets.at(o).intersect(bad).empty();
}

bool acyclic_entails(const Network& n, const std::string& o, const Axiom& q,
                     bool memo) {
  (void)n.ontology(o);
  if (!is_acyclic(n)) throw CyclicNetwork();
  require_role_free_network(n, q);
  std::vector<std::string> ambient = ambient_signature(n, q);
  if (ambient.size() > 24)
    throw BoundExceeded("explicit model table bound exceeded");
  std::uint32_t fullMask = (1u << ambient.size()) - 1;

  std::map<std::string, std::vector<const ImportRelation*>> out;
  for (const auto& r : n.relations) out[r.importer].push_back(&r);

  auto sigma_mask = [&](const Signature& s) {
    std::uint32_t m = 0;
    for (const auto& c : s.concepts) {
      int idx = ambient_index(ambient, c);
      if (idx >= 0) m |= 1u << idx;
    }
    return m;
  };

  auto sat = [&](const Ontology& ont, std::uint32_t mask) {
    for (const auto& a : ont.axioms)
      if (eval_mask(a.lhs, mask, ambient) && !eval_mask(a.rhs, mask, ambient))
        return false;
    return true;
  };

  std::map<std::pair<std::string, std::uint32_t>, bool> table;
  std::function<bool(const std::string&, std::uint32_t)> accept =
      [&](const std::string& id, std::uint32_t mask) -> bool {
    std::pair<std::string, std::uint32_t> key{id, mask};
    if (memo) {
      auto it = table.find(key);
      if (it != table.end()) return it->second;
    }
    bool ok = sat(n.ontology(id), mask);
    if (ok) {
      auto it = out.find(id);
      if (it != out.end())
        for (const ImportRelation* rel : it->second) {
          std::uint32_t keepMask = sigma_mask(rel->sigma);
          std::uint32_t base = mask & keepMask;
          std::uint32_t rest = fullMask & ~keepMask;
          bool found = false;
          // all candidate partners: fixed bits on the relation signature,
          // free bits everywhere else (submask walk)
          std::uint32_t sub = rest;
          while (true) {
            if (accept(rel->imported, base | sub)) {
              found = true;
              break;
            }
            if (sub == 0) break;
            sub = (sub - 1) & rest;
          }
          if (!found) {
            ok = false;
            break;
          }
        }
    }
    if (memo) table.emplace(key, ok);
    return ok;
  };

  for (std::uint32_t mask = 0; mask <= fullMask; ++mask) {
    bool violates = eval_mask(q.lhs, mask, ambient) &&
                    !eval_mask(q.rhs, mask, ambient);
    if (violates && accept(o, mask)) return false;
  }
  return true;
}

bool reference_entails(const Network& n, const std::string& o, const Axiom& q) {
  (void)n.ontology(o);
  require_role_free_network(n, q);
  std::vector<std::string> ambient = ambient_signature(n, q);
  if (ambient.size() > 16)
    throw BoundExceeded("reference oracle bound exceeded");
  std::uint32_t size = 1u << ambient.size();

  auto to_set = [&](std::uint32_t mask) {
    std::set<std::string> s;
    for (std::size_t v = 0; v < ambient.size(); ++v)
      if ((mask >> v) & 1u) s.insert(ambient[v]);
    return s;
  };

  // deliberately naive: singleton interpretations built per mask, axiom
  // satisfaction checked through the core evaluator
  std::map<std::string, std::vector<std::uint32_t>> family;
  for (const auto& [id, ont] : n.ontologies) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 0; mask < size; ++mask) {
      SingletonInterpretation i{to_set(mask)};
      bool all = true;
      for (const auto& a : ont.axioms) all = all && satisfies_singleton(i, a);
      if (all) masks.push_back(mask);
    }
    family[id] = std::move(masks);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rel : n.relations) {
      auto& source = family[rel.importer];
      const auto& target = family[rel.imported];
      std::vector<std::uint32_t> kept;
      for (std::uint32_t s1 : source) {
        bool found = false;
        for (std::uint32_t s2 : target)
          if (agree_on(to_set(s1), to_set(s2), rel.sigma)) {
            found = true;
            break;
          }
        if (found) kept.push_back(s1);
      }
      if (kept.size() != source.size()) {
        source = std::move(kept);
        changed = true;
      }
    }
  }

  // certificate check on the oracle's own fixpoint
  ModelSetFactory factory(ambient, Backend::Explicit);
  AgreementTable t{factory, {}};
  for (const auto& [id, masks] : family)
    t.sets.emplace(id, factory.from_masks(masks));
  if (!verify_agreement(n, t))
    throw std::logic_error("reference fixpoint failed its certificate check");

  for (std::uint32_t mask : family[o]) {
    SingletonInterpretation i{to_set(mask)};
    if (!satisfies_singleton(i, q)) return false;
  }
  return true;
}

bool verify_agreement(const Network& n, const AgreementTable& t) {
  for (const auto& [id, ont] : n.ontologies) {
    auto it = t.sets.find(id);
    if (it == t.sets.end())
      throw std::invalid_argument("agreement table misses ontology " + id);
    if (!it->second.subset_of(t.factory.singleton_models(ont))) return false;
  }
  for (const auto& rel : n.relations) {
    const ModelSet& importer = t.sets.at(rel.importer);
    const ModelSet& imported = t.sets.at(rel.imported);
    if (!importer.subset_of(imported.smooth_outside(rel.sigma.concepts)))
      return false;
  }
  return true;
}

SingletonInterpretation singleton_projection(
    const std::set<std::string>& trueAtoms) {
  return SingletonInterpretation{trueAtoms};
}

bool entails_prop_dd(const Ontology& o, const Axiom& q) {
  require_role_free(o);
  if (q.kind == Axiom::Kind::RoleInclusion || !signature_of(q).roles.empty())
    throw UnsupportedDialect("propositional queries must be role-free: " +
                             q.key);
  Signature s = signature_of(o).united(signature_of(q));
  ModelSetFactory factory({s.concepts.begin(), s.concepts.end()}, Backend::Dd);
  return factory.singleton_models(o).intersect(factory.violators(q)).empty();
}

}  // namespace ontonet
