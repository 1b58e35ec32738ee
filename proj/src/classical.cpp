#include "ontonet/classical.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>

namespace ontonet {

namespace {

bool is_name(const Concept& c) {
  return c->kind == ConceptKind::Atom || c->kind == ConceptKind::Top ||
         c->kind == ConceptKind::Bottom;
}

std::string name_of(const Concept& c) {
  switch (c->kind) {
    case ConceptKind::Top:
      return kTopName;
    case ConceptKind::Bottom:
      return kBotName;
    default:
      return c->name;
  }
}

class Normalizer {
 public:
  NormalizedTBox out;

  void add_axiom(const Axiom& a) {
    if (a.kind == Axiom::Kind::RoleInclusion) {
      if (a.chain.size() >= 2)
        throw UnsupportedDialect(
            "role chains are outside the subsumption engine: " + a.key);
      out.rh.push_back({a.chain[0], a.super});
      return;
    }
    const Concept &l = a.lhs, &r = a.rhs;
    // axioms already in normal form keep their shape (idempotence)
    if (is_name(l) && is_name(r)) {
      emit_atomic(name_of(l), name_of(r));
      return;
    }
    if (l->kind == ConceptKind::And && l->children.size() == 2 &&
        is_name(l->children[0]) && is_name(l->children[1]) && is_name(r)) {
      emit_conj(name_of(l->children[0]), name_of(l->children[1]), name_of(r));
      return;
    }
    if (l->kind == ConceptKind::Exists && is_name(l->children[0]) &&
        is_name(r)) {
      emit_exists_left(l->name, name_of(l->children[0]), name_of(r));
      return;
    }
    if (is_name(l) && r->kind == ConceptKind::Exists &&
        is_name(r->children[0])) {
      emit_exists_right(name_of(l), r->name, name_of(r->children[0]));
      return;
    }
    std::string left = lhs_name(l);
    if (left == kBotName) return;
    rhs_into(left, r);
  }

 private:
  int counter_ = 0;

  std::string fresh(const Concept& original) {
    std::string name = "N#" + std::to_string(++counter_);
    out.defs.emplace(name, original);
    return name;
  }

  void emit_atomic(const std::string& a, const std::string& b) {
    if (a == kBotName || b == kTopName || a == b) return;
    out.atomic.push_back({a, b});
  }

  void emit_conj(const std::string& a, const std::string& b,
                 const std::string& c) {
    if (a == kBotName || b == kBotName || c == kTopName) return;
    if (a == kTopName) return emit_atomic(b, c);
    if (b == kTopName) return emit_atomic(a, c);
    out.conj.push_back({a, b, c});
  }

  void emit_exists_left(const std::string& role, const std::string& filler,
                        const std::string& sup) {
    if (filler == kBotName || sup == kTopName) return;
    out.existsLeft.push_back({role, filler, sup});
  }

  void emit_exists_right(const std::string& sub, const std::string& role,
                         const std::string& filler) {
    if (sub == kBotName) return;
    if (filler == kBotName) return emit_atomic(sub, kBotName);
    out.existsRight.push_back({sub, role, filler});
  }

  // Returns a name X with C <= X (and X standing in for C on left sides).
  std::string lhs_name(const Concept& c) {
    switch (c->kind) {
      case ConceptKind::Atom:
      case ConceptKind::Top:
      case ConceptKind::Bottom:
        return name_of(c);
      case ConceptKind::And: {
        std::vector<std::string> parts;
        for (const auto& ch : c->children) {
          std::string n = lhs_name(ch);
          if (n == kBotName) return kBotName;
          if (n != kTopName) parts.push_back(n);
        }
        if (parts.empty()) return kTopName;
        std::string cur = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) {
          std::string next = fresh(c);
          emit_conj(cur, parts[i], next);
          cur = next;
        }
        return cur;
      }
      case ConceptKind::Exists: {
        std::string filler = lhs_name(c->children[0]);
        if (filler == kBotName) return kBotName;
        std::string x = fresh(c);
        emit_exists_left(c->name, filler, x);
        return x;
      }
      default:
        throw UnsupportedDialect(
            "or/not are outside the subsumption engine: " + c->key);
    }
  }

  // Enforces a <= d structurally.
  void rhs_into(const std::string& a, const Concept& d) {
    switch (d->kind) {
      case ConceptKind::Atom:
      case ConceptKind::Top:
      case ConceptKind::Bottom:
        emit_atomic(a, name_of(d));
        return;
      case ConceptKind::And:
        for (const auto& ch : d->children) rhs_into(a, ch);
        return;
      case ConceptKind::Exists: {
        std::string filler;
        if (is_name(d->children[0])) {
          filler = name_of(d->children[0]);
        } else {
          filler = fresh(d->children[0]);
          rhs_into(filler, d->children[0]);
        }
        emit_exists_right(a, d->name, filler);
        return;
      }
      default:
        throw UnsupportedDialect(
            "or/not are outside the subsumption engine: " + d->key);
    }
  }
};

// Integer-indexed saturation state with a worklist.
class Saturator {
 public:
  explicit Saturator(const NormalizedTBox& t) : t_(t) {
    nid(kTopName);
    nid(kBotName);
    for (const auto& x : t.atomic) {
      nid(x.sub);
      nid(x.sup);
    }
    for (const auto& x : t.conj) {
      nid(x.a);
      nid(x.b);
      nid(x.sup);
    }
    for (const auto& x : t.existsRight) {
      nid(x.sub);
      nid(x.filler);
      rid(x.role);
    }
    for (const auto& x : t.existsLeft) {
      nid(x.filler);
      nid(x.sup);
      rid(x.role);
    }
    for (const auto& x : t.rh) {
      rid(x.first);
      rid(x.second);
    }
  }

  void seed(const std::string& name) { nid(name); }

  void run() {
    build_indexes();
    int n = static_cast<int>(names_.size());
    S_.assign(n, {});
    inEdges_.assign(n, {});
    edges_.clear();
    for (int a = 0; a < n; ++a) {
      push_sub(a, a);
      push_sub(a, top_);
    }
    drain();
  }

  bool has(int a, int b) const { return S_[a].count(b) != 0; }
  int node(const std::string& name) const {
    auto it = nameId_.find(name);
    return it == nameId_.end() ? -1 : it->second;
  }
  int top_node() const { return top_; }
  int bot_node() const { return bot_; }

  SubsumptionIndex export_index() const {
    SubsumptionIndex idx;
    for (std::size_t a = 0; a < names_.size(); ++a)
      for (int b : S_[static_cast<int>(a)])
        idx.S[names_[a]].insert(names_[b]);
    for (const auto& [r, pair] : edges_)
      idx.R[roles_[r]].insert({names_[pair.first], names_[pair.second]});
    idx.inconsistent = has(top_, bot_);
    return idx;
  }

 private:
  using Edge = std::pair<int, std::pair<int, int>>;  // (role, (src, dst))

  int nid(const std::string& name) {
    auto [it, inserted] = nameId_.emplace(name, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }

  int rid(const std::string& role) {
    auto [it, inserted] = roleId_.emplace(role, static_cast<int>(roles_.size()));
    if (inserted) roles_.push_back(role);
    return it->second;
  }

  void build_indexes() {
    top_ = nid(kTopName);
    bot_ = nid(kBotName);
    int n = static_cast<int>(names_.size());
    int nr = static_cast<int>(roles_.size());
    bySub_.assign(n, {});
    byConjPart_.assign(n, {});
    byExistsSub_.assign(n, {});
    exLeft_.clear();

    for (const auto& x : t_.atomic) bySub_[nid(x.sub)].push_back(nid(x.sup));
    for (const auto& x : t_.conj) {
      int a = nid(x.a), b = nid(x.b), c = nid(x.sup);
      byConjPart_[a].push_back({b, c});
      if (a != b) byConjPart_[b].push_back({a, c});
    }
    for (const auto& x : t_.existsRight)
      byExistsSub_[nid(x.sub)].push_back({rid(x.role), nid(x.filler)});
    for (const auto& x : t_.existsLeft)
      exLeft_[{rid(x.role), nid(x.filler)}].push_back(nid(x.sup));

    // reflexive-transitive role hierarchy closure
    std::vector<std::vector<int>> direct(nr);
    for (const auto& x : t_.rh) direct[rid(x.first)].push_back(rid(x.second));
    superOf_.assign(nr, {});
    for (int r = 0; r < nr; ++r) {
      std::deque<int> queue{r};
      std::vector<bool> seen(nr, false);
      seen[r] = true;
      while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        superOf_[r].push_back(cur);
        for (int nxt : direct[cur])
          if (!seen[nxt]) {
            seen[nxt] = true;
            queue.push_back(nxt);
          }
      }
    }
  }

  void push_sub(int a, int b) {
    if (S_[a].insert(b).second) workSubs_.push_back({a, b});
  }

  void push_edge(int src, int role, int dst) {
    for (int s : superOf_[role]) {
      Edge e{s, {src, dst}};
      if (edges_.insert(e).second) workEdges_.push_back(e);
    }
  }

  void drain() {
    while (!workSubs_.empty() || !workEdges_.empty()) {
      if (!workSubs_.empty()) {
        auto [a, b] = workSubs_.front();
        workSubs_.pop_front();
        for (int c : bySub_[b]) push_sub(a, c);
        for (const auto& [partner, c] : byConjPart_[b])
          if (has(a, partner)) push_sub(a, c);
        for (const auto& [r, f] : byExistsSub_[b]) push_edge(a, r, f);
        if (b == bot_)
          for (const auto& [r, src] : inEdges_[a]) push_sub(src, bot_);
        for (const auto& [r, src] : inEdges_[a]) {
          auto it = exLeft_.find({r, b});
          if (it != exLeft_.end())
            for (int sup : it->second) push_sub(src, sup);
        }
        continue;
      }
      Edge e = workEdges_.front();
      workEdges_.pop_front();
      auto [r, pair] = e;
      auto [src, dst] = pair;
      inEdges_[dst].push_back({r, src});
      for (int f : S_[dst]) {
        auto it = exLeft_.find({r, f});
        if (it != exLeft_.end())
          for (int sup : it->second) push_sub(src, sup);
      }
      if (has(dst, bot_)) push_sub(src, bot_);
    }
  }

  const NormalizedTBox& t_;
  std::vector<std::string> names_, roles_;
  std::map<std::string, int> nameId_, roleId_;
  int top_ = 0, bot_ = 1;

  std::vector<std::vector<int>> bySub_;
  std::vector<std::vector<std::pair<int, int>>> byConjPart_;  // (partner, sup)
  std::vector<std::vector<std::pair<int, int>>> byExistsSub_;  // (role, filler)
  std::map<std::pair<int, int>, std::vector<int>> exLeft_;  // (role,filler)->sups
  std::vector<std::vector<int>> superOf_;

  std::vector<std::set<int>> S_;
  std::vector<std::vector<std::pair<int, int>>> inEdges_;  // (role, src)
  std::set<Edge> edges_;
  std::deque<std::pair<int, int>> workSubs_;
  std::deque<Edge> workEdges_;
};

}  // namespace

NormalizedTBox normalize(const Ontology& o) {
  Normalizer n;
  for (const auto& a : o.axioms) n.add_axiom(a);
  return std::move(n.out);
}

SubsumptionIndex saturate(const NormalizedTBox& t,
                          const std::vector<std::string>& extraNames) {
  Saturator s(t);
  for (const auto& n : extraNames) s.seed(n);
  s.run();
  return s.export_index();
}

bool subsumes(const NormalizedTBox& t, const std::string& sub,
              const std::string& sup) {
  Saturator s(t);
  s.seed(sub);
  s.seed(sup);
  s.run();
  int a = s.node(sub), b = s.node(sup);
  return s.has(a, b) || s.has(a, s.bot_node());
}

bool entails_el(const Ontology& o, const Axiom& q, bool* inconsistentOut) {
  if (q.kind != Axiom::Kind::RoleInclusion) {
    const std::string ql = "Q#lhs", qr = "Q#rhs";
    Normalizer n;
    for (const auto& a : o.axioms) n.add_axiom(a);
    for (const auto& a : equivalence(atom(ql), q.lhs)) n.add_axiom(a);
    for (const auto& a : equivalence(atom(qr), q.rhs)) n.add_axiom(a);
    Saturator s(n.out);
    s.run();
    bool inconsistent = s.has(s.top_node(), s.bot_node());
    if (inconsistentOut) *inconsistentOut = inconsistent;
    int a = s.node(ql), b = s.node(qr);
    return s.has(a, b) || s.has(a, s.bot_node());
  }
  throw UnsupportedDialect("role inclusion queries are not decided: " + q.key);
}

// ── Propositional enumeration ────────────────────────────────────────────

namespace {

// Concepts compiled to a flat node array evaluated against a bitmask.
struct PropProgram {
  struct Node {
    ConceptKind kind;
    int bit = -1;
    std::vector<int> kids;
  };
  std::vector<Node> nodes;
  std::map<std::string, int> bits;

  int bit_of(const std::string& name) {
    auto [it, inserted] = bits.emplace(name, static_cast<int>(bits.size()));
    return it->second;
  }

  int compile(const Concept& c) {
    Node n;
    n.kind = c->kind;
    if (c->kind == ConceptKind::Atom) n.bit = bit_of(c->name);
    if (c->kind == ConceptKind::Exists)
      throw UnsupportedDialect("roles are outside propositional enumeration: " +
                               c->key);
    for (const auto& ch : c->children) n.kids.push_back(compile(ch));
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  bool eval(int i, std::uint32_t mask) const {
    const Node& n = nodes[i];
    switch (n.kind) {
      case ConceptKind::Top:
        return true;
      case ConceptKind::Bottom:
        return false;
      case ConceptKind::Atom:
        return (mask >> n.bit) & 1u;
      case ConceptKind::And:
        for (int k : n.kids)
          if (!eval(k, mask)) return false;
        return true;
      case ConceptKind::Or:
        for (int k : n.kids)
          if (eval(k, mask)) return true;
        return false;
      case ConceptKind::Not:
        return !eval(n.kids[0], mask);
      default:
        return false;
    }
  }
};

}  // namespace

bool entails_prop(const Ontology& o, const Axiom& q) {
  if (q.kind == Axiom::Kind::RoleInclusion)
    throw UnsupportedDialect("role inclusion queries are not propositional: " +
                             q.key);
  PropProgram prog;
  std::vector<std::pair<int, int>> axioms;  // (lhs, rhs) node ids
  for (const auto& a : o.axioms) {
    if (a.kind == Axiom::Kind::RoleInclusion)
      throw UnsupportedDialect("role axioms are outside propositional "
                               "enumeration: " +
                               a.key);
    axioms.push_back({prog.compile(a.lhs), prog.compile(a.rhs)});
  }
  int qa = prog.compile(q.lhs), qb = prog.compile(q.rhs);
  std::size_t vars = prog.bits.size();
  if (vars > 24)
    throw BoundExceeded("propositional enumeration bound exceeded");
  std::uint64_t count = 1ull << vars;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    auto m = static_cast<std::uint32_t>(mask);
    bool satisfied = true;
    for (const auto& [l, r] : axioms)
      if (prog.eval(l, m) && !prog.eval(r, m)) {
        satisfied = false;
        break;
      }
    if (satisfied && prog.eval(qa, m) && !prog.eval(qb, m)) return false;
  }
  return true;
}

}  // namespace ontonet
