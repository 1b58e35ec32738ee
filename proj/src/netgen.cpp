#include "ontonet/netgen.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <stdexcept>

#include "ontonet/closure.hpp"

namespace ontonet {

namespace {

// Every builder invocation gets its own symbol namespace so outputs compose
// without collisions. Plain identifiers, parseable by the text format.
std::string fresh_prefix() {
  static std::atomic<unsigned> counter{0};
  return "g" + std::to_string(counter.fetch_add(1)) + "_";
}

GenOutput finish(GenOutput g) {
  g.manifest.ontologyCount = g.network.ontologies.size();
  g.manifest.relationCount = g.network.relations.size();
  g.manifest.acyclic = is_acyclic(g.network);
  return g;
}

Network merge_networks(const Network& a, const Network& b) {
  Network out = a;
  for (const auto& [id, o] : b.ontologies) {
    if (out.has_ontology(id)) {
      if (!(out.ontology(id) == o))
        throw std::invalid_argument("ontology id collision in union: " + id);
    } else {
      out.add_ontology(o);
    }
  }
  for (const auto& rel : b.relations) out.add_relation(rel);
  return out;
}

Ontology merged_ontology(const Ontology& a, const Ontology& b,
                         std::string id) {
  Ontology o = a;
  o.id = std::move(id);
  for (const auto& ax : b.axioms) o.add(ax);
  return o;
}

Ontology substitute_ontology(const Ontology& o,
                             const std::map<std::string, Concept>& m,
                             std::string id) {
  Ontology out = make_ontology(std::move(id), {});
  for (const auto& ax : o.axioms) out.add(substitute(ax, m));
  return out;
}

}  // namespace

const char* expected_name(Expected e) {
  switch (e) {
    case Expected::Entailed: return "entailed";
    case Expected::NotEntailed: return "notEntailed";
    default: return "bySimulator";
  }
}

const char* tm_verdict_name(TMVerdict v) {
  return v == TMVerdict::AcceptsWithin ? "acceptsWithin" : "noAcceptWithin";
}

const char* atm_verdict_name(ATMVerdict v) {
  return v == ATMVerdict::Accepts ? "accepts" : "rejects";
}

GenOutput gen_trivial(Ontology o) {
  if (o.id.empty()) o.id = fresh_prefix() + "O";
  GenOutput g;
  g.focus = o.id;
  g.suggestedQuery = o.axioms.empty() ? ci(top(), top()) : o.axioms.front();
  g.expected = Expected::Entailed;
  g.expressed = o;
  g.network.add_ontology(std::move(o));
  return finish(std::move(g));
}

GenOutput gen_union(const GenOutput& g1, const GenOutput& g2) {
  auto pfx = fresh_prefix();
  GenOutput out;
  out.network = merge_networks(g1.network, g2.network);
  Ontology focus = make_ontology(pfx + "O", {});
  out.focus = focus.id;
  out.network.add_ontology(std::move(focus));
  out.network.add_relation(
      {out.focus, signature_of(g1.expressed), g1.focus});
  out.network.add_relation(
      {out.focus, signature_of(g2.expressed), g2.focus});
  out.suggestedQuery = g1.suggestedQuery;
  out.expected = g1.expected;
  out.expressed =
      merged_ontology(g1.expressed, g2.expressed, pfx + "expressed");
  return finish(std::move(out));
}

namespace {

struct SubstParts {
  GenOutput wrapped;
  std::map<std::string, std::string> primed;  // original -> primed name
};

// Shared first half of the substitution builders: attach {A == A'} for fresh
// primed names, then re-import the union through a signature hiding the
// originals, so the primed copies carry the meaning.
SubstParts substitute_core(const GenOutput& g,
                           const std::vector<std::string>& names) {
  Signature sig = signature_of(g.expressed);
  for (const auto& n : names) {
    if (sig.contains_role(n))
      throw std::invalid_argument("cannot substitute role name '" + n + "'");
    if (!sig.contains_concept(n))
      throw std::invalid_argument("substituted name '" + n +
                                  "' does not occur in the expressed ontology");
  }
  auto pfx = fresh_prefix();
  SubstParts parts;
  Ontology aliases = make_ontology(pfx + "Oalias", {});
  for (const auto& n : names) {
    parts.primed[n] = pfx + "p_" + n;
    for (auto& ax : equivalence(atom(n), atom(parts.primed[n])))
      aliases.add(ax);
  }
  GenOutput u = gen_union(g, gen_trivial(std::move(aliases)));
  Signature hide = signature_of(u.expressed);
  for (const auto& n : names) hide.concepts.erase(n);
  GenOutput w;
  w.network = std::move(u.network);
  Ontology f = make_ontology(pfx + "Osub", {});
  w.focus = f.id;
  w.network.add_ontology(std::move(f));
  w.network.add_relation({w.focus, hide, u.focus});
  std::map<std::string, Concept> toPrimed;
  for (const auto& [n, p] : parts.primed) toPrimed[n] = atom(p);
  w.expressed = substitute_ontology(g.expressed, toPrimed, pfx + "expressed");
  w.suggestedQuery = g.suggestedQuery;
  w.expected = g.expected;
  parts.wrapped = finish(std::move(w));
  return parts;
}

// Core of the doubling families. `step` absent builds plain nested exists.
GenOutput el_exists_core(const std::string& z,
                         const std::optional<std::string>& step,
                         const std::string& b, const std::string& r,
                         unsigned n, ExpMode mode) {
  if (n > 12)
    throw std::invalid_argument("doubling exponent too large (n <= 12)");
  auto pfx = fresh_prefix();
  Concept inner1 = step ? exists(r, c_and({atom(*step), atom(b)}))
                        : exists(r, atom(b));
  Ontology base = make_ontology(pfx + "O0", {});
  if (mode == ExpMode::Equiv) {
    for (auto& ax : equivalence(atom(z), inner1)) base.add(ax);
  } else {
    base.add(ci(atom(z), inner1));
  }

  GenOutput out;
  std::string prev = base.id;
  out.network.add_ontology(std::move(base));
  Signature full;
  full.concepts = {z, b};
  if (step) full.concepts.insert(*step);
  full.roles = {r};
  for (unsigned i = 1; i <= n; ++i) {
    std::string u = pfx + "U" + std::to_string(i);
    Ontology c1 = make_ontology(pfx + "Oc1_" + std::to_string(i), {});
    for (auto& ax : equivalence(atom(b), atom(u))) c1.add(ax);
    Ontology c2 = make_ontology(pfx + "Oc2_" + std::to_string(i), {});
    for (auto& ax : equivalence(atom(u), atom(z))) c2.add(ax);
    Ontology f = make_ontology(pfx + "Of" + std::to_string(i), {});
    // Upper half sees Z defined down to U, lower half U down to B.
    Signature sigU = full;
    sigU.concepts.erase(b);
    sigU.concepts.insert(u);
    Signature sigL = full;
    sigL.concepts.erase(z);
    sigL.concepts.insert(u);
    std::string c1id = c1.id, c2id = c2.id, fid = f.id;
    out.network.add_ontology(std::move(c1));
    out.network.add_ontology(std::move(c2));
    out.network.add_ontology(std::move(f));
    out.network.add_relation({c1id, full, prev});
    out.network.add_relation({c2id, full, prev});
    out.network.add_relation({fid, sigU, c1id});
    out.network.add_relation({fid, sigL, c2id});
    prev = fid;
  }
  out.focus = prev;
  unsigned count = 1u << n;
  Concept expanded = step ? exists_with(r, atom(*step), count, atom(b))
                          : exists_n(r, count, atom(b));
  out.suggestedQuery = ci(atom(z), expanded);
  out.expected = Expected::Entailed;
  Ontology expr = make_ontology(pfx + "expressed", {});
  if (mode == ExpMode::Equiv) {
    for (auto& ax : equivalence(atom(z), expanded)) expr.add(ax);
  } else {
    expr.add(ci(atom(z), expanded));
  }
  out.expressed = std::move(expr);
  return finish(std::move(out));
}

// Substitution whose definition side is a doubling network: replaces `name`
// by a fresh primed name defined as the 2^k-fold exists chain ending in
// `inner`.
GenOutput exists_exp_substitute(const GenOutput& g, const std::string& name,
                                const std::string& r,
                                const std::optional<std::string>& step,
                                const std::string& inner, unsigned k) {
  auto parts = substitute_core(g, {name});
  GenOutput defs =
      el_exists_core(parts.primed.at(name), step, inner, r, k, ExpMode::Equiv);
  GenOutput out = gen_union(parts.wrapped, defs);
  unsigned count = 1u << k;
  Concept expanded = step ? exists_with(r, atom(*step), count, atom(inner))
                          : exists_n(r, count, atom(inner));
  out.suggestedQuery = substitute(g.suggestedQuery, {{name, expanded}});
  out.expected = g.expected;
  return out;
}

}  // namespace

GenOutput gen_substitute(const GenOutput& g,
                         const std::map<std::string, Concept>& subs) {
  std::vector<std::string> names;
  names.reserve(subs.size());
  for (const auto& [n, c] : subs) names.push_back(n);
  auto parts = substitute_core(g, names);
  auto pfx = fresh_prefix();
  Ontology defs = make_ontology(pfx + "Odef", {});
  for (const auto& [n, c] : subs)
    for (auto& ax : equivalence(atom(parts.primed.at(n)), c)) defs.add(ax);
  GenOutput out = gen_union(parts.wrapped, gen_trivial(std::move(defs)));
  out.suggestedQuery = substitute(g.suggestedQuery, subs);
  out.expected = g.expected;
  return out;
}

GenOutput gen_el_exists(const std::string& z, const std::string& a,
                        const std::string& b, const std::string& r, unsigned n,
                        ExpMode mode) {
  return el_exists_core(z, a, b, r, n, mode);
}

GenOutput gen_forall_exp(const std::string& z, const std::string& a,
                         const std::string& r, unsigned n) {
  if (n > 12)
    throw std::invalid_argument("doubling exponent too large (n <= 12)");
  auto pfx = fresh_prefix();
  Ontology base = make_ontology(pfx + "O0", {});
  for (auto& ax : equivalence(atom(z), forall_n(r, 1, atom(a)))) base.add(ax);

  GenOutput out;
  std::string prev = base.id;
  out.network.add_ontology(std::move(base));
  Signature full;
  full.concepts = {z, a};
  full.roles = {r};
  for (unsigned i = 1; i <= n; ++i) {
    std::string u = pfx + "U" + std::to_string(i);
    Ontology c1 = make_ontology(pfx + "Oc1_" + std::to_string(i), {});
    for (auto& ax : equivalence(atom(a), atom(u))) c1.add(ax);
    Ontology c2 = make_ontology(pfx + "Oc2_" + std::to_string(i), {});
    for (auto& ax : equivalence(atom(u), atom(z))) c2.add(ax);
    Ontology f = make_ontology(pfx + "Of" + std::to_string(i), {});
    Signature sigU = full;
    sigU.concepts.erase(a);
    sigU.concepts.insert(u);
    Signature sigL = full;
    sigL.concepts.erase(z);
    sigL.concepts.insert(u);
    std::string c1id = c1.id, c2id = c2.id, fid = f.id;
    out.network.add_ontology(std::move(c1));
    out.network.add_ontology(std::move(c2));
    out.network.add_ontology(std::move(f));
    out.network.add_relation({c1id, full, prev});
    out.network.add_relation({c2id, full, prev});
    out.network.add_relation({fid, sigU, c1id});
    out.network.add_relation({fid, sigL, c2id});
    prev = fid;
  }
  out.focus = prev;
  Concept expanded = forall_n(r, 1u << n, atom(a));
  out.suggestedQuery = ci(atom(z), expanded);
  out.expected = Expected::Entailed;
  Ontology expr = make_ontology(pfx + "expressed", {});
  for (auto& ax : equivalence(atom(z), expanded)) expr.add(ax);
  out.expressed = std::move(expr);
  return finish(std::move(out));
}

GenOutput gen_role_chain(const std::string& r, const std::string& s,
                         unsigned n, ChainMode mode) {
  if (n > 4)
    throw std::invalid_argument("squaring exponent too large (n <= 4)");
  auto pfx = fresh_prefix();
  Signature rs;
  rs.roles = {r, s};
  Ontology base = make_ontology(pfx + "O0", {});
  if (mode == ChainMode::Exact) {
    base.add(ri({r, r}, s));
  } else {
    base.add(ri({r}, s));
  }

  GenOutput out;
  std::string prev = base.id;
  out.network.add_ontology(std::move(base));
  for (unsigned i = 1; i <= n; ++i) {
    std::string tag = std::to_string(i);
    Ontology c1 = make_ontology(pfx + "Oc1_" + tag, {});
    Ontology c2 = make_ontology(pfx + "Oc2_" + tag, {});
    Ontology f = make_ontology(pfx + "Of" + tag, {});
    Signature sig1, sig2;
    if (mode == ChainMode::Exact) {
      std::string u = pfx + "u" + tag;
      c1.add(ri({s}, u));
      c2.add(ri({u}, r));
      sig1.roles = {r, u};
      sig2.roles = {u, s};
    } else {
      std::string u1 = pfx + "u1_" + tag;
      std::string u2 = pfx + "u2_" + tag;
      std::string u3 = pfx + "u3_" + tag;
      c1.add(ri({s}, u1));
      c2.add(ri({u1}, r));
      c2.add(ri({s}, u2));
      f.add(ri({u1}, u3));
      f.add(ri({u1, u1}, u3));
      f.add(ri({u2, u3}, s));
      f.add(ri({r}, s));
      sig1.roles = {r, u1};
      sig2.roles = {u1, u2};
    }
    std::string c1id = c1.id, c2id = c2.id, fid = f.id;
    out.network.add_ontology(std::move(c1));
    out.network.add_ontology(std::move(c2));
    out.network.add_ontology(std::move(f));
    out.network.add_relation({c1id, rs, prev});
    out.network.add_relation({c2id, rs, prev});
    out.network.add_relation({fid, sig1, c1id});
    out.network.add_relation({fid, sig2, c2id});
    prev = fid;
  }
  out.focus = prev;
  // 2^(2^n) fits easily: n <= 4 gives chain length 65536.
  std::size_t len = std::size_t{1} << (1u << n);
  std::size_t queryLen = (mode == ChainMode::Exact) ? len : len - 1;
  out.suggestedQuery =
      ri(std::vector<std::string>(queryLen, r), s);
  out.expected = Expected::Entailed;
  Ontology expr = make_ontology(pfx + "expressed", {});
  if (mode == ChainMode::Exact)
    expr.add(ri(std::vector<std::string>(len, r), s));
  out.expressed = std::move(expr);
  return finish(std::move(out));
}

namespace {

// Validates the self-referential image shape: nested exists over one role,
// an optional step conjunct repeated at every level, the name itself at the
// bottom.
void check_iterate_shape(const std::string& name, const Concept& c) {
  const std::string who = "substitution shape violation for '" + name + "': ";
  if (c->kind != ConceptKind::Exists)
    throw std::invalid_argument(who + "image must be an exists chain");
  const std::string role = c->name;
  const std::string nameKey = atom(name)->key;
  std::optional<std::string> stepKey;
  Concept cur = c;
  for (unsigned level = 0;; ++level) {
    if (cur->kind != ConceptKind::Exists || cur->name != role)
      throw std::invalid_argument(who + "all levels must use role '" + role +
                                  "'");
    Concept body = cur->children[0];
    Concept next;
    std::optional<std::string> levelStep;
    if (body->kind == ConceptKind::And && body->children.size() == 2) {
      const Concept& x = body->children[0];
      const Concept& y = body->children[1];
      auto continues = [&](const Concept& d) {
        return d->key == nameKey ||
               (d->kind == ConceptKind::Exists && d->name == role);
      };
      if (continues(x) == continues(y))
        throw std::invalid_argument(who +
                                    "cannot tell step conjunct from chain");
      next = continues(x) ? x : y;
      levelStep = (continues(x) ? y : x)->key;
    } else {
      next = body;
    }
    if (level == 0) {
      stepKey = levelStep;
    } else if (stepKey != levelStep) {
      throw std::invalid_argument(who + "step conjunct differs across levels");
    }
    if (next->key == nameKey) return;
    cur = next;
  }
}

}  // namespace

GenOutput gen_cyclic_iterate(const GenOutput& base,
                             const std::map<std::string, Concept>& subs) {
  for (const auto& [n, c] : subs) check_iterate_shape(n, c);
  auto pfx = fresh_prefix();
  std::set<std::string> sigma;
  for (const auto& [n, c] : subs) {
    auto s = signature_of(c);
    sigma.insert(s.concepts.begin(), s.concepts.end());
  }
  std::map<std::string, Concept> primeMap;
  std::map<std::string, std::string> primeName;
  for (const auto& b : sigma) {
    primeName[b] = pfx + "p_" + b;
    primeMap[b] = atom(primeName[b]);
  }
  Ontology copies = make_ontology(pfx + "Ocopy", {});
  for (const auto& b : sigma)
    for (auto& ax : equivalence(atom(b), atom(primeName[b]))) copies.add(ax);
  Ontology defs = make_ontology(pfx + "Odef", {});
  for (const auto& [n, c] : subs)
    for (auto& ax : equivalence(atom(n), substitute(c, primeMap)))
      defs.add(ax);

  Signature sigBig = signature_of(base.expressed);
  for (const auto& [n, c] : subs) sigBig = sigBig.united(signature_of(c));
  Signature sigPrime = sigBig;
  for (const auto& b : sigma) {
    sigPrime.concepts.erase(b);
    sigPrime.concepts.insert(primeName[b]);
  }

  GenOutput out;
  out.network = base.network;
  std::string copyId = copies.id, defId = defs.id;
  out.network.add_ontology(std::move(copies));
  out.network.add_ontology(std::move(defs));
  out.network.add_relation({copyId, signature_of(base.expressed), base.focus});
  out.network.add_relation({copyId, sigPrime, defId});
  out.network.add_relation({defId, sigBig, copyId});
  out.focus = copyId;
  out.suggestedQuery = substitute(base.suggestedQuery, subs);
  out.expected = Expected::Entailed;
  out.expressed = base.expressed;  // m = 0 member of the infinite family
  return finish(std::move(out));
}

// ── Machines ─────────────────────────────────────────────────────────────

namespace {

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void check_move(const TMMove& mv, const std::vector<std::string>& states,
                const std::vector<std::string>& alphabet,
                const std::string& what) {
  if (!contains(states, mv.state))
    throw std::invalid_argument(what + ": target state '" + mv.state +
                                "' unknown");
  if (!contains(alphabet, mv.write))
    throw std::invalid_argument(what + ": written symbol '" + mv.write +
                                "' unknown");
  if (mv.dir != 1 && mv.dir != -1)
    throw std::invalid_argument(what + ": move must be +1 or -1");
}

void check_disjoint_names(const std::vector<std::string>& states,
                          const std::vector<std::string>& alphabet) {
  std::set<std::string> seen;
  for (const auto& q : states)
    if (!seen.insert(q).second)
      throw std::invalid_argument("duplicate state '" + q + "'");
  for (const auto& a : alphabet) {
    if (seen.count(a))
      throw std::invalid_argument("'" + a +
                                  "' used as both state and tape symbol");
    if (!seen.insert(a).second)
      throw std::invalid_argument("duplicate tape symbol '" + a + "'");
  }
}

}  // namespace

void validate_tm(const TMSpec& m) {
  if (m.states.empty()) throw std::invalid_argument("machine has no states");
  if (!contains(m.states, m.q0))
    throw std::invalid_argument("initial state not in the state set");
  if (!contains(m.states, m.qacc))
    throw std::invalid_argument("accepting state not in the state set");
  if (!contains(m.alphabet, m.blank))
    throw std::invalid_argument("blank symbol not in the alphabet");
  check_disjoint_names(m.states, m.alphabet);
  for (const auto& q : m.states)
    for (const auto& a : m.alphabet) {
      auto it = m.delta.find({q, a});
      if (it == m.delta.end())
        throw std::invalid_argument("transition table not total: missing (" +
                                    q + ", " + a + ")");
      check_move(it->second, m.states, m.alphabet, "delta(" + q + ", " + a + ")");
    }
}

namespace {

std::vector<std::string> atm_states(const ATMSpec& m) {
  std::vector<std::string> v = m.forallStates;
  v.insert(v.end(), m.existsStates.begin(), m.existsStates.end());
  v.push_back(m.qrej);
  return v;
}

bool atm_is_state(const ATMSpec& m, const std::string& x) {
  return x == m.qrej || contains(m.forallStates, x) ||
         contains(m.existsStates, x);
}

}  // namespace

void validate_atm(const ATMSpec& m) {
  for (const auto& q : m.forallStates)
    if (contains(m.existsStates, q))
      throw std::invalid_argument("state '" + q +
                                  "' is both universal and existential");
  if (contains(m.forallStates, m.qrej) || contains(m.existsStates, m.qrej))
    throw std::invalid_argument("the rejecting state cannot be branching");
  if (!atm_is_state(m, m.q0) || m.q0 == m.qrej)
    throw std::invalid_argument("initial state must be universal or existential");
  if (!contains(m.alphabet, m.blank))
    throw std::invalid_argument("blank symbol not in the alphabet");
  auto states = atm_states(m);
  check_disjoint_names(states, m.alphabet);
  if (m.tapeLength < 2)
    throw std::invalid_argument("tape must hold the initial configuration");
  for (int alpha : {1, 2}) {
    const auto& d = alpha == 1 ? m.delta1 : m.delta2;
    for (const auto& q : states) {
      for (const auto& a : m.alphabet) {
        auto it = d.find({q, a});
        if (q == m.qrej) {
          if (it != d.end())
            throw std::invalid_argument(
                "the rejecting state has no outgoing transitions");
          continue;
        }
        if (it == d.end())
          throw std::invalid_argument(
              "branch " + std::to_string(alpha) +
              " not total on non-rejecting states: missing (" + q + ", " + a +
              ")");
        check_move(it->second, states, m.alphabet,
                   "delta" + std::to_string(alpha) + "(" + q + ", " + a + ")");
      }
    }
  }
}

// ── Window functions ─────────────────────────────────────────────────────

namespace {

struct WindowCtx {
  std::function<bool(const std::string&)> isState;
  std::function<bool(const std::string&)> hasSuccessor;
  std::function<TMMove(const std::string&, const std::string&)> lookup;
};

// Scan-low core: slots at ascending positions, state at slot p scans slot
// p-1, target is the third slot. Derived case by case from the insertion
// update (write below the state, then shift the state over one cell).
std::optional<std::string> window_low(const WindowCtx& cx,
                                      const std::array<std::string, 4>& s) {
  int stateAt = -1;
  for (int i = 0; i < 4; ++i) {
    if (cx.isState(s[i])) {
      if (stateAt >= 0) return std::nullopt;  // two states never occur
      stateAt = i;
    }
  }
  if (stateAt < 0) return s[2];
  if (!cx.hasSuccessor(s[stateAt])) return std::nullopt;
  switch (stateAt) {
    case 0:
      return s[2];  // acts below the window
    case 1: {
      TMMove mv = cx.lookup(s[1], s[0]);
      return mv.dir > 0 ? mv.state : s[2];
    }
    case 2: {
      TMMove mv = cx.lookup(s[2], s[1]);
      return mv.dir > 0 ? s[3] : mv.write;
    }
    default: {
      TMMove mv = cx.lookup(s[3], s[2]);
      return mv.dir > 0 ? mv.write : mv.state;
    }
  }
}

}  // namespace

std::optional<std::string> atm_window_next(
    const ATMSpec& m, int alpha, const std::array<std::string, 4>& w) {
  const auto& d = alpha == 1 ? m.delta1 : m.delta2;
  WindowCtx cx{
      [&](const std::string& x) { return atm_is_state(m, x); },
      [&](const std::string& q) { return q != m.qrej; },
      [&](const std::string& q, const std::string& a) { return d.at({q, a}); }};
  return window_low(cx, w);
}

std::optional<std::string> tm_window_next(const TMSpec& m,
                                          const std::array<std::string, 4>& w) {
  // Same core as the alternating variant; a plain machine has a total
  // transition table, so every single-state window has an image.
  WindowCtx cx{
      [&](const std::string& x) { return contains(m.states, x); },
      [&](const std::string&) { return true; },
      [&](const std::string& q, const std::string& a) {
        return m.delta.at({q, a});
      }};
  return window_low(cx, w);
}

// ── Hardness builders ────────────────────────────────────────────────────

GenOutput gen_tm_el(const TMSpec& m, unsigned expParam) {
  validate_tm(m);
  if (expParam == 0)
    throw std::invalid_argument(
        "expParam must be at least 1 (the encoding needs n = 2^expParam >= 2)");
  if (expParam > 2)
    throw std::invalid_argument("expParam too large (desk-scale bound is 2)");
  const unsigned k = expParam;
  auto pfx = fresh_prefix();
  auto cn = [&](const std::string& sym) { return pfx + "B_" + sym; };
  const std::string A = pfx + "A", H = pfx + "H", r = pfx + "r";
  auto sName = [&](int i) { return pfx + "S" + std::to_string(i); };
  const std::string blankName = cn(m.blank);

  // Start chain: A sits n(2n+3) cells above the initial configuration, which
  // is q0 followed by 2n+2 blanks (n = 2^k). Split as n^2+n^2+n+n+n.
  GenOutput g = gen_trivial(
      make_ontology(pfx + "Ochain", {ci(atom(A), atom(sName(1)))}));
  g = exists_exp_substitute(g, sName(1), r, std::nullopt, sName(2), 2 * k);
  g = exists_exp_substitute(g, sName(2), r, std::nullopt, sName(3), 2 * k);
  g = exists_exp_substitute(g, sName(3), r, std::nullopt, sName(4), k);
  g = exists_exp_substitute(g, sName(4), r, std::nullopt, sName(5), k);
  g = exists_exp_substitute(g, sName(5), r, std::nullopt, sName(6), k);
  g = gen_substitute(
      g, {{sName(6), c_and({atom(cn(m.q0)), atom(sName(7))})}});
  g = exists_exp_substitute(g, sName(7), r, blankName, sName(8), k + 1);
  g = gen_substitute(
      g, {{sName(8), exists(r, c_and({atom(blankName),
                                      exists(r, atom(blankName))}))}});

  // One block per legal window: 2n cells below a new-configuration cell lies
  // the old window it is computed from. The parts are folded with a balanced
  // union tree; a left-deep spine would copy the accumulated network per
  // block and stretch the import paths the closure has to rename along.
  std::vector<GenOutput> parts;
  parts.push_back(std::move(g));
  std::vector<std::string> syms = m.states;
  syms.insert(syms.end(), m.alphabet.begin(), m.alphabet.end());
  unsigned blockIdx = 0;
  for (const auto& w1 : syms)
    for (const auto& w2 : syms)
      for (const auto& w3 : syms)
        for (const auto& w4 : syms) {
          auto res = tm_window_next(m, {w1, w2, w3, w4});
          if (!res) continue;
          ++blockIdx;
          std::string t1 = pfx + "T" + std::to_string(blockIdx);
          std::string t2 = t1 + "w";
          GenOutput blk = gen_trivial(
              make_ontology(pfx + "Owin" + std::to_string(blockIdx),
                            {ci(atom(t1), atom(cn(*res)))}));
          blk = exists_exp_substitute(blk, t1, r, std::nullopt, t2, k + 1);
          Concept pattern = c_and(
              {atom(cn(w1)),
               exists(r, c_and({atom(cn(w2)),
                                exists(r, c_and({atom(cn(w3)),
                                                 exists(r, atom(cn(w4)))}))}))});
          blk = gen_substitute(blk, {{t2, pattern}});
          parts.push_back(std::move(blk));
        }

  parts.push_back(gen_trivial(make_ontology(
      pfx + "Ohalt", {ci(exists(r, atom(cn(m.qacc))), atom(H)),
                      ci(exists(r, atom(H)), atom(H))})));
  while (parts.size() > 1) {
    std::vector<GenOutput> next;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
      next.push_back(gen_union(parts[i], parts[i + 1]));
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  g = std::move(parts.front());
  g.suggestedQuery = ci(atom(A), atom(H));
  g.expected = Expected::BySimulator;
  return g;
}

namespace {

struct AtmNames {
  std::string pfx;
  std::string bn(const std::string& a, unsigned i) const {
    return pfx + "B_" + a + "_" + std::to_string(i);
  }
  std::string bna(int alpha, const std::string& a, unsigned i) const {
    return pfx + "B" + std::to_string(alpha) + "_" + a + "_" +
           std::to_string(i);
  }
  std::string hbar() const { return pfx + "Hbar"; }
  std::string hbar(int alpha) const {
    return pfx + "Hbar" + std::to_string(alpha);
  }
  std::string init() const { return pfx + "A"; }
};

struct AtmParts {
  Ontology focus, branch1, branch2;
  Signature sigma, sigma1, sigma2;
  AtmNames nm;
};

// The three ontology bodies and the two signatures shared by both network
// shapes.
AtmParts atm_parts(const ATMSpec& m) {
  const unsigned n = m.tapeLength;
  AtmParts p;
  p.nm.pfx = fresh_prefix();
  const AtmNames& nm = p.nm;
  std::vector<std::string> syms = atm_states(m);
  syms.insert(syms.end(), m.alphabet.begin(), m.alphabet.end());

  for (int alpha : {1, 2}) {
    Ontology o = make_ontology(nm.pfx + "O" + std::to_string(alpha), {});
    for (unsigned i = 1; i <= n; ++i) {
      // Window at positions i-2 .. i+1; slots outside [1, n] are blanks.
      int pos[4] = {static_cast<int>(i) - 2, static_cast<int>(i) - 1,
                    static_cast<int>(i), static_cast<int>(i) + 1};
      std::vector<int> real;
      for (int j = 0; j < 4; ++j)
        if (pos[j] >= 1 && pos[j] <= static_cast<int>(n)) real.push_back(j);
      std::vector<std::size_t> pick(real.size(), 0);
      for (;;) {
        std::array<std::string, 4> w = {m.blank, m.blank, m.blank, m.blank};
        for (std::size_t j = 0; j < real.size(); ++j)
          w[real[j]] = syms[pick[j]];
        if (auto res = atm_window_next(m, alpha, w)) {
          std::vector<Concept> lhs;
          for (std::size_t j = 0; j < real.size(); ++j)
            lhs.push_back(atom(nm.bna(alpha, w[real[j]], pos[real[j]])));
          o.add(ci(lhs.size() == 1 ? lhs[0] : c_and(lhs),
                   atom(nm.bn(*res, i))));
        }
        std::size_t j = 0;
        while (j < pick.size() && ++pick[j] == syms.size()) pick[j++] = 0;
        if (j == pick.size()) break;
      }
    }
    for (unsigned i = 1; i <= n; ++i)
      o.add(ci(atom(nm.bn(m.qrej, i)), atom(nm.hbar())));
    o.add(ci(atom(nm.hbar()), atom(nm.hbar(alpha))));
    (alpha == 1 ? p.branch1 : p.branch2) = std::move(o);
  }

  Ontology o = make_ontology(nm.pfx + "O", {});
  for (unsigned i = 1; i <= n; ++i) {
    for (const auto& q : m.forallStates) {
      o.add(ci(c_and({atom(nm.hbar(1)), atom(nm.bn(q, i))}), atom(nm.hbar())));
      o.add(ci(c_and({atom(nm.hbar(2)), atom(nm.bn(q, i))}), atom(nm.hbar())));
    }
    for (const auto& q : m.existsStates)
      o.add(ci(c_and({atom(nm.hbar(1)), atom(nm.hbar(2)), atom(nm.bn(q, i))}),
               atom(nm.hbar())));
  }
  std::vector<Concept> init;
  for (unsigned i = 1; i <= n; ++i)
    init.push_back(atom(nm.bn(i == 2 ? m.q0 : m.blank, i)));
  o.add(ci(atom(nm.init()), c_and(init)));
  for (int alpha : {1, 2})
    for (unsigned i = 1; i <= n; ++i)
      for (const auto& a : syms)
        o.add(ci(atom(nm.bn(a, i)), atom(nm.bna(alpha, a, i))));
  p.focus = std::move(o);

  p.sigma.concepts.insert(nm.hbar());
  p.sigma1.concepts.insert(nm.hbar(1));
  p.sigma2.concepts.insert(nm.hbar(2));
  for (unsigned i = 1; i <= n; ++i)
    for (const auto& a : syms) {
      p.sigma.concepts.insert(nm.bn(a, i));
      p.sigma1.concepts.insert(nm.bna(1, a, i));
      p.sigma2.concepts.insert(nm.bna(2, a, i));
    }
  return p;
}

GenOutput atm_output_shell(const AtmParts& p) {
  GenOutput out;
  out.suggestedQuery = ci(atom(p.nm.init()), atom(p.nm.hbar()));
  out.expected = Expected::BySimulator;
  out.expressed = make_ontology(p.nm.pfx + "expressed", {});
  return out;
}

}  // namespace

GenOutput gen_atm_h(const ATMSpec& m) {
  validate_atm(m);
  if (m.tapeLength < 4)
    throw std::invalid_argument(
        "tape too small for the boundary window schemas (need n >= 4)");
  AtmParts p = atm_parts(m);
  GenOutput out = atm_output_shell(p);
  std::string oid = p.focus.id, b1 = p.branch1.id, b2 = p.branch2.id;
  out.network.add_ontology(std::move(p.focus));
  out.network.add_ontology(std::move(p.branch1));
  out.network.add_ontology(std::move(p.branch2));
  out.network.add_relation({oid, p.sigma1, b1});
  out.network.add_relation({oid, p.sigma2, b2});
  out.network.add_relation({b1, p.sigma, oid});
  out.network.add_relation({b2, p.sigma, oid});
  out.focus = oid;
  return finish(std::move(out));
}

GenOutput gen_atm_h_acyclic(const ATMSpec& m, unsigned k) {
  validate_atm(m);
  if (m.tapeLength < 4)
    throw std::invalid_argument(
        "tape too small for the boundary window schemas (need n >= 4)");
  if (k == 0)
    throw std::invalid_argument("unfolding depth must be at least 1");
  AtmParts p = atm_parts(m);
  GenOutput out = atm_output_shell(p);
  std::string prev;
  for (unsigned j = 1; j <= k; ++j) {
    std::string tag = std::to_string(j);
    Ontology o = p.focus;
    o.id = p.focus.id + "_" + tag;
    Ontology o1 = p.branch1;
    o1.id = p.branch1.id + "_" + tag;
    Ontology o2 = p.branch2;
    o2.id = p.branch2.id + "_" + tag;
    std::string oid = o.id, b1 = o1.id, b2 = o2.id;
    out.network.add_ontology(std::move(o));
    out.network.add_ontology(std::move(o1));
    out.network.add_ontology(std::move(o2));
    out.network.add_relation({oid, p.sigma1, b1});
    out.network.add_relation({oid, p.sigma2, b2});
    if (j >= 2) {
      // The branch ontologies feed the previous level back in.
      out.network.add_relation({b1, p.sigma, prev});
      out.network.add_relation({b2, p.sigma, prev});
    }
    prev = oid;
  }
  out.focus = prev;
  return finish(std::move(out));
}

// ── Simulators ───────────────────────────────────────────────────────────

TMVerdict simulate_tm(const TMSpec& m, unsigned maxSteps) {
  validate_tm(m);
  std::vector<std::string> tape(4 * std::size_t{maxSteps} + 3, m.blank);
  std::size_t head = 2 * std::size_t{maxSteps} + 1;
  std::string state = m.q0;
  if (state == m.qacc) return TMVerdict::AcceptsWithin;
  for (unsigned t = 0; t < maxSteps; ++t) {
    const TMMove& mv = m.delta.at({state, tape[head]});
    tape[head] = mv.write;
    head = mv.dir > 0 ? head + 1 : head - 1;
    state = mv.state;
    if (state == m.qacc) return TMVerdict::AcceptsWithin;
  }
  return TMVerdict::NoAcceptWithin;
}

namespace {

using Config = std::vector<std::string>;

std::optional<std::size_t> state_pos(const ATMSpec& m, const Config& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (atm_is_state(m, c[i])) return i;
  return std::nullopt;
}

// Insertion-string step: the state at index p scans the cell below it;
// writes and state symbols shifted past the ends are discarded.
std::optional<Config> atm_successor(const ATMSpec& m, const Config& c,
                                    int alpha) {
  auto pos = state_pos(m, c);
  if (!pos) return std::nullopt;  // stateless configurations are stuck
  std::size_t p = *pos;
  const std::string& q = c[p];
  if (q == m.qrej) return std::nullopt;
  const std::string scanned = p >= 1 ? c[p - 1] : m.blank;
  const auto& d = alpha == 1 ? m.delta1 : m.delta2;
  const TMMove& mv = d.at({q, scanned});
  Config out = c;
  if (mv.dir > 0) {
    if (p >= 1) out[p - 1] = mv.write;
    out[p] = p + 1 < c.size() ? c[p + 1] : m.blank;
    if (p + 1 < c.size()) out[p + 1] = mv.state;
  } else {
    out[p] = mv.write;
    if (p >= 1) out[p - 1] = mv.state;
  }
  return out;
}

Config atm_init(const ATMSpec& m) {
  Config c(m.tapeLength, m.blank);
  c[1] = m.q0;
  return c;
}

bool atm_in_forall(const ATMSpec& m, const Config& c) {
  auto pos = state_pos(m, c);
  return pos && contains(m.forallStates, c[*pos]);
}

}  // namespace

ATMVerdict simulate_atm(const ATMSpec& m) {
  validate_atm(m);
  const Config init = atm_init(m);
  std::map<Config, std::array<std::optional<Config>, 2>> graph;
  std::vector<Config> queue{init};
  while (!queue.empty()) {
    Config c = std::move(queue.back());
    queue.pop_back();
    if (graph.count(c)) continue;
    auto& succ = graph[c];
    for (int alpha : {1, 2}) {
      succ[alpha - 1] = atm_successor(m, c, alpha);
      if (succ[alpha - 1] && !graph.count(*succ[alpha - 1]))
        queue.push_back(*succ[alpha - 1]);
    }
  }
  // Least fixpoint of the rejecting predicate over the reachable graph.
  std::set<Config> rejecting;
  for (const auto& [c, succ] : graph) {
    auto pos = state_pos(m, c);
    if (pos && c[*pos] == m.qrej) rejecting.insert(c);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [c, succ] : graph) {
      if (rejecting.count(c) || !succ[0]) continue;
      bool r1 = rejecting.count(*succ[0]) > 0;
      bool r2 = rejecting.count(*succ[1]) > 0;
      bool rej = atm_in_forall(m, c) ? (r1 || r2) : (r1 && r2);
      if (rej) {
        rejecting.insert(c);
        grew = true;
      }
    }
  }
  return rejecting.count(init) ? ATMVerdict::Rejects : ATMVerdict::Accepts;
}

bool atm_rejects_within(const ATMSpec& m, unsigned k) {
  validate_atm(m);
  std::map<std::pair<Config, unsigned>, bool> memo;
  std::function<bool(const Config&, unsigned)> rec =
      [&](const Config& c, unsigned depth) -> bool {
    auto pos = state_pos(m, c);
    if (!pos) return false;
    if (c[*pos] == m.qrej) return true;
    if (depth == 0) return false;
    auto key = std::make_pair(c, depth);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    auto s1 = atm_successor(m, c, 1);
    auto s2 = atm_successor(m, c, 2);
    bool r1 = rec(*s1, depth - 1);
    bool r2 = rec(*s2, depth - 1);
    bool rej = atm_in_forall(m, c) ? (r1 || r2) : (r1 && r2);
    memo[key] = rej;
    return rej;
  };
  return rec(atm_init(m), k);
}

}  // namespace ontonet
