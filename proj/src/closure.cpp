#include "ontonet/closure.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>

#include "ontonet/textio.hpp"

namespace ontonet {

namespace {

std::uint32_t fold_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return static_cast<std::uint32_t>(h ^ (h >> 32));
}

std::string sigma_text(const Signature& s) {
  std::string out = "c:";
  for (const auto& c : s.concepts) out += c + ",";
  out += "r:";
  for (const auto& r : s.roles) out += r + ",";
  return out;
}

std::string edge_token(const ImportRelation& r) {
  std::ostringstream out;
  out << r.importer << ">" << r.imported << "@" << std::hex
      << fold_hash(sigma_text(r.sigma));
  return out.str();
}

// Outgoing relations per ontology, in the network's canonical order.
std::map<std::string, std::vector<const ImportRelation*>> outgoing(
    const Network& n) {
  std::map<std::string, std::vector<const ImportRelation*>> out;
  for (const auto& r : n.relations) out[r.importer].push_back(&r);
  return out;
}

}  // namespace

bool is_acyclic(const Network& n) {
  // Kahn's algorithm over importer -> imported edges
  std::map<std::string, int> indeg;
  for (const auto& [id, o] : n.ontologies) indeg[id] = 0;
  for (const auto& r : n.relations) ++indeg[r.imported];
  std::deque<std::string> ready;
  for (const auto& [id, d] : indeg)
    if (d == 0) ready.push_back(id);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::string cur = ready.front();
    ready.pop_front();
    ++seen;
    for (const auto& r : n.relations)
      if (r.importer == cur && --indeg[r.imported] == 0)
        ready.push_back(r.imported);
  }
  return seen == n.ontologies.size();
}

bool is_tree_shaped(const Network& n, const std::string& root) {
  (void)n.ontology(root);  // unknown root throws
  if (!is_acyclic(n)) return false;
  auto out = outgoing(n);
  // count paths root -> v by forward propagation in topological order,
  // restricted to the part reachable from root
  std::map<std::string, std::uint64_t> counts;
  counts[root] = 1;
  std::map<std::string, int> indeg;
  std::map<std::string, bool> reach;
  std::deque<std::string> queue{root};
  reach[root] = true;
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const ImportRelation* r : out[cur]) {
      ++indeg[r->imported];
      if (!reach[r->imported]) {
        reach[r->imported] = true;
        queue.push_back(r->imported);
      }
    }
  }
  std::deque<std::string> ready;
  for (const auto& [id, is] : reach)
    if (is && indeg[id] == 0) ready.push_back(id);
  while (!ready.empty()) {
    std::string cur = ready.front();
    ready.pop_front();
    for (const ImportRelation* r : out[cur]) {
      counts[r->imported] += counts[cur];
      if (--indeg[r->imported] == 0) ready.push_back(r->imported);
    }
  }
  for (const auto& [id, is] : reach)
    if (is && counts[id] != 1) return false;
  return true;
}

std::vector<ImportPath> enumerate_paths(const Network& n,
                                        const std::string& start,
                                        std::size_t maxLen) {
  (void)n.ontology(start);
  auto out = outgoing(n);
  std::vector<ImportPath> result;
  ImportPath cur{start, {}};
  std::function<void()> walk = [&]() {
    result.push_back(cur);
    if (cur.length() >= maxLen) return;
    for (const ImportRelation* r : out[cur.last()]) {
      cur.steps.push_back(*r);
      walk();
      cur.steps.pop_back();
    }
  };
  walk();
  return result;
}

std::string path_fingerprint(const ImportPath& p) {
  if (p.steps.empty()) return "identity";
  std::string out;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    if (i) out += "|";
    out += edge_token(p.steps[i]);
  }
  return out;
}

Renaming renaming_of_path(const Network& n, const ImportPath& p,
                          const Signature& avoid) {
  Signature netSig = signature_of(n);
  Renaming ren;
  ren.fingerprint = path_fingerprint(p);

  auto freshen = [&avoid](const std::string& name, const std::string& fp,
                          bool isRole) {
    std::string candidate = name + "#" + fp;
    while (isRole ? avoid.contains_role(candidate)
                  : avoid.contains_concept(candidate))
      candidate += "~";
    return candidate;
  };

  // build theta prefix by prefix: a symbol inside the step's signature keeps
  // its previous image, anything else goes fresh for this prefix
  ImportPath prefix{p.start, {}};
  for (const auto& step : p.steps) {
    prefix.steps.push_back(step);
    std::string fp = path_fingerprint(prefix);
    Renaming next;
    next.fingerprint = ren.fingerprint;
    for (const auto& c : netSig.concepts)
      if (!step.sigma.contains_concept(c))
        next.conceptMap[c] = freshen(c, fp, false);
      else if (auto it = ren.conceptMap.find(c); it != ren.conceptMap.end())
        next.conceptMap[c] = it->second;
    for (const auto& r : netSig.roles)
      if (!step.sigma.contains_role(r))
        next.roleMap[r] = freshen(r, fp, true);
      else if (auto it = ren.roleMap.find(r); it != ren.roleMap.end())
        next.roleMap[r] = it->second;
    ren.conceptMap = std::move(next.conceptMap);
    ren.roleMap = std::move(next.roleMap);
  }
  return ren;
}

Axiom apply_renaming(const Renaming& r, const Axiom& a) {
  return rename(a, r.conceptMap, r.roleMap);
}

Ontology import_closure(const Network& n, const std::string& o) {
  Ontology result;
  result.id = o;
  std::map<std::string, bool> seen{{o, true}};
  std::deque<std::string> queue{o};
  auto out = outgoing(n);
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto& a : n.ontology(cur).axioms) result.add(a);
    for (const ImportRelation* r : out[cur])
      if (!seen[r->imported]) {
        seen[r->imported] = true;
        queue.push_back(r->imported);
      }
  }
  return result;
}

namespace {

// Longest path length starting anywhere; the network must be acyclic.
std::size_t longest_path(const Network& n) {
  auto out = outgoing(n);
  std::map<std::string, std::size_t> memo;
  std::function<std::size_t(const std::string&)> depth =
      [&](const std::string& id) -> std::size_t {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    std::size_t best = 0;
    for (const ImportRelation* r : out[id])
      best = std::max(best, 1 + depth(r->imported));
    memo[id] = best;
    return best;
  };
  std::size_t best = 0;
  for (const auto& [id, o] : n.ontologies) best = std::max(best, depth(id));
  return best;
}

}  // namespace

RenamedClosure renamed_closure(const Network& n, const std::string& o,
                               std::optional<unsigned> depth,
                               const Signature& avoid) {
  bool acyclic = is_acyclic(n);
  if (!depth && !acyclic) throw CyclicNetwork();
  std::size_t lp = acyclic ? longest_path(n) : 0;
  std::size_t bound = depth ? *depth : lp;

  RenamedClosure rc;
  rc.depth = depth;

  // Walks the path tree directly instead of materializing enumerate_paths
  // output, keeps prefix fingerprints incremental, and renames only symbols
  // that occur in the visited ontology: a path symbol's image is fresh for
  // the longest prefix whose final step hides it, identity when every step
  // carries it. Same images as renaming_of_path, far fewer map entries.
  auto out = outgoing(n);
  std::map<const ImportRelation*, std::string> tokens;
  for (const auto& [id, rels] : out)
    for (const ImportRelation* r : rels) tokens.emplace(r, edge_token(*r));
  std::map<std::string, Signature> occCache;
  auto occurring = [&](const std::string& id) -> const Signature& {
    auto it = occCache.find(id);
    if (it == occCache.end())
      it = occCache.emplace(id, signature_of(n.ontology(id))).first;
    return it->second;
  };
  auto freshen = [&avoid](const std::string& name, const std::string& fp,
                          bool isRole) {
    std::string candidate = name + "#" + fp;
    while (isRole ? avoid.contains_role(candidate)
                  : avoid.contains_concept(candidate))
      candidate += "~";
    return candidate;
  };

  std::vector<Axiom> collected;
  std::vector<const ImportRelation*> steps;
  std::vector<std::string> prefixFp;
  std::function<void(const std::string&)> walk = [&](const std::string& cur) {
    const Ontology& ont = n.ontology(cur);
    auto& block = rc.perPath[steps.empty() ? "identity" : prefixFp.back()];
    if (steps.empty()) {
      for (const auto& a : ont.axioms) {
        block.push_back(a);
        collected.push_back(a);
      }
    } else {
      const Signature& occ = occurring(cur);
      std::map<std::string, std::string> cmap, rmap;
      for (const auto& c : occ.concepts)
        for (std::size_t j = steps.size(); j-- > 0;)
          if (!steps[j]->sigma.contains_concept(c)) {
            cmap[c] = freshen(c, prefixFp[j], false);
            break;
          }
      for (const auto& r : occ.roles)
        for (std::size_t j = steps.size(); j-- > 0;)
          if (!steps[j]->sigma.contains_role(r)) {
            rmap[r] = freshen(r, prefixFp[j], true);
            break;
          }
      for (const auto& a : ont.axioms) {
        Axiom renamed = rename(a, cmap, rmap);
        block.push_back(renamed);
        collected.push_back(std::move(renamed));
      }
    }
    if (steps.size() >= bound) return;
    for (const ImportRelation* r : out[cur]) {
      steps.push_back(r);
      prefixFp.push_back(steps.size() == 1
                             ? tokens.at(r)
                             : prefixFp[steps.size() - 2] + "|" + tokens.at(r));
      walk(r->imported);
      prefixFp.pop_back();
      steps.pop_back();
    }
  };
  walk(o);
  rc.axioms = make_ontology(o, std::move(collected));
  rc.complete = acyclic && (!depth || *depth >= lp);
  rc.dialect = dialect_of(rc.axioms);
  return rc;
}

bool entails_via_closure(const Network& n, const std::string& o,
                         const Axiom& q, const ClassicalEngine& engine) {
  if (!is_acyclic(n)) throw CyclicNetwork();
  RenamedClosure rc = renamed_closure(n, o, std::nullopt, signature_of(q));
  return engine(rc.axioms, q);
}

SemiDecision semi_decide(const Network& n, const std::string& o,
                         const Axiom& q, unsigned maxDepth,
                         const ClassicalEngine& engine, unsigned* depthOut) {
  for (unsigned d = 0; d <= maxDepth; ++d) {
    RenamedClosure rc = renamed_closure(n, o, d, signature_of(q));
    if (engine(rc.axioms, q)) {
      if (depthOut) *depthOut = d;
      return SemiDecision::Entailed;
    }
  }
  if (depthOut) *depthOut = maxDepth;
  return SemiDecision::Unknown;
}

std::string dump_closure(const RenamedClosure& c) {
  std::string out = "ontology " + c.axioms.id + " {\n";
  for (const auto& [fp, block] : c.perPath) {
    out += "  # path: " + fp + "\n";
    // canonical order inside the block, duplicates collapse on re-parse
    std::vector<std::string> lines;
    for (const auto& a : block) lines.push_back(a.key);
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    for (const auto& l : lines) out += "  axiom " + l + "\n";
  }
  return out + "}\n";
}

}  // namespace ontonet
