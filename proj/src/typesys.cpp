#include "oruga/typesys.hpp"

#include "oruga/error.hpp"

#include <algorithm>
#include <functional>

namespace oruga {

namespace {

using Graph = std::map<TypeName, std::set<TypeName>>;

// Finds a cycle through distinct types; self-loops are ignored since a < a
// only restates reflexivity.
std::optional<std::vector<TypeName>> find_cycle(const Graph& graph) {
  enum class Mark { White, Grey, Black };
  std::map<TypeName, Mark> mark;
  std::vector<TypeName> path;
  std::optional<std::vector<TypeName>> cycle;

  std::function<bool(const TypeName&)> visit = [&](const TypeName& node) {
    mark[node] = Mark::Grey;
    path.push_back(node);
    if (auto it = graph.find(node); it != graph.end()) {
      for (const auto& next : it->second) {
        if (next == node) continue;
        Mark m = mark.count(next) ? mark[next] : Mark::White;
        if (m == Mark::Grey) {
          auto start = std::find(path.begin(), path.end(), next);
          cycle = std::vector<TypeName>(start, path.end());
          cycle->push_back(next);
          return true;
        }
        if (m == Mark::White && visit(next)) return true;
      }
    }
    path.pop_back();
    mark[node] = Mark::Black;
    return false;
  };

  for (const auto& [node, _] : graph) {
    if (!mark.count(node) && visit(node)) return cycle;
  }
  return std::nullopt;
}

Graph reachability(const std::set<TypePair>& order,
                   const std::set<TypeName>& universe) {
  Graph edges;
  for (const auto& t : universe) edges[t];
  for (const auto& [a, b] : order) {
    edges[a].insert(b);
    edges[b];
  }
  if (auto cycle = find_cycle(edges)) {
    std::string witness;
    for (std::size_t i = 0; i < cycle->size(); ++i) {
      if (i) witness += " < ";
      witness += (*cycle)[i];
    }
    throw Error(ErrorKind::SubtypeCycle, "subtype cycle " + witness);
  }

  Graph up;
  for (const auto& [start, _] : edges) {
    auto& reached = up[start];
    std::vector<TypeName> stack{start};
    reached.insert(start);
    while (!stack.empty()) {
      TypeName node = stack.back();
      stack.pop_back();
      for (const auto& next : edges.at(node)) {
        if (reached.insert(next).second) stack.push_back(next);
      }
    }
  }
  return up;
}

} // namespace

std::set<TypePair> compute_closure(const std::set<TypePair>& order,
                                   const std::set<TypeName>& universe) {
  std::set<TypePair> closure;
  for (const auto& [sub, supers] : reachability(order, universe)) {
    for (const auto& super : supers) closure.emplace(sub, super);
  }
  return closure;
}

TypeSystem build_type_system(std::string name,
                             const std::vector<TypeEntry>& entries,
                             const std::vector<TypePair>& order) {
  TypeSystem ts;
  ts.name_ = std::move(name);
  for (const auto& entry : entries) {
    if (!ts.declared_.insert(entry.name).second) {
      throw Error(ErrorKind::DuplicateType,
                  "type '" + entry.name + "' declared twice in " + ts.name_);
    }
    if (entry.open_family) ts.open_.insert(entry.name);
  }
  for (const auto& [a, b] : order) {
    for (const auto* t : {&a, &b}) {
      if (!ts.declared_.count(*t)) {
        throw Error(ErrorKind::UnknownTypeInOrder,
                    "order mentions undeclared type '" + *t + "'");
      }
    }
    ts.order_.emplace(a, b);
  }
  ts.up_ = reachability(ts.order_, ts.declared_);
  return ts;
}

bool TypeSystem::knows(const TypeName& type) const {
  return up_.count(type) > 0;
}

const std::set<TypeName>& TypeSystem::supertypes(const TypeName& type) const {
  auto it = up_.find(type);
  if (it == up_.end()) {
    throw Error(ErrorKind::UnknownType,
                "type '" + type + "' is unknown to type system " + name_);
  }
  return it->second;
}

bool TypeSystem::leq(const TypeName& sub, const TypeName& super) const {
  const auto& ups = supertypes(sub);
  supertypes(super);
  return ups.count(super) > 0;
}

std::optional<TypeName>
TypeSystem::meet_if_comparable(const TypeName& a, const TypeName& b) const {
  if (leq(a, b)) return a;
  if (leq(b, a)) return b;
  return std::nullopt;
}

TypeSystem TypeSystem::register_dynamic_type(const TypeName& new_type,
                                             const TypeName& parent) const {
  if (!open_.count(parent)) {
    throw Error(ErrorKind::NotOpenFamily,
                "'" + parent + "' was not declared as an open family (_:" +
                    parent + ") in " + name_);
  }
  if (auto it = dynamic_.find(new_type); it != dynamic_.end()) {
    if (it->second == parent) return *this;
    throw Error(ErrorKind::ConflictingParent,
                "type '" + new_type + "' already registered under '" +
                    it->second + "', not '" + parent + "'");
  }
  if (declared_.count(new_type)) {
    // A declared type may be re-annotated with a parent it already sits under.
    if (leq(new_type, parent)) return *this;
    throw Error(ErrorKind::ConflictingParent,
                "declared type '" + new_type + "' is not a subtype of '" +
                    parent + "'");
  }
  TypeSystem next = *this;
  next.dynamic_.emplace(new_type, parent);
  // Nothing sits below a fresh type, so only its own row changes.
  auto ups = up_.at(parent);
  ups.insert(new_type);
  next.up_.emplace(new_type, std::move(ups));
  return next;
}

std::vector<TypePair> TypeSystem::closure_pairs() const {
  std::vector<TypePair> pairs;
  for (const auto& [sub, supers] : up_) {
    for (const auto& super : supers) pairs.emplace_back(sub, super);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

} // namespace oruga
