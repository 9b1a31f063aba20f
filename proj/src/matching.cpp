#include "oruga/matching.hpp"

#include "oruga/error.hpp"

#include <set>

namespace oruga {

namespace {

class Matcher {
public:
  Matcher(const Construction& c, const Pattern& p, const TypeSystem& ts,
          MatchOptions options)
      : c_(c), ts_(ts), options_(options), c_types_(token_types(c)),
        p_types_(token_types(p)) {}

  bool has_construction_token(const std::string& id) const {
    return c_types_.count(id) > 0;
  }
  bool has_pattern_token(const std::string& id) const {
    return p_types_.count(id) > 0;
  }

  std::optional<Matching> run(const Pattern& p, const Construction& placement,
                              const std::vector<Anchor>& anchors) {
    map_.clear();
    images_.clear();
    for (const auto& [pid, cid] : anchors) {
      if (!bind(pid, cid)) return std::nullopt;
    }
    if (!walk(p, placement)) return std::nullopt;
    return Matching{map_, options_.mode};
  }

private:
  bool bind(const std::string& pid, const std::string& cid) {
    auto ct = c_types_.find(cid);
    auto pt = p_types_.find(pid);
    if (ct == c_types_.end() || pt == p_types_.end()) return false;
    if (auto it = map_.find(pid); it != map_.end()) return it->second.id == cid;
    if (options_.injective && images_.count(cid)) return false;
    if (!ts_.knows(ct->second) || !ts_.knows(pt->second)) return false;
    if (!ts_.leq(ct->second, pt->second)) return false;
    map_.emplace(pid, Token{cid, ct->second});
    images_.insert(cid);
    return true;
  }

  bool walk(const Pattern& p, const Construction& n) {
    if (options_.mode == MatchMode::Exact && p.kind() != n.kind()) return false;
    if (!bind(p.id(), n.id())) return false;
    if (!p.is_apply()) return true;

    const Construction* target = &n;
    if (n.is_reference()) {
      // Pattern depth strictly decreases, so following references through
      // cycles still terminates.
      target = binding_site(c_, n.id());
      if (!target) return false;
    }
    if (!target->is_apply() || target->constructor() != p.constructor() ||
        target->inputs().size() != p.inputs().size()) {
      return false;
    }
    for (std::size_t i = 0; i < p.inputs().size(); ++i) {
      if (!walk(p.inputs()[i], target->inputs()[i])) return false;
    }
    return true;
  }

  const Construction& c_;
  const TypeSystem& ts_;
  MatchOptions options_;
  std::map<std::string, TypeName> c_types_;
  std::map<std::string, TypeName> p_types_;
  std::map<std::string, Token> map_;
  std::set<std::string> images_;
};

std::vector<const Construction*> placements(const Construction& c) {
  std::vector<const Construction*> sites;
  std::set<std::string> seen;
  for_each_node(c, [&](const Construction& node) {
    if (node.is_reference() || !seen.insert(node.id()).second) return;
    sites.push_back(binding_site(c, node.id()));
  });
  return sites;
}

void check_anchors(const Matcher& m, const std::vector<Anchor>& anchors) {
  for (const auto& [pid, cid] : anchors) {
    if (!m.has_pattern_token(pid)) {
      throw Error(ErrorKind::UnboundToken,
                  "anchor names pattern token '" + pid + "' which is not bound");
    }
    if (!m.has_construction_token(cid)) {
      throw Error(ErrorKind::UnboundToken,
                  "anchor names token '" + cid + "' which is not bound");
    }
  }
}

} // namespace

std::optional<Matching> find_match(const Construction& c, const Pattern& p,
                                   const TypeSystem& ts, MatchOptions options) {
  Matcher m(c, p, ts, options);
  return m.run(p, c, {});
}

std::vector<Matching> find_all_matches(const Construction& c, const Pattern& p,
                                       const TypeSystem& ts, MatchOptions options,
                                       const std::vector<Anchor>& anchors) {
  Matcher m(c, p, ts, options);
  check_anchors(m, anchors);
  std::vector<Matching> found;
  for (const auto* site : placements(c)) {
    if (auto hit = m.run(p, *site, anchors)) found.push_back(std::move(*hit));
  }
  return found;
}

std::optional<Matching> find_match_anchored(const Construction& c, const Pattern& p,
                                            const TypeSystem& ts, MatchOptions options,
                                            const std::vector<Anchor>& anchors) {
  if (anchors.empty()) return find_match(c, p, ts, options);
  Matcher m(c, p, ts, options);
  check_anchors(m, anchors);
  for (const auto* site : placements(c)) {
    if (auto hit = m.run(p, *site, anchors)) return hit;
  }
  return std::nullopt;
}

namespace {
Construction rebuild(const Pattern& p, const std::map<std::string, Token>& tokens) {
  auto it = tokens.find(p.id());
  if (it == tokens.end()) return p;
  const Token& tok = it->second;
  switch (p.kind()) {
  case Construction::Kind::Source: return Construction::source(tok);
  case Construction::Kind::Reference: return Construction::reference(tok.id);
  case Construction::Kind::Apply: {
    std::vector<Construction> inputs;
    inputs.reserve(p.inputs().size());
    for (const auto& input : p.inputs()) inputs.push_back(rebuild(input, tokens));
    return Construction::apply(tok, p.constructor(), std::move(inputs));
  }
  }
  return p;
}
} // namespace

Instantiation instantiate_with_bindings(const Pattern& p,
                                        const std::map<std::string, Token>& binding,
                                        const TypeSystem& ts, const FreshIdFn& fresh_id) {
  Instantiation result;
  for (const auto& token : tokens_of(p)) {
    auto it = binding.find(token.id);
    if (it == binding.end()) {
      Token fresh{fresh_id(token.id), token.type};
      result.fresh.push_back(fresh);
      result.tokens.emplace(token.id, std::move(fresh));
      continue;
    }
    const Token& bound = it->second;
    if (!ts.knows(bound.type) || !ts.knows(token.type)) {
      throw Error(ErrorKind::TypeClash, "'" + bound.id + ":" + bound.type +
                                            "' cannot stand for pattern token '" +
                                            token.id + ":" + token.type + "'");
    }
    auto meet = ts.meet_if_comparable(bound.type, token.type);
    if (!meet) {
      throw Error(ErrorKind::TypeClash, "types '" + bound.type + "' and '" +
                                            token.type + "' are incomparable");
    }
    result.tokens.emplace(token.id, Token{bound.id, *meet});
  }
  result.construction = rebuild(p, result.tokens);
  return result;
}

Construction instantiate(const Pattern& p, const std::map<std::string, Token>& binding,
                         const TypeSystem& ts, const FreshIdFn& fresh_id) {
  return instantiate_with_bindings(p, binding, ts, fresh_id).construction;
}

} // namespace oruga
