#include "oruga/construction.hpp"

#include "oruga/error.hpp"

#include <algorithm>
#include <set>

namespace oruga {

Construction Construction::source(Token token) {
  Construction c;
  c.kind_ = Kind::Source;
  c.token_ = std::move(token);
  return c;
}

Construction Construction::reference(std::string id) {
  Construction c;
  c.kind_ = Kind::Reference;
  c.token_.id = std::move(id);
  return c;
}

Construction Construction::apply(Token output, std::string constructor,
                                 std::vector<Construction> inputs) {
  Construction c;
  c.kind_ = Kind::Apply;
  c.token_ = std::move(output);
  c.constructor_ = std::move(constructor);
  c.inputs_ = std::move(inputs);
  return c;
}

std::string ValidationReport::summary() const {
  std::string text;
  for (const auto& v : violations) {
    if (!text.empty()) text += "; ";
    text += v.message;
  }
  return text;
}

std::map<std::string, TypeName> token_types(const Construction& c) {
  std::map<std::string, TypeName> types;
  for_each_node(c, [&](const Construction& node) {
    if (!node.is_reference()) types.emplace(node.id(), node.token().type);
  });
  return types;
}

ValidationReport validate(const Construction& c, const ConSpec& cs,
                          const TypeSystem& ts) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, const std::string& id, std::string msg) {
    report.violations.push_back({kind, id, std::move(msg)});
  };

  std::map<std::string, TypeName> bound;
  for_each_node(c, [&](const Construction& node) {
    if (node.is_reference()) return;
    const Token& tok = node.token();
    auto [it, fresh] = bound.emplace(tok.id, tok.type);
    if (!fresh) {
      add(ViolationKind::DuplicateBinding, tok.id,
          "token '" + tok.id + "' is bound more than once");
      if (it->second != tok.type) {
        add(ViolationKind::InconsistentTokenType, tok.id,
            "token '" + tok.id + "' has types '" + it->second + "' and '" +
                tok.type + "'");
      }
    } else if (!ts.knows(tok.type)) {
      add(ViolationKind::UnknownType, tok.id,
          "token '" + tok.id + "' has unknown type '" + tok.type + "'");
    }
  });

  // nullopt when the type cannot be checked (unbound or unknown)
  auto type_of = [&](const Construction& node) -> std::optional<TypeName> {
    auto it = bound.find(node.id());
    if (it == bound.end() || !ts.knows(it->second)) return std::nullopt;
    return it->second;
  };

  for_each_node(c, [&](const Construction& node) {
    if (node.is_reference()) {
      if (!bound.count(node.id())) {
        add(ViolationKind::UnresolvedReference, node.id(),
            "reference '" + node.id() + "' is not bound in the construction");
      }
      return;
    }
    if (!node.is_apply()) return;
    if (!cs.has(node.constructor())) {
      add(ViolationKind::UnknownConstructor, node.id(),
          "constructor '" + node.constructor() + "' is not in " + cs.name());
      return;
    }
    const auto& sig = cs.signature_of(node.constructor());
    if (node.inputs().size() != sig.arity()) {
      add(ViolationKind::Arity, node.id(),
          "'" + node.constructor() + "' takes " + std::to_string(sig.arity()) +
              " inputs, got " + std::to_string(node.inputs().size()));
    }
    if (auto out = type_of(node); out && ts.knows(sig.output) &&
                                  !ts.leq(*out, sig.output)) {
      add(ViolationKind::Typing, node.id(),
          "output token '" + node.id() + "' of type '" + *out +
              "' is not a subtype of '" + sig.output + "'");
    }
    std::size_t n = std::min(node.inputs().size(), sig.arity());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& input = node.inputs()[i];
      auto in = type_of(input);
      if (in && ts.knows(sig.inputs[i]) && !ts.leq(*in, sig.inputs[i])) {
        add(ViolationKind::Typing, input.id(),
            "input " + std::to_string(i + 1) + " of '" + node.constructor() +
                "' has type '" + *in + "', expected a subtype of '" +
                sig.inputs[i] + "'");
      }
    }
  });
  return report;
}

std::vector<Token> tokens_of(const Construction& c) {
  std::vector<Token> tokens;
  std::set<std::string> seen;
  for_each_node(c, [&](const Construction& node) {
    if (!node.is_reference() && seen.insert(node.id()).second) {
      tokens.push_back(node.token());
    }
  });
  return tokens;
}

const Construction* binding_site(const Construction& c, const std::string& id) {
  // Prefer the Apply binding over a Source occurrence.
  const Construction* first = nullptr;
  const Construction* applied = nullptr;
  for_each_node(c, [&](const Construction& node) {
    if (node.is_reference() || node.id() != id) return;
    if (!first) first = &node;
    if (node.is_apply() && !applied) applied = &node;
  });
  return applied ? applied : first;
}

Construction sub_construction_at(const Construction& c, const std::string& id) {
  const auto* site = binding_site(c, id);
  if (!site) {
    throw Error(ErrorKind::UnboundToken,
                "token '" + id + "' is not bound in the construction");
  }
  return *site;
}

namespace {
Construction rename_node(const Construction& c,
                         const std::map<std::string, std::string>& renaming) {
  auto it = renaming.find(c.id());
  if (it == renaming.end()) {
    throw Error(ErrorKind::UnboundToken,
                "renaming does not cover token '" + c.id() + "'");
  }
  switch (c.kind()) {
  case Construction::Kind::Source:
    return Construction::source({it->second, c.token().type});
  case Construction::Kind::Reference:
    return Construction::reference(it->second);
  case Construction::Kind::Apply: {
    std::vector<Construction> inputs;
    inputs.reserve(c.inputs().size());
    for (const auto& input : c.inputs()) inputs.push_back(rename_node(input, renaming));
    return Construction::apply({it->second, c.token().type}, c.constructor(),
                               std::move(inputs));
  }
  }
  return c;
}
} // namespace

Construction rename_tokens(const Construction& c,
                           const std::map<std::string, std::string>& renaming) {
  std::set<std::string> images;
  for (const auto& [from, to] : renaming) {
    if (!images.insert(to).second) {
      throw Error(ErrorKind::NonInjectiveRename,
                  "two tokens would both be renamed to '" + to + "'");
    }
  }
  return rename_node(c, renaming);
}

namespace {
bool correspond(const Construction& a, const Construction& b,
                std::map<std::string, std::string>& forward,
                std::map<std::string, std::string>& backward) {
  if (a.kind() != b.kind()) return false;
  if (!a.is_reference() && a.token().type != b.token().type) return false;
  auto f = forward.find(a.id());
  auto g = backward.find(b.id());
  if (f != forward.end() || g != backward.end()) {
    if (f == forward.end() || g == backward.end() || f->second != b.id() ||
        g->second != a.id()) {
      return false;
    }
  } else {
    forward.emplace(a.id(), b.id());
    backward.emplace(b.id(), a.id());
  }
  if (!a.is_apply()) return true;
  if (a.constructor() != b.constructor() ||
      a.inputs().size() != b.inputs().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.inputs().size(); ++i) {
    if (!correspond(a.inputs()[i], b.inputs()[i], forward, backward)) return false;
  }
  return true;
}
} // namespace

std::optional<std::map<std::string, std::string>>
equal_up_to_renaming(const Construction& a, const Construction& b) {
  std::map<std::string, std::string> forward, backward;
  if (!correspond(a, b, forward, backward)) return std::nullopt;
  return forward;
}

} // namespace oruga
