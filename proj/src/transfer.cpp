#include "oruga/transfer.hpp"

#include "oruga/error.hpp"
#include "oruga/matching.hpp"

#include <algorithm>
#include <sstream>

namespace oruga {

const DerivationStep* DerivationTree::step_for(std::size_t goal_id) const {
  for (const auto& step : steps) {
    if (step.goal.id == goal_id) return &step;
  }
  return nullptr;
}

std::size_t DerivationTree::depth() const {
  std::size_t deepest = 0;
  for (const auto& step : steps) deepest = std::max(deepest, step.goal.depth);
  return deepest;
}

namespace {

template <typename Fn> Construction map_tokens(const Construction& c, Fn&& fn) {
  switch (c.kind()) {
  case Construction::Kind::Source: return Construction::source(fn(c.token()));
  case Construction::Kind::Reference: return c;
  case Construction::Kind::Apply: {
    std::vector<Construction> inputs;
    inputs.reserve(c.inputs().size());
    for (const auto& input : c.inputs()) inputs.push_back(map_tokens(input, fn));
    return Construction::apply(fn(c.token()), c.constructor(), std::move(inputs));
  }
  }
  return c;
}

bool contains_token(const Construction& c, const std::string& id) {
  bool found = false;
  for_each_node(c, [&](const Construction& n) { found = found || n.id() == id; });
  return found;
}

bool has_node(const Construction& c, const std::string& id, Construction::Kind kind) {
  bool found = false;
  for_each_node(c, [&](const Construction& n) {
    found = found || (n.kind() == kind && n.id() == id);
  });
  return found;
}

// Replaces the first Source occurrence of `id` with `subtree`.
Construction graft(const Construction& c, const std::string& id,
                   const Construction& subtree, bool& done) {
  if (done) return c;
  if (c.is_source() && c.id() == id) {
    done = true;
    return subtree;
  }
  if (!c.is_apply()) return c;
  std::vector<Construction> inputs;
  inputs.reserve(c.inputs().size());
  for (const auto& input : c.inputs()) inputs.push_back(graft(input, id, subtree, done));
  return Construction::apply(c.token(), c.constructor(), std::move(inputs));
}

// Keeps one binding occurrence per id (the Apply one when present) and
// turns every other Source occurrence into a Reference.
Construction normalise_bindings(const Construction& c) {
  std::set<std::string> applied;
  for_each_node(c, [&](const Construction& n) {
    if (n.is_apply()) applied.insert(n.id());
  });
  std::set<std::string> bound;
  std::function<Construction(const Construction&)> go = [&](const Construction& n) {
    if (n.is_reference()) return n;
    if (n.is_source()) {
      if (applied.count(n.id()) || !bound.insert(n.id()).second) {
        return Construction::reference(n.id());
      }
      return n;
    }
    bound.insert(n.id());
    std::vector<Construction> inputs;
    inputs.reserve(n.inputs().size());
    for (const auto& input : n.inputs()) inputs.push_back(go(input));
    return Construction::apply(n.token(), n.constructor(), std::move(inputs));
  };
  return go(c);
}

bool merge(TargetComposition& comp, const Construction& built, bool single) {
  const std::string& root = built.id();
  auto& entries = comp.constructions;
  if (!built.is_apply()) {
    bool present = std::any_of(entries.begin(), entries.end(), [&](const auto& e) {
      return contains_token(e, root);
    });
    if (!present) entries.push_back(built);
    return true;
  }
  bool constructed = std::any_of(entries.begin(), entries.end(), [&](const auto& e) {
    return has_node(e, root, Construction::Kind::Apply);
  });
  if (constructed) {
    if (single) return false;
    entries.push_back(normalise_bindings(built));
    return true;
  }
  bool grafted = false;
  for (auto& entry : entries) {
    if (!has_node(entry, root, Construction::Kind::Source)) continue;
    entry = normalise_bindings(graft(entry, root, built, grafted));
    break;
  }
  if (!grafted) {
    entries.push_back(normalise_bindings(built));
    return true;
  }
  std::erase_if(entries, [&](const Construction& e) { return e.is_source() && e.id() == root; });
  return true;
}

void retype(TargetComposition& comp) {
  for (auto& entry : comp.constructions) {
    entry = map_tokens(entry, [&](const Token& t) {
      auto it = comp.tokens.find(t.id);
      return it == comp.tokens.end() ? t : it->second;
    });
  }
}

void check_spaces(const TransferSchema& schema, const TransferContext& ctx) {
  if (schema.source_space != ctx.source_space.name() ||
      schema.target_space != ctx.target_space.name()) {
    throw Error(ErrorKind::UnknownSpace,
                "schema " + schema.name + " bridges (" + schema.source_space + "," +
                    schema.target_space + "), not (" + ctx.source_space.name() + "," +
                    ctx.target_space.name() + ")");
  }
}

std::optional<TransferState> apply_with_matching(const TransferState& state,
                                                 std::size_t goal_index,
                                                 const TransferSchema& schema,
                                                 const Matching& source_match,
                                                 const TransferContext& ctx,
                                                 bool single) {
  const Goal& goal = state.open_goals[goal_index];
  const RelConstraint& cons = schema.consequent;

  std::map<std::string, Token> target_binding;
  std::set<std::string> used_vars;
  for (std::size_t j = 0; j < cons.target_tokens.size(); ++j) {
    const auto& var = goal.target_vars[j];
    auto it = state.composition.tokens.find(var);
    if (it == state.composition.tokens.end()) return std::nullopt;
    auto [slot, fresh] = target_binding.emplace(cons.target_tokens[j], it->second);
    if (!fresh && slot->second.id != var) return std::nullopt;
    if (fresh && !used_vars.insert(var).second) return std::nullopt;
  }

  TransferState next = state;
  const std::size_t step = state.applications + 1;
  Instantiation inst;
  try {
    inst = instantiate_with_bindings(
        schema.target_pattern, target_binding, ctx.target_types,
        [step](const std::string& id) { return id + "_" + std::to_string(step); });
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::TypeClash) return std::nullopt;
    throw;
  }

  auto& comp = next.composition;
  for (const auto& [pid, token] : inst.tokens) comp.tokens[token.id] = token;
  if (!merge(comp, inst.construction, single)) return std::nullopt;
  retype(comp);
  for (const auto& entry : comp.constructions) {
    if (!validate(entry, ctx.target_space, ctx.target_types).ok()) return std::nullopt;
  }

  next.applications = step;
  next.open_goals.erase(next.open_goals.begin() + static_cast<std::ptrdiff_t>(goal_index));

  DerivationStep record;
  record.goal = goal;
  for (const auto& var : goal.target_vars) record.target_tokens.push_back(state.composition.tokens.at(var));
  record.rule = schema.name;
  record.source_binding = source_match.map;
  record.target_binding = inst.tokens;
  record.fresh = inst.fresh;

  for (const auto& rel : schema.antecedents) {
    Goal sub;
    sub.id = next.next_goal_id++;
    sub.relation = rel.relation;
    sub.depth = goal.depth + 1;
    for (const auto& id : rel.source_tokens) sub.source_tokens.push_back(source_match.map.at(id));
    for (const auto& id : rel.target_tokens) sub.target_vars.push_back(inst.tokens.at(id).id);
    record.children.push_back(sub.id);
    next.open_goals.push_back(std::move(sub));
  }
  next.derivation.steps.push_back(std::move(record));
  return next;
}

} // namespace

TransferState init_state(const TransferContext& ctx, const RelationLabel& relation,
                         const std::vector<std::string>& goal_source_tokens,
                         const TypeName& sought_type) {
  if (!ctx.target_types.knows(sought_type)) {
    throw Error(ErrorKind::UnknownType, "sought type '" + sought_type +
                                            "' is unknown to " + ctx.target_types.name());
  }
  auto types = token_types(ctx.source);
  TransferState state;
  Goal goal;
  goal.id = state.next_goal_id++;
  goal.relation = relation;
  for (const auto& id : goal_source_tokens) {
    auto it = types.find(id);
    if (it == types.end()) {
      throw Error(ErrorKind::UnboundToken,
                  "goal token '" + id + "' is not bound in the source construction");
    }
    goal.source_tokens.push_back({id, it->second});
  }
  goal.target_vars.push_back(kSoughtVariable);
  state.composition.tokens.emplace(kSoughtVariable, Token{kSoughtVariable, sought_type});
  state.derivation.roots.push_back(goal.id);
  state.open_goals.push_back(std::move(goal));
  return state;
}

std::vector<TransferState> apply_schema_backward_all(const TransferState& state,
                                                     std::size_t goal_index,
                                                     const TransferSchema& schema,
                                                     const TransferContext& ctx,
                                                     bool single_construction) {
  std::vector<TransferState> out;
  if (goal_index >= state.open_goals.size()) return out;
  const Goal& goal = state.open_goals[goal_index];
  const RelConstraint& cons = schema.consequent;
  if (goal.relation != cons.relation ||
      goal.source_tokens.size() != cons.source_tokens.size() ||
      goal.target_vars.size() != cons.target_tokens.size()) {
    return out;
  }

  std::vector<Anchor> anchors;
  for (std::size_t i = 0; i < cons.source_tokens.size(); ++i) {
    anchors.emplace_back(cons.source_tokens[i], goal.source_tokens[i].id);
  }
  auto matches = find_all_matches(ctx.source, schema.source_pattern, ctx.source_types,
                                  {MatchMode::Prefix, true}, anchors);
  for (const auto& m : matches) {
    if (auto next = apply_with_matching(state, goal_index, schema, m, ctx,
                                        single_construction)) {
      out.push_back(std::move(*next));
    }
  }
  return out;
}

std::optional<TransferState> apply_schema_backward(const TransferState& state,
                                                   std::size_t goal_index,
                                                   const TransferSchema& schema,
                                                   const TransferContext& ctx,
                                                   bool single_construction) {
  auto all = apply_schema_backward_all(state, goal_index, schema, ctx, single_construction);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

TransferState discharge_by_assumption(const TransferState& state,
                                      std::size_t goal_index,
                                      const SearchLimits& limits) {
  if (goal_index >= state.open_goals.size()) {
    throw Error(ErrorKind::NotAssumable, "no open goal at that index");
  }
  const Goal& goal = state.open_goals[goal_index];
  if (!limits.assumable.count(goal.relation)) {
    throw Error(ErrorKind::NotAssumable,
                "relation '" + goal.relation + "' may not be assumed");
  }
  TransferState next = state;
  DerivationStep record;
  record.goal = goal;
  for (const auto& var : goal.target_vars) record.target_tokens.push_back(state.composition.tokens.at(var));
  record.rule = kAssumedRule;
  next.derivation.steps.push_back(std::move(record));
  next.assumptions.push_back(goal);
  next.open_goals.erase(next.open_goals.begin() + static_cast<std::ptrdiff_t>(goal_index));
  return next;
}

std::vector<Construction> composition_to_constructions(const TransferResult& result) {
  std::vector<Construction> out = result.composition.constructions;
  for (const auto& [id, token] : result.composition.tokens) {
    bool used = std::any_of(out.begin(), out.end(),
                            [&](const Construction& c) { return contains_token(c, id); });
    if (!used) out.push_back(Construction::source(token));
  }
  return out;
}

namespace {

void write_term(std::ostream& out, const Construction& c,
                const std::map<std::string, std::string>& names) {
  auto name = [&](const std::string& id) {
    auto it = names.find(id);
    return it == names.end() ? id : it->second;
  };
  if (c.is_reference()) {
    out << '&' << name(c.id());
    return;
  }
  out << name(c.id()) << ':' << c.token().type;
  if (!c.is_apply()) return;
  out << "<-" << c.constructor() << '[';
  for (std::size_t i = 0; i < c.inputs().size(); ++i) {
    if (i) out << ',';
    write_term(out, c.inputs()[i], names);
  }
  out << ']';
}

void number_tokens(const Construction& c, std::map<std::string, std::string>& names) {
  for_each_node(c, [&](const Construction& n) {
    if (!names.count(n.id())) names.emplace(n.id(), "#" + std::to_string(names.size()));
  });
}

} // namespace

std::string canonical_key(const TargetComposition& composition,
                          const std::vector<Goal>& assumptions) {
  TransferResult view{composition, {}, {}};
  auto entries = composition_to_constructions(view);
  std::vector<std::pair<std::string, std::size_t>> local;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::map<std::string, std::string> names;
    number_tokens(entries[i], names);
    std::ostringstream text;
    write_term(text, entries[i], names);
    local.emplace_back(text.str(), i);
  }
  std::stable_sort(local.begin(), local.end());

  std::map<std::string, std::string> names;
  std::ostringstream out;
  for (const auto& [_, i] : local) {
    number_tokens(entries[i], names);
    write_term(out, entries[i], names);
    out << ';';
  }
  std::vector<std::string> assumed;
  for (const auto& goal : assumptions) {
    std::ostringstream g;
    g << goal.relation << '(';
    for (const auto& t : goal.source_tokens) g << t.id << ',';
    g << '|';
    for (const auto& v : goal.target_vars) {
      auto it = names.find(v);
      g << (it == names.end() ? v : it->second) << ',';
    }
    g << ')';
    assumed.push_back(g.str());
  }
  std::sort(assumed.begin(), assumed.end());
  for (const auto& a : assumed) out << a;
  return out.str();
}

bool obligations_conserved(const TransferState& state) {
  std::multiset<std::size_t> introduced(state.derivation.roots.begin(),
                                        state.derivation.roots.end());
  std::multiset<std::size_t> accounted;
  for (const auto& step : state.derivation.steps) {
    introduced.insert(step.children.begin(), step.children.end());
    accounted.insert(step.goal.id);
  }
  for (const auto& goal : state.open_goals) accounted.insert(goal.id);
  // assumed goals already have an "assumed" step
  std::size_t assumed_steps = 0;
  for (const auto& step : state.derivation.steps) {
    if (step.rule == kAssumedRule) ++assumed_steps;
  }
  return introduced == accounted && assumed_steps == state.assumptions.size();
}

std::string format_goal(const Goal& goal, const TargetComposition& composition) {
  std::ostringstream out;
  out << "([";
  for (std::size_t i = 0; i < goal.source_tokens.size(); ++i) {
    if (i) out << ',';
    out << goal.source_tokens[i].id << ':' << goal.source_tokens[i].type;
  }
  out << "],[";
  for (std::size_t i = 0; i < goal.target_vars.size(); ++i) {
    if (i) out << ',';
    const auto& var = goal.target_vars[i];
    out << var;
    if (auto it = composition.tokens.find(var); it != composition.tokens.end()) {
      out << ':' << it->second.type;
    }
  }
  out << "]) :: " << goal.relation;
  return out.str();
}

SearchOutcome search(const TransferContext& ctx, const RelationLabel& relation,
                     const std::vector<std::string>& goal_source_tokens,
                     const TypeName& sought_type,
                     const std::vector<TransferSchema>& schemas,
                     const SearchLimits& limits, const ResultCallback& on_result) {
  for (const auto& schema : schemas) check_spaces(schema, ctx);

  SearchOutcome outcome;
  std::set<std::string> seen;
  std::vector<TransferState> stack{init_state(ctx, relation, goal_source_tokens, sought_type)};

  while (!stack.empty()) {
    TransferState state = std::move(stack.back());
    stack.pop_back();

    if (state.open_goals.empty()) {
      if (!seen.insert(canonical_key(state.composition, state.assumptions)).second) continue;
      TransferResult result{std::move(state.composition), std::move(state.derivation),
                            std::move(state.assumptions)};
      if (on_result) on_result(result);
      outcome.results.push_back(std::move(result));
      if (outcome.results.size() >= limits.max_results) {
        outcome.limit_hit = !stack.empty();
        break;
      }
      continue;
    }

    if (outcome.expansions >= limits.max_expansions) {
      outcome.limit_hit = true;
      break;
    }
    ++outcome.expansions;

    std::vector<TransferState> children;
    for (const auto& schema : schemas) {
      for (auto& next : apply_schema_backward_all(state, 0, schema, ctx,
                                                  limits.single_construction)) {
        children.push_back(std::move(next));
      }
    }
    if (limits.assumable.count(state.open_goals.front().relation)) {
      children.push_back(discharge_by_assumption(state, 0, limits));
    }
    if (state.open_goals.front().depth > limits.max_depth) {
      // Pruned work means the search is no longer exhaustive.
      if (!children.empty()) outcome.limit_hit = true;
      continue;
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it) {
      stack.push_back(std::move(*it));
    }
  }
  return outcome;
}

} // namespace oruga
