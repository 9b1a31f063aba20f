#ifndef ORUGA_TRANSFER_HPP
#define ORUGA_TRANSFER_HPP

#include "oruga/construction.hpp"
#include "oruga/schema.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oruga {

/// A relational obligation between given source tokens and target variables
/// of the composition under construction.
struct Goal {
  std::size_t id = 0;
  std::vector<Token> source_tokens;
  std::vector<std::string> target_vars;
  RelationLabel relation;
  std::size_t depth = 1;

  friend bool operator==(const Goal&, const Goal&) = default;
};

/// Constructions over the target space glued at shared token ids. One token
/// may be the constructed root of several entries, at most once per entry.
struct TargetComposition {
  std::map<std::string, Token> tokens;
  std::vector<Construction> constructions;

  friend bool operator==(const TargetComposition&, const TargetComposition&) = default;
};

struct DerivationStep {
  Goal goal;
  /// target variables with their types when the goal was discharged
  std::vector<Token> target_tokens;
  std::string rule; // schema name or "assumed"
  std::map<std::string, Token> source_binding;
  std::map<std::string, Token> target_binding;
  std::vector<Token> fresh;
  std::vector<std::size_t> children; // goal ids

  friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

/// Audit trail of a backward proof. Roots are the initial goals; every
/// schema step lists the goals its antecedents produced.
struct DerivationTree {
  std::vector<std::size_t> roots;
  std::vector<DerivationStep> steps;

  const DerivationStep* step_for(std::size_t goal_id) const;
  std::size_t depth() const;

  friend bool operator==(const DerivationTree&, const DerivationTree&) = default;
};

inline constexpr const char* kAssumedRule = "assumed";

struct TransferState {
  std::vector<Goal> open_goals;
  TargetComposition composition;
  std::vector<Goal> assumptions;
  DerivationTree derivation;
  std::size_t next_goal_id = 0;
  std::size_t applications = 0;

  friend bool operator==(const TransferState&, const TransferState&) = default;
};

struct SearchLimits {
  std::size_t max_depth = 10;
  std::size_t max_results = 5;
  std::size_t max_expansions = 10000;
  std::set<RelationLabel> assumable;
  /// Reject a second construction of an already-constructed target token.
  bool single_construction = false;
};

/// The fixed context of one transfer query.
struct TransferContext {
  const Construction& source;
  const ConSpec& source_space;
  const TypeSystem& source_types;
  const ConSpec& target_space;
  const TypeSystem& target_types;
};

inline constexpr const char* kSoughtVariable = "v0";

/// One open goal relating the given source tokens to a fresh target
/// variable v0 of the sought type. Throws UnboundToken or UnknownType.
TransferState init_state(const TransferContext& ctx, const RelationLabel& relation,
                         const std::vector<std::string>& goal_source_tokens,
                         const TypeName& sought_type);

/// Every state reachable by applying `schema` backwards to the goal at
/// `goal_index`, one per source-pattern matching, in placement order.
std::vector<TransferState> apply_schema_backward_all(const TransferState& state,
                                                     std::size_t goal_index,
                                                     const TransferSchema& schema,
                                                     const TransferContext& ctx,
                                                     bool single_construction = false);

/// The first state of apply_schema_backward_all, if any.
std::optional<TransferState> apply_schema_backward(const TransferState& state,
                                                   std::size_t goal_index,
                                                   const TransferSchema& schema,
                                                   const TransferContext& ctx,
                                                   bool single_construction = false);

/// Moves the goal into the assumption list. Throws NotAssumable.
TransferState discharge_by_assumption(const TransferState& state,
                                      std::size_t goal_index,
                                      const SearchLimits& limits);

struct TransferResult {
  TargetComposition composition;
  DerivationTree derivation;
  std::vector<Goal> assumptions;
};

struct SearchOutcome {
  std::vector<TransferResult> results;
  std::size_t expansions = 0;
  bool limit_hit = false;
};

using ResultCallback = std::function<void(const TransferResult&)>;

/// Depth-first backward search: leftmost open goal first, schemas in the
/// given order, assumption last. Results are unique up to token renaming.
/// Throws UnknownSpace when a schema bridges a different pair of spaces.
SearchOutcome search(const TransferContext& ctx, const RelationLabel& relation,
                     const std::vector<std::string>& goal_source_tokens,
                     const TypeName& sought_type,
                     const std::vector<TransferSchema>& schemas,
                     const SearchLimits& limits,
                     const ResultCallback& on_result = {});

/// The result's constructions; composition tokens that appear in no
/// construction are returned as single-token constructions.
std::vector<Construction> composition_to_constructions(const TransferResult& result);

/// Renaming-invariant text form of a composition and its assumptions, used
/// to detect duplicate results.
std::string canonical_key(const TargetComposition& composition,
                          const std::vector<Goal>& assumptions);

/// True when the goals discharged, assumed and still open are exactly the
/// initial goals plus every antecedent goal introduced, each once.
bool obligations_conserved(const TransferState& state);

/// `([s:T],[v:U]) :: rel` using the composition's current types.
std::string format_goal(const Goal& goal, const TargetComposition& composition);

} // namespace oruga

#endif
